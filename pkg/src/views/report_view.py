from typing import Any, Dict, List, Optional

from rich.console import Console
from rich.table import Table
from rich.text import Text
from rich.tree import Tree

from ..verification import CheckResult, VerificationReport

STATUS_STYLES = {
    "PASS": "bold green",
    "FAIL": "bold red",
    "N/A": "bold yellow",
}


def _fmt(value: Any) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def create_checks_table(checks: List[CheckResult], title: str) -> Table:
    """One row per named check with a coloured status column."""
    table = Table(
        "Check",
        "Value",
        "Status",
        "Detail",
        title=title,
        title_style="bold blue",
        border_style="blue",
        padding=(0, 1),
    )
    for check in checks:
        table.add_row(
            check.name,
            "" if check.value is None else _fmt(check.value),
            Text(check.status, style=STATUS_STYLES.get(check.status, "white")),
            check.detail,
        )
    return table


def add_dict_to_tree(parent: Tree, data: Dict[str, Any], name: Optional[str] = None) -> Tree:
    """Nested dictionaries become nested branches, everything else a leaf."""
    node = parent.add(f"[bold]{name}[/bold]") if name else parent
    for key, value in data.items():
        if isinstance(value, dict):
            add_dict_to_tree(node, value, name=key)
        else:
            node.add(f"{key}: [cyan]{_fmt(value)}[/cyan]")
    return node


def print_report(console: Console, report: VerificationReport) -> None:
    console.print(create_checks_table(report.checks(), f"Verification n={report.n}, d={report.d}"))
    tree = Tree("[bold blue]Values[/bold blue]")
    add_dict_to_tree(tree, {
        "P(1|1)": report.p11,
        "beta": report.beta,
        "V_A sum": report.partition_sum_a,
        "V_B sum": report.partition_sum_b,
        "classical": {
            "alpha": report.classical_alpha,
            "hardy possible": report.classical_hardy_possible,
        },
        "graph": {
            "independence number": report.independence_number,
            "clique number": report.clique_number,
            "dimension gap": report.dimension_gap,
        },
    })
    console.print(tree)


def print_summary(console: Console, title: str, data: Dict[str, Any]) -> None:
    """Generic tree summary used by subcommands without a check table."""
    tree = Tree(f"[bold blue]{title}[/bold blue]")
    add_dict_to_tree(tree, data)
    console.print(tree)


__all__ = ['create_checks_table', 'add_dict_to_tree', 'print_report', 'print_summary']
