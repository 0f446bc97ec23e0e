from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
import logging
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np
from rich.console import Console

from ..config import config
from ..construction import MeasurementFamily, build_measurements
from ..errors import PreconditionError
from ..formats import dumps, read_json, to_csv
from ..graph_core import (
    PENTAGON_HARDY_SETS, build_family_graph, family_partitions, hardy_sets_for, independence_number,
)
from ..majorana import family_constellations, flip_symmetry_report
from ..optimization import max_violation_state, projector_sum
from ..precision import (
    SWEEP_FIELDS, onc_threshold, perturb_family, simulate_contexts, sweep,
)
from ..verification import (
    HARDY_REDUCED_BOUND, CheckResult, classical_analysis, hardy_quantum_report,
    kcbs_value, vertex_contributions, verify_family,
)
from ..views.constellation_view import render_svg
from ..views.report_view import create_checks_table, print_report, print_summary


class Subcommand(Enum):
    """Subcommands understood by the workbench"""
    CONSTRUCT = "construct"
    VERIFY = "verify"
    KCBS = "kcbs"
    HARDY = "hardy"
    CLASSICAL = "classical"
    OPTIMIZE = "optimize"
    MAJORANA = "majorana"
    ONC = "onc"
    SIMULATE = "simulate"
    SWEEP = "sweep"

    @classmethod
    def from_name(cls, name: str) -> 'Subcommand':
        try:
            return cls(name)
        except ValueError:
            raise PreconditionError(f"unknown subcommand: {name}") from None


class OutputFormat(Enum):
    JSON = "json"
    CSV = "csv"
    SVG = "svg"


# Formats each subcommand can emit; the first is the default.
FORMATS = {
    Subcommand.MAJORANA: (OutputFormat.JSON, OutputFormat.SVG),
    Subcommand.SWEEP: (OutputFormat.CSV, OutputFormat.JSON),
}


@dataclass
class RunConfig:
    """Everything one invocation needs; unset numeric fields fall back to config"""
    subcommand: str
    n: Optional[int] = None
    tol: Optional[float] = None
    shots: Optional[int] = None
    noise: Optional[float] = None
    seed: Optional[int] = None
    input_path: Optional[str] = None
    output_path: Optional[str] = None
    fmt: Optional[str] = None
    quiet: bool = False
    restarts: Optional[int] = None
    delta: Optional[float] = None
    epsilon: Optional[float] = None
    vertex: Optional[str] = None
    check_flip: bool = False
    columns: Optional[int] = None
    ns: Tuple[int, ...] = ()
    noises: Tuple[float, ...] = ()
    seeds: Tuple[int, ...] = ()

    @property
    def command(self) -> Subcommand:
        return Subcommand.from_name(self.subcommand)

    @property
    def output_format(self) -> OutputFormat:
        allowed = FORMATS.get(self.command, (OutputFormat.JSON,))
        if self.fmt is None:
            return allowed[0]
        try:
            chosen = OutputFormat(self.fmt)
        except ValueError:
            raise PreconditionError(f"unknown format: {self.fmt}") from None
        if chosen not in allowed:
            names = ", ".join(f.value for f in allowed)
            raise PreconditionError(f"{self.subcommand} emits {names}, not {chosen.value}")
        return chosen

    def resolved(self) -> 'RunConfig':
        """Copy with defaults filled in from the configuration, then validated."""
        filled = replace(
            self,
            tol=config.tolerance.physics if self.tol is None else self.tol,
            shots=config.simulation.shots if self.shots is None else self.shots,
            noise=config.simulation.noise if self.noise is None else self.noise,
            seed=config.simulation.seed if self.seed is None else self.seed,
            restarts=config.optimizer.restarts if self.restarts is None else self.restarts,
            columns=config.output.columns if self.columns is None else self.columns,
        )
        filled.validate()
        return filled

    def validate(self) -> None:
        _ = self.output_format
        if self.tol is not None and self.tol <= 0:
            raise PreconditionError(f"tolerance must be positive, got {self.tol}")
        if self.shots is not None and self.shots < 1:
            raise PreconditionError(f"shots must be >= 1, got {self.shots}")
        if self.noise is not None and self.noise < 0:
            raise PreconditionError(f"noise must be non-negative, got {self.noise}")
        if self.n is not None and self.input_path is not None:
            raise PreconditionError("give either --n or --in, not both")
        if self.command is Subcommand.SWEEP and not self.ns:
            raise PreconditionError("sweep needs at least one --n")


@dataclass
class CommandOutcome:
    """Artifact text, pass/fail verdict and an optional console summary"""
    text: str
    passed: bool = True
    document: Dict[str, Any] = field(default_factory=dict)
    summary: Optional[Callable[[Console], None]] = None


class CommandDispatcher:
    """Maps subcommands to their handlers"""

    def __init__(self, logger: logging.Logger):
        self.logger = logger

        # Subcommand handler mapping
        self._handlers: Dict[Subcommand, Callable[[RunConfig], CommandOutcome]] = {
            Subcommand.CONSTRUCT: self._handle_construct,
            Subcommand.VERIFY: self._handle_verify,
            Subcommand.KCBS: self._handle_kcbs,
            Subcommand.HARDY: self._handle_hardy,
            Subcommand.CLASSICAL: self._handle_classical,
            Subcommand.OPTIMIZE: self._handle_optimize,
            Subcommand.MAJORANA: self._handle_majorana,
            Subcommand.ONC: self._handle_onc,
            Subcommand.SIMULATE: self._handle_simulate,
            Subcommand.SWEEP: self._handle_sweep,
        }

    def dispatch(self, rc: RunConfig) -> CommandOutcome:
        handler = self._handlers[rc.command]
        self.logger.debug(f"Dispatching {rc.subcommand} (n={rc.n}, in={rc.input_path})")
        return handler(rc)

    @staticmethod
    def _require_n(rc: RunConfig) -> int:
        if rc.n is None:
            raise PreconditionError(f"{rc.subcommand} needs --n")
        return rc.n

    def _load_family(self, rc: RunConfig) -> MeasurementFamily:
        if rc.input_path is not None:
            fam = MeasurementFamily.from_dict(read_json(rc.input_path))
            self.logger.info(f"Loaded family n={fam.n}, d={fam.d} from {rc.input_path}")
            return fam
        return build_measurements(self._require_n(rc))

    def _handle_construct(self, rc: RunConfig) -> CommandOutcome:
        fam = build_measurements(self._require_n(rc))
        doc = fam.to_dict()
        summary = {"n": fam.n, "d": fam.d, "vectors": len(fam.vectors)}
        return CommandOutcome(
            text=dumps(doc, exact=True),
            document=doc,
            summary=lambda console: print_summary(console, "Family", summary),
        )

    def _handle_verify(self, rc: RunConfig) -> CommandOutcome:
        fam = self._load_family(rc)
        report = verify_family(build_family_graph(fam.n), fam, rc.tol)
        doc = report.to_dict()
        return CommandOutcome(
            text=dumps(doc),
            passed=report.passed,
            document=doc,
            summary=lambda console: print_report(console, report),
        )

    def _handle_kcbs(self, rc: RunConfig) -> CommandOutcome:
        fam = self._load_family(rc)
        g = build_family_graph(fam.n)
        beta = kcbs_value(fam)
        alpha = independence_number(g)
        doc = {
            "n": fam.n,
            "beta": beta,
            "classical_bound": alpha,
            "reduced_bound": HARDY_REDUCED_BOUND,
            "violation": beta - alpha,
            "contributions": {str(i): p for i, p in vertex_contributions(fam).items()},
        }
        check = CheckResult("kcbs_violation", beta > alpha + rc.tol, beta, f"classical bound {alpha}")
        return CommandOutcome(
            text=dumps(doc),
            passed=check.passed,
            document=doc,
            summary=lambda console: console.print(create_checks_table([check], f"KCBS n={fam.n}")),
        )

    def _handle_hardy(self, rc: RunConfig) -> CommandOutcome:
        fam = self._load_family(rc)
        g = build_family_graph(fam.n)
        sets = hardy_sets_for(g)
        quantum = hardy_quantum_report(g, fam, rc.tol, sets)
        classical = classical_analysis(g, sets)
        checks = [
            CheckResult("hardy_spans", quantum.conditions_ok,
                        max(quantum.residual_a, quantum.residual_b), "residual over V_A / V_B"),
            CheckResult("p11_positive", quantum.p11 > rc.tol, quantum.p11, "quantum P(1|1)"),
            CheckResult("classical_p11_zero", not classical.hardy_possible_with_x1,
                        classical.hardy_p11, "deterministic models"),
        ]
        doc = {
            "n": fam.n,
            "hardy_sets": [list(sets[0]), list(sets[1])],
            "conditions_ok": quantum.conditions_ok,
            "residual_a": quantum.residual_a,
            "residual_b": quantum.residual_b,
            "p_all_zero_a": quantum.p_all_zero_a,
            "p_all_zero_b": quantum.p_all_zero_b,
            "p11": quantum.p11,
            "classical_hardy_possible": classical.hardy_possible_with_x1,
            "classical_p11": classical.hardy_p11,
        }
        return CommandOutcome(
            text=dumps(doc),
            passed=all(c.passed for c in checks),
            document=doc,
            summary=lambda console: console.print(create_checks_table(checks, f"Hardy n={fam.n}")),
        )

    def _handle_classical(self, rc: RunConfig) -> CommandOutcome:
        n = self._require_n(rc)
        g = build_family_graph(n)
        sets = PENTAGON_HARDY_SETS if n == 5 else family_partitions(n)
        analysis = classical_analysis(g, sets)
        alpha_oracle = independence_number(g)
        checks = [
            CheckResult("alpha_oracle", analysis.alpha == alpha_oracle, analysis.alpha,
                        f"independence number {alpha_oracle}"),
            CheckResult("classical_p11_zero", not analysis.hardy_possible_with_x1,
                        analysis.hardy_p11, f"{analysis.assignments_checked} assignments"),
        ]
        doc = {
            "n": n,
            "alpha": analysis.alpha,
            "independence_number": alpha_oracle,
            "hardy_sets": [list(sets[0]), list(sets[1])],
            "hardy_possible_with_x1": analysis.hardy_possible_with_x1,
            "classical_p11": analysis.hardy_p11,
            "assignments_checked": analysis.assignments_checked,
            "best_assignment": list(analysis.best_assignment.ones),
        }
        return CommandOutcome(
            text=dumps(doc),
            passed=all(c.passed for c in checks),
            document=doc,
            summary=lambda console: console.print(create_checks_table(checks, f"Classical n={n}")),
        )

    def _handle_optimize(self, rc: RunConfig) -> CommandOutcome:
        fam = self._load_family(rc)
        result = max_violation_state(fam, restarts=rc.restarts, seed=rc.seed)
        oracle = float(np.linalg.eigvalsh(projector_sum(fam).matrix)[-1])
        gap = abs(result.lambda_max - oracle)
        check = CheckResult("eigen_oracle", result.converged and gap <= rc.tol, result.lambda_max,
                            f"eigvalsh {oracle:.12f}")
        doc = {"n": fam.n, "d": fam.d, **result.to_dict(), "oracle": oracle,
               "family_beta": kcbs_value(fam)}
        return CommandOutcome(
            text=dumps(doc),
            passed=check.passed,
            document=doc,
            summary=lambda console: console.print(create_checks_table([check], f"Optimum n={fam.n}")),
        )

    def _handle_majorana(self, rc: RunConfig) -> CommandOutcome:
        fam = self._load_family(rc)
        panels = family_constellations(fam)
        if rc.vertex is not None:
            wanted = rc.vertex if rc.vertex == "psi" else f"v{rc.vertex}"
            panels = [(label, c) for label, c in panels if label == wanted]
            if not panels:
                raise PreconditionError(f"no vector '{rc.vertex}' in a family of {fam.n}")

        flip = flip_symmetry_report(fam) if rc.check_flip else None
        doc: Dict[str, Any] = {
            "n": fam.n,
            "d": fam.d,
            "constellations": {label: c.to_dict() for label, c in panels},
        }
        if flip is not None:
            doc["flip_symmetry"] = flip.to_dict()

        if rc.output_format is OutputFormat.SVG:
            text = render_svg(panels, columns=rc.columns)
        else:
            text = dumps(doc)

        summary: Dict[str, Any] = {
            label: f"{len(c.points)} distinct, {c.south_pole_count} at south pole" for label, c in panels
        }
        if flip is not None:
            summary["flip symmetry"] = {c.label: f"{c.worst:.2e}" for c in flip.checks}
        return CommandOutcome(
            text=text,
            passed=flip.passed if flip is not None else True,
            document=doc,
            summary=lambda console: print_summary(console, f"Majorana n={fam.n}", summary),
        )

    def _handle_onc(self, rc: RunConfig) -> CommandOutcome:
        n = self._require_n(rc)
        delta = Fraction(1, 9) if rc.delta is None else rc.delta
        threshold = onc_threshold(n, delta)
        doc = threshold.to_dict()
        passed = True
        if rc.epsilon is not None:
            passed = threshold.certifies(rc.epsilon)
            doc["epsilon"] = rc.epsilon
            doc["certified"] = passed
        return CommandOutcome(
            text=dumps(doc),
            passed=passed,
            document=doc,
            summary=lambda console: print_summary(console, f"epsilon-ONC n={n}", doc),
        )

    def _handle_simulate(self, rc: RunConfig) -> CommandOutcome:
        fam = build_measurements(self._require_n(rc))
        measmap = perturb_family(fam, rc.noise, rc.seed)
        result = simulate_contexts(measmap, fam.state, rc.shots, rc.seed)
        doc = result.to_dict()
        summary = {
            "shots": result.shots,
            "empirical beta": result.empirical_beta,
            "exclusivity violation": result.empirical_exclusivity_violation,
            "epsilon estimate (tv)": result.epsilon_estimate,
            "epsilon exact (tv)": result.epsilon_exact_tv,
        }
        return CommandOutcome(
            text=dumps(doc),
            document=doc,
            summary=lambda console: print_summary(console, f"Simulation n={fam.n}, eta={rc.noise:g}", summary),
        )

    def _handle_sweep(self, rc: RunConfig) -> CommandOutcome:
        etas = rc.noises or (rc.noise,)
        seeds = rc.seeds or (rc.seed,)
        rows = sweep(rc.ns, etas, seeds, rc.shots)
        records: List[Dict[str, Any]] = [r.to_dict() for r in rows]
        if rc.output_format is OutputFormat.CSV:
            text = to_csv(records, SWEEP_FIELDS)
        else:
            text = dumps({"rows": records})
        summary = {"rows": len(rows), "n": list(rc.ns), "eta": list(etas), "seeds": list(seeds)}
        return CommandOutcome(
            text=text,
            document={"rows": records},
            summary=lambda console: print_summary(console, "Sweep", summary),
        )


__all__ = ['Subcommand', 'OutputFormat', 'RunConfig', 'CommandOutcome', 'CommandDispatcher']
