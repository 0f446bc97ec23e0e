from .constellation_view import render_svg, disc_markers
from .report_view import print_report, print_summary

__all__ = ['render_svg', 'disc_markers', 'print_report', 'print_summary']
