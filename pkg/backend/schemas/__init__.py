from .document import FORMAT_VERSION, EdgeDocument, ModelDocument, NodeDocument, TreeDocument
from .analysis import CaseReport, SemanticsReport, case_reports, report_lines

__all__ = [
    "FORMAT_VERSION",
    "EdgeDocument",
    "ModelDocument",
    "NodeDocument",
    "TreeDocument",
    "CaseReport",
    "SemanticsReport",
    "case_reports",
    "report_lines",
]
