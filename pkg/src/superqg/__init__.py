"""Exact evaluated R-matrices, RTT presentations and PBW checks for gl and osp quantum supergroups."""

from __future__ import annotations

__version__ = "0.1.0"

from .qfield import ONE, ZERO, Q, QRat, parse_qrat, q_pow
from .rootdata import RootDatum, build_datum, convex_order
from .rmatrix import RMatrixBundle, build_R, build_rep

__all__ = [
    "__version__",
    "Q",
    "ONE",
    "ZERO",
    "QRat",
    "q_pow",
    "parse_qrat",
    "RootDatum",
    "build_datum",
    "convex_order",
    "RMatrixBundle",
    "build_R",
    "build_rep",
]
