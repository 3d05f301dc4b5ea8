"""End-to-end pipelines building K3 surfaces with many elliptic pencils.

Each builder runs over a small finite field from a 64-bit seed, records
every verification step in a ConstructionReport, and retries seeded
randomness on detected degeneracies up to the configured bound.
"""

from ..errors import K3labError
from ..exactlin import FiniteField
from .genus4 import (build_genus4, extend_genus4_curve, genus4_surface_ideal,
                     ruling_plane, split_quadric_basis)
from .genus6 import build_genus6
from .genus8 import (build_genus8_nine, build_genus8_secant,
                     search_genus8_configuration)
from .common import poly_from_dense
from .report import (ConstructionReport, ReportBuilder, SCHEMA,
                     canonical_json, verify_report)
from .rng import Rng

__all__ = [
    "Rng", "ConstructionReport", "ReportBuilder", "SCHEMA",
    "build_genus4", "extend_genus4_curve", "genus4_surface_ideal",
    "split_quadric_basis", "ruling_plane", "build_genus6",
    "build_genus8_secant", "build_genus8_nine",
    "search_genus8_configuration",
    "verify_report", "canonical_json",
]


def _builder_for_kind(kind: str, stored: dict):
    """Replay entry point for verify_report; returns f(field, seed, cfg)."""
    if kind == "genus4":
        return build_genus4
    if kind == "genus4-extend":
        def replay(field, seed, cfg):
            inputs = stored["ideals"]["input_curve"]
            quadric = poly_from_dense(field, 4, 2, inputs["quadric"])
            cubic = poly_from_dense(field, 4, 3, inputs["cubic"])
            return extend_genus4_curve(field, quadric, cubic, seed, cfg)
        return replay
    if kind == "genus6":
        return build_genus6
    if kind.startswith("genus8-secant-"):
        i = int(kind.rsplit("-", 1)[1])
        def replay(field, seed, cfg):
            return build_genus8_secant(i, field, seed, cfg)
        return replay
    if kind == "genus8-nine":
        return build_genus8_nine
    raise K3labError(f"unknown report kind: {kind}")
