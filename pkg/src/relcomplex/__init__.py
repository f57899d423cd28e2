"""Relational complexity, height and irredundant base size of classical groups on subspaces."""

from __future__ import annotations

from .gf import FieldSpec, field_create, field_from_order
from .groupaction import GroupSpec, SemilinearElem, apply, apply_tuple, contains, group_create, tuple_equivalent
from .projective import Subspace, SubspaceTuple, enumerate_omega, point
from .relcomp import (
    ActionHandle,
    Bounds,
    RCReport,
    height_compute,
    ibase_compute,
    rc_bruteforce,
    rc_compute,
    theorem_bounds,
)
from .witnesses import HypothesisError, VerifyReport, WitnessPackage, verify

__version__ = "0.1.0"

__all__ = [
    "ActionHandle",
    "Bounds",
    "FieldSpec",
    "GroupSpec",
    "HypothesisError",
    "RCReport",
    "SemilinearElem",
    "Subspace",
    "SubspaceTuple",
    "VerifyReport",
    "WitnessPackage",
    "apply",
    "apply_tuple",
    "contains",
    "enumerate_omega",
    "field_create",
    "field_from_order",
    "group_create",
    "height_compute",
    "ibase_compute",
    "point",
    "rc_bruteforce",
    "rc_compute",
    "theorem_bounds",
    "tuple_equivalent",
    "verify",
]
