"""Finitely generated upper-triangular group presentations with exact lifts."""

from __future__ import annotations

import numpy as np

from .errors import InvalidLift
from .exact import Basis, ExactMatrix
from .triangular import commutes


class GroupPresentation:
    """Generator list (exact unit-determinant upper-triangular lifts) plus
    the basis declaration the entries live over."""

    def __init__(self, name: str, basis: Basis, generators):
        self.name = name
        self.basis = basis
        self.generators = list(generators)
        for k, g in enumerate(self.generators):
            if not isinstance(g, ExactMatrix):
                raise InvalidLift(f"generator {k} is not an exact lift")
            if not g.is_upper_triangular():
                raise InvalidLift(f"generator {k} is not upper triangular")
            det = g.det()
            if not (det.is_single_term() and det.to_scalar().is_one()):
                raise InvalidLift(f"generator {k} does not have determinant 1")

    def numeric_generators(self):
        return [g.numpy() for g in self.generators]

    def pairwise_commutative(self) -> bool:
        gs = self.generators
        return all(
            commutes(gs[i], gs[j])
            for i in range(len(gs))
            for j in range(i + 1, len(gs))
        )

    def __repr__(self):
        return f"GroupPresentation({self.name!r}, {len(self.generators)} generators)"
