"""The output language of the limit-set theorems: finite unions of labeled
pieces (points, lines, pencils of lines through a point).

Every piece knows its chordal distance to a query point, so orbit
simulations can verify containment numerically.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .projective import (
    E1,
    E2,
    E3,
    LINE_E1E2,
    LINE_E1E3,
    LINE_E2E3,
    ProjectiveLine,
    ProjectivePoint,
)


class Piece:
    kind = "abstract"

    def distance(self, z: ProjectivePoint) -> float:
        raise NotImplementedError

    def to_json(self):
        raise NotImplementedError


class PointPiece(Piece):
    kind = "point"

    def __init__(self, point: ProjectivePoint):
        self.point = point

    def distance(self, z):
        return self.point.distance(z)

    def to_json(self):
        return {"type": "point", "coords": _cvec(self.point.coords)}

    def __eq__(self, other):
        return isinstance(other, PointPiece) and self.point == other.point

    def __repr__(self):
        return f"Point({self.point!r})"


class LinePiece(Piece):
    kind = "line"

    def __init__(self, line: ProjectiveLine):
        self.line = line

    def distance(self, z):
        return self.line.distance_to_point(z)

    def to_json(self):
        return {"type": "line", "dual": _cvec(self.line.dual)}

    def __eq__(self, other):
        return isinstance(other, LinePiece) and self.line == other.line

    def __repr__(self):
        return f"Line({self.line!r})"


class PencilPiece(Piece):
    """Lines through a base point with directions from a closed family.

    closure "point" is a single line, "circle" a real circle of directions
    spanned by two direction vectors, "full" the whole dual line (the cone
    then covers CP^2).  Directions (x, y) describe the line
    {z : x z2 + y z3 = 0} through e1; a general base point stores dual
    vectors directly.
    """

    kind = "pencil"

    def __init__(self, base: ProjectivePoint, closure: str, spans):
        self.base = base
        self.closure = closure  # "point" | "circle" | "full"
        self.spans = [np.asarray(s, dtype=complex) for s in spans]  # dual vectors

    @classmethod
    def through_e1(cls, closure, direction_pairs):
        spans = [np.array([0.0, x, y], dtype=complex) for x, y in direction_pairs]
        return cls(E1, closure, spans)

    def distance(self, z):
        if self.closure == "full":
            return 0.0
        if self.closure == "point":
            return LinePiece(ProjectiveLine(self.spans[0])).distance(z)
        # circle: minimize over cos(u) span0 + sin(u) span1
        zs = z.coords
        nz = np.linalg.norm(zs)
        best = math.inf
        a, b = self.spans[0], self.spans[1]
        for u in np.linspace(0.0, math.pi, 64, endpoint=False):
            d = math.cos(u) * a + math.sin(u) * b
            nd = np.linalg.norm(d)
            if nd < 1e-14:
                continue
            best = min(best, abs(np.dot(d, zs)) / (nd * nz))
        # local golden-section refinement around the best sample
        lo, hi = 0.0, math.pi
        for _ in range(2):
            us = np.linspace(lo, hi, 128)
            vals = []
            for u in us:
                d = math.cos(u) * a + math.sin(u) * b
                nd = np.linalg.norm(d)
                vals.append(abs(np.dot(d, zs)) / (nd * nz) if nd > 1e-14 else math.inf)
            k = int(np.argmin(vals))
            best = min(best, vals[k])
            w = (hi - lo) / 16
            lo, hi = us[k] - w, us[k] + w
        return float(best)

    def to_json(self):
        return {
            "type": "pencil",
            "base": _cvec(self.base.coords),
            "closure": self.closure,
            "spans": [_cvec(s) for s in self.spans],
        }

    def __repr__(self):
        return f"Pencil(base={self.base!r}, closure={self.closure})"


def _cvec(v):
    return [[float(c.real), float(c.imag)] for c in v]


def _cvec_load(data):
    return np.array([complex(re, im) for re, im in data])


class LimitSetDescription:
    """Finite union of labeled pieces plus the theorem case label."""

    def __init__(self, pieces, case_label="", notes=()):
        self.pieces = list(pieces)
        self.case_label = case_label
        self.notes = list(notes)

    def distance(self, z: ProjectivePoint) -> float:
        return min(p.distance(z) for p in self.pieces)

    def contains(self, z, eps=1e-9):
        return self.distance(z) <= eps

    def to_json(self):
        return {
            "case_label": self.case_label,
            "pieces": [p.to_json() for p in self.pieces],
            "notes": self.notes,
        }

    @classmethod
    def from_json(cls, data):
        pieces = []
        for pd in data["pieces"]:
            if pd["type"] == "point":
                pieces.append(PointPiece(ProjectivePoint(_cvec_load(pd["coords"]))))
            elif pd["type"] == "line":
                pieces.append(LinePiece(ProjectiveLine(_cvec_load(pd["dual"]))))
            else:
                pieces.append(
                    PencilPiece(
                        ProjectivePoint(_cvec_load(pd["base"])),
                        pd["closure"],
                        [_cvec_load(s) for s in pd["spans"]],
                    )
                )
        return cls(pieces, data.get("case_label", ""), data.get("notes", []))

    def dumps(self):
        return json.dumps(self.to_json(), indent=2)

    def same_shape(self, other: "LimitSetDescription") -> bool:
        """Set-level comparison of point/line pieces (ignores labels)."""
        if len(self.pieces) != len(other.pieces):
            return False
        used = set()
        for p in self.pieces:
            hit = None
            for i, q in enumerate(other.pieces):
                if i in used or p.kind != q.kind:
                    continue
                if p.kind == "pencil":
                    if p.closure == q.closure:
                        hit = i
                        break
                elif p == q:
                    hit = i
                    break
            if hit is None:
                return False
            used.add(hit)
        return True

    def swap_coordinates(self, i, j):
        """Relabel under the coordinate transposition i <-> j (0-based)."""
        perm = list(range(3))
        perm[i], perm[j] = perm[j], perm[i]
        out = []
        for p in self.pieces:
            if isinstance(p, PointPiece):
                out.append(PointPiece(ProjectivePoint(p.point.coords[perm])))
            elif isinstance(p, LinePiece):
                out.append(LinePiece(ProjectiveLine(p.line.dual[perm])))
            else:
                out.append(
                    PencilPiece(
                        ProjectivePoint(p.base.coords[perm]),
                        p.closure,
                        [s[perm] for s in p.spans],
                    )
                )
        return LimitSetDescription(out, self.case_label, self.notes)

    def __repr__(self):
        label = f" [{self.case_label}]" if self.case_label else ""
        return "LimitSet(" + " U ".join(repr(p) for p in self.pieces) + ")" + label


# common shapes
def points_e1_e2():
    return [PointPiece(E1), PointPiece(E2)]


def line_e1e2_piece():
    return LinePiece(LINE_E1E2)


def line_e2e3_piece():
    return LinePiece(LINE_E2E3)


def line_e1e3_piece():
    return LinePiece(LINE_E1E3)


def point_pieces(*pts):
    return [PointPiece(p) for p in pts]
