"""Empirical verification: enumerate group balls, push compact sample sets
through the action, cluster accumulation points and compare against the
predicted limit set.

Everything is deterministic: fixed enumeration order, fixed clustering
order, and a thread count (KLEINIAN3_THREADS) that never changes results,
only wall time.
"""

from __future__ import annotations

import io
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import EmptyBall, ExplosionGuard, UnrepresentableInChart
from .limitsets import LimitSetDescription
from .presentation import GroupPresentation
from .projective import ProjectivePoint, normalize_lift

_CHARTS = {"affine_x1": 0, "affine_x2": 1, "affine_x3": 2}


@dataclass
class BallEnumeration:
    elements: list
    word_lengths: list
    word_length: int

    def outer_shell(self):
        keep = [
            g
            for g, l in zip(self.elements, self.word_lengths)
            if l >= self.word_length - 1
        ]
        return keep


def _dedup_key(m):
    flat = m.ravel()
    mags = np.abs(flat)
    idx = int(np.argmax(mags >= mags.max() * (1 - 1e-12)))
    norm = flat / flat[idx]
    re = np.round(norm.real / 1e-9).astype(np.int64)
    im = np.round(norm.imag / 1e-9).astype(np.int64)
    return tuple(re) + tuple(im)


def ball_enumerate(p, L: int, guard=10**6) -> BallEnumeration:
    """All reduced words of length <= L over the generators and inverses,
    deduplicated projectively, in breadth-first input order."""
    if L < 1:
        raise ValueError("L must be at least 1")
    if isinstance(p, GroupPresentation):
        gens = [normalize_lift(g) for g in p.numeric_generators()]
    else:
        gens = [normalize_lift(np.asarray(g, dtype=complex)) for g in p]
    steps = []
    for g in gens:
        steps.append(g)
        steps.append(np.linalg.inv(g))
    identity = np.eye(3, dtype=complex)
    elements = [identity]
    lengths = [0]
    seen = {_dedup_key(identity): 0}
    frontier = [identity]
    for length in range(1, L + 1):
        new_frontier = []
        for m in frontier:
            for s in steps:
                cand = m @ s
                key = _dedup_key(cand)
                if key in seen:
                    continue
                seen[key] = len(elements)
                elements.append(cand)
                lengths.append(length)
                new_frontier.append(cand)
                if len(elements) > guard:
                    raise ExplosionGuard(
                        f"ball exceeded {guard} elements at length {length}"
                    )
        frontier = new_frontier
        if not frontier:
            break
    return BallEnumeration(elements, lengths, L)


@dataclass
class CompactSampleSpec:
    """Grid of sample points in one affine chart, kept away from the
    excluded pieces by the stated margin.

    The two complex chart coordinates vary jointly: coordinate one walks a
    re/im grid, coordinate two a deterministic golden-angle disk sequence,
    so resolution^2 points cover both axes.
    """

    chart: str = "affine_x3"
    center: tuple = (0j, 0j)
    radius: float = 1.0
    resolution: int = 12
    exclusion: list = field(default_factory=list)
    margin: float = 0.05

    def sample_points(self):
        if self.chart not in _CHARTS:
            raise ValueError(f"unknown chart {self.chart!r}")
        unit_slot = _CHARTS[self.chart]
        n = self.resolution
        golden = math.pi * (3.0 - math.sqrt(5.0))
        pts = []
        us = np.linspace(-1.0, 1.0, n)
        k = 0
        for a in range(n):
            for b in range(n):
                x = self.center[0] + self.radius * (us[a] + 1j * us[b])
                r = math.sqrt((k + 0.5) / (n * n))
                ang = k * golden
                y = self.center[1] + self.radius * r * (
                    math.cos(ang) + 1j * math.sin(ang)
                )
                k += 1
                coords = [0j, 0j, 0j]
                coords[unit_slot] = 1.0 + 0j
                free = [i for i in range(3) if i != unit_slot]
                coords[free[0]] = x
                coords[free[1]] = y
                z = ProjectivePoint(coords)
                if all(
                    piece.distance(z) >= self.margin
                    for excl in self.exclusion
                    for piece in _pieces_of(excl)
                ):
                    pts.append(z)
        return pts


def _pieces_of(excl):
    if isinstance(excl, LimitSetDescription):
        return excl.pieces
    return [excl]


@dataclass
class AccumulationReport:
    points: list  # (ProjectivePoint, multiplicity)
    hausdorff_to_predicted: Optional[float]
    max_point_distance: Optional[float]
    ball_radius_used: int
    sample_count: int = 0
    candidate_count: int = 0

    def to_json(self):
        return {
            "clusters": [
                {
                    "coords": [[float(c.real), float(c.imag)] for c in p.coords],
                    "multiplicity": int(mult),
                }
                for p, mult in self.points
            ],
            "hausdorff_to_predicted": self.hausdorff_to_predicted,
            "max_point_distance": self.max_point_distance,
            "ball_radius_used": self.ball_radius_used,
            "sample_count": self.sample_count,
            "candidate_count": self.candidate_count,
        }


def _worker_count():
    raw = os.environ.get("KLEINIAN3_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def orbit_accumulate(
    ball: BallEnumeration,
    spec: CompactSampleSpec,
    near_infinity_cut: float = 1e3,
    predicted: Optional[LimitSetDescription] = None,
    cluster_resolution: float = 1e-3,
) -> AccumulationReport:
    """Apply the outer-shell elements of large norm to the sample grid and
    cluster the images at chordal resolution."""
    if not ball.elements:
        raise EmptyBall("ball enumeration is empty")
    samples = spec.sample_points()
    shell = [
        g for g in ball.outer_shell() if np.linalg.norm(g, 2) >= near_infinity_cut
    ]
    coords = np.array([z.coords for z in samples], dtype=complex).T  # 3 x N

    def apply_one(g):
        if coords.size == 0:
            return np.zeros((3, 0), dtype=complex)
        img = g @ coords
        mags = np.abs(img)
        tops = mags.max(axis=0)
        idx = mags.argmax(axis=0)
        scale = img[idx, np.arange(img.shape[1])]
        return img / scale

    workers = _worker_count()
    if workers > 1 and len(shell) > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            blocks = list(ex.map(apply_one, shell))
    else:
        blocks = [apply_one(g) for g in shell]

    clusters = []  # [rep coords, count]
    candidates = 0
    for block in blocks:
        for j in range(block.shape[1]):
            z = ProjectivePoint(block[:, j])
            candidates += 1
            for c in clusters:
                if c[0].distance(z) <= cluster_resolution:
                    c[1] += 1
                    break
            else:
                clusters.append([z, 1])

    points = [(c[0], c[1]) for c in clusters]
    hausdorff = None
    max_pt = None
    if predicted is not None and points:
        dists = [predicted.distance(p) for p, _ in points]
        hausdorff = float(max(dists))
        max_pt = hausdorff
    return AccumulationReport(
        points,
        hausdorff,
        max_pt,
        ball.word_length,
        sample_count=len(samples),
        candidate_count=candidates,
    )


@dataclass
class VerifyResult:
    passed: bool
    coverage: float
    offending: list
    details: str

    def __bool__(self):
        return self.passed


def limit_set_verify(
    report: AccumulationReport, predicted: LimitSetDescription, eps: float
) -> VerifyResult:
    """PASS iff every accumulation cluster lies within eps of the predicted
    set.  Containment is one-directional; how much of the prediction was
    seen is reported as a coverage fraction, not pass/fail."""
    offending = []
    for p, mult in report.points:
        d = predicted.distance(p)
        if d > eps:
            offending.append((p, mult, d))
    covered = 0
    for piece in predicted.pieces:
        if any(piece.distance(p) <= max(eps, 1e-2) for p, _ in report.points):
            covered += 1
    coverage = covered / len(predicted.pieces) if predicted.pieces else 1.0
    if not report.points:
        return VerifyResult(True, 0.0, [], "vacuous: no accumulation clusters")
    if offending:
        det = "; ".join(
            f"{p!r} (x{m}) at distance {d:.2e}" for p, m, d in offending[:5]
        )
        return VerifyResult(False, coverage, offending, f"offending clusters: {det}")
    return VerifyResult(True, coverage, [], f"all clusters within {eps:g}")


# ---------------------------------------------------------------------------
# export


def _chart_coords(p: ProjectivePoint, chart: str):
    unit_slot = _CHARTS[chart]
    free = [i for i in range(3) if i != unit_slot]
    denom = p.coords[unit_slot]
    if abs(denom) <= 1e-9:
        raise UnrepresentableInChart(repr(p))
    return p.coords[free[0]] / denom, p.coords[free[1]] / denom


def export(report: AccumulationReport, format: str = "csv",
           chart: str = "affine_x3",
           predicted: Optional[LimitSetDescription] = None) -> bytes:
    """Serialize an accumulation report: one csv row per cluster, full json,
    or an 800x800 svg scatter of the chart's real slice."""
    if format == "json":
        data = report.to_json()
        if predicted is not None:
            data["predicted"] = predicted.to_json()
        return json.dumps(data, indent=2, sort_keys=True).encode()
    if format == "csv":
        return _export_csv(report, chart, predicted)
    if format == "svg":
        return _export_svg(report, chart, predicted)
    raise ValueError(f"unknown format {format!r}")


def _export_csv(report, chart, predicted):
    out = io.StringIO()
    out.write(
        "chart_x_re,chart_x_im,chart_y_re,chart_y_im,multiplicity,dist_to_prediction\n"
    )
    sidecar = []
    for p, mult in report.points:
        d = predicted.distance(p) if predicted is not None else float("nan")
        try:
            x, y = _chart_coords(p, chart)
        except UnrepresentableInChart:
            sidecar.append((p, mult, d))
            continue
        out.write(
            f"{x.real:.12g},{x.imag:.12g},{y.real:.12g},{y.imag:.12g},"
            f"{mult},{d:.12g}\n"
        )
    if sidecar:
        out.write("# unrepresentable_in_chart\n")
        for p, mult, d in sidecar:
            cs = ",".join(f"{c.real:.12g}{c.imag:+.12g}j" for c in p.coords)
            out.write(f"# {cs},{mult},{d:.12g}\n")
    return out.getvalue().encode()


def _svg_window(report, chart):
    xs, ys = [], []
    for p, _ in report.points:
        try:
            x, y = _chart_coords(p, chart)
        except UnrepresentableInChart:
            continue
        xs.append(x.real)
        ys.append(y.real)
    if not xs:
        return (-2.0, 2.0, -2.0, 2.0)
    pad = 0.5 + 0.2 * max(
        max(abs(v) for v in xs), max(abs(v) for v in ys), 1.0
    )
    lo = min(min(xs), min(ys)) - pad
    hi = max(max(xs), max(ys)) + pad
    return (lo, hi, lo, hi)


def _export_svg(report, chart, predicted):
    x0, x1, y0, y1 = _svg_window(report, chart)
    size = 800.0

    def to_px(x, y):
        return (
            (x - x0) / (x1 - x0) * size,
            size - (y - y0) / (y1 - y0) * size,
        )

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {size:g} {size:g}">',
        f'<rect width="{size:g}" height="{size:g}" fill="white"/>',
        '<g id="predicted" stroke="#1f77b4" fill="#1f77b4">',
    ]
    unit_slot = _CHARTS[chart]
    free = [i for i in range(3) if i != unit_slot]
    if predicted is not None:
        for piece in predicted.pieces:
            if piece.kind == "point":
                try:
                    x, y = _chart_coords(piece.point, chart)
                except UnrepresentableInChart:
                    continue
                px, py = to_px(x.real, y.real)
                parts.append(
                    f'<circle cx="{px:.2f}" cy="{py:.2f}" r="8" fill-opacity="0.4"/>'
                )
            elif piece.kind == "line":
                d = piece.line.dual
                a, b, c = d[free[0]], d[free[1]], d[unit_slot]
                seg = _line_segment_real(a, b, c, x0, x1, y0, y1)
                if seg:
                    (ax, ay), (bx, by) = seg
                    pax, pay = to_px(ax, ay)
                    pbx, pby = to_px(bx, by)
                    parts.append(
                        f'<line x1="{pax:.2f}" y1="{pay:.2f}" '
                        f'x2="{pbx:.2f}" y2="{pby:.2f}" stroke-width="3" '
                        f'stroke-opacity="0.5"/>'
                    )
    parts.append("</g>")
    parts.append('<g id="clusters" fill="#d62728">')
    for p, mult in report.points:
        try:
            x, y = _chart_coords(p, chart)
        except UnrepresentableInChart:
            continue
        px, py = to_px(x.real, y.real)
        r = 3.0 + min(5.0, math.log10(1 + mult))
        parts.append(f'<circle cx="{px:.2f}" cy="{py:.2f}" r="{r:.2f}"/>')
    parts.append("</g></svg>")
    return "\n".join(parts).encode()


def _line_segment_real(a, b, c, x0, x1, y0, y1):
    """Real-slice trace of the complex line a x + b y + c = 0 clipped to the
    window; uses the real parts (imaginary parts when degenerate)."""
    ar, br, cr = a.real, b.real, c.real
    if abs(ar) < 1e-12 and abs(br) < 1e-12:
        ar, br, cr = a.imag, b.imag, c.imag
        if abs(ar) < 1e-12 and abs(br) < 1e-12:
            return None
    pts = []
    if abs(br) >= abs(ar):
        for x in (x0, x1):
            y = -(ar * x + cr) / br
            pts.append((x, y))
    else:
        for y in (y0, y1):
            x = -(br * y + cr) / ar
            pts.append((x, y))
    return pts
