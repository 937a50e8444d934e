"""Convex cells, near-vertical line arrangements, and inscribed squares.

The inscribed-square primitive works on any convex polygon cell.  For a
fixed orientation theta, a square of side s fits somewhere in the cell
exactly when the cell eroded by the rotated square is non-empty.  The
erosion of {x : n_i . x <= b_i} by a centered square is again a
half-plane intersection with offsets reduced by the square's support
in each normal direction:

    {x : n_i . x <= b_i - s * u_i(theta)},
    u_i(theta) = (|n_i . d1| + |n_i . d2|) / 2,

where d1, d2 are the square's (unit, orthogonal) edge directions.  The
side length at fixed theta is found by binary search on s over that
emptiness test; orientations are scanned on a grid over [0, pi/2) (the
square's symmetry period) and the best grid neighborhoods are refined
by bracket zooming.

Feasibility of a bounded half-plane intersection is decided from vertex
candidates: the region is non-empty iff the intersection point of some
pair of constraint lines satisfies every constraint (up to a small
slack, which also admits the single-point region at the exact optimum).
The search is vectorized over orientations and batched over cells so
large perturbation sweeps stay cheap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateCellError, DomainError, InvalidPerturbationError

# Slack for the half-plane vertex test; admits degenerate (point) erosions.
GEO_TOL = 1e-12

# Default orientation grid step for inscribed-square sweeps.
DEFAULT_ANGLE_RESOLUTION = (math.pi / 2) / 96

_QUARTER = math.pi / 2


def _cross2(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]


def convex_cell(points) -> np.ndarray:
    """Validate and normalize a convex polygon: CCW (m, 2) array, m >= 3.

    Consecutive duplicate and collinear vertices are dropped.  Raises
    DegenerateCellError for (numerically) zero area and DomainError for
    a non-convex vertex sequence.
    """
    poly = np.asarray(points, dtype=float)
    if poly.ndim != 2 or poly.shape[1] != 2 or poly.shape[0] < 3:
        raise DegenerateCellError(f"cell needs at least 3 planar points, got shape {poly.shape}")
    if not np.all(np.isfinite(poly)):
        raise DomainError("cell vertices must be finite")

    scale = max(1.0, float(np.max(np.abs(poly))))
    eps = 1e-12 * scale * scale

    # Drop consecutive duplicates (closed polygon).
    keep = [i for i in range(len(poly)) if not np.allclose(poly[i], poly[(i + 1) % len(poly)], atol=1e-15 * scale)]
    poly = poly[keep]
    if len(poly) < 3:
        raise DegenerateCellError("cell collapses to fewer than 3 distinct vertices")

    area2 = float(_cross2(poly, np.roll(poly, -1, axis=0)).sum())
    if abs(area2) <= 2e-15 * scale * scale:
        raise DegenerateCellError(f"cell has zero area (2A = {area2!r})")
    if area2 < 0.0:
        poly = poly[::-1].copy()

    # Convexity and collinear-vertex removal on the CCW polygon.
    while True:
        prev = np.roll(poly, 1, axis=0)
        nxt = np.roll(poly, -1, axis=0)
        cross = _cross2(poly - prev, nxt - poly)
        if np.any(cross < -eps):
            raise DomainError("cell must be convex")
        straight = cross <= eps
        if not np.any(straight):
            break
        poly = poly[~straight]
        if len(poly) < 3:
            raise DegenerateCellError("cell has zero area after collinear-vertex removal")
    return poly


def cell_area(points) -> float:
    poly = np.asarray(points, dtype=float)
    return 0.5 * abs(float(_cross2(poly, np.roll(poly, -1, axis=0)).sum()))


def _halfplanes(poly: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Outward unit normals and offsets so the cell is {x : N x <= b}."""
    edges = np.roll(poly, -1, axis=0) - poly
    lengths = np.hypot(edges[:, 0], edges[:, 1])
    normals = np.stack((edges[:, 1], -edges[:, 0]), axis=1) / lengths[:, None]
    offsets = np.einsum("ij,ij->i", normals, poly)
    return normals, offsets


def _feasible(
    normals: np.ndarray,
    eff_offsets: np.ndarray,
    pair_i: np.ndarray,
    pair_j: np.ndarray,
    dets: np.ndarray,
) -> np.ndarray:
    """Non-emptiness of {x : N x <= c} per (cell, orientation) column.

    normals: (G, m, 2); eff_offsets: (G, m, T); dets: (G, P).
    """
    G, m, T = eff_offsets.shape
    feasible = np.zeros((G, T), dtype=bool)
    nx = normals[:, :, 0]
    ny = normals[:, :, 1]
    with np.errstate(divide="ignore", invalid="ignore"):
        for idx in range(len(pair_i)):
            i = pair_i[idx]
            j = pair_j[idx]
            det = dets[:, idx]
            valid = np.abs(det) > 1e-14
            if not np.any(valid):
                continue
            ci = eff_offsets[:, i, :]
            cj = eff_offsets[:, j, :]
            px = (ci * ny[:, j, None] - cj * ny[:, i, None]) / det[:, None]
            py = (nx[:, i, None] * cj - nx[:, j, None] * ci) / det[:, None]
            lhs = nx[:, :, None] * px[:, None, :] + ny[:, :, None] * py[:, None, :]
            ok = np.all(lhs <= eff_offsets + GEO_TOL, axis=1)
            feasible |= ok & valid[:, None]
    return feasible


def _max_sides_at_angles(
    normals: np.ndarray,
    offsets: np.ndarray,
    theta: np.ndarray,
    hi0: np.ndarray,
    pair_i: np.ndarray,
    pair_j: np.ndarray,
    dets: np.ndarray,
    side_tol: float,
) -> np.ndarray:
    """Binary search on square side per (cell, orientation); returns (G, T)."""
    G, T = theta.shape
    d1 = np.stack((np.cos(theta), np.sin(theta)), axis=-1)
    d2 = np.stack((-d1[..., 1], d1[..., 0]), axis=-1)
    nd1 = np.einsum("gmc,gtc->gmt", normals, d1)
    nd2 = np.einsum("gmc,gtc->gmt", normals, d2)
    support = 0.5 * (np.abs(nd1) + np.abs(nd2))

    lo = np.zeros((G, T))
    hi = np.broadcast_to(hi0[:, None], (G, T)).copy()
    iters = max(1, int(math.ceil(math.log2(max(float(hi0.max()), 2.0 * side_tol) / side_tol))))
    for _ in range(min(iters, 80)):
        mid = 0.5 * (lo + hi)
        eff = offsets[:, :, None] - mid[:, None, :] * support
        feas = _feasible(normals, eff, pair_i, pair_j, dets)
        lo = np.where(feas, mid, lo)
        hi = np.where(feas, hi, mid)
    return lo


def _pairs(m: int) -> tuple[np.ndarray, np.ndarray]:
    pi, pj = zip(*[(i, j) for i in range(m) for j in range(i + 1, m)])
    return np.asarray(pi), np.asarray(pj)


def largest_squares(
    cells,
    angle_resolution: float = DEFAULT_ANGLE_RESOLUTION,
    side_tol: float = 1e-12,
) -> np.ndarray:
    """Largest inscribed square side for each convex cell in `cells`.

    Orientations are scanned on a grid of step <= angle_resolution over
    [0, pi/2); the two best local maxima per cell are refined by bracket
    zooming down to ~1e-9 rad.  Results carry the binary-search
    resolution side_tol plus the feasibility slack GEO_TOL, so they can
    sit a few 1e-12 on either side of the exact optimum.
    """
    if angle_resolution <= 0.0:
        raise DomainError(f"angle_resolution must be positive, got {angle_resolution!r}")
    polys = [convex_cell(c) for c in cells]
    result = np.zeros(len(polys))

    by_edge_count: dict[int, list[int]] = {}
    for idx, poly in enumerate(polys):
        by_edge_count.setdefault(len(poly), []).append(idx)

    T = max(8, int(math.ceil(_QUARTER / angle_resolution)))
    step = _QUARTER / T
    zoom_points = 9
    zoom_rounds = max(1, int(math.ceil(math.log(step / 1e-9) / math.log((zoom_points - 1) / 2))))

    for m, idxs in by_edge_count.items():
        G = len(idxs)
        normals = np.empty((G, m, 2))
        offsets = np.empty((G, m))
        hi0 = np.empty(G)
        for row, idx in enumerate(idxs):
            normals[row], offsets[row] = _halfplanes(polys[idx])
            spans = polys[idx].max(axis=0) - polys[idx].min(axis=0)
            hi0[row] = float(min(spans)) * (1.0 + 1e-9) + 1e-12
        pair_i, pair_j = _pairs(m)
        dets = (
            normals[:, pair_i, 0] * normals[:, pair_j, 1]
            - normals[:, pair_i, 1] * normals[:, pair_j, 0]
        )

        grid = np.broadcast_to(np.arange(T) * step, (G, T))
        s_grid = _max_sides_at_angles(normals, offsets, grid, hi0, pair_i, pair_j, dets, side_tol)
        best = s_grid.max(axis=1)
        rows = np.arange(G)
        top_idx = s_grid.argmax(axis=1)

        # Second-best local maximum (circular grid), outside the top's window.
        is_local = (s_grid >= np.roll(s_grid, 1, axis=1)) & (s_grid >= np.roll(s_grid, -1, axis=1))
        masked = np.where(is_local, s_grid, -np.inf)
        for off in range(-2, 3):
            masked[rows, (top_idx + off) % T] = -np.inf
        second_idx = masked.argmax(axis=1)

        for centers in (top_idx, second_idx):
            theta_c = centers * step
            hw = step
            for _ in range(zoom_rounds):
                offs = np.linspace(-1.0, 1.0, zoom_points) * hw
                theta = theta_c[:, None] + offs[None, :]
                s = _max_sides_at_angles(
                    normals, offsets, theta, hi0, pair_i, pair_j, dets, side_tol
                )
                pick = s.argmax(axis=1)
                theta_c = theta[rows, pick]
                best = np.maximum(best, s[rows, pick])
                hw *= 2.0 / (zoom_points - 1)

        result[idxs] = best
    return result


def largest_square_in_cell(
    cell,
    angle_resolution: float = DEFAULT_ANGLE_RESOLUTION,
    side_tol: float = 1e-12,
) -> float:
    """Side of the largest square (any orientation) inside one convex cell."""
    return float(largest_squares([cell], angle_resolution, side_tol)[0])


@dataclass(frozen=True)
class GeneralLine:
    """A line through `anchor` (inside the closed unit square) at `angle`
    radians from vertical; direction (sin angle, cos angle)."""

    anchor: tuple[float, float]
    angle: float

    def __post_init__(self) -> None:
        ax, ay = (float(self.anchor[0]), float(self.anchor[1]))
        if not (math.isfinite(ax) and math.isfinite(ay) and math.isfinite(self.angle)):
            raise DomainError("line anchor and angle must be finite")
        if not (0.0 <= ax <= 1.0 and 0.0 <= ay <= 1.0):
            raise DomainError(f"line anchor must lie in the closed unit square, got {(ax, ay)!r}")
        object.__setattr__(self, "anchor", (ax, ay))
        object.__setattr__(self, "angle", float(self.angle))

    def x_at(self, y: float) -> float:
        """x coordinate of the line at height y (needs a non-horizontal line)."""
        if abs(math.cos(self.angle)) < 1e-12:
            raise DomainError("x_at is undefined for a horizontal line")
        return self.anchor[0] + (y - self.anchor[1]) * math.tan(self.angle)

    def right_halfplane(self) -> tuple[float, float, float]:
        """(nx, ny, b) with n unit normal pointing right; right side is n.x >= b."""
        nx = math.cos(self.angle)
        ny = -math.sin(self.angle)
        return nx, ny, nx * self.anchor[0] + ny * self.anchor[1]


@dataclass(frozen=True)
class PerturbationSpec:
    """Shift and pivot amounts for k near-vertical lines, each in [0, epsilon].

    Whether epsilon is small enough that no two perturbed lines cross
    inside the open unit square is checked when the arrangement is
    built, not assumed here.
    """

    shifts: tuple[float, ...]
    pivots: tuple[float, ...]
    epsilon: float

    def __post_init__(self) -> None:
        shifts = tuple(float(s) for s in self.shifts)
        pivots = tuple(float(p) for p in self.pivots)
        eps = float(self.epsilon)
        if not math.isfinite(eps) or eps < 0.0:
            raise DomainError(f"epsilon must be finite and >= 0, got {eps!r}")
        if len(shifts) != len(pivots):
            raise DomainError(
                f"shifts and pivots must have equal length, got {len(shifts)} and {len(pivots)}"
            )
        for name, values in (("shift", shifts), ("pivot", pivots)):
            for value in values:
                if not math.isfinite(value) or not 0.0 <= value <= eps:
                    raise DomainError(f"{name} values must lie in [0, epsilon], got {value!r}")
        object.__setattr__(self, "shifts", shifts)
        object.__setattr__(self, "pivots", pivots)
        object.__setattr__(self, "epsilon", eps)

    @property
    def k(self) -> int:
        return len(self.shifts)

    @staticmethod
    def zero(k: int, epsilon: float = 0.0) -> "PerturbationSpec":
        return PerturbationSpec(shifts=(0.0,) * k, pivots=(0.0,) * k, epsilon=epsilon)


def perturbed_vertical_lines(
    k: int, spec: PerturbationSpec, pivot_height: float = 0.5
) -> list[GeneralLine]:
    """Apply a PerturbationSpec to k evenly spaced vertical lines.

    Line i (1-based position i/(k+1)) is shifted right by shifts[i] and
    pivoted by pivots[i] radians about the point at height pivot_height
    on the shifted line.
    """
    if spec.k != k:
        raise DomainError(f"spec describes {spec.k} lines, expected {k}")
    if not 0.0 <= pivot_height <= 1.0:
        raise DomainError(f"pivot_height must lie in [0, 1], got {pivot_height!r}")
    lines = []
    for i in range(k):
        x = (i + 1) / (k + 1) + spec.shifts[i]
        if x >= 1.0:
            raise InvalidPerturbationError(f"shifted line {i} leaves the unit square (x={x!r})")
        lines.append(GeneralLine(anchor=(x, pivot_height), angle=spec.pivots[i]))
    return lines


def _clip_halfplane(poly: list[tuple[float, float]], nx: float, ny: float, b: float):
    """Sutherland-Hodgman clip of a convex polygon by {x : n.x <= b}."""
    out: list[tuple[float, float]] = []
    count = len(poly)
    for i in range(count):
        cur = poly[i]
        nxt = poly[(i + 1) % count]
        d_cur = nx * cur[0] + ny * cur[1] - b
        d_nxt = nx * nxt[0] + ny * nxt[1] - b
        if d_cur <= 0.0:
            out.append(cur)
            if d_nxt > 0.0:
                t = d_cur / (d_cur - d_nxt)
                out.append((cur[0] + t * (nxt[0] - cur[0]), cur[1] + t * (nxt[1] - cur[1])))
        elif d_nxt <= 0.0:
            t = d_cur / (d_cur - d_nxt)
            out.append((cur[0] + t * (nxt[0] - cur[0]), cur[1] + t * (nxt[1] - cur[1])))
    return out


def arrangement_cells(lines: list[GeneralLine]) -> list[np.ndarray]:
    """The k+1 cells the unit square is cut into by near-vertical lines.

    Lines must be ordered left to right and pairwise non-crossing inside
    the open unit square (touching on the boundary is allowed); both
    conditions are checked and violations raise InvalidPerturbationError.
    """
    for line in lines:
        if math.cos(line.angle) <= 1e-9:
            raise DomainError(f"arrangement lines must be near-vertical, got angle {line.angle!r}")
    x_bottom = [line.x_at(0.0) for line in lines]
    x_top = [line.x_at(1.0) for line in lines]
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            d0 = x_bottom[j] - x_bottom[i]
            d1 = x_top[j] - x_top[i]
            if d0 < 0.0 and d1 < 0.0:
                raise InvalidPerturbationError(
                    f"lines {i} and {j} are out of left-to-right order"
                )
            if d0 * d1 < 0.0:
                raise InvalidPerturbationError(
                    f"lines {i} and {j} cross inside the open unit square"
                )

    square = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]
    cells = []
    for j in range(len(lines) + 1):
        poly = square
        if j > 0:
            nx, ny, b = lines[j - 1].right_halfplane()
            poly = _clip_halfplane(poly, -nx, -ny, -b)
        if j < len(lines):
            nx, ny, b = lines[j].right_halfplane()
            poly = _clip_halfplane(poly, nx, ny, b)
        cells.append(convex_cell(poly))
    return cells
