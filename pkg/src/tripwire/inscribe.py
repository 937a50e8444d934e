"""Largest scaled rectangle inscribed in a rectangular hole, rotation allowed.

A hole with aspect ratio 1 x n (n >= 1) is laid out in the frame
[0,1] x [0,n], short side horizontal.  An intruder with aspect ratio
1 x p (p >= 1) fits inside the hole at scale c when the rectangle
c x c*p admits a rigid placement (translation + rotation) inside the
hole.  The optimal scale, as a function of p, is a piecewise curve with
three branches:

  horizontal-plateau   c = 1        while the intruder fits axis-aligned
                                    with its long side horizontal (p <= n)
  vertical             c = n / p    long side pinned to the hole's long
                                    side, axis-aligned
  diagonal             corner-contact placement with one corner on each
                                    of the four hole sides

The diagonal placement is fixed by three conditions: similar corner
triangles, and the Pythagorean relations for the short and long sides,

    a1 / a2 = (n - a2) / (1 - a1)
    a1^2 + a2^2 = c^2
    (1 - a1)^2 + (n - a2)^2 = (c p)^2

which solve in closed form with t = (n - p) / (1 - p^2):

    a2 = t,   a1 = 1 - p t,   c = sqrt(t^2 (p^2 + 1) - 2 t p + 1).

`curve_value` evaluates the curve as a max over the feasible candidate
placements rather than dispatching on precomputed branch boundaries, so
it is robust exactly at the boundaries.  The boundary between the
vertical and diagonal branches is exposed separately as `crossover_w`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, RootBracketError

BRANCH_PLATEAU = "horizontal-plateau"
BRANCH_VERTICAL = "vertical"
BRANCH_DIAGONAL = "diagonal"

# Absolute tolerance for comparing candidate placements; ties go to the
# earlier branch in (plateau, vertical, diagonal) order so labels are
# deterministic at the boundaries p = n and p = w_n.
BRANCH_TIE_TOL = 1e-12


def check_aspect(value: float, name: str = "aspect ratio") -> float:
    """Validate an aspect ratio: a finite real >= 1 (long side over short side)."""
    value = float(value)
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}")
    if value < 1.0:
        raise DomainError(f"{name} must be >= 1, got {value!r}")
    return value


@dataclass(frozen=True)
class DiagonalSolution:
    """Corner-contact placement of a 1 x p intruder in the [0,1] x [0,n] hole.

    a1 and a2 are the legs of the corner triangle under the short side;
    corners lists the four rectangle corners in counter-clockwise order,
    one on each hole side: (a1, 0), (1, n-a2), (1-a1, n), (0, a2).
    """

    a1: float
    a2: float
    c: float
    corners: tuple[tuple[float, float], ...]


@dataclass(frozen=True)
class CurveSample:
    """One point (p, c) of an inscribing curve, tagged with its branch."""

    p: float
    c: float
    branch: str


@dataclass(frozen=True)
class Placement:
    """Explicit corners (counter-clockwise) of one optimal placement."""

    corners: tuple[tuple[float, float], ...]
    branch: str
    c: float


def diagonal_branch(n: float, p: float) -> DiagonalSolution:
    """Solve the corner-contact placement for p > n >= 1.

    Raises DomainError for p <= n, where the constraints 0 < a1 < 1 and
    0 < a2 < n degenerate (the limit p -> n+ collapses the contact points
    into hole corners with a2 -> 0, a1 -> 1, c -> 1).
    """
    n = check_aspect(n, "hole aspect n")
    p = check_aspect(p, "intruder aspect p")
    if p <= n:
        raise DomainError(f"diagonal placement needs p > n, got n={n}, p={p}")
    t = (n - p) / (1.0 - p * p)
    a2 = t
    a1 = 1.0 - p * t
    c = math.sqrt(t * t * (p * p + 1.0) - 2.0 * t * p + 1.0)
    corners = ((a1, 0.0), (1.0, n - a2), (1.0 - a1, n), (0.0, a2))
    return DiagonalSolution(a1=a1, a2=a2, c=c, corners=corners)


def curve_sample(n: float, p: float) -> CurveSample:
    """Optimal scale and branch label for a 1 x p intruder in a 1 x n hole."""
    n = check_aspect(n, "hole aspect n")
    p = check_aspect(p, "intruder aspect p")
    if p <= n:
        candidates = [(1.0, BRANCH_PLATEAU)]
    else:
        candidates = [
            (n / p, BRANCH_VERTICAL),
            (diagonal_branch(n, p).c, BRANCH_DIAGONAL),
        ]
    best_c, best_branch = candidates[0]
    for c, branch in candidates[1:]:
        if c > best_c + BRANCH_TIE_TOL:
            best_c, best_branch = c, branch
    return CurveSample(p=p, c=best_c, branch=best_branch)


def curve_value(n: float, p: float) -> float:
    """The inscribing curve: max scale of a 1 x p intruder inside a 1 x n hole."""
    return curve_sample(n, p).c


def crossover_w(n: float, residual_tol: float = 1e-12, max_iter: int = 200) -> float:
    """The intruder aspect w_n > n where the vertical and diagonal branches meet.

    Found by bisection on f(p) = diagonal(n, p).c - n/p over the bracket
    [n (1 + 1e-9), max(20, 10 n)].  f < 0 near p = n (the vertical
    placement dominates) and f > 0 for large p (the diagonal scale decays
    like sqrt(n^2 + 1)/p > n/p), so the bracket holds a sign change.
    """
    n = check_aspect(n, "hole aspect n")
    lo = n * (1.0 + 1e-9)
    hi = max(20.0, 10.0 * n)

    def f(p: float) -> float:
        return diagonal_branch(n, p).c - n / p

    flo = f(lo)
    fhi = f(hi)
    if not (flo < 0.0 < fhi):
        raise RootBracketError(
            f"no sign change for w_n on bracket [{lo!r}, {hi!r}]: "
            f"f(lo)={flo!r}, f(hi)={fhi!r}"
        )
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if f(mid) < 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-15 * hi:
            break
    root = 0.5 * (lo + hi)
    residual = abs(f(root))
    if residual > residual_tol:
        raise RootBracketError(
            f"w_n bisection stalled at p={root!r} with residual {residual!r} "
            f"> {residual_tol!r} (bracket [{lo!r}, {hi!r}])"
        )
    return root


def placement(n: float, p: float) -> Placement:
    """One optimal placement of the scaled intruder, as explicit corners.

    Axis-aligned at the origin for the plateau and vertical branches
    (short side c along x, long side c*p along y), the corner-contact
    quadrilateral for the diagonal branch.
    """
    sample = curve_sample(n, p)
    c = sample.c
    if sample.branch == BRANCH_DIAGONAL:
        corners = diagonal_branch(n, p).corners
    else:
        corners = ((0.0, 0.0), (c, 0.0), (c, c * p), (0.0, c * p))
    return Placement(corners=corners, branch=sample.branch, c=c)
