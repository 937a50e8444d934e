"""Axis-aligned tripwire nets over the unit square and their scale factors.

A net is a set of axis-aligned lines ("tripwires") cutting the open unit
square; it partitions the square into a grid of rectangular holes.  The
scale factor of a net against a 1 x p intruder is the largest scaled
copy of the intruder that fits inside some hole: any strictly smaller
copy can hide there, while at or above that scale every placement
touches a line.

The two candidate families of evenly spaced nets are k parallel lines
(holes 1 x 1/(k+1)) and a near-square grid (holes
1/(ceil(k/2)+1) x 1/(floor(k/2)+1)).  Their pointwise minimum over p is
the base curve; the aspect ratio where the two families exchange the
lead is the crossover aspect, and the optimal net for a given (k, p) is
whichever family is ahead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .inscribe import check_aspect, curve_value


@dataclass(frozen=True)
class Net:
    """Sorted vertical and horizontal cut positions, strictly inside (0, 1).

    Boundary-coincident lines are rejected: they add no holes and would
    make the line count ambiguous.
    """

    vertical: tuple[float, ...]
    horizontal: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertical", _validated_cuts(self.vertical, "vertical"))
        object.__setattr__(self, "horizontal", _validated_cuts(self.horizontal, "horizontal"))

    @property
    def k(self) -> int:
        return len(self.vertical) + len(self.horizontal)

    def describe(self) -> str:
        return f"N({len(self.vertical)},{len(self.horizontal)})"


@dataclass(frozen=True)
class HoleGrid:
    """Column widths and row heights of a net's holes; each list sums to 1."""

    widths: tuple[float, ...]
    heights: tuple[float, ...]


def _validated_cuts(positions, axis: str) -> tuple[float, ...]:
    cuts = tuple(float(x) for x in positions)
    for x in cuts:
        if not math.isfinite(x):
            raise DomainError(f"{axis} cut positions must be finite, got {x!r}")
        if not 0.0 < x < 1.0:
            raise DomainError(f"{axis} cut positions must lie strictly inside (0, 1), got {x!r}")
    for a, b in zip(cuts, cuts[1:]):
        if b <= a:
            raise DomainError(f"{axis} cut positions must be strictly increasing, got {a!r} then {b!r}")
    return cuts


def _check_count(value: int, name: str, minimum: int = 0) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise DomainError(f"{name} must be an integer, got {value!r}")
    if value < minimum:
        raise DomainError(f"{name} must be >= {minimum}, got {value!r}")
    return value


def evenly_spaced(v: int, h: int) -> Net:
    """The net with v evenly spaced vertical and h evenly spaced horizontal lines."""
    v = _check_count(v, "vertical line count")
    h = _check_count(h, "horizontal line count")
    vertical = tuple(i / (v + 1) for i in range(1, v + 1))
    horizontal = tuple(j / (h + 1) for j in range(1, h + 1))
    return Net(vertical=vertical, horizontal=horizontal)


def holes(net: Net) -> HoleGrid:
    """Hole dimensions of a net: consecutive gaps of {0} | cuts | {1} per axis."""
    return HoleGrid(widths=_gaps(net.vertical), heights=_gaps(net.horizontal))


def _gaps(cuts: tuple[float, ...]) -> tuple[float, ...]:
    bounds = (0.0, *cuts, 1.0)
    return tuple(b - a for a, b in zip(bounds, bounds[1:]))


def hole_scale(w: float, h: float, p: float) -> float:
    """Largest scale of a 1 x p intruder inside a w x h hole.

    Normalizes the hole to aspect n' = max(w, h)/min(w, h) and rescales:
    the answer is min(w, h) times the inscribing-curve value at (n', p).
    """
    w = float(w)
    h = float(h)
    if not (w > 0.0 and h > 0.0) or not (math.isfinite(w) and math.isfinite(h)):
        raise DomainError(f"hole dimensions must be positive and finite, got {w!r} x {h!r}")
    s = min(w, h)
    return s * curve_value(max(w, h) / s, p)


def net_scale_factor(net: Net, p: float) -> float:
    """Scale factor of a net: max over its holes of the largest inscribed intruder."""
    p = check_aspect(p, "intruder aspect p")
    grid = holes(net)
    return max(hole_scale(w, h, p) for w in grid.widths for h in grid.heights)


def base_curve_even(k: int, p: float) -> float:
    """Base curve for even k: min of the parallel-lines and square-grid net curves.

    The parallel net N(k,0) contributes (1/(k+1)) C_{k+1}(p); the grid
    N(k/2,k/2) has square holes of side 1/(k/2+1) and contributes
    (1/(k/2+1)) C_1(p).
    """
    k = _check_count(k, "line count k", minimum=2)
    if k % 2 != 0:
        raise DomainError(f"base_curve_even needs even k, got {k}")
    parallel = curve_value(k + 1, p) / (k + 1)
    grid = curve_value(1, p) / (k // 2 + 1)
    return min(parallel, grid)


def base_curve_odd(k: int, p: float) -> float:
    """Base curve for odd k: min of the parallel-lines and near-square-grid curves.

    The grid N(ceil(k/2), floor(k/2)) has holes of dimensions
    1/(ceil(k/2)+1) x 1/(floor(k/2)+1); its curve is evaluated through
    net_scale_factor so the hole dimensions follow from the hole count
    per axis (one more hole than lines).
    """
    k = _check_count(k, "line count k", minimum=1)
    if k % 2 != 1:
        raise DomainError(f"base_curve_odd needs odd k, got {k}")
    parallel = curve_value(k + 1, p) / (k + 1)
    grid = net_scale_factor(evenly_spaced(k // 2 + 1, k // 2), p)
    return min(parallel, grid)


def crossover_aspect(k: int) -> float:
    """Intruder aspect where the optimal net switches from parallel lines to a grid.

    Even k: (k+1)/(k/2+1).  Odd k: (k+1)/(floor(k/2)+1), the equality
    point of the two base-curve arguments with hole dimensions counted
    per axis (always exactly 2 for odd k).
    """
    k = _check_count(k, "line count k", minimum=2)
    # floor(k/2) == k/2 for even k, so one expression covers both parities.
    return (k + 1) / (k // 2 + 1)


def odd_crossover_line_count(k: int) -> float:
    """Variant odd-k crossover computed from line counts instead of hole counts.

    Divides through by hole dimensions 1/ceil(k/2) x 1/floor(k/2), as if
    each axis had as many holes as lines, giving
    (k+1) floor(k/2) / ceil(k/2)^2.  Enumeration contradicts this value
    (at k=3 it gives 1 while the observed switch is at 2); it is kept
    only for side-by-side reporting.
    """
    k = _check_count(k, "line count k", minimum=3)
    if k % 2 != 1:
        raise DomainError(f"odd_crossover_line_count needs odd k, got {k}")
    lo = k // 2
    hi = k - lo
    return (k + 1) * lo / (hi * hi)


def optimal_net(k: int, p: float) -> Net:
    """The optimal axis-aligned net with k lines against a 1 x p intruder.

    Parallel lines N(k,0) up to the crossover aspect, the near-square
    grid N(ceil(k/2), floor(k/2)) beyond it.  At the crossover both nets
    tie and the parallel net is returned.
    """
    k = _check_count(k, "line count k", minimum=1)
    p = check_aspect(p, "intruder aspect p")
    if k == 1:
        return evenly_spaced(1, 0)
    if p <= crossover_aspect(k):
        return evenly_spaced(k, 0)
    return evenly_spaced(k - k // 2, k // 2)


def net_to_dict(net: Net) -> dict:
    """JSON-ready mapping {"vertical": [...], "horizontal": [...]}."""
    return {"vertical": list(net.vertical), "horizontal": list(net.horizontal)}


def net_from_dict(data: dict) -> Net:
    """Load a net from its JSON mapping, enforcing the Net invariants."""
    if not isinstance(data, dict):
        raise DomainError(f"net JSON must be an object, got {type(data).__name__}")
    extra = set(data) - {"vertical", "horizontal"}
    if extra:
        raise DomainError(f"unexpected net JSON keys: {sorted(extra)}")
    missing = {"vertical", "horizontal"} - set(data)
    if missing:
        raise DomainError(f"missing net JSON keys: {sorted(missing)}")
    for key in ("vertical", "horizontal"):
        if not isinstance(data[key], (list, tuple)):
            raise DomainError(f"net JSON field {key!r} must be a list")
    return Net(vertical=tuple(data["vertical"]), horizontal=tuple(data["horizontal"]))
