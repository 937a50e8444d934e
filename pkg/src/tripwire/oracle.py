"""Independent brute-force verifiers for the curve and net-optimality claims.

Nothing here reuses the closed forms it is meant to check: the
rotation-sweep oracle rests only on the bounding-box criterion (a
rotated rectangle fits in an axis-aligned rectangle iff its bounding
box does), net enumeration scores every split of k lines between the
two axes, the split check re-solves the diagonal corner-contact
equations per split, and the perturbation experiment measures inscribed
squares in the cells of a perturbed arrangement.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import nets
from .cells import (
    PerturbationSpec,
    arrangement_cells,
    largest_square_in_cell,
    largest_squares,
    perturbed_vertical_lines,
)
from .errors import DomainError
from .inscribe import check_aspect

__all__ = [
    "SweepConfig",
    "VerificationReport",
    "oracle_curve_value",
    "enumerate_axis_nets",
    "theorem_scan",
    "lagrange_split_check",
    "irregular_spacing_check",
    "largest_square_in_cell",
    "PerturbationSpec",
    "local_perturbation_experiment",
    "perturbation_suite",
]


@dataclass(frozen=True)
class SweepConfig:
    """Orientation sweep resolution and golden-section refinement depth."""

    theta_resolution: float = 1e-5
    refinement: int = 50

    def __post_init__(self) -> None:
        if not (math.isfinite(self.theta_resolution) and self.theta_resolution > 0.0):
            raise DomainError(f"theta_resolution must be positive, got {self.theta_resolution!r}")
        if self.refinement < 0:
            raise DomainError(f"refinement must be >= 0, got {self.refinement!r}")


@dataclass(frozen=True)
class VerificationReport:
    """Scored candidates, the minimizing winner, and run parameters.

    Values may be None for candidates that admit no valid configuration;
    the winner always attains the minimum among the scored candidates.
    """

    candidates: tuple[tuple[str, float | None], ...]
    winner: str
    parameters: dict = field(default_factory=dict)
    seed: int | None = None
    passed: bool = True
    failures: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "candidates", tuple((str(n), v) for n, v in self.candidates))
        object.__setattr__(self, "failures", tuple(self.failures))
        scored = {name: value for name, value in self.candidates if value is not None}
        if not scored:
            raise DomainError("a report needs at least one scored candidate")
        if self.winner not in scored:
            raise DomainError(f"winner {self.winner!r} is not a scored candidate")
        best = min(scored.values())
        tie_tol = max(1e-12, float(self.parameters.get("tie_tolerance", 1e-12)))
        if scored[self.winner] > best + tie_tol:
            raise DomainError(
                f"winner {self.winner!r} scores {scored[self.winner]!r}, above the minimum {best!r}"
            )

    def to_dict(self) -> dict:
        return {
            "candidates": [[name, value] for name, value in self.candidates],
            "winner": self.winner,
            "parameters": self.parameters,
            "seed": self.seed,
            "passed": self.passed,
            "failures": list(self.failures),
        }

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)


@lru_cache(maxsize=8)
def _theta_table(resolution: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    count = int(math.ceil((math.pi / 2) / resolution)) + 1
    theta = np.linspace(0.0, math.pi / 2, count)
    return theta, np.cos(theta), np.sin(theta)


def _fit_at_angle(n: float, p: float, theta: float) -> float:
    """Largest scale at one orientation: the c x cp bounding box must fit 1 x n."""
    c, s = math.cos(theta), math.sin(theta)
    return min(1.0 / (c + p * s), n / (s + p * c))


def oracle_curve_value(n: float, p: float, config: SweepConfig | None = None) -> float:
    """Rotation-sweep estimate of the inscribing curve at (n, p).

    Scans orientations on a grid of step theta_resolution over
    [0, pi/2], then refines around the best grid point by golden
    section; accurate to within 5 * theta_resolution of the optimum.
    """
    n = check_aspect(n, "hole aspect n")
    p = check_aspect(p, "intruder aspect p")
    cfg = config if config is not None else SweepConfig()
    theta, cos_t, sin_t = _theta_table(cfg.theta_resolution)
    fits = np.minimum(1.0 / (cos_t + p * sin_t), n / (sin_t + p * cos_t))
    idx = int(np.argmax(fits))
    best = float(fits[idx])
    lo = float(theta[max(idx - 1, 0)])
    hi = float(theta[min(idx + 1, len(theta) - 1)])
    refined = _golden_max(lambda t: _fit_at_angle(n, p, t), lo, hi, cfg.refinement)
    return max(best, refined)


def _golden_max(f, lo: float, hi: float, iterations: int) -> float:
    ratio = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - ratio * (b - a)
    d = a + ratio * (b - a)
    fc, fd = f(c), f(d)
    best = max(fc, fd)
    for _ in range(iterations):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - ratio * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + ratio * (b - a)
            fd = f(d)
        best = max(best, fc, fd)
    return best


def enumerate_axis_nets(k: int, p: float, tie_tol: float = 1e-12) -> VerificationReport:
    """Score every evenly spaced split v + h = k and report the argmin set.

    The winner is the minimizing split with the most vertical lines (so
    the all-parallel net wins exact ties).  The report fails if the
    argmin set misses the predicted optimal net.
    """
    if k < 1:
        raise DomainError(f"line count k must be >= 1, got {k}")
    p = check_aspect(p, "intruder aspect p")
    scores = [
        (v, nets.net_scale_factor(nets.evenly_spaced(v, k - v), p)) for v in range(k, -1, -1)
    ]
    best_value = min(value for _, value in scores)
    tied = [f"N({v},{k - v})" for v, value in scores if value <= best_value + tie_tol]
    winner = tied[0]
    predicted = nets.optimal_net(k, p).describe()
    failures = []
    if predicted not in tied:
        failures.append(
            f"predicted optimum {predicted} absent from argmin set {tied} at k={k}, p={p}"
        )
    return VerificationReport(
        candidates=tuple((f"N({v},{k - v})", value) for v, value in scores),
        winner=winner,
        parameters={
            "k": k,
            "p": p,
            "tie_tolerance": tie_tol,
            "tied": tied,
            "predicted": predicted,
        },
        passed=not failures,
        failures=tuple(failures),
    )


def theorem_scan(k: int, tie_tol: float = 1e-12, crossover_window: float = 1e-9) -> dict:
    """Scan p over [1, 8] (step 1/64) comparing enumeration with the prediction.

    Splits are grouped into mirror classes by their larger line count
    (N(v,h) and N(h,v) always tie).  Away from the crossover the argmin
    class must be exactly the predicted family; at (or within
    crossover_window of) the crossover a tie between the parallel and
    grid families is accepted.
    """
    if k < 2:
        raise DomainError(f"theorem scan needs k >= 2, got {k}")
    x = nets.crossover_aspect(k)
    grid_class = k - k // 2
    mismatches = []
    checked = 0
    for i in range(0, 7 * 64 + 1):
        p = 1.0 + i / 64.0
        values = {
            vmax: nets.net_scale_factor(nets.evenly_spaced(vmax, k - vmax), p)
            for vmax in range(grid_class, k + 1)
        }
        best = min(values.values())
        tied = sorted(v for v, value in values.items() if value <= best + tie_tol)
        predicted = k if p <= x else grid_class
        checked += 1
        if predicted not in tied:
            mismatches.append(f"p={p!r}: predicted class {predicted} not in argmin set {tied}")
        elif abs(p - x) > crossover_window and tied != [predicted]:
            mismatches.append(f"p={p!r}: unexpected tie set {tied}, predicted {predicted}")
    return {"crossover": x, "checked": checked, "mismatches": mismatches}


def _diagonal_legs_in_hole(width: float, height: float, c_prime: float) -> tuple[float, float] | None:
    """Legs (a1, a2) of a short side c_prime placed corner-to-corner in a
    width x height hole: a1^2 + a2^2 = c'^2 with the perpendicularity
    condition a1 (width - a1) = a2 (height - a2).  None when c_prime is
    too long for the hole."""
    if c_prime >= min(width, height):
        return None

    def g(phi: float) -> float:
        a1 = c_prime * math.cos(phi)
        a2 = c_prime * math.sin(phi)
        return a1 * (width - a1) - a2 * (height - a2)

    lo, hi = 0.0, math.pi / 2
    if not (g(lo) > 0.0 > g(hi)):
        return None
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if g(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    phi = 0.5 * (lo + hi)
    return c_prime * math.cos(phi), c_prime * math.sin(phi)


def lagrange_split_check(k: int, c_prime: float) -> VerificationReport:
    """Squared diagonal long side per split of k lines, minimized at v = h.

    For each split v + h = k the hole is 1/(v+1) x 1/(h+1); a rectangle
    with short side c_prime placed corner-to-corner there has squared
    long side (1/(v+1) - a1)^2 + (1/(h+1) - a2)^2.  The balanced split
    must give the smallest long side; splits whose holes cannot hold the
    short side at all are reported unscored.
    """
    if k < 2 or k % 2 != 0:
        raise DomainError(f"the split check needs even k >= 2, got {k}")
    c_prime = float(c_prime)
    if not (math.isfinite(c_prime) and c_prime > 0.0):
        raise DomainError(f"c_prime must be positive and finite, got {c_prime!r}")
    grid_side = 1.0 / (k // 2 + 1)
    if c_prime >= grid_side:
        raise DomainError(
            f"c_prime={c_prime!r} cannot sit diagonally in the balanced split's "
            f"{grid_side!r}-sided square hole"
        )

    candidates: list[tuple[str, float | None]] = []
    for v in range(k, -1, -1):
        h = k - v
        width = 1.0 / (v + 1)
        height = 1.0 / (h + 1)
        legs = _diagonal_legs_in_hole(width, height, c_prime)
        if legs is None:
            candidates.append((f"N({v},{h})", None))
            continue
        a1, a2 = legs
        candidates.append((f"N({v},{h})", (width - a1) ** 2 + (height - a2) ** 2))

    scored = {name: value for name, value in candidates if value is not None}
    best = min(scored.values())
    winner = min(scored, key=lambda name: scored[name])
    balanced = f"N({k // 2},{k // 2})"
    failures = []
    if scored.get(balanced, math.inf) > best + 1e-12:
        failures.append(
            f"balanced split {balanced} scores {scored.get(balanced)!r}, above the minimum {best!r}"
        )
    else:
        winner = balanced
    return VerificationReport(
        candidates=tuple(candidates),
        winner=winner,
        parameters={"k": k, "c_prime": c_prime, "tie_tolerance": 1e-12},
        passed=not failures,
        failures=tuple(failures),
    )


def irregular_spacing_check(
    k: int,
    p: float,
    trials: int = 1000,
    seed: int = 0,
    tol: float = 1e-12,
) -> VerificationReport:
    """Random position jitters never beat even spacing for the same split.

    Each trial draws a split v + h = k and jitters every cut position by
    up to 49% of its even gap (order-preserving); the jittered net's
    scale factor must stay >= the evenly spaced net's, within tol.
    """
    if k < 1:
        raise DomainError(f"line count k must be >= 1, got {k}")
    p = check_aspect(p, "intruder aspect p")
    rng = np.random.default_rng(seed)
    even_value: dict[int, float] = {}
    worst_by_split: dict[int, float] = {}
    failures = []
    for trial in range(trials):
        v = int(rng.integers(0, k + 1))
        h = k - v
        if v not in even_value:
            even_value[v] = nets.net_scale_factor(nets.evenly_spaced(v, h), p)
        vertical = _jittered_positions(v, rng)
        horizontal = _jittered_positions(h, rng)
        value = nets.net_scale_factor(nets.Net(vertical=vertical, horizontal=horizontal), p)
        margin = value - even_value[v]
        if margin < worst_by_split.get(v, math.inf):
            worst_by_split[v] = margin
        if margin < -tol:
            failures.append(
                f"trial {trial}: jittered N({v},{h}) scores {value!r} below even "
                f"spacing {even_value[v]!r} at p={p}"
            )
    candidates = tuple(
        (f"N({v},{k - v}) worst margin", worst_by_split[v]) for v in sorted(worst_by_split)
    )
    winner = min(candidates, key=lambda item: item[1])[0]
    return VerificationReport(
        candidates=candidates,
        winner=winner,
        parameters={"k": k, "p": p, "trials": trials, "tolerance": tol},
        seed=seed,
        passed=not failures,
        failures=tuple(failures[:10]),
    )


def _jittered_positions(count: int, rng: np.random.Generator) -> tuple[float, ...]:
    if count == 0:
        return ()
    gap = 1.0 / (count + 1)
    jitter = rng.uniform(-0.49, 0.49, size=count) * gap
    return tuple((i + 1) * gap + jitter[i] for i in range(count))


def local_perturbation_experiment(
    k: int,
    spec: PerturbationSpec,
    pivot_height: float = 0.5,
    angle_resolution: float | None = None,
    tol: float = 1e-9,
) -> VerificationReport:
    """Shift/pivot a k-line vertical arrangement and re-measure its scale factor.

    Builds the perturbed lines, cuts the unit square into k+1 convex
    cells, and takes the largest inscribed square over the cells (the
    square intruder's scale factor).  Evenly spaced lines being a local
    optimum means the perturbed value never drops below 1/(k+1); the
    report carries the per-cell values and fails on any drop beyond tol.
    """
    if k <= 2:
        raise DomainError(f"the perturbation experiment needs k > 2, got {k}")
    lines = perturbed_vertical_lines(k, spec, pivot_height=pivot_height)
    cell_polys = arrangement_cells(lines)
    kwargs = {} if angle_resolution is None else {"angle_resolution": angle_resolution}
    values = largest_squares(cell_polys, **kwargs)
    perturbed = float(values.max())
    regular = 1.0 / (k + 1)
    failures = []
    if perturbed < regular - tol:
        failures.append(
            f"perturbed arrangement scores {perturbed!r} below the even spacing value "
            f"{regular!r} (spec shifts={spec.shifts}, pivots={spec.pivots})"
        )
    return VerificationReport(
        candidates=(("evenly-spaced", regular), ("perturbed", perturbed)),
        winner="evenly-spaced" if perturbed >= regular - tol else "perturbed",
        parameters={
            "k": k,
            "pivot_height": pivot_height,
            "tie_tolerance": tol,
            "cell_values": [float(x) for x in values],
            "shifts": list(spec.shifts),
            "pivots": list(spec.pivots),
            "epsilon": spec.epsilon,
        },
        passed=not failures,
        failures=tuple(failures),
    )


def perturbation_suite(
    k: int,
    trials: int = 500,
    epsilon: float = 0.02,
    seed: int = 0,
    pivot_height: float = 0.5,
    angle_resolution: float | None = None,
    tol: float = 1e-9,
) -> VerificationReport:
    """Run many random shift/pivot specs at once (batched across all cells).

    Draws `trials` specs with shifts and pivots uniform in [0, epsilon]
    and checks that no perturbed arrangement beats even spacing.  All
    trials' cells go through one batched inscribed-square computation,
    which keeps large sweeps fast; results are identical to running
    local_perturbation_experiment per spec.
    """
    if k <= 2:
        raise DomainError(f"the perturbation experiment needs k > 2, got {k}")
    rng = np.random.default_rng(seed)
    specs = []
    all_cells = []
    cell_counts = []
    for _ in range(trials):
        spec = PerturbationSpec(
            shifts=tuple(rng.uniform(0.0, epsilon, size=k)),
            pivots=tuple(rng.uniform(0.0, epsilon, size=k)),
            epsilon=epsilon,
        )
        specs.append(spec)
        cell_polys = arrangement_cells(perturbed_vertical_lines(k, spec, pivot_height))
        cell_counts.append(len(cell_polys))
        all_cells.extend(cell_polys)

    kwargs = {} if angle_resolution is None else {"angle_resolution": angle_resolution}
    values = largest_squares(all_cells, **kwargs)
    regular = 1.0 / (k + 1)
    per_spec = []
    offset = 0
    for count in cell_counts:
        per_spec.append(float(values[offset : offset + count].max()))
        offset += count

    failures = []
    violating = []
    for idx, value in enumerate(per_spec):
        if value < regular - tol:
            failures.append(
                f"spec {idx} scores {value!r} below even spacing {regular!r}"
            )
            violating.append(
                {"index": idx, "shifts": list(specs[idx].shifts), "pivots": list(specs[idx].pivots)}
            )
    worst_idx = int(np.argmin(per_spec))
    candidates = (
        ("evenly-spaced", regular),
        (f"worst perturbed (spec {worst_idx})", per_spec[worst_idx]),
    )
    winner = "evenly-spaced" if not failures else f"worst perturbed (spec {worst_idx})"
    return VerificationReport(
        candidates=candidates,
        winner=winner,
        parameters={
            "k": k,
            "trials": trials,
            "epsilon": epsilon,
            "pivot_height": pivot_height,
            "tie_tolerance": tol,
            "min_perturbed": per_spec[worst_idx],
            "violating_specs": violating[:10],
        },
        seed=seed,
        passed=not failures,
        failures=tuple(failures[:10]),
    )
