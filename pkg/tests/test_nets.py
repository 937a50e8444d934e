import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tripwire.errors import DomainError
from tripwire.inscribe import curve_value
from tripwire.nets import (
    Net,
    base_curve_even,
    base_curve_odd,
    crossover_aspect,
    evenly_spaced,
    hole_scale,
    holes,
    net_from_dict,
    net_scale_factor,
    net_to_dict,
    odd_crossover_line_count,
    optimal_net,
)
from tripwire.oracle import SweepConfig, oracle_curve_value

SWEEP = SweepConfig(theta_resolution=1e-5)

positions = st.lists(
    st.floats(min_value=0.01, max_value=0.99), min_size=0, max_size=5, unique=True
).map(lambda xs: tuple(sorted(xs)))


def random_net(v_positions, h_positions):
    return Net(vertical=v_positions, horizontal=h_positions)


class TestNetConstruction:
    def test_evenly_spaced_examples(self):
        assert evenly_spaced(2, 0).vertical == (1 / 3, 2 / 3)
        assert evenly_spaced(2, 0).horizontal == ()
        assert evenly_spaced(1, 1) == Net(vertical=(0.5,), horizontal=(0.5,))
        assert evenly_spaced(2, 1) == Net(vertical=(1 / 3, 2 / 3), horizontal=(0.5,))

    def test_k_counts_both_axes(self):
        assert evenly_spaced(2, 1).k == 3

    @pytest.mark.parametrize(
        "vertical",
        [(0.5, 0.5), (0.7, 0.3), (0.0,), (1.0,), (-0.1,), (float("nan"),)],
    )
    def test_invalid_cut_positions(self, vertical):
        with pytest.raises(DomainError):
            Net(vertical=vertical, horizontal=())

    def test_negative_counts_rejected(self):
        with pytest.raises(DomainError):
            evenly_spaced(-1, 0)


class TestHoles:
    def test_parallel_net(self):
        grid = holes(evenly_spaced(2, 0))
        assert grid.widths == pytest.approx((1 / 3, 1 / 3, 1 / 3))
        assert grid.heights == (1.0,)

    def test_single_offset_line(self):
        grid = holes(Net(vertical=(0.2,), horizontal=()))
        assert grid.widths == pytest.approx((0.2, 0.8))

    def test_two_by_one(self):
        grid = holes(evenly_spaced(2, 1))
        assert grid.widths == pytest.approx((1 / 3, 1 / 3, 1 / 3))
        assert grid.heights == pytest.approx((0.5, 0.5))

    @given(v=positions, h=positions)
    @settings(max_examples=200, deadline=None)
    def test_hole_counts_and_sums(self, v, h):
        net = random_net(v, h)
        grid = holes(net)
        assert len(grid.widths) == len(net.vertical) + 1
        assert len(grid.heights) == len(net.horizontal) + 1
        assert sum(grid.widths) == pytest.approx(1.0, abs=1e-12)
        assert sum(grid.heights) == pytest.approx(1.0, abs=1e-12)
        # at least one hole per axis at least as big as the average
        assert max(grid.widths) >= 1 / len(grid.widths) - 1e-12
        assert max(grid.heights) >= 1 / len(grid.heights) - 1e-12


class TestHoleScale:
    def test_third_by_half_for_aspect_three(self):
        # n' = 3/2, p = 3 sits on the vertical branch: (1/3) * (3/2) / 3 = 1/6
        value = hole_scale(1 / 3, 1 / 2, 3)
        assert value == pytest.approx(1 / 6, abs=1e-15)
        assert abs(value - oracle_curve_value(1.5, 3, SWEEP) / 3) <= 5e-5

    def test_square_hole_square_intruder(self):
        assert hole_scale(0.5, 0.5, 1) == pytest.approx(0.5, abs=1e-15)

    def test_wide_hole_plateau(self):
        assert hole_scale(1.0, 0.25, 2) == pytest.approx(0.25, abs=1e-15)

    def test_orientation_symmetry(self):
        assert hole_scale(0.3, 0.7, 2.5) == hole_scale(0.7, 0.3, 2.5)

    @given(
        s=st.floats(min_value=0.05, max_value=1.0),
        n=st.floats(min_value=1.0, max_value=4.0),
        p=st.floats(min_value=1.0, max_value=8.0),
    )
    @settings(max_examples=200, deadline=None)
    def test_scale_invariance(self, s, n, p):
        # a hole scaled by s scales the inscribed intruder by s
        expected = s * curve_value(n, p)
        assert hole_scale(s, s * n, p) == pytest.approx(expected, rel=1e-12)

    def test_rejects_empty_hole(self):
        with pytest.raises(DomainError):
            hole_scale(0.0, 0.5, 2)


class TestNetScaleFactor:
    def test_examples(self):
        assert net_scale_factor(evenly_spaced(2, 0), 1) == pytest.approx(1 / 3, abs=1e-12)
        assert net_scale_factor(evenly_spaced(1, 1), 1) == pytest.approx(0.5, abs=1e-12)
        assert net_scale_factor(evenly_spaced(2, 1), 3) == pytest.approx(1 / 6, abs=1e-12)

    @pytest.mark.parametrize("v,h", [(v, h) for v in range(0, 5) for h in range(0, v + 1)])
    @pytest.mark.parametrize("p", [1.0, 1.75, 3.0, 6.0])
    def test_evenly_spaced_closed_form(self, v, h, p):
        value = net_scale_factor(evenly_spaced(v, h), p)
        expected = curve_value((v + 1) / (h + 1), p) / (v + 1)
        assert value == pytest.approx(expected, abs=1e-12)

    @given(v=positions, h=positions, p=st.floats(min_value=1.0, max_value=8.0))
    @settings(max_examples=150, deadline=None)
    def test_adding_a_line_never_raises_the_scale_factor(self, v, h, p):
        net = random_net(v, h)
        base = net_scale_factor(net, p)
        new_cut = 0.37519  # arbitrary fixed position distinct from the grid above
        if new_cut not in net.vertical:
            augmented = Net(vertical=tuple(sorted(net.vertical + (new_cut,))), horizontal=net.horizontal)
            assert net_scale_factor(augmented, p) <= base + 1e-12

    def test_regular_beats_irregular_sample(self):
        import numpy as np

        rng = np.random.default_rng(7)
        for _ in range(200):
            k = int(rng.integers(1, 5))
            v = int(rng.integers(0, k + 1))
            h = k - v
            jitter_v = rng.uniform(-0.49, 0.49, size=v) / (v + 1)
            jitter_h = rng.uniform(-0.49, 0.49, size=h) / (h + 1)
            net = Net(
                vertical=tuple((i + 1) / (v + 1) + jitter_v[i] for i in range(v)),
                horizontal=tuple((j + 1) / (h + 1) + jitter_h[j] for j in range(h)),
            )
            p = float(rng.choice([1.0, 1.5, 3.0]))
            assert net_scale_factor(net, p) >= net_scale_factor(evenly_spaced(v, h), p) - 1e-12


class TestBaseCurves:
    def test_even_examples(self):
        assert base_curve_even(2, 1) == pytest.approx(1 / 3, abs=1e-15)
        # both arguments agree at the crossover p = 3/2
        assert base_curve_even(2, 1.5) == pytest.approx(1 / 3, abs=1e-15)
        assert base_curve_even(2, 3) == pytest.approx(math.sqrt(2) / 8, abs=1e-15)

    def test_even_crossover_equality(self):
        for k in range(2, 13, 2):
            x = crossover_aspect(k)
            parallel = curve_value(k + 1, x) / (k + 1)
            grid = curve_value(1, x) / (k // 2 + 1)
            assert abs(parallel - grid) < 1e-12

    def test_odd_examples(self):
        # min(1/4 from N(3,0), (1/3) C_{3/2}(p) from N(2,1))
        assert base_curve_odd(3, 1) == pytest.approx(0.25, abs=1e-15)
        assert base_curve_odd(3, 2) == pytest.approx(0.25, abs=1e-15)
        assert base_curve_odd(3, 3) == pytest.approx(1 / 6, abs=1e-15)

    def test_odd_crossover_equality(self):
        for k in range(3, 13, 2):
            x = crossover_aspect(k)
            parallel = curve_value(k + 1, x) / (k + 1)
            grid = net_scale_factor(evenly_spaced(k - k // 2, k // 2), x)
            assert abs(parallel - grid) < 1e-12

    def test_parity_is_enforced(self):
        with pytest.raises(DomainError):
            base_curve_even(3, 2)
        with pytest.raises(DomainError):
            base_curve_odd(4, 2)

    @pytest.mark.parametrize("k", range(2, 13))
    def test_base_curve_dominates_every_split(self, k):
        base = base_curve_even if k % 2 == 0 else base_curve_odd
        for i in range(0, 449, 7):
            p = 1.0 + i / 64.0
            value = base(k, p)
            for v in range(0, k + 1):
                assert value <= net_scale_factor(evenly_spaced(v, k - v), p) + 1e-12


class TestCrossoverAspect:
    def test_even_values(self):
        assert crossover_aspect(2) == pytest.approx(1.5, abs=1e-15)
        assert crossover_aspect(4) == pytest.approx(5 / 3, abs=1e-15)

    def test_odd_corrected_value_is_two(self):
        for k in (3, 5, 7, 9, 11):
            assert crossover_aspect(k) == pytest.approx(2.0, abs=1e-15)

    def test_line_count_variant_disagrees(self):
        assert odd_crossover_line_count(3) == pytest.approx(1.0, abs=1e-15)
        assert odd_crossover_line_count(5) == pytest.approx(4 / 3, abs=1e-15)
        for k in (3, 5, 7, 9, 11):
            assert abs(odd_crossover_line_count(k) - crossover_aspect(k)) > 1e-12

    def test_minimum_k(self):
        with pytest.raises(DomainError):
            crossover_aspect(1)


class TestOptimalNet:
    def test_examples(self):
        assert optimal_net(2, 1) == evenly_spaced(2, 0)
        assert optimal_net(2, 3) == evenly_spaced(1, 1)
        # exactly at the even crossover both nets tie; parallel is returned
        assert optimal_net(4, crossover_aspect(4)) == evenly_spaced(4, 0)

    def test_tie_scores_within_tolerance(self):
        x = crossover_aspect(4)
        parallel = net_scale_factor(evenly_spaced(4, 0), x)
        grid = net_scale_factor(evenly_spaced(2, 2), x)
        assert abs(parallel - grid) < 1e-12

    def test_single_line(self):
        assert optimal_net(1, 1) == evenly_spaced(1, 0)
        assert optimal_net(1, 7) == evenly_spaced(1, 0)

    @pytest.mark.parametrize("k", [3, 5])
    def test_odd_switch(self, k):
        assert optimal_net(k, 1.9) == evenly_spaced(k, 0)
        assert optimal_net(k, 2.1) == evenly_spaced(k - k // 2, k // 2)


class TestNetJson:
    def test_round_trip(self):
        net = evenly_spaced(3, 2)
        data = json.loads(json.dumps(net_to_dict(net)))
        assert net_from_dict(data) == net

    def test_schema_enforced_on_load(self):
        with pytest.raises(DomainError):
            net_from_dict({"vertical": [0.5]})
        with pytest.raises(DomainError):
            net_from_dict({"vertical": [0.5], "horizontal": [], "extra": 1})
        with pytest.raises(DomainError):
            net_from_dict({"vertical": [0.7, 0.3], "horizontal": []})
        with pytest.raises(DomainError):
            net_from_dict({"vertical": 0.5, "horizontal": []})
        with pytest.raises(DomainError):
            net_from_dict([0.5])
