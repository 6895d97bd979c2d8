"""Tests für Δφ(N)-Kurven, N_opt und Sub-Schrotrausch-Grenze."""

from __future__ import annotations

import math

import numpy as np
import pytest

from core.sweep import (
    CurvePoint,
    SweepLimit,
    SweepResult,
    bound_as_count,
    curve,
    find_n_opt,
    find_subshot_bound,
    nopt_vs_loss,
    subshot_limit_of,
    subshot_loss_limit,
)
from core.utils import DomainError


@pytest.fixture(scope="module")
def lossless():
    return curve(0.0, 1, 100)


def test_lossless_curve_matches_closed_form(lossless):
    assert len(lossless.points) == 100
    for point in lossless.points:
        assert point.delta_phi == pytest.approx(math.tan(math.pi / (point.N + 2)), rel=1e-9)
        assert point.heisenberg == math.tan(math.pi / (point.N + 2))
        assert point.shot_noise == pytest.approx(1.0 / math.sqrt(point.N))


def test_lossless_curve_is_strictly_decreasing(lossless):
    values = [p.delta_phi for p in lossless.points]
    assert all(a > b for a, b in zip(values, values[1:]))
    assert lossless.n_opt is SweepLimit.NONE_IN_RANGE


def test_lossless_subshot_region(lossless):
    # tan(π/8) > 1/√6, tan(π/9) < 1/√7
    assert lossless.subshot_range() == (7, 100)
    assert lossless.n_subshot_max is SweepLimit.NONE_IN_RANGE
    assert not lossless.points[5].is_subshot
    assert lossless.points[6].is_subshot


def test_interior_optimum_at_heavy_loss():
    result = curve(0.3, 1, 500)
    assert result.n_opt == 2
    values = [p.delta_phi for p in result.points]
    assert values[1] == min(values)
    assert result.n_subshot_max is SweepLimit.NOT_FOUND
    assert result.subshot_range() is None


def test_small_loss_optimum_and_bound():
    result = curve(1e-3, 1, 500)
    assert isinstance(result.n_opt, int)
    assert 10 < result.n_opt < 100
    assert isinstance(result.n_subshot_max, int)
    lo, hi = result.subshot_range()
    assert lo == 7
    assert hi == result.n_subshot_max
    assert bound_as_count(result.n_subshot_max, 500) > bound_as_count(
        find_subshot_bound(0.3, n_max=500), 500
    )


@pytest.mark.parametrize("loss", [0.0, 1e-3, 0.1, 0.5])
def test_curve_stays_above_lossless_limit(loss):
    for point in curve(loss, 1, 200).points:
        assert point.delta_phi >= point.heisenberg - 1e-9


def test_nopt_decreases_with_loss():
    grid = np.geomspace(1e-4, 0.5, 20)
    pairs = nopt_vs_loss(grid, n_max=500)
    assert [loss for loss, _ in pairs] == pytest.approx(list(grid))
    counts = [n for _, n in pairs]
    assert all(isinstance(n, int) for n in counts)
    assert all(a >= b for a, b in zip(counts, counts[1:]))


def test_nopt_with_lossless_grid_point():
    pairs = nopt_vs_loss([0.0, 0.1, 0.3, 0.5], n_max=200)
    assert pairs[0] == (0.0, SweepLimit.NONE_IN_RANGE)
    rest = [n for _, n in pairs[1:]]
    assert all(a >= b for a, b in zip(rest, rest[1:]))
    assert find_n_opt(0.5, n_max=200) == 2


def test_nopt_reports_progress_and_results():
    seen = []
    results = []
    nopt_vs_loss(
        [0.1, 0.2],
        n_max=30,
        on_progress=lambda cur, total, label: seen.append((cur, total, label)),
        on_result=results.append,
    )
    assert seen == [(1, 2, "L=0.1"), (2, 2, "L=0.2")]
    assert [r.L for r in results] == [0.1, 0.2]


def test_curve_is_deterministic():
    first = curve(0.05, 1, 150)
    second = curve(0.05, 1, 150)
    threaded = curve(0.05, 1, 150, jobs=4)
    assert first == second
    assert threaded.points == first.points
    assert threaded.n_opt == first.n_opt


def test_curve_progress_callback():
    seen = []
    curve(0.1, 3, 6, jobs=2, on_progress=lambda cur, total, label: seen.append((cur, total)))
    assert seen == [(1, 4), (2, 4), (3, 4), (4, 4)]


def test_renormalized_curve_is_flagged():
    plain = curve(0.2, 1, 40)
    renormalized = curve(0.2, 1, 40, renormalized=True)
    assert renormalized.renormalized
    for a, b in zip(plain.points, renormalized.points):
        assert b.delta_phi <= a.delta_phi + 1e-12


@pytest.mark.parametrize("n_min, n_max", [(10, 5), (0, 5), (1, 10**6)])
def test_invalid_ranges(n_min, n_max):
    with pytest.raises(DomainError):
        curve(0.1, n_min, n_max)


@pytest.mark.parametrize("grid", [[], [0.3, 0.1], [0.1, 1.0]])
def test_invalid_grids(grid):
    with pytest.raises(DomainError):
        nopt_vs_loss(grid, n_max=10)


def test_bound_as_count():
    assert bound_as_count(SweepLimit.NOT_FOUND, 100) == 0
    assert bound_as_count(SweepLimit.NONE_IN_RANGE, 100) == 100
    assert bound_as_count(42, 100) == 42


def test_subshot_loss_limit():
    assert subshot_loss_limit([1e-4, 1e-3, 0.3], n_max=200) == 1e-3
    assert subshot_loss_limit([0.3, 0.5], n_max=100) is None


def _synthetic(deltas):
    points = tuple(
        CurvePoint(N=n, delta_phi=d, shot_noise=1.0 / math.sqrt(n), heisenberg=0.0)
        for n, d in enumerate(deltas, start=1)
    )
    return SweepResult(
        L=0.1, points=points, n_opt=SweepLimit.NOT_FOUND, n_subshot_max=SweepLimit.NOT_FOUND
    )


def test_subshot_run_is_anchored_at_minimum():
    # zwei Läufe: (2, 3) mit dem Minimum, (6, 7) darüber
    result = _synthetic([2.0, 0.5, 0.1, 0.9, 0.9, 0.3, 0.3, 0.9])
    assert result.subshot_range() == (2, 3)


def test_subshot_run_below_minimum():
    # Minimum bei N = 3 liegt knapp über 1/√3
    result = _synthetic([2.0, 0.6, 0.59, 0.9])
    assert result.subshot_range() == (2, 2)
    assert _synthetic([2.0, 1.0, 0.9]).subshot_range() is None


def test_nopt_respects_lower_bound():
    pairs = nopt_vs_loss([0.01, 0.1], n_max=200, n_min=50)
    assert all(n == 50 for _, n in pairs)
    assert find_n_opt(0.01, n_max=200) < 50


def test_subshot_limit_of_results():
    results = [curve(loss, 1, 100) for loss in (1e-4, 1e-3, 0.3)]
    assert subshot_limit_of(results) == 1e-3
    assert subshot_limit_of(results[2:]) is None
    assert subshot_limit_of([]) is None
