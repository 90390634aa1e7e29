import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from majbound.bounds import least_upper_bound
from majbound.errors import DimensionMismatch
from majbound.lattice import majorizes, sort_descending
from majbound.lorenz import dominates, envelope_check, export_curves, lorenz_curve
from majbound.presets import qubit_xz, qutrit_coles, three_pauli
from majbound.quantum import direct_sum_distribution, random_state_with_spectrum


@st.composite
def pair(draw):
    d = draw(st.integers(2, 8))
    vs = []
    for _ in range(2):
        w = draw(st.lists(st.integers(0, 50), min_size=d, max_size=d).filter(lambda x: sum(x) > 0))
        v = np.array(w, dtype=float)
        vs.append(sort_descending(v / v.sum()))
    return vs


def test_mixed_line():
    c = lorenz_curve([0.5] * 4)
    assert c.points == [(0, 0), (1, 0.5), (2, 1.0), (3, 1.5), (4, 2.0)]


def test_extreme_point():
    assert lorenz_curve([1, 0]).points == [(0, 0), (1, 1), (2, 1)]


def test_qutrit_bound_curve():
    r = np.sqrt(6) / 3
    ys = lorenz_curve([1, r, 1 - r, 0, 0, 0]).ys
    assert np.allclose(ys, [0, 1, 1 + r, 2, 2, 2, 2])
    assert ys[2] == pytest.approx(1.8165, abs=1e-4)


def test_concave_and_monotone():
    res = least_upper_bound(three_pauli())
    for v in [res.s] + [r.s_n for r in res.records]:
        ys = lorenz_curve(v).ys
        assert np.all(np.diff(ys) >= 0)
        assert np.all(np.diff(ys, 2) <= 1e-12)


@given(pair())
def test_majorization_is_lorenz_dominance(ab):
    a, b = ab
    assert majorizes(a, b, tol=0.0) == dominates(lorenz_curve(a), lorenz_curve(b))


@pytest.mark.parametrize("ms", [qubit_xz(np.pi / 2), three_pauli(), qutrit_coles()])
def test_envelope_of_levels(ms):
    res = least_upper_bound(ms)
    curves = [lorenz_curve(r.s_n) for r in res.records]
    assert envelope_check(lorenz_curve(res.s), curves)


def test_envelope_single_curve_and_lowered_bound():
    c = lorenz_curve([0.6, 0.3, 0.1])
    assert envelope_check(c, [c])
    assert not envelope_check(lorenz_curve([0.55, 0.35, 0.1]), [c])
    # an envelope that is valid but not least
    assert not envelope_check(lorenz_curve([0.9, 0.1, 0.0]), [c])


def test_envelope_with_flattening():
    p, q = [0.6, 0.15, 0.15, 0.1], [0.5, 0.25, 0.2, 0.05]
    curves = [lorenz_curve(p), lorenz_curve(q)]
    assert envelope_check(lorenz_curve([0.6, 0.175, 0.175, 0.05]), curves)
    # a valid upper envelope that sits above the hull at k=2
    assert not envelope_check(lorenz_curve([0.6, 0.2, 0.15, 0.05]), curves)


def test_envelope_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        envelope_check(lorenz_curve([1, 0]), [lorenz_curve([1, 0, 0])])


def test_mixed_curve_is_lowest():
    ms = qutrit_coles()
    mix = lorenz_curve(direct_sum_distribution(ms, random_state_with_spectrum([1 / 3] * 3, 0)))
    assert np.allclose(mix.ys, np.arange(7) / 3)
    for i in range(200):
        c = lorenz_curve(direct_sum_distribution(ms, random_state_with_spectrum([1, 0, 0], i)))
        assert dominates(c, mix, 1e-12)


def test_export_is_deterministic(tmp_path):
    curves = [("a", lorenz_curve([0.5, 0.5])), ("b", lorenz_curve([1, 0]))]
    p1 = export_curves(curves, tmp_path / "one.csv")
    p2 = export_curves(curves, tmp_path / "two.csv")
    assert p1.read_bytes() == p2.read_bytes()
    lines = p1.read_text().splitlines()
    assert lines[0] == "name,k,y"
    assert lines[1:4] == ["a,0,0", "a,1,0.5", "a,2,1"]
    assert len(lines) == 7


def test_export_error_names_path(tmp_path):
    bad = tmp_path / "missing" / "x.csv"
    with pytest.raises(OSError, match="missing"):
        export_curves([("a", lorenz_curve([1.0]))], bad)
