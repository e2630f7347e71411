import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gstab import (
    DGObject,
    InvalidStabilityConditionError,
    StabilityCondition,
    bridgeland_distance,
    hn_filtration,
    load_model,
    mass,
    phases,
    sigma_norm,
    slicing_distance,
    support_constant,
    validate,
)
from gstab.acceptance import _random_object, _random_sigma
from gstab.stability import DegenerateNormError

A2 = load_model("a2_path")
A1 = load_model("a1_cyn:2")


def sig(charge, heart="std", shift=0, model=A2):
    return StabilityCondition(model, tuple(complex(z) for z in charge), heart, shift)


def obj(*pairs):
    return DGObject.of(*pairs)


# charges whose window arguments stay clear of the axes, for property tests
halfplane = st.builds(
    lambda r, a: r * cmath.exp(1j * math.pi * a),
    st.floats(0.1, 10.0),
    st.floats(0.02, 0.98),
)


def test_validate_examples():
    assert validate(sig([1j, -1])).ok
    report = validate(sig([-1j, -1]))
    assert not report.ok and "S1" in report.violations[0]
    assert not validate(sig([0], model=A1)).ok


def test_validate_odd_window():
    assert validate(sig([-1j, -2j], shift=1)).ok
    assert not validate(sig([1j, -1], shift=1)).ok


def test_hn_examples():
    hn = hn_filtration(sig([1j, -1]), obj(("E", 0)))
    assert [(o.summands, p) for o, p in hn.factors] == [
        ((("S2", 0),), 1.0),
        ((("S1", 0),), 0.5),
    ]
    hn2 = hn_filtration(sig([-1 + 1j, 1 + 1j]), obj(("E", 0)))
    assert [(o.summands, p) for o, p in hn2.factors] == [((("E", 0),), 0.5)]
    s = sig([-1], model=A1)
    hn3 = hn_filtration(s, obj(("S", 3)))
    assert hn3.factors == ((obj(("S", 3)), 4.0),)


def test_hn_rejects_invalid_or_zero():
    with pytest.raises(InvalidStabilityConditionError):
        hn_filtration(sig([-1j, -1]), obj(("E", 0)))
    with pytest.raises(Exception):
        hn_filtration(sig([1j, -1]), DGObject.of())


def test_hn_merges_equal_phases():
    s = sig([1j, 1j])
    # a tied extension stays semistable in one piece
    hn = hn_filtration(s, obj(("E", 0)))
    assert hn.factors == ((obj(("E", 0)), 0.5),)
    # equal-phase summands merge into a single factor
    hn2 = hn_filtration(s, obj(("S1", 0), ("S2", 0)))
    assert hn2.factors == ((obj(("S1", 0), ("S2", 0)), 0.5),)


def test_mass_examples():
    assert mass(sig([1j, -1]), obj(("E", 0))) == 2.0
    assert mass(sig([-1 + 1j, 1 + 1j]), obj(("E", 0))) == 2.0
    assert mass(sig([1j, -1]), obj(("E", 0), ("E", 5))) == 4.0


def test_phases_examples():
    s = sig([1j, -1])
    assert phases(s, obj(("E", 0))) == (1.0, 0.5)
    assert phases(s, obj(("E", 1))) == (2.0, 1.5)
    sa = sig([-0.5 + 0.5j], model=A1)
    p = phases(sa, obj(("S", 0), ("S", 2)))
    assert p[0] == p[1] + 2


def test_sigma_norm_examples():
    sa = sig([-1], model=A1)
    assert sigma_norm(sa, (0.1 + 0j,)) == pytest.approx(0.1, abs=1e-15)
    assert sigma_norm(sa, (0j,)) == 0.0
    assert sigma_norm(sig([1j, -1]), (1j, 0)) == pytest.approx(1.0, abs=1e-15)


def test_slicing_distance_examples():
    s = sig([1j, -1])
    rotated = sig([-1j, 1], shift=1)
    assert slicing_distance(s, rotated) == pytest.approx(1.0, abs=1e-12)
    assert slicing_distance(s, s) == 0.0
    w = sig([cmath.exp(3j * math.pi / 4), -1])
    assert slicing_distance(s, w) == pytest.approx(0.25, abs=1e-12)


def test_bridgeland_distance_examples():
    s1 = sig([-1], model=A1)
    s2 = sig([-2], model=A1)
    assert bridgeland_distance(s1, s2) == pytest.approx(math.log(2), abs=1e-12)
    assert bridgeland_distance(s1, s1) == 0.0
    assert bridgeland_distance(sig([1j, -1]), sig([2j, -1])) == pytest.approx(
        math.log(2), abs=1e-12
    )


def test_support_constant_examples():
    assert support_constant(sig([-1], model=A1)) == pytest.approx(1.0)
    assert support_constant(sig([1j, -1])) == pytest.approx(1.0)
    assert support_constant(sig([-1 + 1j, 1 + 1j])) == pytest.approx(math.sqrt(2))


def test_support_constant_rejects_bad_norm():
    with pytest.raises(DegenerateNormError):
        support_constant(sig([1j, -1]), [[1, 2], [2, 1]])
    with pytest.raises(DegenerateNormError):
        support_constant(sig([1j, -1]), [[1, 0], [1, 1]])


@settings(max_examples=60, deadline=None)
@given(z1=halfplane, z2=halfplane, k=st.integers(-4, 4))
def test_mass_shift_invariance_and_additivity(z1, z2, k):
    s = sig([z1, z2])
    x = obj(("E", 0), ("S1", 1))
    y = obj(("S2", -1), ("E", k))
    assert mass(s, x.shift(k)) == mass(s, x)
    assert mass(s, x + y) == mass(s, x) + mass(s, y)
    px = phases(s, x)
    pk = phases(s, x.shift(k))
    assert pk[0] == pytest.approx(px[0] + k, abs=1e-12)
    assert pk[1] == pytest.approx(px[1] + k, abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(z1=halfplane, z2=halfplane)
def test_triangle_mass_inequality(z1, z2):
    s = sig([z1, z2])
    lhs = mass(s, obj(("E", 0)))
    rhs = mass(s, obj(("S2", 0))) + mass(s, obj(("S1", 0)))
    assert lhs <= rhs + 1e-9


def test_phi_plus_of_sum_is_max_of_summands():
    rng = np.random.default_rng(7)
    for _ in range(100):
        s = _random_sigma(A2, rng)
        x = _random_object(A2, rng)
        y = _random_object(A2, rng)
        assert phases(s, x + y)[0] == pytest.approx(
            max(phases(s, x)[0], phases(s, y)[0]), abs=1e-12
        )
        assert phases(s, x + y)[1] == pytest.approx(
            min(phases(s, x)[1], phases(s, y)[1]), abs=1e-12
        )


def test_hn_factor_classes_sum_to_object_class():
    from gstab import class_of

    rng = np.random.default_rng(19)
    for _ in range(100):
        s = _random_sigma(A2, rng)
        x = _random_object(A2, rng)
        hn = hn_filtration(s, x)
        total = [0, 0]
        for factor, _ in hn.factors:
            for i, c in enumerate(class_of(A2, factor)):
                total[i] += c
        assert tuple(total) == class_of(A2, x)
        phis = [p for _, p in hn.factors]
        assert all(a > b for a, b in zip(phis, phis[1:]))


def test_distance_metric_axioms_random():
    rng = np.random.default_rng(11)
    for _ in range(60):
        a, b, c = (_random_sigma(A2, rng) for _ in range(3))
        for dist in (bridgeland_distance, slicing_distance):
            assert dist(a, b) == pytest.approx(dist(b, a), abs=1e-12)
            assert dist(a, c) <= dist(a, b) + dist(b, c) + 1e-9
            assert dist(a, a) == 0.0


def test_extension_semistability_matches_oracle():
    from gstab.oracles import library_factor_classes, oracle_hn

    rng = np.random.default_rng(13)
    for _ in range(200):
        s = _random_sigma(A2, rng)
        expected = oracle_hn(s, {"E": 1})
        got = library_factor_classes(A2, hn_filtration(s, obj(("E", 0))))
        assert len(expected) == len(got)
        for (ec, ep), (gc, gp) in zip(expected, got):
            assert ec == gc and abs(ep - gp) < 1e-9
