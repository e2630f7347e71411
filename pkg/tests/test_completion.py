import cmath
import math

import numpy as np
import pytest

from gstab import (
    CauchySequencePath,
    DGObject,
    ExplicitSequence,
    ModelMismatchError,
    SequenceError,
    StabilityCondition,
    UnresolvableTieError,
    equivalent,
    evaluate,
    hn_filtration,
    hom_vanishes,
    injectivity_probe,
    is_pi_local,
    j_images_equal,
    j_map,
    limiting_phase,
    limiting_support,
    load_model,
    mass,
    massless_subcategory,
    quotient_heart,
    quotient_norm,
    stabilized_hn,
    strongly_equivalent,
    support_constant,
    thick_closure,
    validate,
)
from gstab.completion import UnsupportedModelError

A1 = load_model("a1_cyn:2")
A2 = load_model("a2_path")


def obj(*pairs):
    return DGObject.of(*pairs)


def fade_s1(z, shift=0):
    sign = -1 if shift % 2 else 1
    return CauchySequencePath.make(A2, "std", shift, (0, sign * (-1 + 0j)), (sign * z, 0))


def a1_collapse(shift=0, b=1j):
    sign = -1 if shift % 2 else 1
    return CauchySequencePath.make(A1, "std", shift, (0j,), (sign * b,))


def a1_interior(a, shift=0, b=0.3j):
    sign = -1 if shift % 2 else 1
    return CauchySequencePath.make(A1, "std", shift, (sign * a,), (b,))


def test_evaluate_examples():
    s = fade_s1(1j)
    assert evaluate(s, 2).charge == (0.5j, -1)
    with pytest.raises(SequenceError):
        evaluate(s, float("inf"))
    c = CauchySequencePath.make(A1, "std", 0, (0j,), (-1 + 0j,))
    assert evaluate(c, 4).charge == (-0.25 + 0j,)


def test_evaluate_respects_n0():
    # enters the upper half plane only once n beats the downward drift
    s = CauchySequencePath.make(A1, "std", 0, (1j,), (-10j,))
    assert s.n0 == 11
    assert validate(evaluate(s, 11)).ok
    with pytest.raises(SequenceError):
        evaluate(s, 10)


def test_make_rejects_invalid_tails():
    with pytest.raises(SequenceError):
        CauchySequencePath.make(A1, "std", 0, (0j,), (-1j,))
    with pytest.raises(SequenceError):
        CauchySequencePath.make(A1, "std", 0, (1 + 0j,), (1 + 0j,))
    with pytest.raises(SequenceError):
        CauchySequencePath.make(A1, "std", 0, (0j,), (1j,), n0=0)


def test_is_pi_local():
    assert is_pi_local(a1_collapse()).pi_local
    witness = is_pi_local(fade_s1(1j)).witness
    assert witness == {"kind": "chamber", "heart_id": "std", "shift": 0, "model": "a2_path"}
    hopping = ExplicitSequence(
        (
            StabilityCondition(A1, (-1 + 0j,), "std", 0),
            StabilityCondition(A1, (-1 + 0j,), "std", 2),
        )
    )
    assert not is_pi_local(hopping).pi_local
    steady = ExplicitSequence((StabilityCondition(A1, (-1 + 0j,), "std", 0),))
    assert is_pi_local(steady).pi_local


def test_analysis_rejects_explicit_sequences():
    steady = ExplicitSequence((StabilityCondition(A1, (-1 + 0j,), "std", 0),))
    with pytest.raises(SequenceError):
        massless_subcategory(steady)
    with pytest.raises(SequenceError):
        stabilized_hn(steady, obj(("S", 0)))


def test_equivalent_examples():
    assert equivalent(a1_collapse(0), a1_collapse(2))
    assert not equivalent(a1_interior(-1), a1_interior(-2))
    assert equivalent(fade_s1(1j), fade_s1(cmath.exp(1j * math.pi / 3)))
    with pytest.raises(ModelMismatchError):
        equivalent(a1_collapse(), fade_s1(1j))


def test_equivalent_interior_needs_same_sheet():
    assert equivalent(a1_interior(-1, 0, b=0.2j), a1_interior(-1, 0, b=0.9j))
    assert not equivalent(a1_interior(-1, 0), a1_interior(-1, 2))


def test_strongly_equivalent():
    same = strongly_equivalent(a1_collapse(0, b=1j), a1_collapse(0, b=0.4 + 0.4j))
    assert same.ok and len(same.chain) == 1
    across = strongly_equivalent(a1_collapse(0), a1_collapse(2))
    assert across.ok and len(across.chain) >= 2
    with pytest.raises(UnsupportedModelError):
        strongly_equivalent(fade_s1(1j), fade_s1(2j))
    distinct = strongly_equivalent(a1_interior(-1), a1_interior(-2))
    assert not distinct.ok and distinct.chain == ()


def test_massless_examples():
    assert massless_subcategory(fade_s1(1j)).generators == frozenset({"S1"})
    assert massless_subcategory(a1_collapse()).generators == frozenset({"S"})
    assert massless_subcategory(a1_interior(-1)).generators == frozenset()


def test_stabilized_hn_examples():
    n_e, tail = stabilized_hn(fade_s1(1j), obj(("E", 0)))
    assert n_e == 1
    assert [(o.summands, p) for o, p in tail.factors] == [
        ((("S2", 0),), 1.0),
        ((("S1", 0),), 0.5),
    ]
    n_e, tail = stabilized_hn(a1_interior(-1), obj(("S", 3)))
    assert n_e == 1 and len(tail.factors) == 1
    # wall-touching tail: the order-one term settles the comparison
    seq = CauchySequencePath.make(A2, "std", 0, (1j, -1), (1 + 0j, 0))
    n_e, tail = stabilized_hn(seq, obj(("E", 0)))
    assert [o.summands for o, _ in tail.factors] == [(("S2", 0),), (("S1", 0),)]
    assert tail.factors[1][1] == pytest.approx(0.5, abs=1e-12)


def test_stabilized_hn_settle_index_is_verified():
    # phase comparison flips sign at n = 10: the tail order holds after that
    seq = CauchySequencePath.make(A2, "std", 0, (1j, -1 + 1.1j), (-11j, 0))
    n_e, tail = stabilized_hn(seq, obj(("E", 0)))
    assert n_e >= seq.n0
    first = [o for o, _ in hn_filtration(evaluate(seq, n_e + 1), obj(("E", 0))).factors]
    stable = [o for o, _ in tail.factors]
    assert first == stable
    big = [o for o, _ in hn_filtration(evaluate(seq, 10**6), obj(("E", 0))).factors]
    assert big == stable


def test_unresolvable_tie_is_reported():
    a, b = 1 + 1j, (1 + 1j) * (1 + 1e-13j)
    seq = CauchySequencePath.make(A2, "std", 0, (b, a), (0, 0))
    with pytest.raises(UnresolvableTieError):
        stabilized_hn(seq, obj(("E", 0)))


def test_second_order_comparison_resolves():
    # limits and first-order terms tie exactly; the quadratic term decides
    seq = CauchySequencePath.make(A2, "std", 0, (1j, 0), (1 + 1j, 2j))
    _, tail = stabilized_hn(seq, obj(("E", 0)))
    assert [o.summands for o, _ in tail.factors] == [(("S2", 0),), (("S1", 0),)]


def test_limiting_support_examples():
    c, holds = limiting_support(fade_s1(1j))
    assert c == 1.0 and holds
    c, holds = limiting_support(a1_collapse())
    assert math.isinf(c) and holds
    const = CauchySequencePath.make(A2, "std", 0, (1j, -1), (0, 0))
    c, holds = limiting_support(const)
    assert c == support_constant(evaluate(const, 5))


def test_limiting_support_is_tail_limit():
    seq = fade_s1(2j)
    c, _ = limiting_support(seq)
    # the finite-n constant over the same qualifying classes converges to c
    for n, tol in ((10**3, 1e-2), (10**6, 1e-5)):
        sigma = evaluate(seq, n)
        qualifying = [
            abs(sigma.charge_of(obj((sym, 0))))
            / float(np.linalg.norm(A2.class_table[sym]))
            for sym in ("S2",)
        ]
        assert min(qualifying) == pytest.approx(c, rel=tol)


def test_limiting_phase_examples():
    s = fade_s1(1j)
    assert limiting_phase(s, obj(("S2", 0))) == 1.0
    assert limiting_phase(s, obj(("S1", 0))) == 0.5
    assert limiting_phase(s, obj(("E", 0))) is None


def test_limit_slicing_axioms():
    s = fade_s1(cmath.exp(0.4j * math.pi))
    members = []
    for sym in A2.indecomposables:
        for k in range(-2, 3):
            phi = limiting_phase(s, obj((sym, k)))
            if phi is not None:
                members.append(((sym, k), phi))
                assert limiting_phase(s, obj((sym, k + 1))) == pytest.approx(phi + 1, abs=1e-12)
    for (x, px) in members:
        for (y, py) in members:
            if px > py + 1e-9:
                assert hom_vanishes(A2, obj(x), obj(y))


def test_stabilized_factors_have_decreasing_limit_phases():
    rng = np.random.default_rng(17)
    from gstab.acceptance import _random_object, _random_sequence

    for _ in range(50):
        seq = _random_sequence(A2, rng, "interior")
        _, tail = stabilized_hn(seq, _random_object(A2, rng))
        phis = [p for _, p in tail.factors]
        assert all(a > b - 1e-12 for a, b in zip(phis, phis[1:]))


def test_quotient_heart_examples():
    qh = quotient_heart(fade_s1(1j))
    assert (qh.model_id, qh.heart_id, qh.shift, qh.zero) == ("a2_path_mod_S1", "std", 0, False)
    assert qh.serre_report["ok"]
    qz = quotient_heart(a1_collapse())
    assert qz.zero and qz.model_id == "zero"
    qi = quotient_heart(a1_interior(-1))
    assert (qi.model_id, qi.heart_id, qi.shift) == ("a1_cyn:2", "std", 0)


def test_quotient_heart_wall_limit_lands_in_adjacent_window():
    # the limit charge sits on the bottom wall of the window: the induced
    # heart is the adjacent catalog chamber, one window down
    seq = CauchySequencePath.make(A1, "std", 0, (2 + 0j,), (1j,))
    qh = quotient_heart(seq)
    assert (qh.heart_id, qh.shift) == ("std", -1)


def test_quotient_norm_examples():
    k = thick_closure(A2, ["S1"])
    assert quotient_norm(A2, k, None, (1, 1)) == pytest.approx(1.0)
    assert quotient_norm(A2, k, None, (0, 0)) == 0.0
    assert quotient_norm(A2, k, None, (3, 4)) == pytest.approx(4.0)
    full = thick_closure(A2, ["S1", "S2"])
    assert quotient_norm(A2, full, None, (3, 4)) == pytest.approx(0.0, abs=1e-12)
    zero = thick_closure(A2, [])
    assert quotient_norm(A2, zero, None, (3, 4)) == pytest.approx(5.0)


def test_j_map_examples():
    image = j_map(fade_s1(1j))
    assert image.massless.generators == frozenset({"S1"})
    assert image.quotient_sigma.charge == (-1 + 0j,)
    assert (image.quotient_sigma.heart_id, image.quotient_sigma.shift) == ("std", 0)
    assert image.to_json()["quotient"]["model"] == "a2_path_mod_S1"

    collapse = j_map(a1_collapse())
    assert collapse.quotient_sigma is None
    assert collapse.to_json() == {"K": ["S"], "quotient": "zero"}

    interior = j_map(a1_interior(-1))
    assert not interior.massless.generators
    assert interior.quotient_sigma.model is A1
    assert interior.quotient_sigma.charge == (-1 + 0j,)


def test_j_quotient_charge_descends():
    seq = fade_s1(2j)
    image = j_map(seq)
    from gstab.models import quotient_model

    qd = quotient_model(A2, image.massless)
    for basis in ((1, 0), (0, 1)):
        lifted = sum(q * p for q, p in zip(image.quotient_sigma.charge, qd.project(basis)))
        want = sum(a * c for a, c in zip(seq.A, basis))
        assert lifted == pytest.approx(want, abs=1e-12)


def test_limit_slicing_ambiguity_disappears_in_quotient():
    s1, s2 = fade_s1(1j), fade_s1(cmath.exp(1j * math.pi / 3))
    assert limiting_phase(s1, obj(("S1", 0))) != limiting_phase(s2, obj(("S1", 0)))
    assert equivalent(s1, s2)
    assert j_images_equal(j_map(s1), j_map(s2))


def test_representative_independence():
    rng = np.random.default_rng(23)
    from gstab.acceptance import _equivalent_pairs

    for s1, s2 in _equivalent_pairs(rng, 12):
        assert equivalent(s1, s2)
        assert massless_subcategory(s1).generators == massless_subcategory(s2).generators
        assert j_images_equal(j_map(s1), j_map(s2))


def test_injectivity_probe_examples():
    report = injectivity_probe([fade_s1(1j), fade_s1(2j * cmath.exp(-1j * math.pi / 6))])
    assert report.classes == ((0, 1),) and report.consistent

    report = injectivity_probe([a1_collapse(0), a1_collapse(2)])
    assert report.classes == ((0, 1),) and report.consistent

    report = injectivity_probe([a1_interior(-1), a1_interior(-2)])
    assert report.classes == ((0,), (1,)) and report.consistent
    assert not j_images_equal(j_map(a1_interior(-1)), j_map(a1_interior(-2)))


def test_mass_limit_consistency():
    from gstab import class_of

    seq = fade_s1(1.5j)
    for target in (obj(("E", 0)), obj(("S1", 0), ("S2", 1)), obj(("E", 2), ("S1", 0))):
        _, tail = stabilized_hn(seq, target)
        limit = sum(
            abs(sum(a * c for a, c in zip(seq.A, class_of(A2, factor))))
            for factor, _ in tail.factors
        )
        for n, tol in ((10**3, 1e-2), (10**6, 1e-5)):
            got = mass(evaluate(seq, n), target)
            assert got == pytest.approx(limit, rel=tol, abs=tol)


def test_j_map_respects_alternative_norm():
    seq = fade_s1(1j)
    g = [[2.0, 0.3], [0.3, 1.0]]
    image = j_map(seq, norm=g)
    assert image.massless.generators == frozenset({"S1"})
    c, holds = limiting_support(seq, norm=g)
    assert holds and c > 0
