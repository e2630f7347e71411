import itertools

import pytest

from gstab import (
    DGObject,
    ModelError,
    UnknownModelError,
    class_of,
    hom_vanishes,
    load_model,
    quotient_model,
    thick_closure,
)
from gstab.models import SHIFT_WINDOW


def obj(*pairs):
    return DGObject.of(*pairs)


def test_load_a1():
    m = load_model("a1_cyn:2")
    assert m.indecomposables == ("S",)
    assert m.rank == 1
    assert m.params["N"] == 2
    assert m.hom_table[("S", "S", 2)] == 1


def test_load_a2():
    m = load_model("a2_path")
    assert m.triangle_table == (("S2", "E", "S1"),)
    assert m.rank == 2
    assert len(m.heart_catalog) == 3


def test_load_rejects_small_n():
    with pytest.raises(UnknownModelError):
        load_model("a1_cyn:1")
    with pytest.raises(UnknownModelError):
        load_model("a3_path")


def test_class_of_examples():
    a2 = load_model("a2_path")
    assert class_of(a2, obj(("E", 0))) == (1, 1)
    assert class_of(a2, obj(("S1", 0), ("S1", 1))) == (0, 0)
    a1 = load_model("a1_cyn:2")
    assert class_of(a1, obj(("S", 2), ("S", 0))) == (2,)


def test_class_shift_negates():
    a2 = load_model("a2_path")
    for sym in a2.indecomposables:
        x = obj((sym, 0), (sym, 2))
        assert class_of(a2, x.shift(1)) == tuple(-c for c in class_of(a2, x))


def test_hom_vanishes_examples():
    a2 = load_model("a2_path")
    assert hom_vanishes(a2, obj(("S1", 0)), obj(("S2", 0)))
    assert not hom_vanishes(a2, obj(("S2", 0)), obj(("E", 0)))
    for sym in a2.indecomposables:
        assert not hom_vanishes(a2, obj((sym, 0)), obj((sym, 0)))


def test_thick_closure_examples():
    a2 = load_model("a2_path")
    assert thick_closure(a2, [obj(("S1", 0))]).generators == frozenset({"S1"})
    assert thick_closure(a2, [obj(("S1", 0)), obj(("S2", 3))]).generators == frozenset(
        {"S1", "S2", "E"}
    )
    a1 = load_model("a1_cyn:2")
    assert thick_closure(a1, []).generators == frozenset()


def test_thick_closure_is_closure_operator():
    a2 = load_model("a2_path")
    syms = a2.indecomposables
    for r in range(len(syms) + 1):
        for gens in itertools.combinations(syms, r):
            node = thick_closure(a2, gens)
            assert set(gens) <= node.generators  # extensive
            assert thick_closure(a2, node.generators).generators == node.generators
            for extra in syms:  # monotone
                bigger = thick_closure(a2, set(gens) | {extra})
                assert node.generators <= bigger.generators


def test_membership_shift_and_summand_invariance():
    a2 = load_model("a2_path")
    node = thick_closure(a2, ["S1"])
    x = obj(("S1", 0), ("S1", -3))
    assert node.contains(x) and node.contains(x.shift(5))
    assert node.contains(obj(("S1", 2)))
    assert not node.contains(x + obj(("E", 0)))


def test_quotient_examples():
    a2 = load_model("a2_path")
    k = thick_closure(a2, ["S1"])
    qd = quotient_model(a2, k)
    assert qd.model.rank == 1
    assert qd.project((1, 1)) == (1,)
    assert qd.project((1, 0)) == (0,)
    ident = quotient_model(a2, thick_closure(a2, []))
    assert ident.model is a2
    assert ident.project((3, 4)) == (3, 4)
    zero = quotient_model(a2, thick_closure(a2, ["S1", "S2"]))
    assert zero.model.rank == 0
    assert zero.project((3, 4)) == ()


def test_quotient_projection_kills_exactly_members():
    a2 = load_model("a2_path")
    lo, hi = SHIFT_WINDOW
    for node in a2.thick_lattice:
        if not node.generators or node.generators == frozenset(a2.indecomposables):
            continue
        qd = quotient_model(a2, node)
        for sym in a2.indecomposables:
            for k in range(lo, hi + 1):
                killed = all(c == 0 for c in qd.project(class_of(a2, obj((sym, k)))))
                assert killed == node.contains_symbol(sym)


def test_quotient_section_is_right_inverse():
    a2 = load_model("a2_path")
    for node in a2.thick_lattice:
        qd = quotient_model(a2, node)
        for j in range(qd.model.rank):
            e = tuple(1 if i == j else 0 for i in range(qd.model.rank))
            assert qd.project(qd.lift(e)) == e


def test_quotient_rejects_non_lattice_node():
    a2 = load_model("a2_path")
    from gstab.models import ThickSubcategory

    with pytest.raises(ModelError):
        quotient_model(a2, ThickSubcategory(frozenset({"S1", "S2"})))


def test_triangle_class_additivity():
    a2 = load_model("a2_path")
    for sub, tot, quo in a2.triangle_table:
        cs = a2.class_table[sub]
        cq = a2.class_table[quo]
        assert tuple(a + b for a, b in zip(cs, cq)) == a2.class_table[tot]


def test_lattice_closed_under_intersection():
    a2 = load_model("a2_path")
    nodes = {n.generators for n in a2.thick_lattice}
    for a in nodes:
        for b in nodes:
            assert a & b in nodes


def test_dgobject_json_roundtrip():
    x = obj(("S1", -2), ("E", 0), ("S1", -2))
    assert DGObject.from_json(x.to_json()) == x
    assert x.shift(2).summands == (("E", 2), ("S1", 0), ("S1", 0))
    assert DGObject.of().is_zero
