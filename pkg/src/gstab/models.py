"""Exact finite models of the triangulated categories this library supports.

Every object is a finite direct sum of shifted indecomposables, classes live
in a small integer lattice, and Hom dimensions / short exact sequences are
tabulated.  Two models are built in:

* ``a1_cyn:N`` - generated by a single N-spherical object ``S`` (rank-1
  lattice, no short exact sequences),
* ``a2_path`` - the bounded derived category of A2 quiver representations,
  with simples ``S1``, ``S2`` and the extension ``E`` sitting in
  ``0 -> S2 -> E -> S1 -> 0``.

Verdier quotients by thick subcategories are returned as models of the same
shape, so the stability machinery runs on them unchanged.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

import numpy as np

# All "for every shift" test quantifications use this window; every invariant
# in the models is shift-periodic, so a finite window suffices.
SHIFT_WINDOW = (-8, 8)


class ModelError(ValueError):
    """Bad model data, or an operation applied to data it does not fit."""


class UnknownModelError(ModelError):
    pass


class UnknownSymbolError(ModelError):
    pass


@dataclass(frozen=True, order=True)
class DGObject:
    """A finite direct sum of shifted indecomposables.

    ``summands`` is a sorted tuple of ``(symbol, shift)`` pairs with
    multiplicity; the empty tuple is the zero object.
    """

    summands: tuple[tuple[str, int], ...] = ()

    @staticmethod
    def of(*summands) -> "DGObject":
        return DGObject(tuple(sorted((str(s), int(k)) for s, k in summands)))

    def shift(self, k: int) -> "DGObject":
        return DGObject(tuple(sorted((s, d + k) for s, d in self.summands)))

    def __add__(self, other: "DGObject") -> "DGObject":
        return DGObject(tuple(sorted(self.summands + other.summands)))

    @property
    def is_zero(self) -> bool:
        return not self.summands

    def counter(self) -> Counter:
        return Counter(self.summands)

    def to_json(self):
        return [[s, k] for s, k in self.summands]

    @staticmethod
    def from_json(data) -> "DGObject":
        return DGObject.of(*((s, k) for s, k in data))


@dataclass(frozen=True)
class ThickSubcategory:
    """A node of a model's thick-subcategory lattice.

    ``generators`` is the full closed set of indecomposable symbols; an object
    belongs to the subcategory iff all of its summands' symbols do (shifts and
    summand removal are then automatic).
    """

    generators: frozenset[str]

    def contains(self, obj: DGObject) -> bool:
        return all(s in self.generators for s, _ in obj.summands)

    def contains_symbol(self, sym: str) -> bool:
        return sym in self.generators

    @property
    def name(self) -> str:
        if not self.generators:
            return "0"
        return "<" + ",".join(sorted(self.generators)) + ">"

    def to_json(self):
        return sorted(self.generators)


@dataclass(frozen=True)
class Heart:
    """A heart of the model, identified by its simple objects.

    ``simples`` are ``(symbol, shift)`` pairs at their catalog anchors.
    ``extension``, when present, records the one short exact sequence
    ``0 -> sub -> total -> quot -> 0`` among window objects; ``total`` is the
    non-simple indecomposable of this heart.
    """

    heart_id: str
    simples: tuple[tuple[str, int], ...]
    extension: tuple[tuple[str, int], tuple[str, int], tuple[str, int]] | None = None

    def anchors(self) -> dict[str, tuple[str, int]]:
        """symbol -> (kind, anchor shift) for every symbol this heart covers."""
        out = {}
        for s, k in self.simples:
            out[s] = ("simple", k)
        if self.extension is not None:
            _, (ts, tk), _ = self.extension
            out[ts] = ("extension", tk)
        return out


@dataclass(frozen=True, eq=False)
class CategoryModel:
    """Finite presentation of one of the supported triangulated categories."""

    model_id: str
    rank: int
    indecomposables: tuple[str, ...]
    class_table: dict[str, tuple[int, ...]]
    hom_table: dict[tuple[str, str, int], int]  # missing keys mean dim 0
    triangle_table: tuple[tuple[str, str, str], ...]  # (sub, total, quot)
    thick_lattice: tuple[ThickSubcategory, ...]
    heart_catalog: tuple[Heart, ...]
    params: dict = field(default_factory=dict)

    def heart(self, heart_id: str) -> Heart:
        for h in self.heart_catalog:
            if h.heart_id == heart_id:
                return h
        raise ModelError(f"model {self.model_id} has no heart {heart_id!r}")

    def require_symbol(self, sym: str) -> None:
        if sym not in self.class_table:
            raise UnknownSymbolError(f"unknown indecomposable {sym!r} in model {self.model_id}")

    @property
    def zero_node(self) -> ThickSubcategory:
        return self.thick_lattice[0]

    @property
    def full_node(self) -> ThickSubcategory:
        return self.thick_lattice[-1]


@dataclass(frozen=True, eq=False)
class QuotientModel:
    """A Verdier quotient D/K packaged with its lattice maps.

    ``projection`` maps classes of the source lattice onto the quotient
    lattice and kills exactly the classes of K's generators; ``section`` is an
    integer right inverse.  ``image_map`` sends each surviving indecomposable
    symbol to its image ``(symbol, shift offset)`` in the quotient model.
    """

    model: CategoryModel
    projection: tuple[tuple[int, ...], ...]
    section: tuple[tuple[int, ...], ...]
    image_map: dict[str, tuple[str, int]]

    def project(self, cls) -> tuple[int, ...]:
        return tuple(sum(r[i] * cls[i] for i in range(len(cls))) for r in self.projection)

    def lift(self, qcls) -> tuple[int, ...]:
        return tuple(sum(r[j] * qcls[j] for j in range(len(qcls))) for r in self.section)


def class_of(model: CategoryModel, obj: DGObject) -> tuple[int, ...]:
    """Class of an object in the model lattice: alternating sum over summands."""
    v = [0] * model.rank
    for s, k in obj.summands:
        model.require_symbol(s)
        sign = -1 if k % 2 else 1
        cls = model.class_table[s]
        for i in range(model.rank):
            v[i] += sign * cls[i]
    return tuple(v)


def hom_vanishes(model: CategoryModel, x: DGObject, y: DGObject) -> bool:
    """True iff Hom(x, y) = 0, summand by summand from the Hom table."""
    for s, _ in x.summands:
        model.require_symbol(s)
    for s, _ in y.summands:
        model.require_symbol(s)
    for sx, kx in x.summands:
        for sy, ky in y.summands:
            if model.hom_table.get((sx, sy, ky - kx), 0):
                return False
    return True


def thick_closure(model: CategoryModel, generators) -> ThickSubcategory:
    """Smallest node of the thick lattice containing the given generators.

    Generators may be DGObjects or bare symbols.  Closure under shifts and
    summands is automatic in this representation; triangles are closed by
    completing any two-out-of-three membership.
    """
    syms: set[str] = set()
    for g in generators:
        if isinstance(g, DGObject):
            for s, _ in g.summands:
                syms.add(s)
        else:
            syms.add(str(g))
    for s in syms:
        model.require_symbol(s)
    changed = True
    while changed:
        changed = False
        for tri in model.triangle_table:
            inside = sum(1 for t in tri if t in syms)
            if inside == 2:
                syms.update(tri)
                changed = True
    target = frozenset(syms)
    for node in model.thick_lattice:
        if node.generators == target:
            return node
    raise ModelError(f"closure {sorted(target)} is not a lattice node of {model.model_id}")


# ---------------------------------------------------------------------------
# built-in models


def _point_model(model_id: str, sym: str, hom_shifts=(0,)) -> CategoryModel:
    """Rank-1 model generated by a single object with self-Homs at the given shifts."""
    heart = Heart("std", ((sym, 0),), None)
    return CategoryModel(
        model_id=model_id,
        rank=1,
        indecomposables=(sym,),
        class_table={sym: (1,)},
        hom_table={(sym, sym, k): 1 for k in hom_shifts},
        triangle_table=(),
        thick_lattice=(ThickSubcategory(frozenset()), ThickSubcategory(frozenset({sym}))),
        heart_catalog=(heart,),
    )


def _zero_model() -> CategoryModel:
    return CategoryModel(
        model_id="zero",
        rank=0,
        indecomposables=(),
        class_table={},
        hom_table={},
        triangle_table=(),
        thick_lattice=(ThickSubcategory(frozenset()),),
        heart_catalog=(),
    )


def _build_a1_cyn(n: int) -> CategoryModel:
    model = _point_model(f"a1_cyn:{n}", "S", hom_shifts=(0, n))
    return CategoryModel(
        model_id=model.model_id,
        rank=model.rank,
        indecomposables=model.indecomposables,
        class_table=model.class_table,
        hom_table=model.hom_table,
        triangle_table=model.triangle_table,
        thick_lattice=model.thick_lattice,
        heart_catalog=model.heart_catalog,
        params={"N": n},
    )


def _build_a2_path() -> CategoryModel:
    syms = ("S1", "S2", "E")
    class_table = {"S1": (1, 0), "S2": (0, 1), "E": (1, 1)}
    hom_table = {
        ("S1", "S1", 0): 1,
        ("S2", "S2", 0): 1,
        ("E", "E", 0): 1,
        ("S2", "E", 0): 1,
        ("E", "S1", 0): 1,
        ("S1", "S2", 1): 1,
    }
    lattice = (
        ThickSubcategory(frozenset()),
        ThickSubcategory(frozenset({"S1"})),
        ThickSubcategory(frozenset({"S2"})),
        ThickSubcategory(frozenset({"E"})),
        ThickSubcategory(frozenset({"S1", "S2", "E"})),
    )
    # The three hearts of the simple-tilt cycle, recorded up to global shift.
    catalog = (
        Heart("std", (("S1", 0), ("S2", 0)), (("S2", 0), ("E", 0), ("S1", 0))),
        Heart("tilt_s1_down", (("E", 0), ("S1", -1)), (("S1", -1), ("S2", 0), ("E", 0))),
        Heart("tilt_s2_up", (("E", 0), ("S2", 1)), (("E", 0), ("S1", 0), ("S2", 1))),
    )
    model = CategoryModel(
        model_id="a2_path",
        rank=2,
        indecomposables=syms,
        class_table=class_table,
        hom_table=hom_table,
        triangle_table=(("S2", "E", "S1"),),
        thick_lattice=lattice,
        heart_catalog=catalog,
    )
    _validate_a2_hom_table(model)
    return model


# Representations of the A2 quiver (one arrow, vertex 1 -> vertex 2), used to
# validate the constant Hom table at load time by enumerating linear maps.
_A2_REPS = {
    "S1": ((1, 0), np.zeros((0, 1))),
    "S2": ((0, 1), np.zeros((1, 0))),
    "E": ((1, 1), np.ones((1, 1))),
}


def _a2_hom_dim(x: str, y: str) -> int:
    (m1, m2), mf = _A2_REPS[x]
    (n1, n2), nf = _A2_REPS[y]
    unknowns = m1 * n1 + m2 * n2
    if unknowns == 0:
        return 0
    # Morphisms are pairs (A: M1->N1, B: M2->N2) with B Mf = Nf A.
    # vec(B Mf) = kron(Mf^T, I_n2) vec(B), vec(Nf A) = kron(I_m1, Nf) vec(A).
    left = np.kron(np.eye(m1), nf) if m1 * n2 else np.zeros((m1 * n2, m1 * n1))
    right = np.kron(mf.T, np.eye(n2)) if m1 * n2 else np.zeros((m1 * n2, m2 * n2))
    if m1 * n2 == 0:
        return unknowns
    cmat = np.hstack([-left.reshape(m1 * n2, m1 * n1), right.reshape(m1 * n2, m2 * n2)])
    return unknowns - int(np.linalg.matrix_rank(cmat))


def _a2_euler(dx, dy) -> int:
    return dx[0] * dy[0] + dx[1] * dy[1] - dx[0] * dy[1]


def _validate_a2_hom_table(model: CategoryModel) -> None:
    for x in model.indecomposables:
        for y in model.indecomposables:
            h0 = _a2_hom_dim(x, y)
            ext1 = h0 - _a2_euler(model.class_table[x], model.class_table[y])
            if model.hom_table.get((x, y, 0), 0) != h0:
                raise ModelError(f"hom table disagrees with linear-map count at ({x},{y},0)")
            if model.hom_table.get((x, y, 1), 0) != ext1:
                raise ModelError(f"hom table disagrees with Euler pairing at ({x},{y},1)")
    for (x, y, k), dim in model.hom_table.items():
        if k not in (0, 1) and dim:
            raise ModelError("a2_path Hom table must be concentrated in shifts 0 and 1")


def _check_invariants(model: CategoryModel) -> None:
    for sub, tot, quo in model.triangle_table:
        cs = model.class_table[sub]
        ct = model.class_table[tot]
        cq = model.class_table[quo]
        if tuple(a + b for a, b in zip(cs, cq)) != ct:
            raise ModelError(f"triangle ({sub},{tot},{quo}) violates class additivity")
    for s in model.indecomposables:
        if model.hom_table.get((s, s, 0), 0) < 1:
            raise ModelError(f"{s} lacks an identity morphism in the Hom table")
        if all(c == 0 for c in model.class_table[s]):
            raise ModelError(f"{s} has zero class")
    nodes = {n.generators for n in model.thick_lattice}
    if frozenset() not in nodes or frozenset(model.indecomposables) not in nodes:
        raise ModelError("thick lattice must contain 0 and the whole category")
    for a, b in combinations(nodes, 2):
        if a & b not in nodes:
            raise ModelError("thick lattice is not closed under intersection")
    for h in model.heart_catalog:
        if len(h.simples) != model.rank:
            raise ModelError(f"heart {h.heart_id} has {len(h.simples)} simples, expected {model.rank}")
        mat = np.array(
            [[(-1 if k % 2 else 1) * c for c in model.class_table[s]] for s, k in h.simples]
        )
        if model.rank and round(abs(np.linalg.det(mat))) != 1:
            raise ModelError(f"simple classes of heart {h.heart_id} are not a lattice basis")


@lru_cache(maxsize=None)
def load_model(model_id: str) -> CategoryModel:
    """Load one of the built-in models from its id string.

    Supported ids: ``"a1_cyn:<N>"`` with integer N >= 2, and ``"a2_path"``.
    """
    mid = str(model_id).strip().lower()
    if mid == "a2_path":
        model = _build_a2_path()
    elif mid.startswith("a1_cyn:"):
        try:
            n = int(mid.split(":", 1)[1])
        except ValueError:
            raise UnknownModelError(f"bad a1_cyn parameter in {model_id!r}") from None
        if n < 2:
            raise UnknownModelError(f"a1_cyn requires N >= 2, got {n}")
        model = _build_a1_cyn(n)
    else:
        raise UnknownModelError(f"unsupported model id {model_id!r}")
    _check_invariants(model)
    return model


def _identity_rows(rank: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(1 if i == j else 0 for j in range(rank)) for i in range(rank))


@lru_cache(maxsize=None)
def _quotient_cached(model: CategoryModel, generators: frozenset) -> QuotientModel:
    if generators == frozenset():
        ident = _identity_rows(model.rank)
        return QuotientModel(model, ident, ident, {s: (s, 0) for s in model.indecomposables})
    if generators == frozenset(model.indecomposables):
        proj = tuple()  # 0 x rank
        section = tuple(tuple() for _ in range(model.rank))
        return QuotientModel(_zero_model(), proj, section, {})
    if model.model_id != "a2_path":
        raise ModelError(f"{model.model_id} has no proper nonzero thick subcategories")
    if generators == frozenset({"S1"}):
        qm = _point_model("a2_path_mod_S1", "S2")
        return QuotientModel(qm, ((0, 1),), ((0,), (1,)), {"S2": ("S2", 0), "E": ("S2", 0)})
    if generators == frozenset({"S2"}):
        qm = _point_model("a2_path_mod_S2", "S1")
        return QuotientModel(qm, ((1, 0),), ((1,), (0,)), {"S1": ("S1", 0), "E": ("S1", 0)})
    if generators == frozenset({"E"}):
        # [S2] = [S1][-1] once E dies, so the class map is (a, b) -> a - b.
        qm = _point_model("a2_path_mod_E", "S1")
        return QuotientModel(qm, ((1, -1),), ((1,), (0,)), {"S1": ("S1", 0), "S2": ("S1", -1)})
    raise ModelError(f"{sorted(generators)} is not a thick-lattice node of {model.model_id}")


def quotient_model(model: CategoryModel, k: ThickSubcategory) -> QuotientModel:
    """The built-in model of D/K plus the lattice projection and a section."""
    if k.generators not in {n.generators for n in model.thick_lattice}:
        raise ModelError(f"{k.name} is not in the thick lattice of {model.model_id}")
    return _quotient_cached(model, k.generators)
