"""Symbolic analysis of Cauchy tails of stability conditions.

A sequence is an affine charge path Z_n = A + B/n with a fixed heart, the
canonical form in which mass collapse happens here.  Everything about the
tail is decided exactly: validity thresholds, stabilized filtrations (phase
comparisons resolve at order 1, 1/n or 1/n^2 and never change sign again),
massless subcategories, limiting support constants, limit slicings, and the
boundary map into generalized stability data (a thick subcategory plus a
stability condition on the quotient model).

An explicit list of stability conditions, read as a periodic tail pattern,
exists only to express sequences that keep hopping between tiles; all tail
analyses reject it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cmp_to_key, lru_cache

import numpy as np

from .models import (
    SHIFT_WINDOW,
    CategoryModel,
    DGObject,
    ThickSubcategory,
    class_of,
    quotient_model,
    thick_closure,
)
from .stability import (
    HNFiltration,
    ModelMismatchError,
    StabilityCondition,
    StabilityError,
    TIE_TOL,
    lattice_norm,
    norm_matrix,
    phases,
    require_valid,
    support_constant,
    validate,
    window_arg,
)

PHASE_BIN_TOL = 1e-9
CHARGE_TOL = 1e-12


class SequenceError(StabilityError):
    pass


class UnresolvableTieError(SequenceError):
    """A tail phase comparison whose coefficients are numerically ambiguous."""


class QuotientHeartError(SequenceError):
    pass


class UnsupportedModelError(SequenceError):
    pass


# ---------------------------------------------------------------------------
# sequence types


@dataclass(frozen=True)
class CauchySequencePath:
    """The tail sigma_n = (A + B/n, heart) for n >= n0."""

    model: CategoryModel
    heart_id: str
    shift: int
    A: tuple[complex, ...]
    B: tuple[complex, ...]
    n0: int

    @staticmethod
    def make(model, heart_id, shift, A, B, n0=None) -> "CauchySequencePath":
        A = tuple(complex(z) for z in A)
        B = tuple(complex(z) for z in B)
        if len(A) != model.rank or len(B) != model.rank:
            raise SequenceError("charge path length does not match the lattice rank")
        heart = model.heart(heart_id)
        entry = 1
        for sym, k in heart.simples:
            sign = -1 if k % 2 else 1
            cls = model.class_table[sym]
            a = sign * sum(z * c for z, c in zip(A, cls))
            b = sign * sum(z * c for z, c in zip(B, cls))
            first = _entry_index(a, b, shift)
            if first is None:
                raise SequenceError(
                    f"charge path of simple {sym}[{k}] leaves the heart window for large n"
                )
            entry = max(entry, first)
        if n0 is None:
            n0 = entry
        elif int(n0) < entry:
            raise SequenceError(f"n0={n0} is before the first valid index {entry}")
        seq = CauchySequencePath(model, heart_id, int(shift), A, B, int(n0))
        assert validate(evaluate(seq, seq.n0)).ok
        return seq

    def to_json(self):
        return {
            "model": self.model.model_id,
            "heart": {"id": self.heart_id, "shift": self.shift},
            "A": [[z.real, z.imag] for z in self.A],
            "B": [[z.real, z.imag] for z in self.B],
            "n0": self.n0,
        }


@dataclass(frozen=True)
class ExplicitSequence:
    """A finite list of stability conditions read as a repeating tail pattern."""

    terms: tuple[StabilityCondition, ...]

    def __post_init__(self):
        if not self.terms:
            raise SequenceError("an explicit sequence needs at least one term")

    def to_json(self):
        return {"explicit": [t.to_json() for t in self.terms]}


def sequence_from_json(model: CategoryModel, data):
    if "explicit" in data:
        return ExplicitSequence(tuple(StabilityCondition.from_json(model, t) for t in data["explicit"]))
    heart = data["heart"]
    return CauchySequencePath.make(
        model,
        heart["id"],
        int(heart["shift"]),
        [complex(re, im) for re, im in data["A"]],
        [complex(re, im) for re, im in data["B"]],
        data.get("n0"),
    )


def evaluate(seq: CauchySequencePath, n) -> StabilityCondition:
    """The n-th member of the tail."""
    if isinstance(seq, ExplicitSequence):
        raise SequenceError("evaluate needs an affine sequence")
    if not isinstance(n, int) or isinstance(n, bool):
        raise SequenceError(f"index must be an integer, got {n!r}")
    if n < seq.n0:
        raise SequenceError(f"index {n} is before the first valid index {seq.n0}")
    charge = tuple(a + b / n for a, b in zip(seq.A, seq.B))
    return StabilityCondition(seq.model, charge, seq.heart_id, seq.shift)


@dataclass(frozen=True)
class PiLocality:
    pi_local: bool
    witness: dict | None


def is_pi_local(seq) -> PiLocality:
    """Affine fixed-heart tails stay in one chamber of the forgetful map.

    Explicit sequences are pi-local only when their repeating pattern stays
    in a single chamber; a pattern visiting several hops tiles forever.
    """
    if isinstance(seq, CauchySequencePath):
        kind = "sheet" if seq.model.model_id.startswith("a1_cyn") else "chamber"
        return PiLocality(True, {"kind": kind, "heart_id": seq.heart_id, "shift": seq.shift,
                                 "model": seq.model.model_id})
    tiles = {(t.heart_id, t.shift) for t in seq.terms}
    models = {t.model for t in seq.terms}
    if len(models) != 1:
        raise ModelMismatchError("explicit sequence mixes models")
    if len(tiles) == 1:
        h, k = next(iter(tiles))
        model = next(iter(models))
        kind = "sheet" if model.model_id.startswith("a1_cyn") else "chamber"
        return PiLocality(True, {"kind": kind, "heart_id": h, "shift": k, "model": model.model_id})
    return PiLocality(False, None)


def _require_affine(seq) -> None:
    if not isinstance(seq, CauchySequencePath):
        raise SequenceError("tail analysis requires an affine sequence, not an explicit list")


# ---------------------------------------------------------------------------
# symbolic tail machinery


def _entry_index(a: complex, b: complex, parity: int):
    """Smallest n >= 1 from which a + b/n sits in the window half plane.

    None when the tail eventually leaves the half plane.  Window parity odd
    mirrors the plane, so normalize and reason in the upper half plane.
    """
    if parity % 2:
        a, b = -a, -b
    ia, ib = a.imag, b.imag
    ra, rb = a.real, b.real
    if ia > 0:
        if ib >= 0:
            return 1
        return math.floor(-ib / ia) + 1
    if ia == 0:
        if ib > 0:
            return 1
        if ib == 0:
            if ra < 0:
                if rb <= 0:
                    return 1
                return math.floor(rb / -ra) + 1
            if ra == 0 and rb < 0:
                return 1
            return None
        return None
    return None


def _window_limit(a: complex, b: complex, parity: int) -> float:
    """Limit of the window coordinate of a + b/n along a tail-valid path."""
    if a != 0:
        w = window_arg(a, parity)
        if w is not None:
            return w
        # the limit sits on the excluded boundary ray, approached from inside
        return 0.0
    w = window_arg(b, parity)
    if w is None:
        raise SequenceError("constant-direction path is outside the heart window")
    return w


@dataclass(frozen=True)
class _Cmp:
    sign: int  # eventual sign of w(g) - w(f); 0 means equal for all n
    settle: int


def _tail_compare(fa, fb, ga, gb, n0: int) -> _Cmp:
    """Eventual order of two window coordinates along affine paths.

    With x = 1/n the (sign-preserving) comparison function is
    p(x) = Im(conj(f(x)) g(x)) = c0 + c1 x + c2 x^2; its first nonvanishing
    coefficient fixes the sign for all large n, and the positive roots bound
    the index past which the sign is realized.
    """
    c0 = (fa.conjugate() * ga).imag
    c1 = (fa.conjugate() * gb + fb.conjugate() * ga).imag
    c2 = (fb.conjugate() * gb).imag
    scales = (
        abs(fa) * abs(ga),
        abs(fa) * abs(gb) + abs(fb) * abs(ga),
        abs(fb) * abs(gb),
    )
    sign = 0
    for c, s in zip((c0, c1, c2), scales):
        if c == 0.0:
            continue
        if abs(c) < TIE_TOL * s:
            raise UnresolvableTieError(
                "phase comparison coefficients are nonzero but below the tie tolerance"
            )
        sign = 1 if c > 0 else -1
        break
    if sign == 0:
        return _Cmp(0, n0)
    settle = n0
    roots = []
    if c2 != 0.0:
        disc = c1 * c1 - 4.0 * c0 * c2
        if disc >= 0.0:
            sq = math.sqrt(disc)
            roots.extend(((-c1 + sq) / (2.0 * c2), (-c1 - sq) / (2.0 * c2)))
    elif c1 != 0.0:
        roots.append(-c0 / c1)
    for x in roots:
        if x > 0.0:
            settle = max(settle, math.floor(1.0 / x) + 1)
    return _Cmp(sign, settle)


@dataclass(frozen=True)
class _Piece:
    sym: str
    shift: int  # object coordinates of this tail HN piece
    a: complex  # charge path of the piece object (sign included)
    b: complex


@dataclass(frozen=True)
class _SymbolTail:
    anchor: int
    stable: bool
    settle: int
    pieces: tuple[_Piece, ...]  # tail-descending phases, offsets equal to seq.shift


def _path_of(seq: CauchySequencePath, sym: str, shift: int) -> tuple[complex, complex]:
    sign = -1 if shift % 2 else 1
    cls = seq.model.class_table[sym]
    a = sign * sum(z * c for z, c in zip(seq.A, cls))
    b = sign * sum(z * c for z, c in zip(seq.B, cls))
    return a, b


@lru_cache(maxsize=2048)
def _tail_layout(seq: CauchySequencePath) -> dict[str, _SymbolTail]:
    heart = seq.model.heart(seq.heart_id)
    out: dict[str, _SymbolTail] = {}
    for sym, k in heart.simples:
        a, b = _path_of(seq, sym, k)
        out[sym] = _SymbolTail(k, True, seq.n0, (_Piece(sym, k, a, b),))
    if heart.extension is not None:
        sub, total, quot = heart.extension
        sa, sb = _path_of(seq, *sub)
        qa, qb = _path_of(seq, *quot)
        cmp = _tail_compare(sa, sb, qa, qb, seq.n0)
        tsym, tk = total
        if cmp.sign >= 0:  # w(sub) <= w(quot) along the tail: semistable
            ta, tb = _path_of(seq, tsym, tk)
            out[tsym] = _SymbolTail(tk, True, cmp.settle, (_Piece(tsym, tk, ta, tb),))
        else:
            pieces = (_Piece(sub[0], sub[1], sa, sb), _Piece(quot[0], quot[1], qa, qb))
            out[tsym] = _SymbolTail(tk, False, cmp.settle, pieces)
    return out


@dataclass(frozen=True)
class _Factor:
    sym: str
    shift: int
    a: complex
    b: complex
    offset: int  # phase(n) = w(a + b/n) + offset
    mult: int


def _object_factors(seq: CauchySequencePath, obj: DGObject) -> list[_Factor]:
    if obj.is_zero:
        raise SequenceError("the zero object has no filtration")
    layout = _tail_layout(seq)
    out = []
    for (sym, m), mult in sorted(obj.counter().items()):
        seq.model.require_symbol(sym)
        st = layout[sym]
        off = m - st.anchor
        for p in st.pieces:
            out.append(_Factor(p.sym, p.shift + off, p.a, p.b, seq.shift + off, mult))
    return out


def _factor_limit_phase(f: _Factor, parity: int) -> float:
    return _window_limit(f.a, f.b, parity) + f.offset


def _order_factors(seq: CauchySequencePath, obj: DGObject):
    """Sort tail-descending, merge tail-equal factors, track settle indices."""
    factors = _object_factors(seq, obj)
    layout = _tail_layout(seq)
    settles = [seq.n0] + [layout[sym].settle for sym, _ in obj.summands]

    # cmp(f, g) < 0 puts f first; the order is by descending tail phase
    def cmp(f: _Factor, g: _Factor) -> int:
        if f.offset != g.offset:
            return -1 if f.offset > g.offset else 1
        c = _tail_compare(f.a, f.b, g.a, g.b, seq.n0)
        settles.append(c.settle)
        return c.sign  # sign of w(g) - w(f): positive puts g first

    ordered = sorted(factors, key=cmp_to_key(cmp))
    groups: list[list[_Factor]] = []
    for f in ordered:
        if groups and cmp(groups[-1][0], f) == 0 and groups[-1][0].offset == f.offset:
            groups[-1].append(f)
        else:
            groups.append([f])
    return groups, max(settles)


def stabilized_hn(seq: CauchySequencePath, obj: DGObject):
    """Tail filtration: (N, filtration) with factor phases at their limits.

    The factor list is constant for every n > N; ties that persist for all n
    merge into one semistable factor exactly as at finite n.
    """
    _require_affine(seq)
    groups, settle = _order_factors(seq, obj)
    factors = []
    for g in groups:
        members = []
        for f in g:
            members.extend([(f.sym, f.shift)] * f.mult)
        factors.append((DGObject.of(*members), _factor_limit_phase(g[0], seq.shift)))
    return max(seq.n0, settle), HNFiltration(tuple(factors))


def _massless_symbols(seq: CauchySequencePath) -> frozenset:
    layout = _tail_layout(seq)
    out = set()
    for sym in seq.model.indecomposables:
        if all(p.a == 0 for p in layout[sym].pieces):
            out.add(sym)
    return frozenset(out)


def massless_subcategory(seq: CauchySequencePath) -> ThickSubcategory:
    """Objects whose mass tends to zero along the tail.

    An indecomposable is massless iff every stabilized filtration factor has
    vanishing limit charge; the result is closed under triangles already, and
    the thick closure is taken anyway as a guard.
    """
    _require_affine(seq)
    syms = _massless_symbols(seq)
    node = thick_closure(seq.model, syms)
    assert node.generators == syms, "massless set failed to be thick"
    return node


def limiting_support(seq: CauchySequencePath, norm=None) -> tuple[float, bool]:
    """Limit of the support constants over tail-semistable, non-collapsing classes.

    Returns (C, holds).  When every semistable class collapses the minimum is
    over an empty set: C = +inf and the property holds vacuously.
    """
    _require_affine(seq)
    g = norm_matrix(seq.model.rank, norm)
    layout = _tail_layout(seq)
    best = math.inf
    for sym in seq.model.indecomposables:
        st = layout[sym]
        if not st.stable:
            continue
        a, _ = _path_of(seq, sym, st.anchor)
        if a == 0:
            continue
        cls = seq.model.class_table[sym]
        best = min(best, abs(a) / lattice_norm(g, cls))
    return best, best > 0.0


def limiting_phase(seq: CauchySequencePath, obj: DGObject):
    """Common limit of phi+ and phi- when the object lands in one limit slice."""
    _require_affine(seq)
    _, hn = stabilized_hn(seq, obj)
    hi = hn.phi_plus
    lo = hn.phi_minus
    if abs(hi - lo) <= TIE_TOL:
        return hi
    return None


# ---------------------------------------------------------------------------
# equivalence


def _reduced_factor_bins(seq: CauchySequencePath, node: ThickSubcategory):
    """Per surviving indecomposable: limit phases with summed quotient classes.

    This is the tail data that descends to the quotient by the massless
    subcategory: factors with class in the quotient kernel are dropped, the
    rest are binned by limit phase and their projected classes added.  Two
    tails are equivalent iff these tables (and the limit charges) agree.
    """
    qd = quotient_model(seq.model, node)
    table = {}
    for sym in seq.model.indecomposables:
        if node.contains_symbol(sym):
            continue
        bins: list[tuple[float, list[int]]] = []
        for f in _object_factors(seq, DGObject.of((sym, 0))):
            pcls = qd.project(class_of(seq.model, DGObject.of((f.sym, f.shift))))
            if all(c == 0 for c in pcls):
                continue
            phi = _factor_limit_phase(f, seq.shift)
            for entry in bins:
                if abs(entry[0] - phi) <= PHASE_BIN_TOL:
                    for i, c in enumerate(pcls):
                        entry[1][i] += c * f.mult
                    break
            else:
                bins.append((phi, [c * f.mult for c in pcls]))
        bins.sort(key=lambda e: e[0])
        table[sym] = [(phi, tuple(cs)) for phi, cs in bins]
    return table


def equivalent(seq1: CauchySequencePath, seq2: CauchySequencePath) -> bool:
    """Do the two tails converge to the same completion point?

    Decided from exact limit data: equal limit charges, equal massless
    subcategories, and matching limit phases with matching class content
    modulo the massless classes.  Collapsing directions are free: tiles whose
    separation vanishes in the limit (all sheets over a full collapse, or
    chambers across a vanishing wall) compare equal.
    """
    _require_affine(seq1)
    _require_affine(seq2)
    if seq1.model is not seq2.model:
        raise ModelMismatchError("equivalence needs sequences on one model")
    if any(abs(a1 - a2) > CHARGE_TOL for a1, a2 in zip(seq1.A, seq2.A)):
        return False
    m1 = _massless_symbols(seq1)
    m2 = _massless_symbols(seq2)
    if m1 != m2:
        return False
    node = thick_closure(seq1.model, m1)
    t1 = _reduced_factor_bins(seq1, node)
    t2 = _reduced_factor_bins(seq2, node)
    for sym in t1:
        b1, b2 = t1[sym], t2[sym]
        if len(b1) != len(b2):
            return False
        for (p1, c1), (p2, c2) in zip(b1, b2):
            if abs(p1 - p2) > PHASE_BIN_TOL or c1 != c2:
                return False
    return True


@dataclass(frozen=True)
class StrongEquivalence:
    ok: bool
    chain: tuple  # tile centers (CoverPoint) realizing the chain of shared tiles

    def to_json(self):
        return {"ok": self.ok, "chain": [c.to_json() for c in self.chain]}


def strongly_equivalent(seq1: CauchySequencePath, seq2: CauchySequencePath) -> StrongEquivalence:
    """Chain of shared fundamental-domain tiles between equivalent tails.

    Supported on the rank-1 spherical model, whose covering structure is
    certified; each returned center x spans the tile of points within angle
    pi of x, consecutive tiles overlap, and the two tails lie in the first
    and last tile.
    """
    from .geometry import CoverPoint

    _require_affine(seq1)
    _require_affine(seq2)
    if seq1.model is not seq2.model:
        raise ModelMismatchError("strong equivalence needs sequences on one model")
    if not seq1.model.model_id.startswith("a1_cyn"):
        raise UnsupportedModelError(
            "strong equivalence chains are unsupported on this model: no certified covering structure"
        )
    if not equivalent(seq1, seq2):
        return StrongEquivalence(False, ())

    def theta_inf(seq):
        st = _tail_layout(seq)["S"]
        p = st.pieces[0]
        return math.pi * (_window_limit(p.a, p.b, seq.shift) + seq.shift)

    t1, t2 = theta_inf(seq1), theta_inf(seq2)
    if seq1.A[0] != 0:
        return StrongEquivalence(True, (CoverPoint(abs(seq1.A[0]), t1),))
    # totally collapsing tails: walk tiles whose angular spans overlap; one
    # tile covers both tails whenever their limit angles are within pi
    if abs(t2 - t1) <= 0.9 * math.pi:
        return StrongEquivalence(True, (CoverPoint(1.0, 0.5 * (t1 + t2)),))
    hops = math.ceil(abs(t2 - t1) / (0.45 * math.pi))
    stops = [t1 + (t2 - t1) * j / hops for j in range(hops + 1)]
    centers = tuple(
        CoverPoint(1.0, 0.5 * (a + b)) for a, b in zip(stops, stops[1:])
    )
    return StrongEquivalence(True, centers)


# ---------------------------------------------------------------------------
# the boundary map


def quotient_norm(model: CategoryModel, k: ThickSubcategory, norm, cls) -> float:
    """Distance, in the given form, from a class to the span of K's classes.

    This is the infimum of ||cls + f|| over f in the subcategory's lattice
    span, hence never exceeds ||cls||.
    """
    g = norm_matrix(model.rank, norm)
    v = np.asarray(cls, dtype=float)
    if v.shape != (model.rank,):
        raise SequenceError("class length does not match the lattice rank")
    gens = sorted(k.generators)
    if not gens:
        return lattice_norm(g, v)
    w = np.array([model.class_table[s] for s in gens], dtype=float).T
    coeff, *_ = np.linalg.lstsq(w.T @ g @ w, w.T @ g @ v, rcond=None)
    residual = v - w @ coeff
    return lattice_norm(g, residual)


def _quotient_form(model: CategoryModel, k: ThickSubcategory, norm) -> np.ndarray:
    """The quotient norm as a quadratic form on the quotient lattice."""
    qd = quotient_model(model, k)
    g = norm_matrix(model.rank, norm)
    qrank = qd.model.rank
    s = np.array(qd.section, dtype=float)
    if s.size == 0:
        return np.zeros((qrank, qrank))
    gens = sorted(k.generators)
    if gens:
        w = np.array([model.class_table[x] for x in gens], dtype=float).T
        coeff, *_ = np.linalg.lstsq(w.T @ g @ w, w.T @ g, rcond=None)
        m = s - w @ coeff @ s
    else:
        m = s
    return m.T @ g @ m


@dataclass(frozen=True)
class QuotientHeart:
    model_id: str
    heart_id: str | None
    shift: int | None
    zero: bool
    serre_report: dict

    def to_json(self):
        if self.zero:
            return {"model": self.model_id, "heart": "zero", "serre": self.serre_report}
        return {
            "model": self.model_id,
            "heart": {"id": self.heart_id, "shift": self.shift},
            "serre": self.serre_report,
        }


def _window_sess(model: CategoryModel):
    """All shifted short exact sequences of the model inside the test window."""
    lo, hi = SHIFT_WINDOW
    for sub, tot, quo in model.triangle_table:
        base = [
            ((sub, 0), (tot, 0), (quo, 0)),
            ((tot, 0), (quo, 0), (sub, 1)),   # rotation
            ((quo, -1), (sub, 0), (tot, 0)),  # rotation
        ]
        for (s, ks), (t, kt), (q, kq) in base:
            for m in range(lo, hi + 1):
                yield (s, ks + m), (t, kt + m), (q, kq + m)


def _limit_phase_ranges(seq: CauchySequencePath) -> dict[str, tuple[float, float]]:
    out = {}
    for sym in seq.model.indecomposables:
        _, hn = stabilized_hn(seq, DGObject.of((sym, 0)))
        out[sym] = (hn.phi_plus, hn.phi_minus)
    return out


def _serre_check(seq: CauchySequencePath, node: ThickSubcategory) -> dict:
    """Closure of the heart-window massless part under subs, quotients, extensions."""
    ranges = _limit_phase_ranges(seq)

    def in_window_heart(sym, m):
        hi, lo = ranges[sym]
        return lo + m > TIE_TOL and hi + m <= 1.0 + TIE_TOL

    checked = 0
    for (s, ks), (t, kt), (q, kq) in _window_sess(seq.model):
        if not (in_window_heart(s, ks) and in_window_heart(t, kt) and in_window_heart(q, kq)):
            continue
        checked += 1
        ins = node.contains_symbol(s)
        int_ = node.contains_symbol(t)
        inq = node.contains_symbol(q)
        if int_ and not (ins and inq):
            raise QuotientHeartError(
                f"massless part is not closed under sub/quotient at ({s},{t},{q})"
            )
        if ins and inq and not int_:
            raise QuotientHeartError(
                f"massless part is not closed under extension at ({s},{t},{q})"
            )
    return {"ok": True, "sequences_checked": checked}


def _ceil_window(v: float) -> int:
    """k with v in (k, k+1]; exact integers sit at the top of their window."""
    k = math.ceil(v) - 1
    if v - k > 1.0 + TIE_TOL:  # guard against float ceil at near-integers
        k += 1
    return k


def quotient_heart(seq: CauchySequencePath, norm=None) -> QuotientHeart:
    """Heart descriptor induced on the quotient by the limit slicing.

    The window heart consists of the objects whose stabilized phases land in
    (0, 1]; its massless part must be a Serre subcategory (checked on every
    windowed short exact sequence), and the image heart is located in the
    quotient model's catalog.
    """
    _require_affine(seq)
    node = massless_subcategory(seq)
    serre = _serre_check(seq, node)
    qd = quotient_model(seq.model, node)
    if not qd.model.rank:
        return QuotientHeart(qd.model.model_id, None, None, True, serre)
    if node.generators:
        # proper quotient: place the image of any limit-semistable survivor
        datum = None
        for sym in seq.model.indecomposables:
            if node.contains_symbol(sym) or sym not in qd.image_map:
                continue
            phi = limiting_phase(seq, DGObject.of((sym, 0)))
            if phi is None:
                continue
            _, toff = qd.image_map[sym]
            k = _ceil_window(phi - toff)
            if datum is None:
                datum = k
            elif datum != k:
                raise QuotientHeartError("survivors induce inconsistent quotient hearts")
        if datum is None:
            raise QuotientHeartError("no limit-semistable survivor to anchor the quotient heart")
        return QuotientHeart(qd.model.model_id, "std", datum, False, serre)
    # K = 0: locate the limit stability condition in the model's own catalog
    ranges = _limit_phase_ranges(seq)
    for heart in seq.model.heart_catalog:
        ks = set()
        ok = True
        for sym, a in heart.simples:
            hi, lo = ranges[sym]
            if abs(hi - lo) > TIE_TOL:
                ok = False
                break
            ks.add(_ceil_window(hi + a))
        if not ok or len(ks) != 1:
            continue
        k = ks.pop()
        cand = StabilityCondition(seq.model, seq.A, heart.heart_id, k)
        if not validate(cand).ok:
            continue
        match = all(
            abs(phases(cand, DGObject.of((sym, 0)))[0] - ranges[sym][0]) <= PHASE_BIN_TOL
            and abs(phases(cand, DGObject.of((sym, 0)))[1] - ranges[sym][1]) <= PHASE_BIN_TOL
            for sym in seq.model.indecomposables
        )
        if match:
            return QuotientHeart(qd.model.model_id, heart.heart_id, k, False, serre)
    raise QuotientHeartError("limit heart does not occur in the catalog")


@dataclass(frozen=True)
class GeneralizedStabilityCondition:
    """A thick subcategory together with a stability condition on its quotient.

    ``quotient_sigma`` is None exactly when the subcategory is everything and
    the quotient is the zero model.
    """

    massless: ThickSubcategory
    quotient_sigma: StabilityCondition | None

    def to_json(self):
        if self.quotient_sigma is None:
            return {"K": self.massless.to_json(), "quotient": "zero"}
        payload = {"model": self.quotient_sigma.model.model_id}
        payload.update(self.quotient_sigma.to_json())
        return {"K": self.massless.to_json(), "quotient": payload}


def j_map(seq: CauchySequencePath, norm=None) -> GeneralizedStabilityCondition:
    """Boundary image of a tail: massless subcategory plus quotient stability data.

    Validates the result: the induced charge kills the massless classes, the
    quotient heart charges are admissible, and the quotient support constant
    dominates the limiting support constant of the tail.
    """
    _require_affine(seq)
    node = massless_subcategory(seq)
    c, holds = limiting_support(seq, norm)
    if not holds:
        raise SequenceError("tail fails the limiting support property")
    if node.generators == frozenset(seq.model.indecomposables):
        return GeneralizedStabilityCondition(node, None)
    qd = quotient_model(seq.model, node)
    qcharge = tuple(
        sum(seq.A[i] * qd.section[i][j] for i in range(seq.model.rank))
        for j in range(qd.model.rank)
    )
    # the induced charge must agree with the limit charge through the projection
    for i in range(seq.model.rank):
        basis = tuple(1 if t == i else 0 for t in range(seq.model.rank))
        lifted = sum(q * p for q, p in zip(qcharge, qd.project(basis)))
        if abs(lifted - seq.A[i]) > 1e-9 * max(1.0, abs(seq.A[i])):
            raise SequenceError("limit charge does not descend to the quotient lattice")
    qh = quotient_heart(seq, norm)
    qsigma = StabilityCondition(qd.model, qcharge, qh.heart_id, qh.shift)
    require_valid(qsigma)
    if math.isfinite(c):
        qc = support_constant(qsigma, _quotient_form(seq.model, node, norm))
        if qc < c - 1e-9:
            raise SequenceError(
                f"quotient support constant {qc} drops below the limiting constant {c}"
            )
    return GeneralizedStabilityCondition(node, qsigma)


def j_images_equal(g1: GeneralizedStabilityCondition, g2: GeneralizedStabilityCondition,
                   tol: float = CHARGE_TOL) -> bool:
    if g1.massless.generators != g2.massless.generators:
        return False
    if g1.quotient_sigma is None or g2.quotient_sigma is None:
        return g1.quotient_sigma is None and g2.quotient_sigma is None
    s1, s2 = g1.quotient_sigma, g2.quotient_sigma
    if s1.model.model_id != s2.model.model_id:
        return False
    if (s1.heart_id, s1.shift) != (s2.heart_id, s2.shift):
        return False
    return all(abs(a - b) <= tol for a, b in zip(s1.charge, s2.charge))


@dataclass(frozen=True)
class InjectivityReport:
    classes: tuple[tuple[int, ...], ...]
    violations: tuple[dict, ...]
    transitivity_ok: bool

    @property
    def consistent(self) -> bool:
        return not self.violations and self.transitivity_ok

    def to_json(self):
        return {
            "classes": [list(c) for c in self.classes],
            "violations": list(self.violations),
            "transitivity_ok": self.transitivity_ok,
            "consistent": self.consistent,
        }


def injectivity_probe(seqs, norm=None) -> InjectivityReport:
    """Partition tails by equivalence and compare boundary images classwise.

    Equivalent tails must map to equal images and inequivalent tails to
    distinct ones; any violation is reported with the offending pair.
    """
    seqs = list(seqs)
    n = len(seqs)
    eq = [[True] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if seqs[i].model is not seqs[j].model:
                eq[i][j] = eq[j][i] = False
            else:
                eq[i][j] = eq[j][i] = equivalent(seqs[i], seqs[j])
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if eq[i][j]:
                parent[find(i)] = find(j)
    labels = [find(i) for i in range(n)]
    transitivity_ok = all(
        eq[i][j] == (labels[i] == labels[j]) for i in range(n) for j in range(i + 1, n)
    )
    images = [j_map(s, norm) for s in seqs]
    violations = []
    for i in range(n):
        for j in range(i + 1, n):
            same_image = j_images_equal(images[i], images[j])
            if eq[i][j] and not same_image:
                violations.append({"pair": [i, j], "kind": "equivalent_with_distinct_images"})
            if not eq[i][j] and same_image:
                violations.append({"pair": [i, j], "kind": "inequivalent_with_equal_images"})
    classes = {}
    for i, lab in enumerate(labels):
        classes.setdefault(lab, []).append(i)
    ordered = tuple(tuple(v) for _, v in sorted(classes.items(), key=lambda kv: kv[1][0]))
    return InjectivityReport(ordered, tuple(violations), transitivity_ok)
