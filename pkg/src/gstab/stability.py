"""Stability conditions on a category model.

A stability condition is a central charge on the model lattice together with
a heart, given as a catalog id plus an integer window shift k.  The catalog
simples, taken at their catalog anchor shifts, receive the unique phase lift
of arg(Z)/pi inside the window (k, k+1]; every other phase is forced by
additivity under shifts and by the heart's one short exact sequence.  For
even k the window condition says the simple charges lie in the closed upper
half plane H (negative real axis included), for odd k in -H.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .models import CategoryModel, DGObject, class_of

# Phase comparisons closer than this are treated as equal and their HN
# factors merged into one semistable factor.
TIE_TOL = 1e-12


class StabilityError(ValueError):
    pass


class InvalidStabilityConditionError(StabilityError):
    pass


class ModelMismatchError(StabilityError):
    pass


class DegenerateNormError(StabilityError):
    pass


@dataclass(frozen=True)
class StabilityCondition:
    """Central charge (on the lattice basis) plus a heart id and window shift."""

    model: CategoryModel
    charge: tuple[complex, ...]
    heart_id: str
    shift: int = 0

    def charge_of_class(self, cls) -> complex:
        return sum(z * c for z, c in zip(self.charge, cls))

    def charge_of(self, obj: DGObject) -> complex:
        return self.charge_of_class(class_of(self.model, obj))

    def to_json(self):
        return {
            "charge": [[z.real, z.imag] for z in self.charge],
            "heart": {"id": self.heart_id, "shift": self.shift},
        }

    @staticmethod
    def from_json(model: CategoryModel, data) -> "StabilityCondition":
        charge = tuple(complex(re, im) for re, im in data["charge"])
        return StabilityCondition(model, charge, data["heart"]["id"], int(data["heart"]["shift"]))


@dataclass(frozen=True)
class HNFiltration:
    """Ordered semistable factors with strictly decreasing phases."""

    factors: tuple[tuple[DGObject, float], ...]

    @property
    def phi_plus(self) -> float:
        return self.factors[0][1]

    @property
    def phi_minus(self) -> float:
        return self.factors[-1][1]

    def to_json(self):
        return [{"object": obj.to_json(), "phase": phase} for obj, phase in self.factors]


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[str, ...] = ()


def window_arg(z: complex, parity: int) -> float | None:
    """Window coordinate of a charge: w in (0, 1] with phase = shift + w.

    Returns None when z does not lie in the half plane of the given window
    parity (upper half plane for even windows, lower for odd).
    """
    if z == 0:
        return None
    if parity % 2 == 0:
        if z.imag > 0:
            return math.atan2(z.imag, z.real) / math.pi
        if z.imag == 0 and z.real < 0:
            return 1.0
        return None
    if z.imag < 0:
        return math.atan2(z.imag, z.real) / math.pi + 1.0
    if z.imag == 0 and z.real > 0:
        return 1.0
    return None


@dataclass(frozen=True)
class _Anchor:
    kind: str  # "simple" or "extension"
    shift: int  # anchor shift of this symbol's window copy
    stable: bool
    w: float | None  # window coordinate when semistable
    pieces: tuple[tuple[str, int, float], ...]  # (sym, shift, w), tail-descending


def validate(sigma: StabilityCondition) -> ValidationReport:
    """Check the heart invariants: nonzero simple charges inside the window."""
    model = sigma.model
    if len(sigma.charge) != model.rank:
        return ValidationReport(False, (f"charge has length {len(sigma.charge)}, expected {model.rank}",))
    try:
        heart = model.heart(sigma.heart_id)
    except Exception as exc:  # unknown heart id
        return ValidationReport(False, (str(exc),))
    problems = []
    for sym, k in heart.simples:
        z = sigma.charge_of(DGObject.of((sym, k)))
        if z == 0:
            problems.append(f"simple {sym}[{k}] has zero charge")
            continue
        if window_arg(z, sigma.shift) is None:
            problems.append(
                f"simple {sym}[{k}] has charge {z!r} outside the window ({sigma.shift}, {sigma.shift + 1}]"
            )
    return ValidationReport(not problems, tuple(problems))


def require_valid(sigma: StabilityCondition) -> None:
    report = validate(sigma)
    if not report.ok:
        raise InvalidStabilityConditionError("; ".join(report.violations))


@lru_cache(maxsize=4096)
def _layout(sigma: StabilityCondition) -> dict[str, _Anchor]:
    require_valid(sigma)
    model = sigma.model
    heart = model.heart(sigma.heart_id)
    parity = sigma.shift
    ws: dict[tuple[str, int], float] = {}
    for sym, k in heart.simples:
        ws[(sym, k)] = window_arg(sigma.charge_of(DGObject.of((sym, k))), parity)
    out: dict[str, _Anchor] = {}
    for sym, k in heart.simples:
        w = ws[(sym, k)]
        out[sym] = _Anchor("simple", k, True, w, ((sym, k, w),))
    if heart.extension is not None:
        sub, total, quot = heart.extension
        w_sub = ws[sub]
        w_quot = ws[quot]
        tsym, tk = total
        if w_sub <= w_quot + TIE_TOL:
            w_tot = window_arg(sigma.charge_of(DGObject.of(total)), parity)
            out[tsym] = _Anchor("extension", tk, True, w_tot, ((tsym, tk, w_tot),))
        else:
            pieces = ((sub[0], sub[1], w_sub), (quot[0], quot[1], w_quot))
            out[tsym] = _Anchor("extension", tk, False, None, pieces)
    return out


def _factor_pieces(sigma: StabilityCondition, obj: DGObject):
    """(sym, shift, phase) for every HN piece of every summand, unmerged."""
    if obj.is_zero:
        raise StabilityError("the zero object has no filtration")
    layout = _layout(sigma)
    pieces = []
    for sym, m in obj.summands:
        sigma.model.require_symbol(sym)
        ent = layout[sym]
        off = m - ent.shift
        for psym, pshift, w in ent.pieces:
            pieces.append((psym, pshift + off, w + sigma.shift + off))
    return pieces


def hn_filtration(sigma: StabilityCondition, obj: DGObject) -> HNFiltration:
    """Harder-Narasimhan filtration; equal-phase pieces merge into one factor."""
    pieces = _factor_pieces(sigma, obj)
    pieces.sort(key=lambda p: (-p[2], p[0], p[1]))
    factors = []
    group = [pieces[0]]
    for p in pieces[1:]:
        if abs(p[2] - group[0][2]) <= TIE_TOL:
            group.append(p)
        else:
            factors.append(group)
            group = [p]
    factors.append(group)
    out = tuple(
        (DGObject.of(*((s, k) for s, k, _ in g)), g[0][2])
        for g in factors
    )
    return HNFiltration(out)


def _snap_amplitude(x: float) -> float:
    """Round a factor amplitude to 36 significant bits.

    Masses are sums of factor amplitudes, and the sum over a direct sum must
    equal the sum of the sums exactly.  With 36-bit amplitudes every sum over
    the amplitude ranges this library produces fits in a double without any
    rounding, so mass addition is associative; the 2^-36 relative snap is far
    below every tolerance used here.
    """
    if x == 0.0:
        return 0.0
    m, e = math.frexp(x)
    return math.ldexp(round(math.ldexp(m, 36)), e - 36)


def mass(sigma: StabilityCondition, obj: DGObject) -> float:
    """Sum of the absolute charges of the filtration factors."""
    pieces = _factor_pieces(sigma, obj)
    return math.fsum(
        _snap_amplitude(abs(sigma.charge_of(DGObject.of((s, k))))) for s, k, _ in pieces
    )


def phases(sigma: StabilityCondition, obj: DGObject) -> tuple[float, float]:
    """Maximal and minimal phase (phi+, phi-) of an object."""
    hn = hn_filtration(sigma, obj)
    return hn.phi_plus, hn.phi_minus


def _semistable_anchor_objects(sigma: StabilityCondition):
    """One semistable window representative per semistable indecomposable."""
    layout = _layout(sigma)
    for sym in sigma.model.indecomposables:
        ent = layout[sym]
        if ent.stable:
            yield DGObject.of((sym, ent.shift))


def sigma_norm(sigma: StabilityCondition, u: tuple[complex, ...]) -> float:
    """Operator-style norm sup |U(E)| / |Z(E)| over semistable objects.

    The supremum over all semistable objects equals the maximum over
    semistable indecomposables in one shift period.
    """
    require_valid(sigma)
    if len(u) != sigma.model.rank:
        raise StabilityError("vector length does not match the lattice rank")
    best = 0.0
    for obj in _semistable_anchor_objects(sigma):
        cls = class_of(sigma.model, obj)
        num = abs(sum(z * c for z, c in zip(u, cls)))
        den = abs(sigma.charge_of_class(cls))
        best = max(best, num / den)
    return best


def slicing_distance(sigma: StabilityCondition, tau: StabilityCondition) -> float:
    """Sup over objects of the phi+ and phi- phase gaps.

    Reduces to the maximum over indecomposables: phi+ of a direct sum is the
    max over summands, and |max a_i - max b_i| <= max |a_i - b_i|.
    """
    if sigma.model is not tau.model:
        raise ModelMismatchError("slicing distance needs two stability conditions on one model")
    best = 0.0
    for sym in sigma.model.indecomposables:
        obj = DGObject.of((sym, 0))
        ps, ms = phases(sigma, obj)
        pt, mt = phases(tau, obj)
        best = max(best, abs(ps - pt), abs(ms - mt))
    return best


def bridgeland_distance(sigma: StabilityCondition, tau: StabilityCondition) -> float:
    """Max of the slicing distance and the sup of |log of the mass ratio|."""
    if sigma.model is not tau.model:
        raise ModelMismatchError("distance needs two stability conditions on one model")
    best = slicing_distance(sigma, tau)
    for sym in sigma.model.indecomposables:
        obj = DGObject.of((sym, 0))
        ms, mt = mass(sigma, obj), mass(tau, obj)
        if ms == 0.0 or mt == 0.0:
            return math.inf
        best = max(best, abs(math.log(ms / mt)))
    return best


def norm_matrix(rank: int, norm=None) -> np.ndarray:
    """Validate and return a positive-definite quadratic form on the lattice."""
    if norm is None:
        return np.eye(rank)
    g = np.asarray(norm, dtype=float)
    if g.shape != (rank, rank) or not np.allclose(g, g.T):
        raise DegenerateNormError("norm must be a symmetric rank x rank matrix")
    try:
        np.linalg.cholesky(g)
    except np.linalg.LinAlgError:
        raise DegenerateNormError("norm matrix is not positive definite") from None
    return g


def lattice_norm(g: np.ndarray, cls) -> float:
    v = np.asarray(cls, dtype=float)
    return float(np.sqrt(v @ g @ v))


def support_constant(sigma: StabilityCondition, norm=None) -> float:
    """Infimum of |Z(E)| / ||E|| over semistable objects.

    Attained on semistable indecomposables (the mediant inequality handles
    same-phase direct sums); +inf for the zero-rank model.
    """
    require_valid(sigma)
    g = norm_matrix(sigma.model.rank, norm)
    best = math.inf
    for obj in _semistable_anchor_objects(sigma):
        cls = class_of(sigma.model, obj)
        best = min(best, abs(sigma.charge_of_class(cls)) / lattice_norm(g, cls))
    return best
