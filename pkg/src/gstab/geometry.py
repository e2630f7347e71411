"""Geometry of the central-charge space and of the stability manifold over it.

The charge space is Hom(lattice, C) minus the vanishing loci of the
indecomposable classes.  For the rank-1 spherical model the stability
manifold is the universal cover of C*, where the induced distance has a
closed form; for the A2 model exact geodesics are not available and distances
are reported as certified intervals instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .models import CategoryModel, DGObject
from .stability import (
    ModelMismatchError,
    StabilityCondition,
    StabilityError,
    norm_matrix,
    require_valid,
    window_arg,
)

TWO_PI = 2.0 * math.pi

# Deck comparisons beyond this window are dominated: once |2 pi k - dtheta|
# exceeds pi the distance to the translate is constant in k.
DIRICHLET_WINDOW = 4


class GeometryError(StabilityError):
    pass


class UnsupportedModelError(GeometryError):
    pass


@dataclass(frozen=True)
class ChargeSpace:
    """Charge vectors minus the vanishing loci of the indecomposable classes."""

    model: CategoryModel
    delta: tuple[tuple[int, ...], ...]

    @staticmethod
    def of(model: CategoryModel) -> "ChargeSpace":
        seen = []
        for sym in model.indecomposables:
            cls = model.class_table[sym]
            if cls not in seen:
                seen.append(cls)
        return ChargeSpace(model, tuple(seen))

    def on_locus(self, charge) -> bool:
        return any(sum(z * c for z, c in zip(charge, cls)) == 0 for cls in self.delta)


def hermitian_norm(g: np.ndarray, v) -> float:
    w = np.asarray(v, dtype=complex)
    return float(math.sqrt((np.conjugate(w) @ (g @ w)).real))


def charge_distance(space: ChargeSpace, z, w, norm=None) -> float:
    """Infimal path length between two charges in the complement of the loci.

    The removed loci have real codimension two, so the infimum equals the
    straight-line distance even when no path attains it.
    """
    if space.on_locus(z) or space.on_locus(w):
        raise GeometryError("charge lies on a vanishing locus")
    g = norm_matrix(space.model.rank, norm)
    return hermitian_norm(g, np.asarray(z, dtype=complex) - np.asarray(w, dtype=complex))


@dataclass(frozen=True)
class CoverPoint:
    """Point of the universal cover of C*: radius r > 0, unbounded angle theta.

    A rank-1 stability condition with charge z and simple phase phi maps to
    (|z|, pi * phi), so Z(S) = r e^{i theta} and theta carries the sheet.
    """

    r: float
    theta: float

    def to_json(self):
        return {"r": self.r, "theta": self.theta}

    @staticmethod
    def from_json(data) -> "CoverPoint":
        return CoverPoint(float(data["r"]), float(data["theta"]))


def cover_point(sigma: StabilityCondition) -> CoverPoint:
    if sigma.model.rank != 1 or not sigma.model.model_id.startswith("a1_cyn"):
        raise UnsupportedModelError("cover coordinates exist only for the a1_cyn model")
    require_valid(sigma)
    z = sigma.charge[0]
    w = window_arg(sigma.charge_of(DGObject.of(("S", 0))), sigma.shift)
    phi = w + sigma.shift
    return CoverPoint(abs(z), math.pi * phi)


def cover_distance(p: CoverPoint, q: CoverPoint) -> float:
    """Geodesic distance on the universal cover of the punctured plane.

    For angle gaps up to pi the chord between the two points realizes the
    infimum; beyond that every path must dip toward the puncture and the
    infimum is r_p + r_q (not attained).
    """
    if p.r <= 0 or q.r <= 0:
        raise GeometryError("cover points need positive radius")
    gap = abs(p.theta - q.theta)
    if gap <= math.pi:
        # half-angle law of cosines: depends on the angle gap only, so deck
        # translations that preserve the gap preserve the distance bit for bit
        s = math.sin(0.5 * gap)
        return math.sqrt((p.r - q.r) ** 2 + 4.0 * p.r * q.r * s * s)
    return p.r + q.r


def deck_translate(p: CoverPoint, k: int) -> CoverPoint:
    return CoverPoint(p.r, p.theta + TWO_PI * k)


def in_dirichlet_domain(x: CoverPoint, y: CoverPoint, window: int = DIRICHLET_WINDOW) -> bool:
    """True iff y is strictly closer to x than to every deck translate of x."""
    base = cover_distance(x, y)
    for k in range(-window, window + 1):
        if k == 0:
            continue
        if not base < cover_distance(deck_translate(x, k), y):
            return False
    return True


@dataclass(frozen=True)
class DistanceInterval:
    lower: float
    upper: float

    def to_json(self):
        return {"lower": self.lower, "upper": self.upper}


# --- A2 chamber walk -------------------------------------------------------
#
# The catalog chambers of a2_path form a line graph, three wall crossings per
# unit of window shift:
#   ... - (std,k) - (tilt_s1_down,k) - (tilt_s2_up,k+1) - (std,k+1) - ...
# Crossing the wall at line position m pins the charge of one class to the
# negative real ray (after the parity sign of the window floor(m/3)).

_WALL_CLASSES = {0: (1, 0), 1: (1, 1), 2: (0, 1)}


def _line_position(heart_id: str, shift: int) -> int:
    if heart_id == "std":
        return 3 * shift
    if heart_id == "tilt_s1_down":
        return 3 * shift + 1
    if heart_id == "tilt_s2_up":
        return 3 * shift - 1
    raise GeometryError(f"unknown a2_path heart {heart_id!r}")


def _chamber_closure_constraints(position: int):
    """Constraints Im(sign * Z . cls) >= 0 for the chamber at a line position."""
    k, j = divmod(position, 3)
    sign = -1.0 if k % 2 else 1.0
    if j == 0:  # std at k
        return [((1, 0), sign), ((0, 1), sign)]
    if j == 1:  # tilt_s1_down at k: simples E, S1[-1]
        return [((1, 1), sign), ((-1, 0), sign)]
    # j == 2 is tilt_s2_up at k+1: simples E (parity k+1), S2[1] -> -Z(S2)
    sign = -sign
    return [((1, 1), sign), ((0, -1), sign)]


def _a2_upper_bound(sigma: StabilityCondition, tau: StabilityCondition, g: np.ndarray) -> float:
    from scipy import optimize

    pa = _line_position(sigma.heart_id, sigma.shift)
    pb = _line_position(tau.heart_id, tau.shift)
    if pa > pb:
        sigma, tau = tau, sigma
        pa, pb = pb, pa
    za = np.asarray(sigma.charge, dtype=complex)
    zb = np.asarray(tau.charge, dtype=complex)
    walls = list(range(pa, pb))  # wall m sits between positions m and m+1
    nw = len(walls)

    def unpack(x):
        return [np.array([complex(x[4 * i], x[4 * i + 1]),
                          complex(x[4 * i + 2], x[4 * i + 3])]) for i in range(nw)]

    def length(x):
        pts = [za] + unpack(x) + [zb]
        return sum(hermitian_norm(g, pts[i + 1] - pts[i]) for i in range(len(pts) - 1))

    def pair(cls, z):
        return cls[0] * z[0] + cls[1] * z[1]

    constraints = []
    for i, m in enumerate(walls):
        gamma = _WALL_CLASSES[m % 3]
        sign = -1.0 if (m // 3) % 2 else 1.0

        def on_ray_im(x, i=i, gamma=gamma, sign=sign):
            return (sign * pair(gamma, unpack(x)[i])).imag

        def on_ray_re(x, i=i, gamma=gamma, sign=sign):
            return -(sign * pair(gamma, unpack(x)[i])).real - 1e-9

        constraints.append({"type": "eq", "fun": on_ray_im})
        constraints.append({"type": "ineq", "fun": on_ray_re})
        for pos in (m, m + 1):
            for cls, s in _chamber_closure_constraints(pos):
                def closure(x, i=i, cls=cls, s=s):
                    return (s * pair(cls, unpack(x)[i])).imag
                constraints.append({"type": "ineq", "fun": closure})

    x0 = []
    for i, m in enumerate(walls):
        t = (i + 1) / (nw + 1)
        z = (1 - t) * za + t * zb
        gamma = _WALL_CLASSES[m % 3]
        sign = -1.0 if (m // 3) % 2 else 1.0
        # project the interpolant onto the wall ray
        val = sign * pair(gamma, z)
        scale = max(abs(val), 0.5 * (abs(pair(gamma, za)) + abs(pair(gamma, zb))), 1e-3)
        target = -sign * scale  # sign * Z.gamma = -scale on the ray
        if gamma == (1, 0):
            z = np.array([complex(target), z[1]])
        elif gamma == (0, 1):
            z = np.array([z[0], complex(target)])
        else:  # gamma = (1, 1): move z[0] so the sum lands on the ray
            z = np.array([complex(target) - z[1], z[1]])
        x0.extend([z[0].real, z[0].imag, z[1].real, z[1].imag])

    result = optimize.minimize(length, np.array(x0), method="SLSQP",
                               constraints=constraints,
                               options={"maxiter": 400, "ftol": 1e-12})
    best = length(result.x) if result.success else length(np.array(x0))
    return float(best)


def stab_distance(sigma: StabilityCondition, tau: StabilityCondition, norm=None) -> DistanceInterval:
    """Certified interval around the pullback geodesic distance.

    Exact for the rank-1 spherical model (universal-cover closed form).  For
    a2_path the lower bound is the charge-space distance and the upper bound
    is the length of a lifted piecewise-linear path through catalog chambers;
    the two coincide when both conditions share a heart chamber, which is
    convex in charge space.
    """
    if sigma.model is not tau.model:
        raise ModelMismatchError("stab distance needs two stability conditions on one model")
    require_valid(sigma)
    require_valid(tau)
    if sigma.model.model_id.startswith("a1_cyn"):
        g = norm_matrix(1, norm)
        scale = math.sqrt(float(g[0, 0]))
        d = scale * cover_distance(cover_point(sigma), cover_point(tau))
        return DistanceInterval(d, d)
    if sigma.model.model_id != "a2_path":
        raise UnsupportedModelError(f"no distance model for {sigma.model.model_id}")
    g = norm_matrix(sigma.model.rank, norm)
    lower = hermitian_norm(g, np.asarray(sigma.charge) - np.asarray(tau.charge))
    if (sigma.heart_id, sigma.shift) == (tau.heart_id, tau.shift):
        return DistanceInterval(lower, lower)
    upper = max(lower, _a2_upper_bound(sigma, tau, g))
    return DistanceInterval(lower, upper)
