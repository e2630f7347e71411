"""Independent brute-force oracles used to cross-check the fast paths.

These deliberately avoid the library's filtration and distance logic: the
filtration oracle enumerates realizable subobject classes and walks the
convex hull of their charges, and the cover-distance oracle minimizes the
length of a polygonal path numerically.
"""

from __future__ import annotations

import math

import numpy as np

from .models import CategoryModel, DGObject, class_of
from .stability import StabilityCondition, require_valid, window_arg


def _realizable_pairs(heart, counts: dict):
    """Multiplicity pairs (eV, eU) of subobjects of V^a + U^b + W^c.

    V is the quotient simple, U the sub simple, W the extension; a chosen
    V-direction inside a W-summand drags its U-line along, so the realizable
    pairs are exactly those with eU >= eV - a.  Extension-free hearts realize
    every count of their single simple.
    """
    if heart.extension is None:
        (sym, k), = heart.simples
        n = counts.get(sym, 0)
        return [(e, 0) for e in range(n + 1)], (sym, k), None
    sub, total, quot = heart.extension
    a = counts.get(quot[0], 0)
    b = counts.get(sub[0], 0)
    c = counts.get(total[0], 0)
    pairs = [
        (ev, eu)
        for ev in range(a + c + 1)
        for eu in range(b + c + 1)
        if eu >= ev - a
    ]
    return pairs, quot, sub


def _convex_hull(points):
    """Andrew monotone chain; hull vertices in counterclockwise order."""
    pts = sorted(points)
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 1e-12:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 1e-12:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def oracle_hn(sigma: StabilityCondition, counts: dict, window_offset: int = 0):
    """Filtration factors [(class, phase), ...] by exhaustive hull enumeration.

    ``counts`` gives multiplicities of the heart-window objects (anchored
    symbols); the whole object may carry a global shift.  The filtration is
    the hull chain from 0 to the total charge whose edges are admissible
    window directions with strictly decreasing phases and maximal total
    length; its edges are the factor charges.
    """
    require_valid(sigma)
    if not any(counts.values()):
        raise ValueError("the zero object has no filtration")
    heart = sigma.model.heart(sigma.heart_id)
    pairs, vspec, uspec = _realizable_pairs(heart, counts)

    zv = sigma.charge_of(DGObject.of(vspec))
    vcls = class_of(sigma.model, DGObject.of(vspec))
    if uspec is None:
        zu = 0j
        ucls = tuple(0 for _ in vcls)
    else:
        zu = sigma.charge_of(DGObject.of(uspec))
        ucls = class_of(sigma.model, DGObject.of(uspec))

    pts = {pair: pair[0] * zv + pair[1] * zu for pair in pairs}
    target = max(pairs)
    total = pts[target]
    coords = sorted(set((z.real, z.imag) for z in pts.values()))
    hull = _convex_hull(coords)
    z0 = (0.0, 0.0)
    zt = (total.real, total.imag)

    i0, it = hull.index(z0), hull.index(zt)
    walk = hull[i0:] + hull[: i0 + 1]
    cut = walk.index(zt)
    candidates = [walk[: cut + 1], list(reversed(walk[cut:]))]

    best = None
    for chain in candidates:
        edges = [complex(q[0] - p[0], q[1] - p[1]) for p, q in zip(chain, chain[1:])]
        if not edges:
            continue
        ws = [window_arg(e, sigma.shift) for e in edges]
        if any(w is None for w in ws):
            continue
        if any(w2 >= w1 - 1e-12 for w1, w2 in zip(ws, ws[1:])):
            continue
        length = sum(abs(e) for e in edges)
        if best is None or length > best[0] + 1e-12:
            best = (length, chain, ws)
    if best is None:
        raise AssertionError("no admissible hull chain found")
    _, chain, ws = best

    def pair_at(xy):
        return min(pairs, key=lambda p: abs(pts[p] - complex(*xy)))

    sign = -1 if window_offset % 2 else 1
    factors = []
    for (p, q), w in zip(zip(chain, chain[1:]), ws):
        sp, ep = pair_at(p), pair_at(q)
        dev, deu = ep[0] - sp[0], ep[1] - sp[1]
        cls = tuple(sign * (dev * v + deu * u) for v, u in zip(vcls, ucls))
        factors.append((cls, w + sigma.shift + window_offset))
    return factors


def library_factor_classes(model: CategoryModel, hn) -> list:
    """(class, phase) view of a library filtration, for oracle comparison."""
    return [(class_of(model, obj), phase) for obj, phase in hn.factors]


def polyline_distance(p, q, segments: int = 64, min_radius: float = 1e-4) -> float:
    """Infimal length of polygonal paths in the cover between two points.

    Waypoints sit on a fixed angular grid between the two angles; radii are
    optimized numerically (the objective is convex in the radii, so the local
    minimum is global).  Each segment spans less than pi of angle, so its
    length is the planar chord between the endpoint embeddings.
    """
    from scipy import optimize

    thetas = np.linspace(p.theta, q.theta, segments + 1)
    if segments > 1 and abs(thetas[1] - thetas[0]) >= math.pi:
        raise ValueError("angular grid too coarse for this sweep")

    def length(radii):
        r = np.concatenate(([p.r], radii, [q.r]))
        x = r * np.cos(thetas)
        y = r * np.sin(thetas)
        return float(np.sum(np.hypot(np.diff(x), np.diff(y))))

    if segments == 1:
        return length(np.array([]))
    inner0 = np.linspace(p.r, q.r, segments + 1)[1:-1]
    result = optimize.minimize(
        length,
        inner0,
        method="L-BFGS-B",
        bounds=[(min_radius, None)] * (segments - 1),
        options={"maxiter": 500, "ftol": 1e-14, "gtol": 1e-12},
    )
    best = min(length(inner0), float(result.fun))
    dipped = np.full(segments - 1, min_radius)
    best = min(best, length(dipped))
    return best
