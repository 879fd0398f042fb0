"""
Numerics for anti-rational maps f(z) = R(conj z).

Everything at infinity goes through the chart w = 1/z, where the map reads
g(w) = S(conj w) with S(u) = 1/R(1/u). Coefficient lists are in ascending
powers throughout.

Fixed points are taken from the rational equation f(f(z)) = z (the second
iterate is holomorphic) and then filtered and polished for f itself. Internal
rays are traced backwards: a short segment near the critical point along an
invariant direction is pulled back repeatedly along the inverse branch that
continues the ray, which converges to the landing point.
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Sequence

import numpy as np
from numpy.polynomial import polynomial as P

from .rotation_graph import PlaneGraph, from_rotations

INF = complex(math.inf, 0.0)


def is_inf(z) -> bool:
    return cmath.isinf(z)


class DynamicsError(RuntimeError):
    pass


class IndifferentFixedPoint(DynamicsError):
    pass


class RayTraceError(DynamicsError):
    pass


@dataclass(frozen=True)
class Tolerances:
    residual: float = 1e-10
    cluster: float = 1e-7
    superattracting: float = 1e-6
    indifferent: float = 1e-6
    landing: float = 1e-7
    angle: float = 1e-9


DEFAULT_TOL = Tolerances()


# ---------------------------------------------------------------------------
# polynomial helpers (ascending coefficients)

def _trim(c) -> np.ndarray:
    c = np.asarray(c, dtype=complex)
    scale = max(1.0, float(np.max(np.abs(c)))) if len(c) else 1.0
    k = len(c)
    while k > 1 and abs(c[k - 1]) <= 1e-14 * scale:
        k -= 1
    return c[:k]


def _deg(c) -> int:
    c = _trim(c)
    return len(c) - 1 if (len(c) > 1 or abs(c[0]) > 0) else -1


def _rev(c, d: int) -> np.ndarray:
    """Coefficients of u^d c(1/u)."""
    c = _trim(c)
    out = np.zeros(d + 1, dtype=complex)
    out[:len(c)] = c
    return out[::-1]


def _taylor(num, den, z0: complex, order: int) -> np.ndarray:
    """Taylor coefficients of num/den at z0 up to ``order``."""
    def shift(c):
        # c(z0 + h) as a polynomial in h
        c = _trim(c)
        out = np.zeros(len(c), dtype=complex)
        for k, a in enumerate(c):
            for j in range(k + 1):
                out[j] += a * comb(k, j) * z0 ** (k - j)
        return out

    n = np.pad(shift(num), (0, order + 1))[:order + 1]
    d = np.pad(shift(den), (0, order + 1))[:order + 1]
    if abs(d[0]) == 0:
        raise DynamicsError("pole at expansion point")
    q = np.zeros(order + 1, dtype=complex)
    for k in range(order + 1):
        q[k] = (n[k] - sum(q[j] * d[k - j] for j in range(k))) / d[0]
    return q


# ---------------------------------------------------------------------------
# maps

@dataclass(frozen=True)
class AntiRationalMap:
    """f(z) = N(conj z) / D(conj z)."""

    num: tuple[complex, ...]
    den: tuple[complex, ...]
    name: str = "map"
    exact: tuple[tuple[Fraction, ...], tuple[Fraction, ...]] | None = field(default=None,
                                                                           compare=False)

    def __post_init__(self):
        num = tuple(complex(x) for x in _trim(self.num))
        den = tuple(complex(x) for x in _trim(self.den))
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        if _deg(den) < 0:
            raise DynamicsError("zero denominator")
        if self.degree < 2:
            raise DynamicsError("degree must be at least 2")
        if _deg(num) >= 1 and _deg(den) >= 1:
            rn = np.roots(np.array(num[::-1]))
            rd = np.roots(np.array(den[::-1]))
            gap = min(abs(a - b) for a in rn for b in rd)
            if gap < 1e-8:
                raise DynamicsError("numerator and denominator share a root")

    @property
    def degree(self) -> int:
        return max(_deg(self.num), _deg(self.den))

    @property
    def fixes_infinity(self) -> bool:
        return _deg(self.num) > _deg(self.den)

    # R and its chart at infinity -------------------------------------

    def R(self, u: complex) -> complex:
        if is_inf(u):
            dn, dd = _deg(self.num), _deg(self.den)
            if dn > dd:
                return INF
            if dn < dd:
                return 0j
            return self.num[-1] / self.den[-1]
        n = P.polyval(u, self.num)
        d = P.polyval(u, self.den)
        if d == 0:
            if n == 0:
                raise DynamicsError("0/0: numerator and denominator not coprime")
            return INF
        return n / d

    def dR(self, u: complex) -> complex:
        n = P.polyval(u, self.num)
        d = P.polyval(u, self.den)
        dn = P.polyval(u, P.polyder(self.num)) if len(self.num) > 1 else 0
        dd = P.polyval(u, P.polyder(self.den)) if len(self.den) > 1 else 0
        return (dn * d - n * dd) / (d * d)

    def _S(self):
        """S(u) = 1/R(1/u) as (numerator, denominator)."""
        d = self.degree
        return _rev(self.den, d), _rev(self.num, d)

    def __call__(self, z: complex) -> complex:
        return evaluate(self, z)

    def conj_coeffs(self):
        return np.conj(self.num), np.conj(self.den)

    def critical_local_degree(self, c: complex, max_order: int | None = None) -> tuple[int, complex]:
        """Local degree k at a fixed point and leading coefficient a with f(z)-c ~ a conj(z-c)^k
        (in the chart at infinity when c is infinite)."""
        max_order = max_order or self.degree + 1
        if is_inf(c):
            sn, sd = self._S()
            coeffs = _taylor(sn, sd, 0j, max_order)
        else:
            coeffs = _taylor(self.num, self.den, np.conj(c), max_order)
        scale = max(1.0, float(np.max(np.abs(coeffs[1:]))))
        for k in range(1, max_order + 1):
            if abs(coeffs[k]) > 1e-8 * scale:
                return k, complex(coeffs[k])
        raise DynamicsError("map is locally constant")


def evaluate(f: AntiRationalMap, z: complex) -> complex:
    """f(z) = R(conj z), with infinity handled in the 1/w chart."""
    if is_inf(z):
        return f.R(INF)
    return f.R(complex(z).conjugate())


def _chart_value(f: AntiRationalMap, w: complex) -> complex:
    """g(w) = 1/f(1/w) near w = 0."""
    sn, sd = f._S()
    u = complex(w).conjugate()
    return P.polyval(u, sn) / P.polyval(u, sd)


def antiderivative_multiplier(f: AntiRationalMap, z0: complex, tol: Tolerances = DEFAULT_TOL) -> complex:
    """Anti-holomorphic derivative at a fixed point; in the chart 1/z at infinity."""
    if is_inf(z0):
        if not f.fixes_infinity:
            raise DynamicsError("infinity is not fixed")
        sn, sd = f._S()
        # S = sn/sd, sn(0) = 0
        return complex((P.polyval(0, P.polyder(sn)) * sd[0] - sn[0] * P.polyval(0, P.polyder(sd)))
                       / sd[0] ** 2)
    w = f(z0)
    if is_inf(w) or abs(w - z0) > max(1e-6, 1e-6 * abs(z0)):
        raise DynamicsError(f"{z0} is not a fixed point")
    return complex(f.dR(complex(z0).conjugate()))


# ---------------------------------------------------------------------------
# fixed points

SUPERATTRACTING = "superattracting"
ATTRACTING = "attracting"
REPELLING = "repelling"
INDIFFERENT = "indifferent"


@dataclass(frozen=True)
class FixedPointRecord:
    location: complex
    multiplier: complex
    L: float
    kind: str
    residual: float

    @property
    def at_infinity(self) -> bool:
        return is_inf(self.location)

    def as_dict(self) -> dict:
        loc = "inf" if self.at_infinity else [float(self.location.real), float(self.location.imag)]
        return {"location": loc,
                "multiplier": [float(self.multiplier.real), float(self.multiplier.imag)],
                "L": float(self.L), "kind": self.kind, "residual": float(self.residual)}


def classify(L: float, tol: Tolerances = DEFAULT_TOL) -> str:
    if L < tol.superattracting:
        return SUPERATTRACTING
    if abs(L - 1) < tol.indifferent:
        return INDIFFERENT
    return ATTRACTING if L < 1 else REPELLING


def _second_iterate(f: AntiRationalMap):
    """Numerator and denominator of f(f(z)) = R(Rbar(z))."""
    d = f.degree
    nb, db = np.conj(np.array(f.num)), np.conj(np.array(f.den))
    n2 = np.zeros(1, dtype=complex)
    d2 = np.zeros(1, dtype=complex)
    for k in range(d + 1):
        term = P.polymul(P.polypow(nb, k) if k else [1], P.polypow(db, d - k) if d - k else [1])
        if k < len(f.num):
            n2 = P.polyadd(n2, f.num[k] * term)
        if k < len(f.den):
            d2 = P.polyadd(d2, f.den[k] * term)
    return n2, d2


def _polish(f: AntiRationalMap, z: complex, iters: int = 60) -> complex:
    """Newton for R(conj z) = z viewed as a real 2x2 system."""
    for _ in range(iters):
        u = z.conjugate()
        F = f.R(u) - z
        if is_inf(F):
            return z
        a = f.dR(u)
        den = 1 - abs(a) ** 2
        if abs(den) < 1e-14:
            return z
        step = (F + a * F.conjugate()) / den
        z = z + step
        if abs(step) <= 1e-15 * max(1.0, abs(z)):
            break
    return z


def _residual(f: AntiRationalMap, z: complex) -> float:
    w = f(z)
    if is_inf(w):
        return math.inf
    return abs(w - z) / max(1.0, abs(z))


def fixed_points(f: AntiRationalMap, tol: Tolerances = DEFAULT_TOL) -> list[FixedPointRecord]:
    """All fixed points (infinity included), classified; the count identity is asserted."""
    n2, d2 = _second_iterate(f)
    eq = P.polysub(n2, P.polymul([0, 1], d2))
    eq = _trim(eq)
    roots = np.roots(eq[::-1]) if len(eq) > 1 else np.array([])
    found: list[complex] = []
    for r in roots:
        z = _polish(f, complex(r))
        if _residual(f, z) >= tol.residual:
            continue
        if all(abs(z - y) > tol.cluster * max(1.0, abs(y)) for y in found):
            found.append(z)
    records = []
    for z in sorted(found, key=lambda c: (round(c.real, 9), round(c.imag, 9))):
        lam = antiderivative_multiplier(f, z, tol)
        records.append(_record(z, lam, _residual(f, z), tol))
    if f.fixes_infinity:
        lam = antiderivative_multiplier(f, INF, tol)
        records.append(_record(INF, lam, 0.0, tol))
    n_rep = sum(r.kind == REPELLING for r in records)
    n_att = sum(r.kind in (ATTRACTING, SUPERATTRACTING) for r in records)
    if n_rep - n_att != f.degree - 1:
        raise DynamicsError(f"fixed-point count identity fails: {n_rep} - {n_att} != {f.degree - 1}")
    return records


def _record(z, lam, res, tol) -> FixedPointRecord:
    L = abs(lam)
    kind = classify(L, tol)
    if kind == INDIFFERENT:
        raise IndifferentFixedPoint(f"indifferent fixed point at {z} (L = {L})")
    return FixedPointRecord(complex(z), complex(lam), float(L), kind, float(res))


def counts(records: Sequence[FixedPointRecord]) -> dict[str, int]:
    out = {SUPERATTRACTING: 0, ATTRACTING: 0, REPELLING: 0}
    for r in records:
        out[r.kind] += 1
    return out


# ---------------------------------------------------------------------------
# internal rays

@dataclass(frozen=True)
class RayTrace:
    source: complex
    index: int
    count: int            # number of rays at the source
    angle: float          # initial direction (in the 1/z chart at infinity)
    samples: tuple[complex, ...]
    landing: complex
    max_residual: float

    def as_dict(self) -> dict:
        def enc(z):
            return "inf" if is_inf(z) else [z.real, z.imag]
        return {"source": enc(self.source), "index": self.index, "count": self.count,
                "angle": self.angle, "landing": enc(self.landing),
                "samples": len(self.samples), "max_residual": self.max_residual}


def ray_angles(f: AntiRationalMap, c: complex) -> tuple[int, list[float]]:
    """Local degree at ``c`` and the directions of its invariant rays, counterclockwise."""
    k, a = f.critical_local_degree(c)
    if k < 2:
        raise DynamicsError(f"{c} is not a critical point")
    base = cmath.phase(a)
    return k, [(base + 2 * math.pi * j) / (k + 1) for j in range(k + 1)]


def _inverse_step(f: AntiRationalMap, w: complex, target: complex) -> complex | None:
    """Solve f(z) = target by Newton from z = w; ``None`` on failure."""
    u = w.conjugate()
    for _ in range(40):
        r = f.R(u)
        if is_inf(r):
            return None
        dr = f.dR(u)
        if dr == 0:
            return None
        step = (r - target) / dr
        u -= step
        if abs(step) <= 1e-15 * max(1.0, abs(u)):
            break
    r = f.R(u)
    if is_inf(r) or abs(r - target) > 1e-12 * max(1.0, abs(target)):
        return None
    return u.conjugate()


def _pull_segment(f, seg: list[complex], start: complex, floor: float, max_step: float = 0.02):
    """Lift a polyline through the inverse branch sending seg[0] to ``start``.

    Returns the lifted points and the points of ``seg`` (refined) they map to.
    """
    out, images = [start], [seg[0]]
    pts = list(seg)
    i = 0
    while i < len(pts) - 1:
        a, b = pts[i], pts[i + 1]
        cur = out[-1]
        dr = f.dR(cur.conjugate())
        # first-order prediction: df = R'(conj z) conj(dz)
        pred = cur + ((b - a) / dr).conjugate() if dr != 0 else cur
        h = abs(pred - cur)
        nxt = None if h > max_step * max(1.0, abs(cur)) else _inverse_step(f, pred, b)
        if nxt is None or abs(nxt - pred) > 0.1 * h + 1e-13:
            if abs(b - a) < floor:
                raise RayTraceError("ray continuation stalled (step underflow)")
            pts.insert(i + 1, (a + b) / 2)
            continue
        out.append(nxt)
        images.append(b)
        i += 1
    return out, images


def trace_ray(f: AntiRationalMap, c: complex, k: int, fixed: Sequence[FixedPointRecord] | None = None,
              r0: float = 1e-2, samples: int = 24, max_segments: int = 4000,
              tol: Tolerances = DEFAULT_TOL) -> RayTrace:
    """Trace the ``k``-th internal ray of the superattracting fixed point ``c``."""
    fixed = list(fixed) if fixed is not None else fixed_points(f, tol)
    crit = [r for r in fixed if r.kind == SUPERATTRACTING]
    if not any((is_inf(r.location) and is_inf(c)) or
               (not is_inf(r.location) and not is_inf(c) and abs(r.location - c) < tol.cluster)
               for r in crit):
        raise DynamicsError(f"{c} is not a superattracting fixed point")
    deg, angles = ray_angles(f, c)
    if not 0 <= k < len(angles):
        raise ValueError(f"ray index must be in 0..{len(angles) - 1}")
    theta = angles[k]
    targets = [r.location for r in fixed if r.kind == REPELLING and not is_inf(r.location)]

    # fundamental segment from f(p0) to p0 (in the chart at infinity if needed)
    if is_inf(c):
        w0 = r0 * cmath.exp(1j * theta)
        gw = _chart_value(f, w0)
        seg_w = [gw + (w0 - gw) * s / samples for s in range(samples + 1)]
        seg = [1 / w for w in seg_w]
        head = [INF]
    else:
        p0 = c + r0 * cmath.exp(1j * theta)
        fp = f(p0)
        seg = [fp + (p0 - fp) * s / samples for s in range(samples + 1)]
        head = [c]
    poly = head + seg
    cur = seg
    max_res = 0.0
    floor = 1e-12
    for _ in range(max_segments):
        end = cur[-1]
        hit = [z for z in targets if abs(z - end) < tol.landing * max(1.0, abs(z))]
        if len(hit) > 1:
            raise RayTraceError("landing ambiguity")
        if hit:
            return RayTrace(c, k, len(angles), theta, tuple(poly), hit[0], max_res)
        nxt, images = _pull_segment(f, cur, cur[-1], floor)
        # the lifted polyline maps onto the previous one
        for z, prev in zip(nxt, images):
            max_res = max(max_res, abs(f(z) - prev) / max(1.0, abs(prev)))
        nxt = _resample(nxt, samples)
        poly.extend(nxt[1:])
        cur = nxt
        if any(abs(z) > 1e12 for z in nxt):
            raise RayTraceError("ray escapes to infinity")
    raise RayTraceError("ray did not land")


def _resample(pts: list[complex], n: int) -> list[complex]:
    """Keep ``n + 1`` points from a lifted polyline, evenly spaced by index."""
    if len(pts) <= n + 1:
        return pts
    idx = np.linspace(0, len(pts) - 1, n + 1).round().astype(int)
    return [pts[i] for i in idx]


# ---------------------------------------------------------------------------
# Tischler graph extraction

@dataclass(frozen=True)
class Extraction:
    graph: PlaneGraph
    critical: tuple[complex, ...]
    repelling: tuple[complex, ...]
    rays: tuple[RayTrace, ...]


def critical_fixed_points(f: AntiRationalMap, fixed: Sequence[FixedPointRecord]) -> list[tuple[complex, int]]:
    """Superattracting fixed points with local degrees; checks the map is critically fixed."""
    out = []
    for r in fixed:
        if r.kind == SUPERATTRACTING:
            k, _ = f.critical_local_degree(r.location)
            out.append((r.location, k))
    if sum(k - 1 for _, k in out) != 2 * f.degree - 2:
        raise DynamicsError("map is not critically fixed")
    return out


def extract(f: AntiRationalMap, tol: Tolerances = DEFAULT_TOL, **ray_kw) -> Extraction:
    fixed = fixed_points(f, tol)
    crit = critical_fixed_points(f, fixed)
    rep = [r.location for r in fixed if r.kind == REPELLING]
    rays = []
    for c, _ in crit:
        _, angles = ray_angles(f, c)
        for j in range(len(angles)):
            rays.append(trace_ray(f, c, j, fixed, tol=tol, **ray_kw))
    landing_index = {}
    for i, z in enumerate(rep):
        landing_index[i] = [r for r in rays if not is_inf(r.landing) and abs(r.landing - z) < tol.cluster]
    for i, hits in landing_index.items():
        if len(hits) != 2:
            raise DynamicsError(f"repelling fixed point {rep[i]} receives {len(hits)} rays")
    # darts: ray t contributes 2t at its source and 2t+1 at its landing point
    rotations = []
    pos = 0
    for c, _ in crit:
        n = sum(1 for r in rays if r.source == c or (is_inf(r.source) and is_inf(c)))
        rotations.append([2 * t for t in range(pos, pos + n)])
        pos += n
    for i, z in enumerate(rep):
        rotations.append([2 * rays.index(r) + 1 for r in landing_index[i]])
    pairs = [(2 * t, 2 * t + 1) for t in range(len(rays))]
    labels = [f"c{i}" for i in range(len(crit))] + [f"r{i}" for i in range(len(rep))]
    g = from_rotations(rotations, pairs, labels)
    if g.num_faces != f.degree + 1:
        raise DynamicsError(f"extracted graph has {g.num_faces} faces, expected {f.degree + 1}")
    return Extraction(g, tuple(c for c, _ in crit), tuple(rep), tuple(rays))


def extract_tischler(f: AntiRationalMap, tol: Tolerances = DEFAULT_TOL) -> PlaneGraph:
    """Full (bipartite) Tischler graph of a critically fixed anti-rational map."""
    return extract(f, tol).graph


# ---------------------------------------------------------------------------
# built-in maps

def beta_polynomial(m0: int, m1: int) -> tuple[Fraction, ...]:
    """Coefficients of the normalized incomplete beta function B(z; m0+1, m1+1)/B(m0+1, m1+1)."""
    if m0 < 1 or m1 < 1:
        raise ValueError("m0, m1 must be positive")
    c = Fraction(factorial(m0 + m1 + 1), factorial(m0) * factorial(m1))
    coeffs = [Fraction(0)] * (m0 + m1 + 2)
    for j in range(m1 + 1):
        coeffs[m0 + j + 1] += c * (-1) ** j * comb(m1, j) / (m0 + j + 1)
    return tuple(coeffs)


def _from_exact(num, den, name) -> AntiRationalMap:
    num = tuple(Fraction(x) for x in num)
    den = tuple(Fraction(x) for x in den)
    return AntiRationalMap(tuple(complex(x) for x in num), tuple(complex(x) for x in den),
                           name, (num, den))


BUILTIN_NAMES = ("zbar", "f_m0_m1", "tetrahedral")


def builtin(name: str, d: int | None = None, m0: int | None = None, m1: int | None = None) -> AntiRationalMap:
    """``zbar`` (power map of degree d), ``f_<m0>_<m1>`` (beta maps), ``tetrahedral``."""
    m = re.fullmatch(r"f_(\d+)_(\d+)", name)
    if m:
        m0, m1 = int(m.group(1)), int(m.group(2))
        name = "f_m0_m1"
    if name == "zbar":
        d = 2 if d is None else int(d)
        if d < 2:
            raise ValueError("degree must be at least 2")
        return _from_exact([0] * d + [1], [1], f"zbar^{d}")
    if name == "f_m0_m1":
        if m0 is None or m1 is None:
            raise ValueError("f_m0_m1 needs m0 and m1")
        return _from_exact(beta_polynomial(m0, m1), [1], f"f_{m0}_{m1}")
    if name == "tetrahedral":
        return _from_exact([0, 0, 3], [1, 0, 0, 2], "tetrahedral")
    raise ValueError(f"unknown built-in map {name!r}")


# ---------------------------------------------------------------------------
# map files

def _parse_complex(tok: str) -> complex:
    t = tok.strip().replace(" ", "").replace("i", "j")
    if t.endswith("j") and (t in ("j", "+j", "-j") or t[-2] in "+-"):
        t = t[:-1] + "1j"
    return complex(t)


def parse_map(text: str, name: str = "map") -> AntiRationalMap:
    """Two non-comment lines: numerator and denominator coefficients, ascending powers."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if len(lines) != 2:
        raise ValueError("map file needs exactly two coefficient lines")
    num = [_parse_complex(t) for t in re.split(r"[,\s]+", lines[0]) if t]
    den = [_parse_complex(t) for t in re.split(r"[,\s]+", lines[1]) if t]
    return AntiRationalMap(tuple(num), tuple(den), name)


def _fmt_complex(z: complex) -> str:
    return f"{z.real:.17g}{'+' if z.imag >= 0 else '-'}{abs(z.imag):.17g}i"


def format_map(f: AntiRationalMap) -> str:
    return ("# numerator, ascending powers\n" + " ".join(_fmt_complex(z) for z in f.num) +
            "\n# denominator\n" + " ".join(_fmt_complex(z) for z in f.den) + "\n")
