"""Arithmetic properties of traces: rotation-tuned groups, ring membership.

G(p1, p2, p3; n) is the triangle group from the signature with the angular
invariant tuned so the element (3, 1, 3, 2) rotates by 2 pi / n, i.e. has
trace 1 + 2 cos(2 pi / n):

    cos(alpha) = (8 r1^2 r2^2 + 2 r3^2 - 1 - cos(2 pi / n)) / (8 r1 r2 r3).

When every entry of {p1, p2, p3, n} is 3, 4, 6 or inf, the quantities
2 Re(tau) and |tau|^2 are plain integers; that check is sharp.  With one
extra entry q, they land in Z[2 cos(2 pi / q)] and the membership test works
over the Galois conjugates of 2 cos(2 pi / q); the conjugate traces are
evaluated through the exact Fourier data with 8 R e^{i alpha} replaced by the
conjugated root Z of Z^2 - S Z + Q = 0, S = 16 R cos(alpha) and Q = (8 R)^2.
Floating-point ring membership is a heuristic; every verdict from the basis
method carries experimental=True and is not a hard gate.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace

import numpy as np

from .traces import (trace_combinatorial, trace_mu_combinatorial,
                     trace_polynomial)
from .triangle import ExistenceViolation, TriangleParams, realize

TWO_PI = 2.0 * math.pi

INTEGER_ENTRIES = (3, 4, 6, math.inf)


class IllConditionedBasis(RuntimeError):
    """The conjugate Vandermonde system is numerically unusable."""


def totient(n: int) -> int:
    out = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            out -= out // p
        p += 1
    if m > 1:
        out -= out // m
    return out


def cos_two_pi_over(n) -> float:
    return 1.0 if n == math.inf else math.cos(TWO_PI / n)


@dataclass(frozen=True)
class GroupWithRotation:
    params: TriangleParams
    n: float
    cos_alpha: float

    @property
    def signature(self):
        return self.params.p

    def realize(self):
        return realize(self.params)


def group_with_rotation(p1, p2, p3, n) -> GroupWithRotation:
    """G(p1, p2, p3; n); raises ExistenceViolation if the tuned angle is
    out of range or violates the triangle existence bound.  n = inf is
    allowed and means the rotation degenerates to trace 3."""
    base = TriangleParams.from_signature(p1, p2, p3)
    r1, r2, r3 = base.r
    if min(r1, r2, r3) <= 0.0:
        raise ExistenceViolation("rotation tuning needs r_k > 0")
    big_r = base.r_product
    ca = (8.0 * r1 * r1 * r2 * r2 + 2.0 * r3 * r3 - 1.0
          - cos_two_pi_over(n)) / (8.0 * big_r)
    if abs(ca) > 1.0:
        raise ExistenceViolation(
            f"induced cos(alpha) = {ca:.6g} is not in [-1, 1]")
    params = replace(base, alpha=math.acos(ca), n=n)
    if not params.exists:
        raise ExistenceViolation("induced alpha violates the existence bound")
    return GroupWithRotation(params, n, ca)


@dataclass(frozen=True)
class IntegralityVerdict:
    ok: bool
    two_re: float
    abs_sq: float
    two_re_residual: float
    abs_sq_residual: float

    def to_json_dict(self) -> dict:
        return {"ok": self.ok, "two_re": self.two_re, "abs_sq": self.abs_sq,
                "two_re_residual": self.two_re_residual,
                "abs_sq_residual": self.abs_sq_residual}


def integer_ring_check(tau, tol: float = 1e-7) -> IntegralityVerdict:
    """2 Re(tau) and |tau|^2 must be integers (all entries in {3,4,6,inf})."""
    tau = complex(tau)
    two_re = 2.0 * tau.real
    abs_sq = abs(tau) ** 2
    res1 = abs(two_re - round(two_re))
    res2 = abs(abs_sq - round(abs_sq))
    return IntegralityVerdict(res1 <= tol and res2 <= tol,
                              two_re, abs_sq, res1, res2)


def _conjugate_points(q: int):
    """The distinct Galois conjugates of 2 cos(2 pi / q), the one for m = 1
    first."""
    return [2.0 * math.cos(TWO_PI * m / q)
            for m in range(1, q // 2 + 1) if math.gcd(m, q) == 1]


@dataclass(frozen=True)
class BasisExpansion:
    ok: bool
    coefficients: tuple
    residual: float
    value: float


@dataclass(frozen=True)
class BasisRingVerdict:
    q: int
    ok: bool
    two_re: BasisExpansion
    abs_sq: BasisExpansion
    experimental: bool = True

    def to_json_dict(self) -> dict:
        return {"q": self.q, "ok": self.ok, "experimental": self.experimental,
                "two_re": {"ok": self.two_re.ok,
                           "coefficients": list(self.two_re.coefficients),
                           "residual": self.two_re.residual},
                "abs_sq": {"ok": self.abs_sq.ok,
                           "coefficients": list(self.abs_sq.coefficients),
                           "residual": self.abs_sq.residual}}


def _expand_in_power_basis(values, pts, tol) -> BasisExpansion:
    """Integer coefficients on {x^j : j < deg} from conjugate evaluations.

    With all deg conjugates supplied the Vandermonde system is square and the
    true integer coefficients are the rounded exact solution; with fewer rows
    this degrades to a minimal-norm heuristic.  Acceptance always means the
    rounded solution reproduces the m = 1 value within tol.
    """
    d = len(pts)
    rows = min(len(values), d)
    v = np.array([[pts[i] ** j for j in range(d)] for i in range(rows)])
    gram = v @ v.T
    if np.linalg.cond(gram) > 1e12:
        raise IllConditionedBasis(f"power basis of degree {d} is unusable")
    sol = np.linalg.lstsq(v, np.asarray(values[:rows], dtype=float),
                          rcond=None)[0]
    coeffs = tuple(int(c) for c in np.rint(sol))
    approx = sum(c * pts[0] ** j for j, c in enumerate(coeffs))
    residual = abs(values[0] - approx)
    return BasisExpansion(bool(residual <= tol), coeffs, residual,
                          float(values[0]))


def basis_ring_check(tau, q: int, tol: float = 1e-7,
                     conjugate_pairs=None) -> BasisRingVerdict:
    """EXPERIMENTAL membership of 2 Re(tau) and |tau|^2 in Z[2 cos(2 pi / q)].

    ``conjugate_pairs`` supplies the Galois conjugates of (tau, tau-bar),
    aligned with the conjugates of 2 cos(2 pi / q) (m = 1 first); without
    them only the single defining equation is available and the verdict is a
    weaker heuristic still.
    """
    if q < 3:
        raise ValueError("q must be >= 3")
    pts = _conjugate_points(q)
    if conjugate_pairs is None:
        tau = complex(tau)
        conjugate_pairs = [(tau, tau.conjugate())]
    two_re_vals = [(t + tb).real for t, tb in conjugate_pairs]
    abs_vals = [(t * tb).real for t, tb in conjugate_pairs]
    e1 = _expand_in_power_basis(two_re_vals, pts, tol)
    e2 = _expand_in_power_basis(abs_vals, pts, tol)
    return BasisRingVerdict(q, e1.ok and e2.ok, e1, e2)


def group_conjugate_traces(group: GroupWithRotation, word, q: int):
    """Galois-conjugate (tau, tau-bar) pairs for a word in G(p1, p2, p3; n).

    Valid when every entry of {p1, p2, p3, n} lies in {3, 4, 6, inf, q}.
    Conjugation replaces 2 cos(2 pi / q) by 2 cos(2 pi m / q); the trace is
    reassembled from the exact Fourier data with X_k and the root pair
    (Z, Q / Z) of Z^2 - S Z + Q conjugated accordingly.
    """
    if group.signature is None:
        raise ValueError("conjugation needs an integer signature")
    entries = [*group.signature, group.n]
    for e in entries:
        if e not in INTEGER_ENTRIES and e != q:
            raise ValueError(f"entry {e} is neither in {{3,4,6,inf}} nor q={q}")
    poly = trace_polynomial(word, mode="exact")
    n_len = len(tuple(word))
    sign = (-1.0) ** n_len
    pairs = []
    for m in range(1, q // 2 + 1):
        if math.gcd(m, q) != 1:
            continue
        x = 2.0 * math.cos(TWO_PI * m / q)
        xs = [(2.0 + x) if p == q else 4.0 * math.cos(math.pi / p) ** 2
              for p in group.signature]
        if group.n == q:
            cn = x / 2.0
        else:
            cn = cos_two_pi_over(group.n)
        # Z + Q/Z = 16 R cos(alpha) = X1 X2 + X3 - 2 - 2 cos(2 pi / n)
        s_val = xs[0] * xs[1] + xs[2] - 2.0 - 2.0 * cn
        q_val = xs[0] * xs[1] * xs[2]
        z = (s_val + cmath.sqrt(complex(s_val * s_val - 4.0 * q_val))) / 2.0
        zb = q_val / z

        def assemble(zp, zn):
            acc = 2.0 + 0j
            for w, pw in poly.coeffs.items():
                val = sum(c * xs[0] ** j1 * xs[1] ** j2 * xs[2] ** j3
                          for (j1, j2, j3), c in pw.items())
                acc += val * (zp ** w if w >= 0 else zn ** (-w))
            return sign * acc

        pairs.append((assemble(z, zb), assemble(zb, z)))
    return pairs


def group_ring_check(group: GroupWithRotation, word, tol: float = 1e-7):
    """Dispatch: all-integer entries -> hard integrality; one extra entry q
    -> conjugate basis method (experimental)."""
    entries = [*group.signature, group.n]
    specials = sorted({e for e in entries if e not in INTEGER_ENTRIES})
    tau = trace_combinatorial(word, group.params).value
    if not specials:
        return integer_ring_check(tau, tol)
    if len(specials) > 1:
        raise ValueError("only one entry outside {3,4,6,inf} is supported")
    q = specials[0]
    if q != int(q):
        raise ValueError("the extra entry must be an integer")
    q = int(q)
    pairs = group_conjugate_traces(group, word, q)
    return basis_ring_check(tau, q, tol, conjugate_pairs=pairs)


@dataclass(frozen=True)
class MostowGroup:
    """Equiangular group of mu-reflections of order p with the tuned angle
    alpha = 2 pi / rho + pi / p - pi / 2."""

    p: int
    rho: float
    mu: complex
    r: float
    alpha: float

    @property
    def params(self) -> TriangleParams:
        return TriangleParams(self.r, self.r, self.r, alpha=self.alpha)

    @property
    def mus(self):
        return (self.mu, self.mu, self.mu)

    def realize(self):
        return realize(self.params)


def mostow_group(p: int, rho) -> MostowGroup:
    """mu = e^{2 pi i / p}, r = 1 / (2 sin(pi / p)); note (mu - 1) r =
    i e^{i pi / p} exactly."""
    if p not in (3, 4, 5):
        raise ValueError("p must be 3, 4 or 5")
    mu = cmath.exp(2j * math.pi / p)
    r = 1.0 / (2.0 * math.sin(math.pi / p))
    alpha = TWO_PI / rho + math.pi / p - math.pi / 2.0
    return MostowGroup(p, rho, mu, r, alpha)


@dataclass(frozen=True)
class FieldVerdict:
    ok: bool
    coefficients: tuple
    residual: float
    experimental: bool = True


def mostow_trace_field_check(group: MostowGroup, word,
                             tol: float = 1e-7) -> FieldVerdict:
    """EXPERIMENTAL: integer-combination test of tau over the products
    e^{2 pi i (j / p + k / rho)}, j < phi(p), k < phi(rho).

    Two real equations (real and imaginary part) against phi(p) * phi(rho)
    unknowns: a minimal-norm least-squares solution is rounded and verified.
    A plain-integer candidate is tried first so rational traces are always
    recognised.
    """
    if group.rho != int(group.rho) or group.rho < 1:
        raise ValueError("field check implemented for integer rho only")
    rho = int(group.rho)
    tau = trace_mu_combinatorial(word, group.params, group.mus).value
    basis = [cmath.exp(2j * math.pi * (j / group.p + k / rho))
             for j in range(totient(group.p)) for k in range(totient(rho))]

    def verdict(coeffs):
        approx = sum(c * b for c, b in zip(coeffs, basis))
        residual = abs(tau - approx)
        return FieldVerdict(bool(residual <= tol), tuple(coeffs), residual)

    plain = [0] * len(basis)
    plain[0] = round(tau.real)
    v = verdict(plain)
    if v.ok:
        return v
    rows = np.array([[b.real for b in basis], [b.imag for b in basis]])
    sol = np.linalg.lstsq(rows, np.array([tau.real, tau.imag]), rcond=None)[0]
    return verdict([int(c) for c in np.rint(sol)])
