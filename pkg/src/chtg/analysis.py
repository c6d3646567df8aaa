"""Ellipticity thresholds, the distinguished parameter family, word scans.

The one-parameter space of triangles with fixed radii is coordinatised by
t = cot(alpha / 2); cos(alpha) = (t^2 - 1) / (t^2 + 1).  Triangles exist for
|t| < t_inf, and the length-4 test word (3, 2, 3, 1) is regular elliptic
exactly for |t| > t_A, where both bounds come from closed forms in the radii.
All w_A-related quantities read the labels as given; supply r1 <= r2 <= r3
(e.g. a sorted signature) for the usual normal form.

The family r1^2 + r2^2 + r3^2 = 1 + 2 r1 r2 r3 has t_inf = +inf and an
explicit even quartic f_B with rho(tau_123) = f_B(t) / (t^2 + 1)^3, so the
ellipticity pattern of the word (1, 2, 3) is fully determined by
R = r1 r2 r3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .classify import REGULAR_ELLIPTIC, classify, discriminant
from .traces import sigma_closed, tau_123_closed, trace_oracle
from .triangle import TriangleParams, realize
from .words import enumerate_words, word_to_str

TWO_PI = 2.0 * math.pi

TYPE_B = "TypeB"
OUT_OF_CRITERION = "OutOfCriterion"
TYPE_B_PRODUCT_BOUND = (13.0 + math.sqrt(297.0)) / 32.0

FAMILY_TOL = 1e-10


class NotInFamily(ValueError):
    pass


def t_of_alpha(alpha: float) -> float:
    """cot(alpha / 2); the sentinel +inf at alpha = 0 (mod 2 pi)."""
    alpha = alpha % TWO_PI
    half = alpha / 2.0
    s = math.sin(half)
    if abs(s) < 1e-154:
        return math.inf
    return math.cos(half) / s


def alpha_of_t(t: float) -> float:
    """Inverse of t_of_alpha: alpha = 2 atan2(1, t) in (0, 2 pi)."""
    return 2.0 * math.atan2(1.0, t)


def t_of_cos(c: float) -> float:
    """sqrt((1 + c)/(1 - c)) with total-order sentinels: +inf for c >= 1,
    -inf for c < -1.  Values within 1e-12 of 1 count as 1."""
    if c >= 1.0 - 1e-12:
        return math.inf
    if c < -1.0:
        return -math.inf
    return math.sqrt((1.0 + c) / (1.0 - c))


def cos_of_t(t: float) -> float:
    """(t^2 - 1) / (t^2 + 1); tends to 1 as |t| -> inf."""
    if math.isinf(t):
        return 1.0
    tt = t * t
    return (tt - 1.0) / (tt + 1.0)


@dataclass(frozen=True)
class Thresholds:
    """Closed-form threshold data for one radius triple.

    f_b, when present, holds (a4, a2, a0) with f_B(t) = a4 t^4 + a2 t^2 + a0.
    t_b_minus/t_b_plus are the nonnegative roots of f_B (absent when f_B has
    no real roots; only t_b_plus when there is a single crossing).
    """

    c_inf: float
    t_inf: float
    c_a: float
    t_a: float
    r_product: float
    family_member: bool
    f_b: tuple | None
    t_b_minus: float | None
    t_b_plus: float | None


def _family_roots(big_r: float):
    if big_r < 7.0 / 8.0 - 1e-12:
        return None, None
    if abs(big_r - 1.0) <= 1e-12:
        # quartic degenerates to 1024 (125 - 3 t^2); single crossing
        return math.sqrt(125.0 / 3.0), math.inf
    disc = max((8.0 * big_r - 7.0) ** 3 * (8.0 * big_r + 1.0), 0.0)
    inner = big_r * math.sqrt(disc)
    num = 2.0 + 11.0 * big_r - 80.0 * big_r ** 2 + 64.0 * big_r ** 3
    den = 2.0 * (big_r - 1.0)
    roots = sorted(math.sqrt(tt)
                   for tt in ((num + inner) / den, (num - inner) / den)
                   if tt >= 0.0)
    if not roots:
        return None, None
    if len(roots) == 1:
        return None, roots[0]
    return roots[0], roots[1]


def family_membership(params_or_r) -> bool:
    """Whether r1^2 + r2^2 + r3^2 = 1 + 2 r1 r2 r3 within 1e-10."""
    r1, r2, r3 = params_or_r.r if hasattr(params_or_r, "r") else params_or_r
    return abs(r1 * r1 + r2 * r2 + r3 * r3 - 1.0 - 2.0 * r1 * r2 * r3) <= FAMILY_TOL


def thresholds(params: TriangleParams) -> Thresholds:
    """All closed-form threshold data; needs only the radii."""
    r1, r2, r3 = params.r
    if min(r1, r2, r3) <= 0.0:
        raise ValueError("thresholds need r_k > 0")
    big_r = r1 * r2 * r3
    c_inf = (r1 * r1 + r2 * r2 + r3 * r3 - 1.0) / (2.0 * big_r)
    c_a = (4.0 * r1 * r1 * r2 * r2 + r3 * r3 - 1.0) / (4.0 * big_r)
    member = family_membership(params.r)
    f_b = t_bm = t_bp = None
    if member:
        scale = 1024.0 * big_r
        f_b = (scale * (1.0 - big_r),
               scale * (64.0 * big_r ** 3 - 80.0 * big_r ** 2 + 11.0 * big_r + 2.0),
               scale * (64.0 * big_r ** 3 + 48.0 * big_r ** 2 + 12.0 * big_r + 1.0))
        t_bm, t_bp = _family_roots(big_r)
    return Thresholds(c_inf, t_of_cos(c_inf), c_a, t_of_cos(c_a),
                      big_r, member, f_b, t_bm, t_bp)


def family_quartic(big_r: float, t: float) -> float:
    """f_B(t) = 1024 R ((1-R) t^4 + (64R^3-80R^2+11R+2) t^2 + (64R^3+48R^2+12R+1))."""
    return 1024.0 * big_r * ((1.0 - big_r) * t ** 4
                             + (64.0 * big_r ** 3 - 80.0 * big_r ** 2
                                + 11.0 * big_r + 2.0) * t ** 2
                             + (64.0 * big_r ** 3 + 48.0 * big_r ** 2
                                + 12.0 * big_r + 1.0))


def rho_123_weighted(r_triple, t: float) -> float:
    """rho(tau_123) * (t^2 + 1)^3 at the parameter t, from the closed form."""
    params = TriangleParams(*r_triple, alpha=alpha_of_t(t))
    return discriminant(tau_123_closed(params)) * (t * t + 1.0) ** 3


def bisect(f, lo: float, hi: float, tol: float = 1e-12, max_iter: int = 200) -> float:
    """Plain bisection; f(lo) and f(hi) must have opposite signs."""
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo > 0.0) == (fhi > 0.0):
        raise ValueError("bisection needs a sign change")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0 or (hi - lo) / 2.0 < tol:
            return mid
        if (fm > 0.0) == (flo > 0.0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def sigma_lower_bound_check(params_or_r, alpha_samples: int = 100) -> bool:
    """sigma_k > -1 over an alpha sweep.

    The bound can fail only at 2 r_{k-1} r_{k+1} = r_k with cos(alpha) = 1;
    those sample points are skipped.
    """
    r = params_or_r.r if hasattr(params_or_r, "r") else tuple(params_or_r)
    for alpha in np.linspace(0.0, TWO_PI, alpha_samples, endpoint=False):
        p = TriangleParams(*r, alpha=float(alpha))
        for k in (1, 2, 3):
            # r_{k-1}, r_{k+1} with 1-based labels
            rm = r[(k - 2) % 3]
            rp = r[k % 3]
            if (abs(2.0 * rm * rp - r[k - 1]) <= 1e-9
                    and p.cos_alpha >= 1.0 - 1e-12):
                continue
            if sigma_closed(p, k) <= -1.0 + 1e-12:
                return False
    return True


def family_type(params: TriangleParams) -> str:
    """TypeB when the sufficient criterion applies; never asserts TypeA.

    TypeB is reported when the radius product reaches (13 + sqrt(297)) / 32,
    or when c_A >= 1 (the test word never goes elliptic at all, while the
    family's f_B guarantees that (1, 2, 3) eventually does).  Below the
    criterion the verdict is OutOfCriterion: the bound is one-directional.
    """
    if not family_membership(params.r):
        raise NotInFamily("radii do not satisfy r1^2+r2^2+r3^2 = 1 + 2 r1 r2 r3")
    th = thresholds(params)
    if th.c_a >= 1.0 - 1e-12 or th.r_product >= TYPE_B_PRODUCT_BOUND - 1e-12:
        return TYPE_B
    return OUT_OF_CRITERION


def family_c_a_printed(params_or_r) -> float:
    """The family shortcut for c_A: 1 - sin^2(phi1 + phi2) / (4R) in the angle
    case, 1 + sinh^2(l1 - l2) / (4R) in the ultra-parallel case (as printed;
    see family_c_a_report for the cross-check against the general formula)."""
    r = params_or_r.r if hasattr(params_or_r, "r") else tuple(params_or_r)
    r1, r2, r3 = r
    big_r = r1 * r2 * r3
    if r1 <= 1.0 and r2 <= 1.0:
        phi1 = math.acos(min(r1, 1.0))
        phi2 = math.acos(min(r2, 1.0))
        return 1.0 - math.sin(phi1 + phi2) ** 2 / (4.0 * big_r)
    if r1 >= 1.0 and r2 >= 1.0:
        l1 = 2.0 * math.acosh(r1)
        l2 = 2.0 * math.acosh(r2)
        return 1.0 + math.sinh(l1 - l2) ** 2 / (4.0 * big_r)
    raise ValueError("family shortcut needs r1, r2 on the same side of 1")


def family_c_a_report(params_or_r, tol: float = 1e-9) -> dict:
    """Compare the printed family shortcut for c_A with the general formula.

    Any mismatch is surfaced, not reconciled: the dict carries both values,
    a consistency flag, and (in the ultra-parallel case) the half-argument
    variant sinh^2((l1 - l2)/2) which does agree with the general formula.
    """
    r = params_or_r.r if hasattr(params_or_r, "r") else tuple(params_or_r)
    params = TriangleParams(*r)
    general = thresholds(params).c_a
    printed = family_c_a_printed(r)
    out = {"printed": printed, "general": general,
           "consistent": abs(printed - general) <= tol}
    if r[0] > 1.0 and r[1] > 1.0:
        l1 = 2.0 * math.acosh(r[0])
        l2 = 2.0 * math.acosh(r[1])
        big_r = r[0] * r[1] * r[2]
        out["half_argument"] = 1.0 + math.sinh((l1 - l2) / 2.0) ** 2 / (4.0 * big_r)
    return out


W_A = (3, 2, 3, 1)
W_B = (1, 2, 3)


@dataclass(frozen=True)
class Certificate:
    """A verified regular-elliptic test-word image: the representation with
    these parameters is not a discrete embedding."""

    word: tuple
    tau: complex
    rho: float
    t: float
    t_a: float


def non_discreteness_certificate(params: TriangleParams,
                                 tol: float = 1e-9) -> Certificate | None:
    """Certificate naming the (3,2,3,1)-class when |t| > t_A; None otherwise.

    The closed-form threshold decision is double-checked by classifying the
    matrix-product trace.  Absence of a certificate says nothing about
    discreteness.
    """
    th = thresholds(params)
    t = params.t
    if not abs(t) > th.t_a:
        return None
    rz = realize(params)
    tau = trace_oracle(W_A, rz).value
    cls = classify(tau, tol=tol)
    if cls.verdict != REGULAR_ELLIPTIC:
        return None
    return Certificate(W_A, tau, cls.rho, t, th.t_a)


@dataclass(frozen=True)
class ScanRow:
    word: tuple
    tau: complex
    rho: float
    verdict: str
    filtered: bool

    def to_json_dict(self) -> dict:
        return {"word": word_to_str(self.word),
                "tau": {"re": self.tau.real, "im": self.tau.imag},
                "rho": self.rho, "verdict": self.verdict,
                "filtered": self.filtered}


@dataclass(frozen=True)
class ScanReport:
    params: TriangleParams
    max_len: int
    skip_alternating: bool
    rows: tuple

    @property
    def hits(self):
        return tuple(r for r in self.rows
                     if r.verdict == REGULAR_ELLIPTIC and not r.filtered)


def _alternation_index(word):
    """k if the cyclic word is an alternating power of {k-1, k+1}, else None."""
    n = len(word)
    if n < 2 or n % 2:
        return None
    letters = set(word)
    if len(letters) != 2:
        return None
    if any(word[m] != word[(m + 2) % n] for m in range(n)):
        return None
    a, b = letters
    return 6 - a - b


def _scan_block(args):
    params, lengths, skip_alternating, tol = args
    rz = realize(params)
    rows = []
    for n in lengths:
        for w in enumerate_words(n, cyclically_reduced=True, min_len=n):
            tau = trace_oracle(w, rz).value
            cls = classify(tau, tol=tol)
            filtered = False
            if skip_alternating:
                k = _alternation_index(w)
                # alternation powers are rotations of finite angle when r_k < 1
                filtered = k is not None and params.r[k - 1] < 1.0 - 1e-12
            rows.append(ScanRow(w, tau, cls.rho, cls.verdict, filtered))
    return rows


def scan_elliptic(params: TriangleParams, max_len: int,
                  skip_alternating: bool = True, tol: float = 1e-9,
                  jobs: int = 1) -> ScanReport:
    """Classify every cyclic class up to max_len; flag regular elliptic hits.

    Deterministic order (length, then lexicographic) regardless of ``jobs``;
    parallel runs partition the lengths across processes.
    """
    if max_len > 24:
        raise ValueError("scan capped at words of length 24")
    blocks = [(params, [n], skip_alternating, tol) for n in range(1, max_len + 1)]
    if jobs <= 1:
        results = [_scan_block(b) for b in blocks]
    else:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_scan_block, blocks))
    rows = tuple(row for block in results for row in block)
    return ScanReport(params, max_len, skip_alternating, rows)
