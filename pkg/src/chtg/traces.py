"""Traces of words in the generating reflections, by three routes.

For a word a = (a_1, ..., a_n) over {1, 2, 3} and iota_a = iota_{a_1} ...
iota_{a_n}:

* ``trace_oracle`` multiplies the 3x3 matrices of a realization and takes
  the trace;
* ``trace_combinatorial`` expands prod(-id + 2 c_k c_k^*) over subsets S of
  the letter positions, giving

      tau_a = (-1)^n (2 + sum_S (-2)^{|S|} r1^{u1(S)} r2^{u2(S)} r3^{u3(S)}
                              e^{i alpha w(S)}),

  with u_k and the winding number w evaluated on the chosen subsequence
  closed cyclically (the empty subset contributes 1);
* ``trace_recursive`` peels off the last three letters with the deletion
  operators; base traces are tau() = 3, tau(k) = -1, tau(k,l) = 4 r_m^2 - 1
  for the letter m completing {k, l}, and tau(k,k) = 3.

Collecting the subset expansion by winding number gives Fourier data
tau_a = (-1)^n (2 + sum_w q_w e^{i alpha w}).  In exact mode each q_w is
stored as (8 r1 r2 r3)^{|w|} times an integer polynomial in X_k = 4 r_k^2;
``trace_polynomial`` produces either representation.

The mu-reflection variants expand prod(id + (mu_k - 1) c_k c_k^*) instead:

      tau_a = 2 + sum_S prod_k (mu_k - 1)^{n_k(S)} r_k^{u_k(S)}
                        e^{i alpha w(S)}.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .words import LETTERS, canonical, chi, psi, v_count, winding, wrap

COMBINATORIAL_CAP = 20
EXACT_CAP = 16


class CapExceeded(ValueError):
    """Word longer than the configured cost cap for this method."""


class ZeroRadiusUnsupported(ValueError):
    """The recursion needs all r_k > 0 (its coefficient has r_k^{-1} factors)."""


@dataclass(frozen=True)
class TraceValue:
    value: complex
    method: str


# pair contribution tables, 1-based letters
_PAIR_U = {(a, b): tuple(psi(k, a, b) for k in LETTERS)
           for a in LETTERS for b in LETTERS}
_PAIR_X = {(a, b): chi(b - a) for a in LETTERS for b in LETTERS}


def subset_stats(word) -> dict:
    """Counters over the nonempty cyclic subsequences of a word.

    Maps (n1, n2, n3, u1, u2, u3, w) -> number of subsets realising those
    values, where n_k counts letters, u_k the {k-1, k+1} adjacencies and w
    the winding number of the subsequence closed cyclically.
    """
    word = tuple(word)
    n = len(word)
    out: dict = {}
    if n == 0:
        return out
    pu = _PAIR_U
    px = _PAIR_X

    def go(i, first, prev, n1, n2, n3, u1, u2, u3, s):
        if i == n:
            if first is not None:
                du = pu[(prev, first)]
                key = (n1, n2, n3, u1 + du[0], u2 + du[1], u3 + du[2],
                       (s + px[(prev, first)]) // 3)
                out[key] = out.get(key, 0) + 1
            return
        go(i + 1, first, prev, n1, n2, n3, u1, u2, u3, s)
        a = word[i]
        m1 = n1 + (a == 1)
        m2 = n2 + (a == 2)
        m3 = n3 + (a == 3)
        if first is None:
            go(i + 1, a, a, m1, m2, m3, u1, u2, u3, s)
        else:
            du = pu[(prev, a)]
            go(i + 1, first, a, m1, m2, m3,
               u1 + du[0], u2 + du[1], u3 + du[2], s + px[(prev, a)])

    go(0, None, None, 0, 0, 0, 0, 0, 0, 0)
    return out


@lru_cache(maxsize=512)
def _compiled_stats(word):
    """subset_stats packed into numpy arrays for fast re-evaluation."""
    st = subset_stats(word)
    if not st:
        empty = np.zeros(0, dtype=np.int64)
        return (empty,) * 7 + (np.zeros(0),)
    keys = np.array(list(st.keys()), dtype=np.int64)
    cnt = np.array(list(st.values()), dtype=float)
    return (keys[:, 0], keys[:, 1], keys[:, 2],
            keys[:, 3], keys[:, 4], keys[:, 5], keys[:, 6], cnt)


def _check_cap(word, cap):
    if len(word) > cap:
        raise CapExceeded(f"word of length {len(word)} exceeds cap {cap}")


def trace_combinatorial(word, params, cap: int = COMBINATORIAL_CAP) -> TraceValue:
    """Subset-expansion trace; cost 2^n, capped."""
    word = tuple(word)
    _check_cap(word, cap)
    params._need_alpha()
    n = len(word)
    if n == 0:
        return TraceValue(3.0 + 0j, "combinatorial")
    n1, n2, n3, u1, u2, u3, w, cnt = _compiled_stats(word)
    r1, r2, r3 = params.r
    total = 1.0 + np.sum(cnt * np.power(-2.0, n1 + n2 + n3)
                         * r1 ** u1 * r2 ** u2 * r3 ** u3
                         * np.exp(1j * params.alpha * w))
    return TraceValue(complex((-1.0) ** n * (2.0 + total)), "combinatorial")


def trace_mu_combinatorial(word, params, mus,
                           cap: int = COMBINATORIAL_CAP) -> TraceValue:
    """Subset-expansion trace for mu-reflection generators."""
    word = tuple(word)
    _check_cap(word, cap)
    params._need_alpha()
    if any(abs(abs(mu) - 1.0) > 1e-9 for mu in mus):
        raise ValueError("mu factors must be unit complex numbers")
    if len(word) == 0:
        return TraceValue(3.0 + 0j, "mu-combinatorial")
    n1, n2, n3, u1, u2, u3, w, cnt = _compiled_stats(word)
    r1, r2, r3 = params.r
    f1, f2, f3 = (complex(mu) - 1.0 for mu in mus)
    total = 1.0 + np.sum(cnt
                         * np.power(f1, n1) * np.power(f2, n2) * np.power(f3, n3)
                         * r1 ** u1 * r2 ** u2 * r3 ** u3
                         * np.exp(1j * params.alpha * w))
    return TraceValue(complex(2.0 + total), "mu-combinatorial")


def trace_mu_polynomial(word, params, mus, cap: int = COMBINATORIAL_CAP) -> dict:
    """Fourier coefficients q_w of the mu-expansion, as complex numbers."""
    word = tuple(word)
    _check_cap(word, cap)
    r1, r2, r3 = params.r
    f1, f2, f3 = (complex(mu) - 1.0 for mu in mus)
    q: dict = {0: 1.0 + 0j}
    for (m1, m2, m3, u1, u2, u3, w), cnt in subset_stats(word).items():
        q[w] = q.get(w, 0.0 + 0j) + cnt * f1 ** m1 * f2 ** m2 * f3 ** m3 \
            * r1 ** u1 * r2 ** u2 * r3 ** u3
    return q


def _monomial_sort_key(mono):
    return (-(mono[0] + mono[1] + mono[2]), tuple(-e for e in mono))


def poly_to_str(poly: dict) -> str:
    """Canonical text form of an integer polynomial in X1, X2, X3."""
    if not poly:
        return "0"
    parts = []
    for mono in sorted(poly, key=_monomial_sort_key):
        coeff = poly[mono]
        if coeff == 0:
            continue
        body = "*".join(
            f"X{i + 1}" + (f"^{e}" if e > 1 else "")
            for i, e in enumerate(mono) if e > 0)
        mag = abs(coeff)
        if body:
            term = body if mag == 1 else f"{mag}*{body}"
        else:
            term = str(mag)
        if not parts:
            parts.append(term if coeff > 0 else f"-{term}")
        else:
            parts.append(("+ " if coeff > 0 else "- ") + term)
    return " ".join(parts) if parts else "0"


def poly_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = (ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2])
            out[m] = out.get(m, 0) + ca * cb
    return {m: c for m, c in out.items() if c != 0}


def poly_sub(a: dict, b: dict) -> dict:
    out = dict(a)
    for m, c in b.items():
        out[m] = out.get(m, 0) - c
    return {m: c for m, c in out.items() if c != 0}


@dataclass(frozen=True)
class TracePolynomial:
    """Fourier data of a trace: tau = (-1)^n (2 + sum_w q_w e^{i alpha w}).

    numeric mode: ``coeffs[w]`` is the complex value of q_w with the radii
    substituted.  exact mode: ``coeffs[w]`` is an integer polynomial P_w in
    X_k = 4 r_k^2 (a dict monomial -> coefficient), with the implicit
    prefactor q_w = (8 r1 r2 r3)^{|w|} P_w.
    """

    word: tuple
    n: int
    mode: str
    coeffs: dict

    def support(self):
        return sorted(self.coeffs)

    def coefficient_value(self, w, params=None) -> complex:
        if self.mode == "numeric":
            return self.coeffs.get(w, 0.0 + 0j)
        poly = self.coeffs.get(w)
        if poly is None:
            return 0.0 + 0j
        r1, r2, r3 = params.r
        x1, x2, x3 = 4 * r1 * r1, 4 * r2 * r2, 4 * r3 * r3
        val = sum(c * x1 ** j1 * x2 ** j2 * x3 ** j3
                  for (j1, j2, j3), c in poly.items())
        return complex((8.0 * params.r_product) ** abs(w) * val)

    def evaluate(self, params) -> complex:
        """Reassemble tau at the given parameters."""
        params._need_alpha()
        total = 0.0 + 0j
        for w in self.coeffs:
            total += self.coefficient_value(w, params) \
                * cmath.exp(1j * params.alpha * w)
        return (-1.0) ** self.n * (2.0 + total)

    def ideal_sum(self) -> int:
        """Exact integer value of sum_w q_w at r1 = r2 = r3 = 1."""
        if self.mode != "exact":
            raise ValueError("ideal_sum needs exact mode")
        total = 0
        for w, poly in self.coeffs.items():
            pw = sum(c * 4 ** (j1 + j2 + j3) for (j1, j2, j3), c in poly.items())
            total += 8 ** abs(w) * pw
        return total

    def to_json_dict(self) -> dict:
        rows = []
        for w in self.support():
            if self.mode == "exact":
                rows.append({"w": w, "poly": poly_to_str(self.coeffs[w])})
            else:
                q = self.coeffs[w]
                rows.append({"w": w, "re": q.real, "im": q.imag})
        return {"n": self.n, "mode": self.mode, "coeffs": rows}


def trace_polynomial(word, params=None, mode: str = "exact",
                     cap: int | None = None) -> TracePolynomial:
    """Collect the subset expansion by winding number.

    Exact mode factors every subset contribution as
    (-1)^{|S|} 2^{|S| - sum_k u_k} (8 r1 r2 r3)^{|w|} prod_k X_k^{(u_k-|w|)/2},
    which is the reduction/straightening bookkeeping in closed form: each
    reduction of the subsequence divides the tracked monomial by 2 and each
    straightening by one X_k.  The exponents are checked to be nonnegative
    integers, which is the ring-membership statement for q_w.
    """
    word = tuple(word)
    if cap is None:
        cap = EXACT_CAP if mode == "exact" else COMBINATORIAL_CAP
    _check_cap(word, cap)
    n = len(word)
    if mode == "numeric":
        if params is None:
            raise ValueError("numeric mode needs parameters")
        r1, r2, r3 = params.r
        qn: dict = {0: 1.0 + 0j}
        for (m1, m2, m3, u1, u2, u3, w), cnt in subset_stats(word).items():
            qn[w] = qn.get(w, 0.0 + 0j) + cnt * (-2.0) ** (m1 + m2 + m3) \
                * r1 ** u1 * r2 ** u2 * r3 ** u3
        return TracePolynomial(word, n, "numeric", qn)
    if mode != "exact":
        raise ValueError(f"unknown mode {mode!r}")
    qe: dict = {0: {(0, 0, 0): 1}}
    for (m1, m2, m3, u1, u2, u3, w), cnt in subset_stats(word).items():
        size = m1 + m2 + m3
        aw = abs(w)
        two = size - (u1 + u2 + u3)
        if two < 0 or any(u < aw or (u - aw) % 2 for u in (u1, u2, u3)):
            raise ArithmeticError("subset monomial escapes the coefficient ring")
        mono = ((u1 - aw) // 2, (u2 - aw) // 2, (u3 - aw) // 2)
        poly = qe.setdefault(w, {})
        poly[mono] = poly.get(mono, 0) + (-1) ** size * 2 ** two * cnt
    qe = {w: {m: c for m, c in poly.items() if c != 0}
          for w, poly in qe.items()}
    qe = {w: poly for w, poly in qe.items() if poly}
    return TracePolynomial(word, n, "exact", qe)


def word_matrix(realization, word, matrices=None) -> np.ndarray:
    """Matrix of iota_a in the given realization."""
    mats = realization.iotas if matrices is None else matrices
    m = np.eye(3, dtype=complex)
    for a in word:
        m = m @ mats[a - 1]
    return m


def trace_oracle(word, realization) -> TraceValue:
    """Trace of the literal matrix product; no length cap."""
    return TraceValue(complex(np.trace(word_matrix(realization, word))), "oracle")


def trace_mu(word, realization, mus) -> TraceValue:
    """Matrix-product trace with mu-reflection generators.

    Note: each generator has determinant mu_k, so these are traces of the
    displayed representatives, not of SU(2,1)-normalised ones.
    """
    mats = realization.mu_iotas(mus)
    return TraceValue(complex(np.trace(word_matrix(realization, word, mats))),
                      "mu-oracle")


def _cancel_adjacent(word):
    """Delete adjacent equal pairs (iota_k^2 = id), cascading."""
    out = []
    for a in word:
        if out and out[-1] == a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def trace_recursive(word, params, memo: dict | None = None) -> TraceValue:
    """Deletion recursion, memoised on linear words.

    The input is cyclically canonicalised once (traces are invariant under
    rotation); below that the recursion works on linear words, cancelling
    adjacent equal letters as it goes.  A memo dict may be supplied to share
    work between words evaluated at the same parameters; never reuse it
    across parameter sets.
    """
    params._need_alpha()
    r = params.r
    if min(r) <= 0.0:
        raise ZeroRadiusUnsupported(
            "recursion undefined at r_k = 0; use the oracle or the expansion")
    r1, r2, r3 = r
    ei = cmath.exp(1j * params.alpha)
    if memo is None:
        memo = {}

    def tau(a):
        a = _cancel_adjacent(a)
        val = memo.get(a)
        if val is not None:
            return val
        n = len(a)
        if n == 0:
            val = 3.0 + 0j
        elif n == 1:
            val = -1.0 + 0j
        elif n == 2:
            rm = r[6 - a[0] - a[1] - 1]  # the letter completing {a0, a1}
            val = complex(4.0 * rm * rm - 1.0)
        else:
            t3 = a[-3:]
            beta = 2.0 * r1 ** v_count(1, t3) * r2 ** v_count(2, t3) \
                * r3 ** v_count(3, t3) * ei ** winding(t3) - 1.0
            head = a[:-3]
            val = -(tau(a[:-1]) + tau(head + a[-2:]) + tau(head + (a[-2],))) \
                + beta * (tau(a[:-2] + a[-1:]) + tau(a[:-2])
                          + tau(head + a[-1:]) + tau(head))
        memo[a] = val
        return val

    return TraceValue(tau(canonical(tuple(word))), "recursive")


# --- closed forms for the short words -------------------------------------

def tau_123_closed(params) -> complex:
    """8 r1 r2 r3 e^{i alpha} - (4 (r1^2 + r2^2 + r3^2) - 3)."""
    params._need_alpha()
    r1, r2, r3 = params.r
    return 8.0 * params.r_product * cmath.exp(1j * params.alpha) \
        - (4.0 * (r1 * r1 + r2 * r2 + r3 * r3) - 3.0)


def sigma_word(k: int):
    """The length-4 test word (k, k-1, k, k+1)."""
    return (k, wrap(k - 1), k, wrap(k + 1))


def sigma_closed(params, k: int) -> float:
    """Trace of sigma_word(k): (16 r_{k-1}^2 r_{k+1}^2 + 4 r_k^2 - 1)
    - 16 r1 r2 r3 cos(alpha); real for every alpha."""
    params._need_alpha()
    r = params.r
    rm = r[wrap(k - 1) - 1]
    rp = r[wrap(k + 1) - 1]
    rk = r[k - 1]
    return (16.0 * rm * rm * rp * rp + 4.0 * rk * rk - 1.0) \
        - 16.0 * params.r_product * params.cos_alpha


def tau_2321_closed(params) -> float:
    """Trace of (2, 3, 2, 1): (16 r1^2 r3^2 + 4 r2^2 - 1) - 16 r1 r2 r3 cos(alpha)."""
    return sigma_closed(params, 2)
