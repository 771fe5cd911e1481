"""Exact truncated symbol calculus for formal pseudodifferential operators
on the n-torus.

A symbol is a finite set of monomials x^a d^b (a, b integer exponent
vectors, d the derivative) with rational coefficients, normal ordered (all
d-powers to the right).  Truncation is tracked by an explicit validity
window: per-variable lower bounds on d-exponents below which coefficients
are not claimed, plus per-variable upper bounds valid for the whole
operator.  Every operation computes the window of its result so that each
reported coefficient is exact; a coefficient is exact or unavailable,
never approximate.

The trace is the noncommutative residue (coefficient of x^-1 d^-1 in every
variable); the outer derivations are the adjoint actions of ln x_i and
ln d_i, realized as exact series truncated to the window.
"""

from __future__ import annotations

import itertools
import math
import re
import time
from dataclasses import dataclass
from fractions import Fraction

from .combinatorics import signed_permutations


class InsufficientWindowError(Exception):
    """A requested coefficient lies outside the guaranteed-exact window."""


def _falling(c: int, k: int) -> int:
    out = 1
    for t in range(k):
        out *= c - t
    return out


def _gbinom(b: int, k: int) -> Fraction:
    return Fraction(_falling(b, k), math.factorial(k))


@dataclass(frozen=True)
class PsiDOSymbol:
    nvars: int
    terms: tuple  # sorted tuple of ((xexp, dexp), Fraction)
    dmin: tuple   # exactness lower bounds on d-exponents, per variable
    dtop: tuple   # global upper bounds on d-exponents, per variable

    @staticmethod
    def make(nvars, terms, dmin, dtop=None):
        """Normalize: drop zero coefficients and terms below the window."""
        kept = {}
        for (x, d), c in (terms.items() if isinstance(terms, dict) else terms):
            if c == 0:
                continue
            if any(d[i] < dmin[i] for i in range(nvars)):
                continue
            key = (tuple(x), tuple(d))
            c2 = kept.get(key, 0) + c
            if c2 == 0:
                kept.pop(key, None)
            else:
                kept[key] = c2
        if dtop is None:
            if kept:
                dtop = tuple(
                    max(d[i] for (_, d) in kept) for i in range(nvars)
                )
            else:
                dtop = tuple(dmin)
        return PsiDOSymbol(
            nvars=nvars,
            terms=tuple(sorted(kept.items())),
            dmin=tuple(dmin),
            dtop=tuple(dtop),
        )

    def coeff(self, xexp, dexp) -> Fraction:
        if any(dexp[i] < self.dmin[i] for i in range(self.nvars)):
            raise InsufficientWindowError(
                f"d-exponent {dexp} below window {self.dmin}"
            )
        key = (tuple(xexp), tuple(dexp))
        for k, c in self.terms:
            if k == key:
                return c
        return Fraction(0)

    def is_zero_on_window(self) -> bool:
        return not self.terms


def laurent_symbol(nvars: int, entries, depth: int) -> PsiDOSymbol:
    """Fully known finite symbol: entries {(xexp, dexp): coeff}; the window
    is set to the working depth (coefficients below it are discarded and no
    longer claimed)."""
    dmin = tuple(-depth for _ in range(nvars))
    return PsiDOSymbol.make(nvars, dict(entries), dmin)


def monomial(nvars: int, xexp, dexp, coeff=1, depth: int = 16) -> PsiDOSymbol:
    return laurent_symbol(nvars, {(tuple(xexp), tuple(dexp)): Fraction(coeff)}, depth)


def zero_symbol(nvars: int, depth: int = 16) -> PsiDOSymbol:
    return laurent_symbol(nvars, {}, depth)


# ---------------------------------------------------------------------------
# ring operations
# ---------------------------------------------------------------------------

def sym_add(a: PsiDOSymbol, b: PsiDOSymbol) -> PsiDOSymbol:
    _check_compat(a, b)
    dmin = tuple(max(x, y) for x, y in zip(a.dmin, b.dmin))
    dtop = tuple(max(x, y) for x, y in zip(a.dtop, b.dtop))
    terms = dict(a.terms)
    for k, c in b.terms:
        t = terms.get(k, 0) + c
        if t == 0:
            terms.pop(k, None)
        else:
            terms[k] = t
    return PsiDOSymbol.make(a.nvars, terms, dmin, dtop)


def sym_scale(c, a: PsiDOSymbol) -> PsiDOSymbol:
    return PsiDOSymbol.make(
        a.nvars, {k: c * v for k, v in a.terms}, a.dmin, a.dtop
    )


def sym_sub(a: PsiDOSymbol, b: PsiDOSymbol) -> PsiDOSymbol:
    return sym_add(a, sym_scale(-1, b))


def _check_compat(a, b):
    if a.nvars != b.nvars:
        raise ValueError("variable count mismatch")


def compose(a: PsiDOSymbol, b: PsiDOSymbol) -> PsiDOSymbol:
    """Normal-ordered operator product.

    Per variable, d^b x^c = sum_k C(b,k) c^(k) x^{c-k} d^{b-k}; the k-sum
    is truncated exactly at the result window, which shrinks by the top
    order of the other operand on each side.
    """
    _check_compat(a, b)
    nv = a.nvars
    dmin = tuple(
        max(a.dmin[i] + b.dtop[i], b.dmin[i] + a.dtop[i]) for i in range(nv)
    )
    dtop = tuple(a.dtop[i] + b.dtop[i] for i in range(nv))
    out: dict = {}
    for (ax, ad), ca in a.terms:
        for (bx, bd), cb in b.terms:
            per_var = []
            dead = False
            for i in range(nv):
                kmax = ad[i] + bd[i] - dmin[i]
                if kmax < 0:
                    dead = True
                    break
                opts = []
                for k in range(kmax + 1):
                    coef = _gbinom(ad[i], k) * _falling(bx[i], k)
                    if coef != 0:
                        opts.append((k, coef))
                if not opts:
                    dead = True
                    break
                per_var.append(opts)
            if dead:
                continue
            base = ca * cb
            for combo in itertools.product(*per_var):
                ks = tuple(k for k, _ in combo)
                coef = base
                for _, c in combo:
                    coef *= c
                key = (
                    tuple(ax[i] + bx[i] - ks[i] for i in range(nv)),
                    tuple(ad[i] + bd[i] - ks[i] for i in range(nv)),
                )
                t = out.get(key, 0) + coef
                if t == 0:
                    out.pop(key, None)
                else:
                    out[key] = t
    return PsiDOSymbol.make(nv, out, dmin, dtop)


def residue_trace(a: PsiDOSymbol) -> Fraction:
    """Coefficient of x^-1 d^-1 in every variable; exact, else a fault."""
    mono = tuple(-1 for _ in range(a.nvars))
    return a.coeff(mono, mono)


# ---------------------------------------------------------------------------
# log derivations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LogDerivationTag:
    kind: str  # "ln_x" or "ln_partial"
    var: int   # 0-based variable index


def _series_coeff(k: int) -> Fraction:
    # c_k of the adjoint-log series; both derivations share it.
    return Fraction((-1) ** (k - 1), k)


def apply_log_derivation(tag: LogDerivationTag, a: PsiDOSymbol) -> PsiDOSymbol:
    """Adjoint action of ln x_v or ln d_v, exact on the (deepened) window.

    Both actions shift (xexp, dexp) by (-k, -k) in the tagged variable; the
    window gains one unit of depth since every contribution has k >= 1.
    """
    v = tag.var
    nv = a.nvars
    dmin = tuple(m - (1 if i == v else 0) for i, m in enumerate(a.dmin))
    dtop = tuple(t - (1 if i == v else 0) for i, t in enumerate(a.dtop))
    out: dict = {}
    for (x, d), c in a.terms:
        kmax = d[v] - dmin[v]
        for k in range(1, kmax + 1):
            if tag.kind == "ln_partial":
                coef = _series_coeff(k) * _falling(x[v], k)
            elif tag.kind == "ln_x":
                coef = -_series_coeff(k) * _falling(d[v], k)
            else:
                raise ValueError(f"unknown derivation kind {tag.kind!r}")
            if coef == 0:
                continue
            key = (
                tuple(x[i] - (k if i == v else 0) for i in range(nv)),
                tuple(d[i] - (k if i == v else 0) for i in range(nv)),
            )
            t = out.get(key, 0) + c * coef
            if t == 0:
                out.pop(key, None)
            else:
                out[key] = t
    return PsiDOSymbol.make(nv, out, dmin, dtop)


def bracket_series_symbol(nvars: int, var: int, cutoff: int, depth: int) -> PsiDOSymbol:
    """Truncation of the commutator series: sum_m ((m-1)!/m) x^-m d^-m in
    the given variable, exact down to exponent -cutoff."""
    terms = {}
    for m in range(1, cutoff + 1):
        x = tuple(-m if i == var else 0 for i in range(nvars))
        terms[(x, x)] = Fraction(math.factorial(m - 1), m)
    dmin = tuple(-cutoff if i == var else -depth for i in range(nvars))
    dtop = tuple(-1 if i == var else 0 for i in range(nvars))
    return PsiDOSymbol.make(nvars, terms, dmin, dtop)


# ---------------------------------------------------------------------------
# context
# ---------------------------------------------------------------------------

class PsiDOContext:
    """Traced-algebra context over symbols with the 2n log derivations.

    Derivations are ordered (ln x_1 .. ln x_n, ln d_1 .. ln d_n); Q is the
    truncated commutator series between ln d_i and ln x_i (zero between
    disjoint variables and between two derivations of the same kind).
    """

    backend = "psido"

    def __init__(self, nvars: int, depth: int = 16, q_cutoff: int | None = None):
        self.nvars = nvars
        self.n = 2 * nvars
        self.depth = depth
        self.q_cutoff = q_cutoff if q_cutoff is not None else depth
        self.has_q = True
        self._zero = zero_symbol(nvars, depth)
        self._tags = [LogDerivationTag("ln_x", v) for v in range(nvars)] + [
            LogDerivationTag("ln_partial", v) for v in range(nvars)
        ]

    def mul(self, a, b):
        return compose(a, b)

    def add(self, a, b):
        return sym_add(a, b)

    def sub(self, a, b):
        return sym_sub(a, b)

    def scale(self, c, a):
        return sym_scale(c, a)

    def bracket(self, a, b):
        return sym_sub(compose(a, b), compose(b, a))

    def trace(self, a):
        return residue_trace(a)

    def zero(self):
        return self._zero

    def elem_is_zero(self, a) -> bool:
        return a.is_zero_on_window()

    def deriv(self, d: int, a):
        return apply_log_derivation(self._tags[d], a)

    def q(self, i: int, j: int):
        nv = self.nvars
        if i == j:
            return self._zero
        lo, hi, sign = (i, j, 1) if i < j else (j, i, -1)
        # nonzero only for the (ln x_v, ln d_v) pair of one variable
        if lo < nv <= hi and hi - nv == lo:
            t = bracket_series_symbol(nv, lo, self.q_cutoff, self.depth)
            return sym_scale(-sign, t)
        return self._zero

    def sample(self, rng):
        """Random finite symbol: few monomials with small exponents and
        integer coefficients in [-3, 3]."""
        nv = self.nvars
        terms = {}
        for _ in range(rng.randint(2, 3)):
            x = tuple(rng.randint(-1, 2) for _ in range(nv))
            d = tuple(rng.randint(-1, 1) for _ in range(nv))
            c = rng.randint(-3, 3)
            if c:
                terms[(x, d)] = terms.get((x, d), 0) + Fraction(c)
        return laurent_symbol(nv, terms, self.depth)


def make_psido_context(nvars: int, depth: int = 16, q_cutoff: int | None = None) -> PsiDOContext:
    return PsiDOContext(nvars, depth, q_cutoff)


# ---------------------------------------------------------------------------
# series verification
# ---------------------------------------------------------------------------

def bracket_series_check(cutoff: int, depth: int | None = None, trials: int = 5,
                         seed: int = 0):
    """Verify exactly (within windows) that the commutator of the two log
    derivations is the adjoint of the truncated series, on random symbols.

    Returns a VerificationReport; the series coefficients up to the cutoff
    are recorded in the report parameters.
    """
    from .cohomology import VerificationReport, _residual_entry, _trial_rng

    if cutoff < 1:
        raise ValueError("cutoff >= 1 required")
    if depth is None:
        depth = cutoff + 8
    t0 = time.perf_counter()
    ctx = make_psido_context(1, depth=depth, q_cutoff=cutoff)
    tee = bracket_series_symbol(1, 0, cutoff, depth)
    report = VerificationReport(
        check="bracket_series",
        params={
            "cutoff": cutoff,
            "depth": depth,
            "trials": trials,
            "seed": seed,
            "coefficients": [
                [Fraction(math.factorial(m - 1), m).numerator,
                 Fraction(math.factorial(m - 1), m).denominator]
                for m in range(1, cutoff + 1)
            ],
        },
    )
    lnx = LogDerivationTag("ln_x", 0)
    lnp = LogDerivationTag("ln_partial", 0)
    for t in range(trials):
        rng = _trial_rng(seed, t)
        a = ctx.sample(rng)
        lhs = sym_sub(
            apply_log_derivation(lnp, apply_log_derivation(lnx, a)),
            apply_log_derivation(lnx, apply_log_derivation(lnp, a)),
        )
        rhs = sym_sub(compose(tee, a), compose(a, tee))
        diff = sym_sub(lhs, rhs)
        if any(m > -1 for m in diff.dmin):
            raise InsufficientWindowError(
                f"window {diff.dmin} too shallow for cutoff {cutoff}"
            )
        residual = Fraction(0)
        if not diff.is_zero_on_window():
            residual = diff.terms[0][1]
        report.trials.append(_residual_entry(t, residual))
    report.ms = int((time.perf_counter() - t0) * 1000)
    return report.finalize()


# ---------------------------------------------------------------------------
# text form
# ---------------------------------------------------------------------------

_SINGLE_RE = re.compile(r"x\^(-?\d+)\s+d\^(-?\d+)")
_MULTI_RE = re.compile(r"([xd])(\d+)\^(-?\d+)")


def format_symbol(a: PsiDOSymbol) -> str:
    """Compact text form; single-variable symbols use x^i d^j, indexed
    variables otherwise.  Deterministic term order."""
    if not a.terms:
        return "0"
    parts = []
    for (x, d), c in sorted(a.terms, key=lambda t: (t[0][1], t[0][0]), reverse=True):
        cs = str(c)
        if a.nvars == 1:
            parts.append(f"{cs} x^{x[0]} d^{d[0]}")
        else:
            body = " ".join(
                f"x{i + 1}^{x[i]} d{i + 1}^{d[i]}" for i in range(a.nvars)
            )
            parts.append(f"{cs} {body}")
    return " + ".join(parts)


def parse_symbol(text: str, nvars: int = 1, depth: int = 16) -> PsiDOSymbol:
    text = text.strip()
    if text == "0":
        return zero_symbol(nvars, depth)
    terms: dict = {}
    for chunk in text.split("+"):
        chunk = chunk.strip()
        if not chunk:
            continue
        coeff_str = chunk.split()[0]
        coeff = Fraction(coeff_str)
        rest = chunk[len(coeff_str):]
        if nvars == 1:
            m = _SINGLE_RE.search(rest)
            if not m:
                raise ValueError(f"cannot parse term {chunk!r}")
            key = ((int(m.group(1)),), (int(m.group(2)),))
        else:
            x = [0] * nvars
            d = [0] * nvars
            for kind, idx, exp in _MULTI_RE.findall(rest):
                i = int(idx) - 1
                if i < 0 or i >= nvars:
                    raise ValueError(f"variable index out of range in {chunk!r}")
                (x if kind == "x" else d)[i] = int(exp)
            key = (tuple(x), tuple(d))
        terms[key] = terms.get(key, 0) + coeff
    return laurent_symbol(nvars, terms, depth)
