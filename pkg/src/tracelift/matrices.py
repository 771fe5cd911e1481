"""Exact matrix arithmetic over Python rationals.

Matrices are immutable tuples of row tuples.  Entries are plain ints or
``fractions.Fraction``; arithmetic dispatches to exact big-integer or
rational operations automatically, so integer matrices stay on the fast
integer path.
"""

from __future__ import annotations

from fractions import Fraction


def zero(n: int):
    return tuple(tuple(0 for _ in range(n)) for _ in range(n))


def identity(n: int):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_add(a, b):
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a, b):
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_neg(a):
    return tuple(tuple(-x for x in row) for row in a)


def mat_scale(c, a):
    return tuple(tuple(c * x for x in row) for row in a)


def mat_mul(a, b):
    n = len(a)
    m = len(b[0])
    k = len(b)
    rk = range(k)
    return tuple(
        tuple(sum(ra[t] * b[t][j] for t in rk) for j in range(m)) for ra in a
    )


def mat_comm(a, b):
    """Commutator a*b - b*a."""
    return mat_sub(mat_mul(a, b), mat_mul(b, a))


def mat_trace(a):
    return sum(a[i][i] for i in range(len(a)))


def is_zero(a) -> bool:
    return all(x == 0 for row in a for x in row)


def from_pairs(rows):
    """Build a matrix from [num, den] entry pairs (JSON wire form)."""
    out = []
    for row in rows:
        r = []
        for num, den in row:
            f = Fraction(num, den)
            r.append(int(f) if f.denominator == 1 else f)
        out.append(tuple(r))
    return tuple(out)


def to_pairs(a):
    out = []
    for row in a:
        r = []
        for x in row:
            f = Fraction(x)
            r.append([f.numerator, f.denominator])
        out.append(r)
    return out


def random_matrix(rng, n: int, lo: int = -3, hi: int = 3):
    """Random integer matrix, entries uniform in [lo, hi]."""
    return tuple(tuple(rng.randint(lo, hi) for _ in range(n)) for _ in range(n))


def random_diagonal(rng, n: int, lo: int = -3, hi: int = 3):
    return tuple(
        tuple(rng.randint(lo, hi) if i == j else 0 for j in range(n))
        for i in range(n)
    )
