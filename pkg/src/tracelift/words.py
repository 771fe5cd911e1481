"""Free trace algebra: formal words up to cyclic rotation.

Atoms (the letters of a word) are plain tuples tagged by kind:

    ('a', i)        the argument letter A_i
    ('f', d, i)     the first-order letter D_d A_i
    ('s', d, e, i)  the second-order letter D_d D_e A_i, pair {d, e} unordered
                    (encodes commuting derivations)
    ('q', d, e)     the letter Q_{d,e}, canonicalized to d < e
    ('g', d)        the standalone generator letter D_d (inner expansion)

The trace property Tr(ab) = Tr(ba) is encoded structurally: a word inside
a trace is identified with all its rotations, and ``canonicalize_cyclic``
picks the lexicographically minimal rotation under a fixed total order on
atoms (kind rank 'a' < 'f' < 's' < 'q' < 'g', then indices).
"""

from __future__ import annotations

from fractions import Fraction

_KIND_RANK = {"a": 0, "f": 1, "s": 2, "q": 3, "g": 4}


def arg(i: int):
    return ("a", i)


def first_order(d: int, i: int):
    return ("f", d, i)


def second_order(d: int, e: int, i: int):
    if d > e:
        d, e = e, d
    return ("s", d, e, i)


def qatom(d: int, e: int):
    """Canonical Q letter and the sign flip; Q_{d,d} = 0 gives (None, 0)."""
    if d == e:
        return None, 0
    if d < e:
        return ("q", d, e), 1
    return ("q", e, d), -1


def gen(d: int):
    return ("g", d)


def atom_key(atom):
    return (_KIND_RANK[atom[0]],) + atom[1:]


def word_key(word):
    return tuple(atom_key(a) for a in word)


def canonicalize_cyclic(word):
    """Lexicographically minimal rotation of ``word`` (a tuple of atoms).

    Idempotent and invariant under rotation; the empty word maps to itself.
    """
    word = tuple(word)
    n = len(word)
    if n <= 1:
        return word
    best = word
    best_key = word_key(word)
    for r in range(1, n):
        rot = word[r:] + word[:r]
        k = word_key(rot)
        if k < best_key:
            best, best_key = rot, k
    return best


def free_trace_combine(pairs):
    """Accumulate (word, coefficient) pairs into a CyclicWord -> Rational map.

    Identical cyclic words have their coefficients summed; exact zeros are
    dropped, so an identically-zero trace expression yields the empty map.
    """
    acc: dict = {}
    for word, coeff in pairs:
        cw = canonicalize_cyclic(word)
        c = acc.get(cw, 0) + coeff
        if c == 0:
            acc.pop(cw, None)
        else:
            acc[cw] = c
    return acc


def combine_maps(maps_with_coeffs):
    """Linear combination of CyclicWord maps: [(map, coeff), ...]."""
    acc: dict = {}
    for m, c in maps_with_coeffs:
        if c == 0:
            continue
        for cw, v in m.items():
            t = acc.get(cw, 0) + c * v
            if t == 0:
                acc.pop(cw, None)
            else:
                acc[cw] = t
    return acc


def scale_map(m, c):
    if c == 0:
        return {}
    return {k: c * v for k, v in m.items()}
