"""Traced-algebra-with-derivations evaluation contexts.

A context bundles an associative algebra with trace, n derivations and the
antisymmetric Q family measuring their failure to commute.  The matrix
backend uses inner derivations ad(G_i) on N x N rational matrices, where
everything holds identically (Q_ij = [G_i, G_j], condition (ii) is the
Jacobi identity).  Contexts and elements are immutable values; all
operations are pure.
"""

from __future__ import annotations

import json

from . import matrices as mat


class MatrixContext:
    """N x N rational matrices with inner derivations D_i = ad(G_i).

    Q is stored only for i < j; accesses with i > j negate, so
    Q_ji = -Q_ij holds by construction.  Derivation and Q indices are
    0-based at this level.
    """

    backend = "matrix"

    def __init__(self, generators):
        generators = tuple(tuple(tuple(row) for row in g) for g in generators)
        if not generators:
            raise ValueError("at least one generator required")
        N = len(generators[0])
        for idx, g in enumerate(generators):
            if len(g) != N or any(len(row) != N for row in g):
                raise ValueError(f"generator {idx} is not {N}x{N}")
        self.N = N
        self.n = len(generators)
        self.generators = generators
        self._q = {}
        for i in range(self.n):
            for j in range(i + 1, self.n):
                self._q[(i, j)] = mat.mat_comm(generators[i], generators[j])
        self.has_q = True
        self._zero = mat.zero(N)

    # -- algebra operations -------------------------------------------------
    def mul(self, a, b):
        return mat.mat_mul(a, b)

    def add(self, a, b):
        return mat.mat_add(a, b)

    def sub(self, a, b):
        return mat.mat_sub(a, b)

    def scale(self, c, a):
        return mat.mat_scale(c, a)

    def bracket(self, a, b):
        return mat.mat_comm(a, b)

    def trace(self, a):
        return mat.mat_trace(a)

    def zero(self):
        return self._zero

    def elem_is_zero(self, a) -> bool:
        return mat.is_zero(a)

    # -- derivations and Q --------------------------------------------------
    def deriv(self, d: int, a):
        return mat.mat_comm(self.generators[d], a)

    def generator(self, d: int):
        return self.generators[d]

    def q(self, i: int, j: int):
        if i == j:
            return self._zero
        if i < j:
            return self._q[(i, j)]
        return mat.mat_neg(self._q[(j, i)])

    def is_commuting(self) -> bool:
        return all(mat.is_zero(q) for q in self._q.values())

    # -- sampling -----------------------------------------------------------
    def sample(self, rng):
        """Random element; integer entries uniform in [-3, 3]."""
        return mat.random_matrix(rng, self.N)


def make_matrix_context(generators) -> MatrixContext:
    """Context with inner derivations from the given N x N generators."""
    return MatrixContext(generators)


def matrix_context_from_json(obj) -> MatrixContext:
    """Load generators from {"n": int, "N": int, "generators": [[[num,den]..]..]}."""
    if isinstance(obj, (str, bytes)):
        obj = json.loads(obj)
    gens = [mat.from_pairs(g) for g in obj["generators"]]
    ctx = MatrixContext(gens)
    if "n" in obj and obj["n"] != ctx.n:
        raise ValueError(f"declared n={obj['n']} but {ctx.n} generators given")
    if "N" in obj and obj["N"] != ctx.N:
        raise ValueError(f"declared N={obj['N']} but generators are {ctx.N}x{ctx.N}")
    return ctx


def matrix_context_to_json(ctx: MatrixContext) -> dict:
    return {
        "n": ctx.n,
        "N": ctx.N,
        "generators": [mat.to_pairs(g) for g in ctx.generators],
    }


def random_matrix_context(rng, n: int, N: int, commuting: bool = False) -> MatrixContext:
    """Random generators; diagonal (hence commuting) when requested."""
    if commuting:
        gens = [mat.random_diagonal(rng, N) for _ in range(n)]
    else:
        gens = [mat.random_matrix(rng, N) for _ in range(n)]
    return MatrixContext(gens)
