"""Backend-independent cochain descriptors and their exact evaluation.

A descriptor is a list of term words; a word is an ordered list of slots

    ('p', i)          the plain letter A_i
    ('d', i, ds)      the letter D_{j(ds)} A_i, ds a derivation slot index
    ('q', i, d1, d2)  the fused letter A_i * Q_{j(d1), j(d2)}

with a rational coefficient.  Argument labels i equal the slot position in
the word; derivation slot indices ds are a permutation target.  Evaluation
is the unnormalized double alternation: sum over argument permutations and
derivation permutations with parity signs, of the trace of the product.
Q index pairs are permuted but never independently antisymmetrized.

The evaluator shares partial products along a depth-first traversal of the
argument assignments, so the per-permutation cost is amortized to roughly
one algebra multiplication instead of one per slot.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .combinatorics import (
    EvenSequence,
    MarkedCircle,
    MarkedInterval,
    derivation_assignment,
    enumerate_a_even,
    enumerate_circles,
    enumerate_intervals,
    reduce_sequence,
    signed_permutations,
)


def plain(i: int):
    return ("p", i)


def deriv(i: int, ds: int):
    return ("d", i, ds)


def qfused(i: int, d1: int, d2: int):
    return ("q", i, d1, d2)


@dataclass(frozen=True)
class TermWord:
    coeff: Fraction
    slots: tuple
    outer_dslot: int | None = None  # wraps the whole product in D_{j(outer)}
    label: str = ""


@dataclass(frozen=True)
class CochainDescriptor:
    arity: int
    n: int
    words: tuple

    def evaluate(self, ctx, args):
        return evaluate(self, ctx, args)

    def drop_labels(self):
        return self


@dataclass(frozen=True)
class ExpandedWord:
    """A word over Arg/Gen letters from inner-derivation expansion."""

    coeff: Fraction
    letters: tuple  # ('a', i) or ('g', ds)


@dataclass(frozen=True)
class ExpandedCochain:
    arity: int
    n: int
    words: tuple  # of ExpandedWord

    def evaluate(self, ctx, args):
        return evaluate_expanded(self, ctx, args)


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------

def _slots_from_bits(bits):
    slots = []
    ds = 0
    for pos, b in enumerate(bits, start=1):
        if b == 1:
            ds += 1
            slots.append(deriv(pos, ds))
        else:
            slots.append(plain(pos))
    return tuple(slots)


def build_S(a: EvenSequence) -> CochainDescriptor:
    """Single word of arity n+2l: derivation slots where the bits are 1."""
    word = TermWord(
        coeff=Fraction(1),
        slots=_slots_from_bits(a.bits),
        label=f"S{''.join(map(str, a.bits))}",
    )
    return CochainDescriptor(arity=len(a.bits), n=a.n, words=(word,))


def build_S_even(n: int, l: int) -> CochainDescriptor:
    words = []
    for a in enumerate_a_even(n, l):
        words.extend(build_S(a).words)
    return CochainDescriptor(arity=n + 2 * l, n=n, words=tuple(words))


def build_S_tilde(a: EvenSequence) -> CochainDescriptor:
    """One wrapped word per derivation slot: the slot is demoted to plain
    and its derivation is applied outside the trace.  Symbolic use only."""
    base = _slots_from_bits(a.bits)
    words = []
    for pos, b in enumerate(a.bits, start=1):
        if b != 1:
            continue
        slot = base[pos - 1]
        outer = slot[2]
        demoted = base[: pos - 1] + (plain(pos),) + base[pos:]
        words.append(
            TermWord(
                coeff=Fraction(1),
                slots=demoted,
                outer_dslot=outer,
                label=f"Stilde{''.join(map(str, a.bits))}:j={pos}",
            )
        )
    return CochainDescriptor(arity=len(a.bits), n=a.n, words=tuple(words))


def build_R(a: EvenSequence) -> CochainDescriptor:
    """The shortened word of arity n+2l-1, from the reduced sequence."""
    r = reduce_sequence(a)
    word = TermWord(
        coeff=Fraction(1),
        slots=_slots_from_bits(r.tilde_bits),
        label=f"R{''.join(map(str, a.bits))}",
    )
    return CochainDescriptor(arity=len(r.tilde_bits), n=a.n, words=(word,))


def build_Psi0(n: int, l: int) -> CochainDescriptor:
    """Sum of the shortened words with signs (-1)^{s1}."""
    words = []
    for a in enumerate_a_even(n, l):
        r = reduce_sequence(a)
        sign = -1 if r.s1 % 2 else 1
        base = build_R(a).words[0]
        words.append(
            TermWord(coeff=Fraction(sign), slots=base.slots, label=base.label)
        )
    return CochainDescriptor(arity=n + 2 * l - 1, n=n, words=tuple(words))


def build_O_interval(t: MarkedInterval, n: int) -> CochainDescriptor:
    """One word of arity n+1: each mark fuses two adjacent derivation slots
    into a Q factor."""
    marks = set(t.marks)
    slots = []
    for i in range(1, n + 2):
        if i in marks:
            slots.append(qfused(i, i, i + 1))
        elif i - 1 in marks or i == n + 1:
            slots.append(plain(i))
        else:
            slots.append(deriv(i, i))
    word = TermWord(
        coeff=Fraction(1),
        slots=tuple(slots),
        label=f"O(interval marks={list(t.marks)})",
    )
    return CochainDescriptor(arity=n + 1, n=n, words=(word,))


def build_Sigma_interval(n: int, k: int) -> CochainDescriptor:
    words = []
    for t in enumerate_intervals(n, k):
        words.extend(build_O_interval(t, n).words)
    return CochainDescriptor(arity=n + 1, n=n, words=tuple(words))


def build_Psi_n1(n: int) -> CochainDescriptor:
    """Leading fully-derived word plus all interval corrections."""
    if n < 2:
        raise ValueError("n >= 2 required")
    lead = TermWord(
        coeff=Fraction(1),
        slots=tuple(deriv(i, i) for i in range(1, n + 1)) + (plain(n + 1),),
        label="lead",
    )
    words = [lead]
    for k in range(1, n // 2 + 1):
        words.extend(build_Sigma_interval(n, k).words)
    return CochainDescriptor(arity=n + 1, n=n, words=tuple(words))


def build_O_circle(c: MarkedCircle) -> CochainDescriptor:
    """Interval construction transplanted to the circle of the reduced
    sequence; a wrap-around mark pairs the last point's derivation with the
    first point's, in that order."""
    tilde = c.base.tilde_bits
    length = len(tilde)
    assign = derivation_assignment(tilde)
    marks = set(c.marks)
    n = c.base.source.n

    def succ(i):
        return i % length + 1

    def pred(i):
        return length if i == 1 else i - 1

    slots = []
    for i in range(1, length + 1):
        if i in marks:
            slots.append(qfused(i, assign[i], assign[succ(i)]))
        elif pred(i) in marks:
            slots.append(plain(i))
        elif tilde[i - 1] == 1:
            slots.append(deriv(i, assign[i]))
        else:
            slots.append(plain(i))
    word = TermWord(
        coeff=Fraction(1),
        slots=tuple(slots),
        label=f"O(circle {''.join(map(str, tilde))} marks={list(c.marks)})",
    )
    return CochainDescriptor(arity=length, n=n, words=(word,))


def build_Psi_nl(n: int, l: int) -> CochainDescriptor:
    """The lifted cocycle: shortened words plus all circle corrections,
    each correction with the sign of its source sequence."""
    words = list(build_Psi0(n, l).words)
    for a in enumerate_a_even(n, l):
        r = reduce_sequence(a)
        sign = Fraction(-1 if r.s1 % 2 else 1)
        for k in range(1, n // 2 + 1):
            for c in enumerate_circles(r, k):
                base = build_O_circle(c).words[0]
                words.append(
                    TermWord(coeff=sign, slots=base.slots, label=base.label)
                )
    return CochainDescriptor(arity=n + 2 * l - 1, n=n, words=tuple(words))


# ---------------------------------------------------------------------------
# inner-derivation expansion
# ---------------------------------------------------------------------------

def expand_inner(d: CochainDescriptor):
    """Replace every D A factor by D*A - A*D and remove parentheses.

    Each derivation slot doubles the word count; rejected on descriptors
    with Q-fused slots (the expansion is defined on the D-form only).
    """
    out = []
    for w in d.words:
        if w.outer_dslot is not None:
            raise ValueError("cannot inner-expand a wrapped word")
        expanded = [(w.coeff, ())]
        for slot in w.slots:
            kind = slot[0]
            if kind == "p":
                expanded = [(c, ls + (("a", slot[1]),)) for c, ls in expanded]
            elif kind == "d":
                _, i, ds = slot
                nxt = []
                for c, ls in expanded:
                    nxt.append((c, ls + (("g", ds), ("a", i))))
                    nxt.append((-c, ls + (("a", i), ("g", ds))))
                expanded = nxt
            else:
                raise ValueError("inner expansion undefined for Q-fused slots")
        out.extend(ExpandedWord(coeff=c, letters=ls) for c, ls in expanded)
    return ExpandedCochain(arity=d.arity, n=d.n, words=tuple(out))


def _has_cyclic_gen_adjacency(letters) -> bool:
    m = len(letters)
    if m < 2:
        return False
    return any(
        letters[i][0] == "g" and letters[(i + 1) % m][0] == "g" for i in range(m)
    )


def split_adjacency(ec: ExpandedCochain):
    """Partition by "no two generator letters cyclically adjacent".

    Cyclic, because the letters sit inside a trace.  Returns (tilde, r).
    """
    tilde, r = [], []
    for w in ec.words:
        (r if _has_cyclic_gen_adjacency(w.letters) else tilde).append(w)
    return (
        ExpandedCochain(arity=ec.arity, n=ec.n, words=tuple(tilde)),
        ExpandedCochain(arity=ec.arity, n=ec.n, words=tuple(r)),
    )


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

def _alt_sum(ops, ctx):
    """Sum over argument permutations of sign * trace(product).

    ops[pos] is the row of candidate factors for slot pos, indexed by the
    argument assigned there.  Prefix products are shared along the DFS.
    """
    m = len(ops)
    mul = ctx.mul
    trace = ctx.trace
    used = [False] * m
    total = [0]

    def rec(depth, prod, sign):
        if depth == m:
            total[0] += sign * trace(prod)
            return
        row = ops[depth]
        cnt = 0
        for a in range(m):
            if used[a]:
                continue
            nxt = row[a] if prod is None else mul(prod, row[a])
            used[a] = True
            rec(depth + 1, nxt, sign if cnt % 2 == 0 else -sign)
            used[a] = False
            cnt += 1

    rec(0, None, 1)
    return total[0]


def _check_ascending_args(slots):
    labels = [s[1] for s in slots]
    if labels != list(range(1, len(slots) + 1)):
        raise ValueError(f"argument labels must be 1..arity in order: {labels}")


def evaluate(d: CochainDescriptor, ctx, args):
    """Exact value of the double alternation of ``d`` at ``args``."""
    if len(args) != d.arity:
        raise ValueError(f"expected {d.arity} arguments, got {len(args)}")
    if ctx.n != d.n:
        raise ValueError(f"context has {ctx.n} derivations, descriptor needs {d.n}")
    nd = d.n
    arity = d.arity
    dcache = [[ctx.deriv(dd, a) for a in args] for dd in range(nd)]
    qrows: dict = {}
    total = 0
    for w in d.words:
        if w.outer_dslot is not None:
            raise ValueError("wrapped words are symbolic-only; expand first")
        _check_ascending_args(w.slots)
    for tau, stau in signed_permutations(nd):
        for w in d.words:
            ops = []
            nq = 0
            for slot in w.slots:
                kind = slot[0]
                if kind == "p":
                    ops.append(args)
                elif kind == "d":
                    ops.append(dcache[tau[slot[2] - 1]])
                else:
                    if not getattr(ctx, "has_q", False):
                        raise ValueError("descriptor needs Q but context has none")
                    nq += 1
                    d1 = tau[slot[2] - 1]
                    d2 = tau[slot[3] - 1]
                    row = qrows.get((d1, d2))
                    if row is None:
                        qm = ctx.q(d1, d2)
                        row = [ctx.mul(a, qm) for a in args]
                        qrows[(d1, d2)] = row
                    ops.append(row)
            # The label alternation must not antisymmetrize the two indices
            # inside one Q (each swap reproduces the same term via
            # Q_ji = -Q_ij), so the plain sum over-counts by 2 per Q slot.
            coeff = w.coeff * stau
            if nq:
                coeff = coeff / (1 << nq)
            total += coeff * _alt_sum(ops, ctx)
    return total


def evaluate_expanded(ec: ExpandedCochain, ctx, args):
    """Evaluate an inner-expanded cochain; Gen letters become the context's
    generator elements (permuted by the derivation alternation)."""
    if len(args) != ec.arity:
        raise ValueError(f"expected {ec.arity} arguments, got {len(args)}")
    nd = ec.n
    mul = ctx.mul
    trace = ctx.trace
    total = 0
    for tau, stau in signed_permutations(nd):
        gens = [ctx.generator(tau[ds]) for ds in range(nd)]
        for w in ec.words:
            argpos = [lt[1] for lt in w.letters if lt[0] == "a"]
            if argpos != list(range(1, ec.arity + 1)):
                raise ValueError("argument letters must appear in order")
            total += w.coeff * stau * _alt_expanded(w.letters, gens, ctx, args)
    return total


def _alt_expanded(letters, gens, ctx, args):
    m = len(args)
    mul = ctx.mul
    trace = ctx.trace
    used = [False] * m
    total = [0]

    def rec(pos, prod, sign):
        if pos == len(letters):
            total[0] += sign * trace(prod)
            return
        lt = letters[pos]
        if lt[0] == "g":
            g = gens[lt[1] - 1]
            rec(pos + 1, g if prod is None else mul(prod, g), sign)
            return
        cnt = 0
        for a in range(m):
            if used[a]:
                continue
            nxt = args[a] if prod is None else mul(prod, args[a])
            used[a] = True
            rec(pos + 1, nxt, sign if cnt % 2 == 0 else -sign)
            used[a] = False
            cnt += 1

    rec(0, None, 1)
    return total[0]


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def descriptor_to_dict(d: CochainDescriptor) -> dict:
    words = []
    for w in d.words:
        slots = []
        for s in w.slots:
            if s[0] == "p":
                slots.append({"kind": "plain", "arg": s[1]})
            elif s[0] == "d":
                slots.append({"kind": "deriv", "arg": s[1], "d": s[2]})
            else:
                slots.append({"kind": "qfused", "arg": s[1], "d": s[2], "d2": s[3]})
        entry = {
            "coeff": [w.coeff.numerator, w.coeff.denominator],
            "slots": slots,
        }
        if w.outer_dslot is not None:
            entry["outer_d"] = w.outer_dslot
        words.append(entry)
    return {
        "arity": d.arity,
        "n": d.n,
        "words": words,
        "meta": [w.label for w in d.words],
    }


def descriptor_from_dict(obj: dict) -> CochainDescriptor:
    meta = obj.get("meta") or [""] * len(obj["words"])
    words = []
    for w, label in zip(obj["words"], meta):
        slots = []
        for s in w["slots"]:
            if s["kind"] == "plain":
                slots.append(plain(s["arg"]))
            elif s["kind"] == "deriv":
                slots.append(deriv(s["arg"], s["d"]))
            elif s["kind"] == "qfused":
                slots.append(qfused(s["arg"], s["d"], s["d2"]))
            else:
                raise ValueError(f"unknown slot kind {s['kind']!r}")
        num, den = w["coeff"]
        words.append(
            TermWord(
                coeff=Fraction(num, den),
                slots=tuple(slots),
                outer_dslot=w.get("outer_d"),
                label=label,
            )
        )
    return CochainDescriptor(arity=obj["arity"], n=obj["n"], words=tuple(words))
