"""Closed-form weight distributions and period reductions for cartesian
tower codes.

When the graph for (k, p^m) is the b-th cartesian power of the graph for
(u, p^a), the weight distribution of the big code is the b-fold
multinomial composition of the small one: every exponent tuple
(l_1, ..., l_s) with sum b contributes weight l_1 w_1 + ... + l_s w_s
with frequency multinomial(b; l) * m_1^{l_1} ... m_s^{l_s}.  The towers
below instantiate this with one-weight (simplex), two-weight
(semiprimitive), three-weight (cubic) and four-weight (quartic) bases,
whose closed-form base weights involve the diophantine representations

    4 p^t = a^2 + 27 b^2   (cubic,  a = 1 mod 3, gcd(a, p) = 1)
    p^{2t} = a^2 + 4 b^2   (quartic, a = 1 mod 4, gcd(a, p) = 1).

All weights are computed in exact rationals and asserted integral; all
frequencies are exact big integers.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd, isqrt

import numpy as np

from .codes import WeightDistribution
from .errors import (
    DivisibilityFailed,
    EmptyBase,
    GPCodeError,
    HypothesesFailed,
    NoSolution,
    NotPrimitiveDivisor,
    NotSemiprimitive,
    PreconditionFailed,
)
from .field import is_prime, is_primitive_divisor, psi
from .graph import is_semiprimitive_pair
from .periods import GaussPeriodSet


@dataclass(frozen=True)
class CompositionTerm:
    exponents: tuple  # (l_1, ..., l_s), sum = b
    value: int  # composed weight (or eigenvalue)
    frequency: int  # multinomial(b; l) * prod m_i^{l_i}


@dataclass(frozen=True)
class DiophantineSolution:
    a: int
    b: int  # >= 0 by convention; the merged tables do not depend on the sign
    kind: str  # "cubic" or "quartic"

    def as_dict(self) -> dict:
        return {"a": self.a, "b": self.b, "kind": self.kind}


def _tuples_summing_to(s: int, b: int):
    # lexicographic, first slot varies slowest
    if s == 1:
        yield (b,)
        return
    for head in range(b, -1, -1):
        for rest in _tuples_summing_to(s - 1, b - head):
            yield (head,) + rest


def _multinomial(exponents) -> int:
    out, rem = 1, sum(exponents)
    for e in exponents:
        out *= comb(rem, e)
        rem -= e
    return out


def _compose_slots(slots, b):
    """All composition terms over (value, multiplicity) slots."""
    terms = []
    for exps in _tuples_summing_to(len(slots), b):
        freq = _multinomial(exps)
        val = 0
        for l, (v, mult) in zip(exps, slots):
            val += l * v
            freq *= mult**l
        terms.append(CompositionTerm(exponents=exps, value=val, frequency=freq))
    return terms


def compose(base: WeightDistribution, b: int) -> WeightDistribution:
    """b-fold multinomial composition of a weight distribution.

    Slots are the distinct base weights in ascending order (weight 0 with
    frequency 1 participates as an ordinary slot).  The result has length
    b * base.length and total frequency base.total() ** b.
    """
    if not base.table:
        raise EmptyBase("cannot compose an empty distribution")
    if b < 1:
        raise ValueError(f"factor count must be >= 1, got {b}")
    terms = _compose_slots(base.sorted_items(), b)
    return _merge_terms(terms, b * base.length, base.p, source="composed")


def _merge_terms(terms, length, p, source):
    table = {}
    for t in terms:
        table[t.value] = table.get(t.value, 0) + t.frequency
    return WeightDistribution(length=length, p=p, table=table, source=source,
                              indexed=terms)


# ----------------------------------------------------------------------
# one-weight towers (simplex base)

def simplex_distribution(p: int, a: int) -> WeightDistribution:
    """The one-weight code for k = 1 over GF(p^a): weight (p-1)p^{a-1}."""
    w = (p - 1) * p ** (a - 1)
    return WeightDistribution(
        length=p**a - 1, p=p, table={0: 1, w: p**a - 1}, source="closed_form"
    )


def one_weight_tower(p: int, a: int, b: int) -> WeightDistribution:
    """Tower over the simplex code: weights 0, w, ..., bw with
    A_{lw} = binom(b, l) (p^a - 1)^l, where w = (p-1)p^{a-1}.

    Applicable iff b | psi(p^a, b); then the tower exponent is
    k = psi(p^a, b)/b and the length is b(p^a - 1).
    """
    if b <= 1:
        raise PreconditionFailed(f"factor count b must be > 1, got {b}")
    val = psi(p**a, b)
    if val % b != 0:
        raise DivisibilityFailed(b, val)
    out = compose(simplex_distribution(p, a), b)
    out.source = "closed_form"
    w = (p - 1) * p ** (a - 1)
    expected = {l * w: comb(b, l) * (p**a - 1) ** l for l in range(b + 1)}
    if out.table != expected:
        raise AssertionError("one-weight tower disagrees with its binomial form")
    return out


def one_weight_sufficient_cases(p: int, a: int, b: int) -> list:
    """Which of the classical sufficient conditions for b | psi(p^a, b)
    pattern-match (diagnostics only; the divisibility test is the truth)."""
    x = p**a
    found = []
    fact = _factorize_small(b)
    primes = sorted(fact)
    squarefree = all(e == 1 for e in fact.values())
    if len(primes) == 1 and squarefree and b != p and x % b == 1:
        found.append("a")
    if len(primes) == 2 and squarefree and 2 in fact:
        r = max(primes)
        if r != 2 and gcd(x, b) == 1 and x % r in (1, r - 1):
            found.append("b")
    if len(primes) == 2 and squarefree and 2 not in fact:
        r, rp = primes
        if (rp - 1) % r != 0 and x % b == 1:
            found.append("c")
    if squarefree and all(r != p for r in primes) and x % primes[0] == 1:
        if all(pow(x, b // r, r) == 1 for r in primes[1:]):
            found.append("d")
    if len(primes) == 1:
        r = primes[0]
        t = fact[r]
        if x % r != 0:
            from .field import multiplicative_order

            o = multiplicative_order(x % b if b > 1 else 1, b)
            h = 0
            while r**h < o:
                h += 1
            if r**h == o and h < t:
                found.append("e")
    return found


def _factorize_small(n):
    out, d = {}, 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


# ----------------------------------------------------------------------
# semiprimitive towers (two-weight base)

def _semiprimitive_weights(p, a, u, sigma):
    half = a // 2
    scale = Fraction((p - 1) * p ** (half - 1), u)
    w1 = scale * (p**half - sigma * (u - 1))
    w2 = scale * (p**half + sigma)
    if w1.denominator != 1 or w2.denominator != 1:
        raise AssertionError(f"semiprimitive weights not integral for {(p, a, u)}")
    return int(w1), int(w2)


def semiprimitive_base(p: int, a: int, u: int) -> WeightDistribution:
    """The two-weight code for a semiprimitive pair (u, p^a):
    w1 (frequency c) and w2 (frequency c(u-1)), c = (p^a - 1)/u."""
    ok, _, sigma = is_semiprimitive_pair(p, a, u)
    if not ok:
        raise NotSemiprimitive(f"({u}, {p}^{a}) is not a semiprimitive pair")
    c = (p**a - 1) // u
    w1, w2 = _semiprimitive_weights(p, a, u, sigma)
    table = {0: 1}
    table[w1] = table.get(w1, 0) + c
    table[w2] = table.get(w2, 0) + c * (u - 1)
    return WeightDistribution(length=c, p=p, table=table, source="closed_form")


def semiprimitive_tower(p: int, a: int, u: int, b: int) -> WeightDistribution:
    """Tower over a semiprimitive base: weights l1*w1 + l2*w2 with
    frequencies multinomial(b; l0, l1, l2) c^{l1+l2} (u-1)^{l2}."""
    base = semiprimitive_base(p, a, u)
    c = (p**a - 1) // u
    n = b * c
    if not is_primitive_divisor(n, p, a * b):
        raise NotPrimitiveDivisor(n, p, a * b)
    _, _, sigma = is_semiprimitive_pair(p, a, u)
    w1, w2 = _semiprimitive_weights(p, a, u, sigma)
    slots = [(0, 1), (w1, c), (w2, c * (u - 1))]
    terms = _compose_slots(slots, b)
    out = _merge_terms(terms, b * base.length, p, source="closed_form")
    if out.total() != p ** (a * b):
        raise AssertionError("tower frequencies do not sum to p^(ab)")
    return out


# ----------------------------------------------------------------------
# diophantine solvers

def solve_cubic_diophantine(p: int, t: int) -> DiophantineSolution:
    """The unique (a, b >= 0) with 4p^t = a^2 + 27b^2, a = 1 (mod 3),
    gcd(a, p) = 1."""
    if not is_prime(p) or p % 3 != 1:
        raise NoSolution(f"requires a prime p = 1 (mod 3), got p = {p}")
    target = 4 * p**t
    found = []
    for b in range(isqrt(target // 27) + 1):
        a2 = target - 27 * b * b
        a = isqrt(a2)
        if a * a != a2:
            continue
        for cand in {a, -a}:
            if cand % 3 == 1 and gcd(cand, p) == 1:
                found.append((cand, b))
    if not found:
        raise NoSolution(f"4*{p}^{t} has no admissible representation")
    if len(found) > 1:
        raise GPCodeError(f"cubic representation of 4*{p}^{t} is not unique: {found}")
    a, b = found[0]
    return DiophantineSolution(a=a, b=b, kind="cubic")


def solve_quartic_diophantine(p: int, t: int) -> DiophantineSolution:
    """The unique (a, b >= 0) with p^{2t} = a^2 + 4b^2, a = 1 (mod 4),
    gcd(a, p) = 1."""
    if not is_prime(p) or p % 4 != 1:
        raise NoSolution(f"requires a prime p = 1 (mod 4), got p = {p}")
    target = p ** (2 * t)
    found = []
    for b in range(isqrt(target // 4) + 1):
        a2 = target - 4 * b * b
        a = isqrt(a2)
        if a * a != a2:
            continue
        for cand in {a, -a}:
            if cand % 4 == 1 and gcd(cand, p) == 1:
                found.append((cand, b))
    if not found:
        raise NoSolution(f"{p}^(2*{t}) has no admissible representation")
    if len(found) > 1:
        raise GPCodeError(f"quartic representation of {p}^(2*{t}) is not unique: {found}")
    a, b = found[0]
    return DiophantineSolution(a=a, b=b, kind="quartic")


# ----------------------------------------------------------------------
# cubic towers (three nonzero base weights)

def cubic_base(p: int, t: int) -> WeightDistribution:
    """The four-weight code for (3, p^{3t}), p = 1 (mod 3): weights
    0, w1, w2, w3 with frequencies 1, c, c, c and c = (q - 1)/3."""
    sol = solve_cubic_diophantine(p, t)
    q = p ** (3 * t)
    root = p**t
    a, b = sol.a, sol.b
    scale = Fraction(p - 1, 3 * p)
    ws = [
        scale * (q - a * root),
        scale * (q + Fraction(a + 9 * b, 2) * root),
        scale * (q + Fraction(a - 9 * b, 2) * root),
    ]
    if any(w.denominator != 1 for w in ws):
        raise AssertionError(f"cubic base weights not integral for (p, t) = {(p, t)}")
    c = (q - 1) // 3
    table = {0: 1}
    for w in ws:
        table[int(w)] = table.get(int(w), 0) + c
    return WeightDistribution(length=c, p=p, table=table, source="closed_form")


def _cubic_slots(p, t):
    sol = solve_cubic_diophantine(p, t)
    q = p ** (3 * t)
    c = (q - 1) // 3
    base = cubic_base(p, t)
    # slot order (0, w1, w2, w3) as produced by the base construction
    scale = Fraction(p - 1, 3 * p)
    root = p**t
    w1 = int(scale * (q - sol.a * root))
    w2 = int(scale * (q + Fraction(sol.a + 9 * sol.b, 2) * root))
    w3 = int(scale * (q + Fraction(sol.a - 9 * sol.b, 2) * root))
    return base, sol, [(0, 1), (w1, c), (w2, c), (w3, c)]


def cubic_tower(p: int, t: int, r: int) -> WeightDistribution:
    """Tower over the cubic base: the code for (k, q^r) with q = p^{3t}
    and k = 3 psi(q, r)/r.

    The composed table is verified term by term against the direct
    expression (p-1)/(3p) * (h q + (a((l2+l3)/2 - l1) + (9b/2)(l2-l3)) p^t)
    with h = l1 + l2 + l3, computed in exact rationals.
    """
    q = p ** (3 * t)
    _require(is_prime(r), f"r = {r} is not prime")
    _require(r != p, f"r must differ from p, got r = p = {p}")
    _require(gcd(3, r) == 1, f"gcd(3, r) must be 1, got r = {r}")
    _require(q % r == 1, f"q = {q} is not 1 modulo r = {r}")
    base, sol, slots = _cubic_slots(p, t)
    terms = _compose_slots(slots, r)
    scale = Fraction(p - 1, 3 * p)
    for term in terms:
        _, l1, l2, l3 = term.exponents
        h = l1 + l2 + l3
        direct = scale * (
            h * q
            + (sol.a * (Fraction(l2 + l3, 2) - l1) + Fraction(9 * sol.b, 2) * (l2 - l3))
            * p**t
        )
        if direct.denominator != 1 or int(direct) != term.value:
            raise AssertionError(
                f"cubic tower value mismatch at exponents {term.exponents}: "
                f"{direct} != {term.value}"
            )
    out = _merge_terms(terms, r * base.length, p, source="closed_form")
    if out.total() != q**r:
        raise AssertionError("tower frequencies do not sum to q^r")
    return out


# ----------------------------------------------------------------------
# quartic towers (four nonzero base weights)

def _quartic_slots(p, t):
    sol = solve_quartic_diophantine(p, t)
    q = p ** (4 * t)
    root = p ** (2 * t)  # sqrt(q)
    c = (q - 1) // 4
    scale = Fraction(p - 1, 4 * p)
    ws = [
        scale * (q + root + 2 * sol.a * p**t),
        scale * (q + root - 2 * sol.a * p**t),
        scale * (q - root + 4 * sol.b * p**t),
        scale * (q - root - 4 * sol.b * p**t),
    ]
    if any(w.denominator != 1 for w in ws):
        raise AssertionError(f"quartic base weights not integral for (p, t) = {(p, t)}")
    return sol, c, [(0, 1)] + [(int(w), c) for w in ws]


def quartic_base(p: int, t: int) -> WeightDistribution:
    """The five-weight code for (4, p^{4t}), p = 1 (mod 4): four nonzero
    weights of frequency c = (q - 1)/4 each."""
    if p % 4 != 1:
        raise PreconditionFailed(f"requires p = 1 (mod 4), got p = {p}")
    _, c, slots = _quartic_slots(p, t)
    table = {0: 1}
    for w, mult in slots[1:]:
        table[w] = table.get(w, 0) + mult
    return WeightDistribution(length=c, p=p, table=table, source="closed_form")


def quartic_tower(p: int, t: int, r: int) -> WeightDistribution:
    """Tower over the quartic base, verified against the direct expression
    (p-1)/(4p) * (h q + (l1+l2-l3-l4) sqrt(q) + (2a(l1-l2) + 4b(l3-l4)) p^t)."""
    if p % 4 != 1:
        raise PreconditionFailed(f"requires p = 1 (mod 4), got p = {p}")
    q = p ** (4 * t)
    _require(is_prime(r), f"r = {r} is not prime")
    _require(r != p, f"r must differ from p, got r = p = {p}")
    _require(gcd(4, r) == 1, f"gcd(4, r) must be 1, got r = {r}")
    _require(q % r == 1, f"q = {q} is not 1 modulo r = {r}")
    sol, c, slots = _quartic_slots(p, t)
    terms = _compose_slots(slots, r)
    scale = Fraction(p - 1, 4 * p)
    root = p ** (2 * t)
    for term in terms:
        _, l1, l2, l3, l4 = term.exponents
        h = l1 + l2 + l3 + l4
        direct = scale * (
            h * q
            + (l1 + l2 - l3 - l4) * root
            + (2 * sol.a * (l1 - l2) + 4 * sol.b * (l3 - l4)) * p**t
        )
        if direct.denominator != 1 or int(direct) != term.value:
            raise AssertionError(
                f"quartic tower value mismatch at exponents {term.exponents}"
            )
    out = _merge_terms(terms, r * (q - 1) // 4, p, source="closed_form")
    if out.total() != q**r:
        raise AssertionError("tower frequencies do not sum to q^r")
    return out


def _require(cond, msg):
    if not cond:
        raise PreconditionFailed(msg)


# ----------------------------------------------------------------------
# Gaussian-period reduction

def _check_reduction_hypotheses(p, a, b, c, u):
    if b < 1:
        raise HypothesesFailed(f"b must be >= 1, got {b}")
    if (p**a - 1) != c * u:
        raise HypothesesFailed(f"u = (p^a - 1)/c fails: {(p**a - 1)} != {c}*{u}")
    if c % (p - 1) != 0:
        raise HypothesesFailed(f"p - 1 = {p - 1} must divide c = {c}")
    if not is_primitive_divisor(c, p, a):
        raise HypothesesFailed(f"c = {c} is not a primitive divisor of {p}^{a} - 1")
    if b > 1 and not is_primitive_divisor(b * c, p, a * b):
        raise HypothesesFailed(
            f"n = {b * c} is not a primitive divisor of {p}^{a * b} - 1"
        )


def _composed_period_set(p, a, b, slots, source):
    # slots: [(value, graph multiplicity)] with the trivial eigenvalue
    # first; the all-in-slot-0 tuple is the trivial eigenvalue n = bc of
    # the big graph and is excluded from the period list.
    c = slots[0][0]
    n = b * c
    q = p ** (a * b)
    k = (q - 1) // n
    values, tuples, graph_mults, coset_mults = [], [], [], []
    for exps in _tuples_summing_to(len(slots), b):
        if exps[0] == b:
            continue
        freq = _multinomial(exps)
        val = 0
        for l, (v, mult) in zip(exps, slots):
            val += l * v
            freq *= mult**l
        values.append(val)
        tuples.append(exps)
        graph_mults.append(freq)
        mu = Fraction(freq, n)
        coset_mults.append(int(mu) if mu.denominator == 1 else mu)
    if sum(graph_mults) != q - 1:
        raise AssertionError("composed period multiplicities do not sum to q - 1")
    return GaussPeriodSet(
        p=p, m=a * b, q=q, N=k,
        coset_size=n,
        source=source,
        values=np.array(values, dtype=np.int64),
        multiplicities=coset_mults,
        graph_multiplicities=graph_mults,
        tuples=tuples,
        trivial_value=n,
    )


def reduce_periods(base: GaussPeriodSet, b: int) -> GaussPeriodSet:
    """Periods for (k, p^{ab}) composed from the periods for (u, p^a).

    Requires the cartesian-tower hypotheses (c and bc primitive divisors,
    p-1 | c) and an integral base.  Slot 0 is the trivial eigenvalue c of
    the factor graph; the excluded all-trivial tuple corresponds to the
    trivial eigenvalue n = bc, reported via trivial_value.
    """
    p, a, u = base.p, base.m, base.N
    c = base.coset_size
    if not base.is_integral:
        raise HypothesesFailed(
            f"base periods for ({u}, {p}^{a}) are not rational integers"
        )
    _check_reduction_hypotheses(p, a, b, c, u)
    slots = [(c, 1)] + [
        (v, g) for v, g in sorted(base.value_multiset().items(), reverse=True)
    ]
    return _composed_period_set(p, a, b, slots, source="composed")


def reduce_periods_semiprimitive(p: int, a: int, b: int, u: int) -> GaussPeriodSet:
    """Closed-form periods for (k, p^{ab}) over a semiprimitive base pair:
    values l0*c + l1*((u-1) sigma sqrt(p^a) - 1)/u - l2*(sigma sqrt(p^a) + 1)/u,
    without computing any base period."""
    ok, _, sigma = is_semiprimitive_pair(p, a, u)
    if not ok:
        raise NotSemiprimitive(f"({u}, {p}^{a}) is not a semiprimitive pair")
    c = (p**a - 1) // u
    _check_reduction_hypotheses(p, a, b, c, u)
    root = p ** (a // 2)
    num1 = (u - 1) * sigma * root - 1
    num2 = sigma * root + 1
    if num1 % u != 0 or num2 % u != 0:
        raise AssertionError("semiprimitive period values are not integral")
    v1, v2 = num1 // u, -(num2 // u)
    slots = [(c, 1), (v1, c), (v2, c * (u - 1))]
    return _composed_period_set(p, a, b, slots, source="closed_form")
