"""Generalized Paley graphs: parameters, spectra, and decomposability.

The graph on F_q whose connection set is the k-th powers R_k is
n-regular with n = (q-1)/gcd(k, q-1), undirected iff p = 2 or
k | (q-1)/2, and connected iff n is a primitive divisor of q-1.  Its
spectrum consists of n (for the trivial character) together with the
Gaussian periods for (k, q), each with multiplicity n; the brute-force
oracle recomputes the same multiset from raw character sums without the
coset shortcut.

A connected undirected graph decomposes as a cartesian power of a
smaller one exactly when n = b*c with b > 1, b | m and c a primitive
divisor of p^(m/b) - 1; the witness carries (a, b, c, u) with a = m/b
and u = (p^a - 1)/c.
"""

from dataclasses import dataclass
from math import gcd
from typing import Optional

import numpy as np

from . import kernels
from .errors import (
    DirectedGraph,
    NotADivisor,
    NotConnected,
    TooLargeForOracle,
)
from .field import FieldSpec, _validate_pm, is_primitive_divisor, DEFAULT_Q_BOUND
from .periods import gaussian_periods

ORACLE_Q_BOUND = 1 << 12


@dataclass(frozen=True)
class GraphSpec:
    p: int
    m: int
    q: int
    k_input: int
    k: int  # gcd-reduced exponent
    n: int  # regularity degree (q-1)/k
    undirected: bool
    connected: bool

    def as_dict(self) -> dict:
        return {
            "p": self.p, "m": self.m, "q": self.q,
            "k_input": self.k_input, "k": self.k, "n": self.n,
            "undirected": self.undirected, "connected": self.connected,
        }


@dataclass(frozen=True)
class DecompositionWitness:
    a: int  # degree of the factor field
    b: int  # number of cartesian factors (> 1)
    c: int  # factor regularity, a primitive divisor of p^a - 1
    u: int  # factor exponent (p^a - 1)/c

    def as_dict(self) -> dict:
        return {"a": self.a, "b": self.b, "c": self.c, "u": self.u}


class Spectrum:
    """Multiset of exact eigenvalues with multiplicities.

    Keys are ints for rational eigenvalues and length-p count-vector
    tuples otherwise (two count vectors with the same total are equal as
    algebraic numbers iff they are equal componentwise).
    """

    def __init__(self, p: int, q: int, entries: dict):
        self.p = p
        self.q = q
        self.entries = dict(entries)

    def __eq__(self, other):
        return (
            isinstance(other, Spectrum)
            and self.q == other.q
            and self.entries == other.entries
        )

    def total(self) -> int:
        return sum(self.entries.values())

    def trace_vector(self):
        """Aggregate of eigenvalue * multiplicity as (integer, zeta-part)."""
        whole = 0
        vec = np.zeros(self.p, dtype=object)
        for v, mult in self.entries.items():
            if isinstance(v, int):
                whole += v * mult
            else:
                for t, c in enumerate(v):
                    vec[t] += c * mult
        return whole, vec

    def is_traceless(self) -> bool:
        # sum lambda*mult must represent 0 in Z[zeta_p]
        whole, vec = self.trace_vector()
        ref = whole + vec[0]
        return all(vec[t] == ref for t in range(1, self.p))

    def sorted_entries(self) -> list:
        ints = sorted(
            ((v, m) for v, m in self.entries.items() if isinstance(v, int)),
            key=lambda e: -e[0],
        )
        others = sorted(
            ((v, m) for v, m in self.entries.items() if not isinstance(v, int)),
            key=lambda e: e[0],
        )
        return ints + others

    def compact(self) -> str:
        parts = []
        for v, m in self.sorted_entries():
            label = str(v) if isinstance(v, int) else "(" + ",".join(map(str, v)) + ")"
            parts.append(f"[{label}]^{m}")
        return "{" + ", ".join(parts) + "}"

    def as_dict(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "entries": [
                {"eigenvalue": v if isinstance(v, int) else list(v), "multiplicity": m}
                for v, m in self.sorted_entries()
            ],
            "total": self.total(),
        }


def graph_spec(p: int, m: int, k_input: int,
               q_bound: int = DEFAULT_Q_BOUND) -> GraphSpec:
    """Parameters of the graph on F_{p^m} with connection set the k-th powers."""
    q = _validate_pm(p, m, q_bound)
    if k_input < 1:
        raise ValueError(f"k must be >= 1, got {k_input}")
    k = gcd(k_input, q - 1)
    n = (q - 1) // k
    undirected = (p == 2) or ((q - 1) // 2) % k == 0
    connected = is_primitive_divisor(n, p, m)
    return GraphSpec(
        p=p, m=m, q=q, k_input=k_input, k=k, n=n,
        undirected=undirected, connected=connected,
    )


def spectrum(g: GraphSpec, f: FieldSpec, impl=None) -> Spectrum:
    """Exact spectrum from Gaussian periods (no adjacency matrix).

    The trivial character contributes eigenvalue n once; each of the k
    cosets contributes its period with multiplicity n; equal values merge.
    """
    if not g.undirected:
        raise DirectedGraph(
            f"graph(k={g.k}, q={g.q}) is directed: k does not divide (q-1)/2"
        )
    ps = gaussian_periods(f, g.k, impl=impl)
    entries = {g.n: 1}
    for v, rows in merged_value_counts(ps.counts):
        entries[v] = entries.get(v, 0) + rows * g.n
    return Spectrum(p=g.p, q=g.q, entries=entries)


def brute_spectrum_oracle(g: GraphSpec, f: FieldSpec,
                          max_q: int = ORACLE_Q_BOUND, impl=None) -> Spectrum:
    """Spectrum recomputed from raw character sums, one per vertex.

    For every character index gamma the eigenvalue is the sum of
    zeta_p^{Tr(gamma r)} over the n elements r of R_k, tallied in
    cyclotomic-count form element by element.  Independent of the coset
    shortcut used by spectrum().
    """
    if not g.undirected:
        raise DirectedGraph(
            f"graph(k={g.k}, q={g.q}) is directed: k does not divide (q-1)/2"
        )
    if g.q > max_q:
        raise TooLargeForOracle(g.q, max_q)
    counts = kernels.charsum_counts(f.tr_dlog, g.k, g.n, g.p, impl=impl)
    entries = {g.n: 1}  # gamma = 0: n elements, all with Tr(0 * r) = 0
    for v, rows in merged_value_counts(counts):
        entries[v] = entries.get(v, 0) + rows
    return Spectrum(p=g.p, q=g.q, entries=entries)


def find_decomposition(g: GraphSpec, all_witnesses: bool = False):
    """Cartesian-power witness(es) of the graph, smallest b first.

    Returns the witness with the smallest factor count b > 1, a list of
    all witnesses when all_witnesses is set, or None when the graph is
    cartesian indecomposable.
    """
    if not g.connected:
        raise NotConnected(f"graph(k={g.k}, q={g.q}) is not connected")
    if not g.undirected:
        raise DirectedGraph(f"graph(k={g.k}, q={g.q}) is directed")
    found = []
    for b in range(2, g.m + 1):
        if g.m % b != 0 or g.n % b != 0:
            continue
        a = g.m // b
        c = g.n // b
        if not is_primitive_divisor(c, g.p, a):
            continue
        w = DecompositionWitness(a=a, b=b, c=c, u=(g.p**a - 1) // c)
        if not all_witnesses:
            return w
        found.append(w)
    return found if all_witnesses else None


def is_semiprimitive_pair(p: int, m: int, k: int):
    """(flag, least exponent t, sign sigma) for the pair (k, p^m).

    The pair is semiprimitive when k >= 2 divides p^t + 1 for some t | m
    with m/t even, excluding the subfield case k = p^{m/2} + 1.  The sign
    is sigma = (-1)^{m/(2t) + 1} for the least such t.
    """
    if k < 2:
        return False, None, None
    for t in range(1, m + 1):
        if m % t != 0 or (m // t) % 2 != 0:
            continue
        if (p**t + 1) % k == 0:
            if k == p ** (m // 2) + 1:
                return False, None, None
            sigma = -1 if (m // (2 * t)) % 2 == 0 else 1
            return True, t, sigma
    return False, None, None


def is_hamming(g: GraphSpec) -> Optional[int]:
    """The divisor b > 1 of m with n = b(p^{m/b} - 1), if one exists."""
    for b in range(2, g.m + 1):
        if g.m % b == 0 and g.n == b * (g.p ** (g.m // b) - 1):
            return b
    return None


def check_complete_product(g: GraphSpec, f: FieldSpec = None) -> bool:
    """True iff the graph is the cartesian square of a complete graph.

    Parameter form: m even and k = (sqrt(q) + 1)/2.  When true and a
    field is supplied, the three-eigenvalue spectrum
    {2q'-2, q'-2, -2} with multiplicities {1, 2(q'-1), (q'-1)^2} is
    verified against spectrum().
    """
    if not g.connected:
        raise NotConnected(f"graph(k={g.k}, q={g.q}) is not connected")
    if g.m % 2 != 0 or g.p == 2:
        return False
    qr = g.p ** (g.m // 2)
    if g.k != (qr + 1) // 2 or (qr + 1) % 2 != 0:
        return False
    if f is not None:
        expected = Spectrum(
            p=g.p, q=g.q,
            entries={2 * qr - 2: 1, qr - 2: 2 * (qr - 1), -2: (qr - 1) ** 2},
        )
        if spectrum(g, f) != expected:
            raise AssertionError(
                f"complete-product parameters hold but the spectrum differs "
                f"for (k, q) = ({g.k}, {g.q})"
            )
    return True
