"""Gaussian periods as exact cyclotomic count vectors.

The period eta_i for a pair (N, q) is the sum of zeta_p^{Tr(x)} over the
coset C_i = omega^i <omega^N>.  It is stored as the length-p vector
counts[t] = #{x in C_i : Tr(x) = t}; the period is a rational integer
exactly when counts[1..p-1] are constant, and then equals
counts[0] - counts[1].  Non-integral periods are kept in count form and
never coerced.

Two count vectors with equal totals represent the same algebraic number
iff they are identical, so count vectors double as exact spectral values
for the graph module.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from . import kernels
from .errors import NotADivisor
from .field import FieldSpec

_SHIFT_INT64_Q_BOUND = 1 << 26  # N * n^2 must stay well inside int64


@dataclass
class GaussPeriodSet:
    """The N periods for (N, q), or a composed/closed-form surrogate.

    Direct sets (source "direct") carry the per-coset tally matrix
    `counts` and one entry per coset.  Composed sets (from the reduction
    formulas) carry one entry per exponent tuple, with `multiplicities`
    counting how many cosets each entry stands for; the trivial
    eigenvalue n is excluded and reported via `trivial_value`.
    """

    p: int
    m: int
    q: int
    N: int
    coset_size: int
    source: str = "direct"
    counts: Optional[np.ndarray] = None  # int64[N, p] for direct sets
    values: Optional[np.ndarray] = None  # int64 per entry when all integral
    multiplicities: Optional[list] = None  # cosets per entry (ints/Fractions)
    graph_multiplicities: Optional[list] = None  # eigenvalue multiplicities
    tuples: Optional[list] = None  # exponent tuples for composed sets
    trivial_value: Optional[int] = None  # n = bc, composed sets only

    @property
    def is_integral(self) -> bool:
        return self.values is not None

    def n_entries(self) -> int:
        return len(self.values) if self.values is not None else len(self.counts)

    def entry(self, i: int):
        """Integer value of entry i, or its count vector as a tuple."""
        if self.counts is not None:
            row = self.counts[i]
            if self.p == 1 or (row[1:] == row[1]).all():
                return int(row[0]) - int(row[1]) if self.p > 1 else int(row[0])
            return tuple(int(c) for c in row)
        return int(self.values[i])

    def entry_multiplicity(self, i: int):
        if self.multiplicities is None:
            return 1
        return self.multiplicities[i]

    def merged(self) -> dict:
        """value -> (graph multiplicity, contributing entry indices)."""
        out = {}
        for i in range(self.n_entries()):
            v = self.entry(i)
            g = (
                self.graph_multiplicities[i]
                if self.graph_multiplicities is not None
                else self.coset_size
            )
            if v in out:
                out[v] = (out[v][0] + g, out[v][1] + [i])
            else:
                out[v] = (g, [i])
        return out

    def value_multiset(self) -> dict:
        """value -> total graph multiplicity (for cross-implementation checks)."""
        if self.counts is not None:
            return {v: c * self.coset_size
                    for v, c in merged_value_counts(self.counts)}
        return {v: g for v, (g, _) in self.merged().items()}

    def as_dict(self) -> dict:
        d = {
            "p": self.p,
            "m": self.m,
            "q": self.q,
            "N": self.N,
            "coset_size": self.coset_size,
            "source": self.source,
            "is_integral": self.is_integral,
        }
        if self.is_integral:
            d["values"] = [int(v) for v in self.values]
        else:
            d["counts"] = self.counts.tolist()
        if self.tuples is not None:
            d["tuples"] = [list(t) for t in self.tuples]
        if self.graph_multiplicities is not None:
            d["graph_multiplicities"] = [int(g) for g in self.graph_multiplicities]
        if self.trivial_value is not None:
            d["trivial_value"] = self.trivial_value
        d["merged"] = [
            {"value": v if isinstance(v, int) else list(v), "graph_multiplicity": int(g)}
            for v, (g, _) in sorted(
                self.merged().items(),
                key=lambda kv: (kv[0] if isinstance(kv[0], int) else -(10**18)),
                reverse=True,
            )
        ]
        return d


def merged_value_counts(counts: np.ndarray) -> list:
    """Group count-vector rows into (value, row count) pairs, vectorized.

    Rows with constant tail project to their integer value
    counts[0] - counts[1]; the rest stay as count-vector tuples.  Used to
    merge per-coset periods and per-character eigenvalues without a
    python loop over rows.
    """
    out = []
    integ = (counts[:, 1:] == counts[:, 1:2]).all(axis=1)
    if integ.any():
        vals = counts[integ, 0] - counts[integ, 1]
        uv, uc = np.unique(vals, return_counts=True)
        out += list(zip(uv.tolist(), uc.tolist()))
    if not integ.all():
        rows = counts[~integ]
        urows, uc = np.unique(rows, axis=0, return_counts=True)
        out += [(tuple(r), c) for r, c in zip(urows.tolist(), uc.tolist())]
    return out


def coset(f: FieldSpec, N: int, i: int) -> np.ndarray:
    """C_i = omega^i <omega^N> as a sorted array of element encodings."""
    if (f.q - 1) % N != 0:
        raise NotADivisor(N, f.q - 1)
    if not 0 <= i < N:
        raise ValueError(f"coset index {i} out of range [0, {N})")
    return np.sort(f.exp[i::N].astype(np.int64))


def gaussian_periods(f: FieldSpec, N: int, impl=None) -> GaussPeriodSet:
    """All N periods for (N, q) from one pass over the dlog line."""
    if (f.q - 1) % N != 0:
        raise NotADivisor(N, f.q - 1)
    counts = kernels.period_counts(f.tr_dlog, N, f.p, impl=impl)
    values = None
    if f.p == 2 or (counts[:, 1:] == counts[:, 1:2]).all():
        values = counts[:, 0] - (counts[:, 1] if f.p > 1 else 0)
    return GaussPeriodSet(
        p=f.p, m=f.m, q=f.q, N=N,
        coset_size=(f.q - 1) // N,
        counts=counts,
        values=values,
    )


@dataclass
class RelationReport:
    """Outcome of the arithmetic identity checks on a period set."""

    N: int
    q: int
    integral: bool
    full_applicable: bool  # N | (q-1)/(p-1): sum identities guaranteed
    partition_ok: Optional[bool] = None
    mod_p_ok: Optional[bool] = None  # N*eta + 1 = 0 (mod p) per entry
    sum_ok: Optional[bool] = None  # sum of all periods = -1
    shifted_ok: Optional[bool] = None  # autocorrelations = q*theta_j - n
    failures: list = None

    @property
    def ok(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        return {
            "N": self.N,
            "q": self.q,
            "integral": self.integral,
            "full_applicable": self.full_applicable,
            "partition_ok": self.partition_ok,
            "mod_p_ok": self.mod_p_ok,
            "sum_ok": self.sum_ok,
            "shifted_ok": self.shifted_ok,
            "ok": self.ok,
            "failures": self.failures,
        }


def _theta_shift(p, q, N):
    # the unique shift j with -1 in C_j: dlog(-1) mod N
    d = 0 if p == 2 else (q - 1) // 2
    return d % N


def check_relations(s: GaussPeriodSet) -> RelationReport:
    """Verify the period identities; violations are report entries.

    Checks (i) the trace-fiber partition of the counts, (ii) the mod-p
    congruence N*eta + 1 = 0 for integral sets, and, when
    N | (q-1)/(p-1), (iii) sum eta_i = -1 and (iv) the shifted products
    sum_i eta_i eta_{i+j} = q*theta_j - n, theta_j = [-1 in C_j].  The
    shifted check needs per-coset order, so it runs on direct sets only.
    """
    failures = []
    p, q, N, n = s.p, s.q, s.N, s.coset_size
    full = (q - 1) // (p - 1) % N == 0
    rep = RelationReport(N=N, q=q, integral=s.is_integral, full_applicable=full,
                         failures=failures)

    if s.counts is not None:
        m_deg = s.m
        fiber = s.counts.sum(axis=0)
        expect = np.full(p, p ** (m_deg - 1), dtype=np.int64)
        expect[0] -= 1  # the zero element is not in any coset
        rep.partition_ok = bool((fiber == expect).all())
        if not rep.partition_ok:
            failures.append(f"partition: fibers {fiber.tolist()} != {expect.tolist()}")

    if not s.is_integral:
        return rep

    if s.source == "direct":
        vals = s.values
        mults = np.ones(len(vals), dtype=object)
    else:
        vals = s.values
        mults = np.array(s.multiplicities, dtype=object)

    bad = [int(v) for v in vals if (N * int(v) + 1) % p != 0]
    rep.mod_p_ok = not bad
    if bad:
        failures.append(f"mod-p: N*eta+1 not divisible by p for eta in {bad[:5]}")

    if not full:
        return rep

    total = sum(Fraction(m) * int(v) for m, v in zip(mults, vals))
    rep.sum_ok = total == -1
    if not rep.sum_ok:
        failures.append(f"sum: {total} != -1")

    if s.source == "direct":
        jstar = _theta_shift(p, q, N)
        v = np.asarray(vals, dtype=np.int64)
        if q <= _SHIFT_INT64_Q_BOUND:
            w = np.concatenate([v, v])
            corr = np.correlate(w, v, mode="valid")[:N]
        else:  # exact big-int fallback
            vl = [int(x) for x in v]
            corr = [sum(vl[i] * vl[(i + j) % N] for i in range(N)) for j in range(N)]
        bad_shifts = []
        for j in range(N):
            expect = q - n if j == jstar else -n
            if int(corr[j]) != expect:
                bad_shifts.append(j)
        rep.shifted_ok = not bad_shifts
        if bad_shifts:
            failures.append(f"shifted: identities fail at j in {bad_shifts[:5]}")
    else:
        # composed sets have no coset order; check the j = 0 diagonal only
        sq = sum(Fraction(m) * int(v) * int(v) for m, v in zip(mults, vals))
        rep.shifted_ok = sq == q - n
        if not rep.shifted_ok:
            failures.append(f"square-sum: {sq} != {q - n}")

    return rep
