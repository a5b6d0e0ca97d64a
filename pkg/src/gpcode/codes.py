"""Irreducible cyclic codes: codewords, brute-force weight distributions,
and the exact weight/eigenvalue bridge.

The code for (k, q) has the q codewords (Tr(gamma * omega^{k i}))_{i<n},
one per gamma in F_q, of length n = (q-1)/k over GF(p).  Frequencies are
counted over gamma (not over distinct words), so they always sum to q.

When the graph for (k, q) is connected and k | (q-1)/(p-1), eigenvalues
and weights determine each other:

    lambda = n - p/(p-1) * w        w = (p-1) * (n - lambda) / p

with frequencies equal to multiplicities.
"""

from dataclasses import dataclass, field as dfield
from typing import Optional

import numpy as np

from . import kernels
from .errors import (
    BridgeHypothesisFailed,
    BudgetExceeded,
    NotADivisor,
    NonIntegralWeight,
)
from .field import FieldSpec, is_primitive_divisor
from .graph import Spectrum

DEFAULT_BUDGET = 1 << 31  # coordinate evaluations per brute call


@dataclass(frozen=True)
class CodeParams:
    p: int
    m: int
    q: int
    k: int
    n: int
    bridge_valid: bool  # k | (q-1)/(p-1) and n a primitive divisor of q-1

    def as_dict(self) -> dict:
        return {"p": self.p, "m": self.m, "q": self.q, "k": self.k,
                "n": self.n, "bridge_valid": self.bridge_valid}


def code_params(p: int, m: int, k: int) -> CodeParams:
    q = p**m
    if (q - 1) % k != 0:
        raise NotADivisor(k, q - 1)
    n = (q - 1) // k
    bridge = ((q - 1) // (p - 1)) % k == 0 and is_primitive_divisor(n, p, m)
    return CodeParams(p=p, m=m, q=q, k=k, n=n, bridge_valid=bridge)


@dataclass
class WeightDistribution:
    """weight -> frequency table of a length-n code over GF(p).

    Frequencies are python ints (arbitrary precision).  `indexed` holds
    the exponent-tuple presentation attached by the tower constructions.
    """

    length: int
    p: int
    table: dict  # weight -> frequency
    source: str  # "brute" | "composed" | "closed_form"
    indexed: Optional[list] = dfield(default=None, repr=False)

    def total(self) -> int:
        return sum(self.table.values())

    def sorted_items(self) -> list:
        return sorted(self.table.items())

    def weights(self) -> list:
        return sorted(self.table)

    def min_distance(self) -> int:
        nz = [w for w in self.table if w > 0]
        return min(nz) if nz else 0

    def matches(self, other: "WeightDistribution") -> bool:
        return (
            self.length == other.length
            and self.p == other.p
            and self.table == other.table
        )

    def diff(self, other: "WeightDistribution") -> list:
        out = []
        if self.length != other.length:
            out.append(f"length {self.length} != {other.length}")
        for w in sorted(set(self.table) | set(other.table)):
            a, b = self.table.get(w, 0), other.table.get(w, 0)
            if a != b:
                out.append(f"A_{w}: {a} != {b}")
        return out

    def as_dict(self, params: Optional[CodeParams] = None) -> dict:
        d = {}
        if params is not None:
            d.update({"p": params.p, "m": params.m, "k": params.k, "n": params.n})
        else:
            d.update({"p": self.p, "n": self.length})
        d["source"] = self.source
        d["table"] = [[w, a] for w, a in self.sorted_items()]
        if self.indexed is not None:
            d["indexed"] = [
                {"exponents": list(t.exponents), "weight": t.value,
                 "frequency": t.frequency}
                for t in self.indexed
            ]
        return d

    def to_csv(self) -> str:
        lines = ["weight,frequency"]
        lines += [f"{w},{a}" for w, a in self.sorted_items()]
        return "\n".join(lines) + "\n"


def codeword(f: FieldSpec, k: int, gamma: int) -> np.ndarray:
    """Coordinates (Tr(gamma * omega^{k i}))_{i<n} as a uint8 array."""
    if (f.q - 1) % k != 0:
        raise NotADivisor(k, f.q - 1)
    n = (f.q - 1) // k
    if gamma == 0:
        return np.zeros(n, dtype=np.uint8)
    d = int(f.dlog[gamma])
    idx = (d + k * np.arange(n, dtype=np.int64)) % (f.q - 1)
    return f.tr_dlog[idx]


def brute_weight_distribution(f: FieldSpec, k: int,
                              budget: int = DEFAULT_BUDGET,
                              workers: int = 1, impl=None) -> WeightDistribution:
    """Exact distribution by enumerating every gamma coordinate by
    coordinate; the one independent oracle for all closed forms."""
    if (f.q - 1) % k != 0:
        raise NotADivisor(k, f.q - 1)
    n = (f.q - 1) // k
    cost = f.q * n
    if cost > budget:
        raise BudgetExceeded(cost, budget)
    tr_nz = (f.tr_dlog != 0).astype(np.uint8)
    counts = kernels.weight_counts(tr_nz, k, n, workers=workers, impl=impl)
    counts[0] += 1  # gamma = 0
    table = {int(w): int(c) for w, c in enumerate(counts) if c}
    return WeightDistribution(length=n, p=f.p, table=table, source="brute")


def weights_from_spectrum(s: Spectrum, params: CodeParams) -> WeightDistribution:
    """Map a spectrum through w = (p-1)(n - lambda)/p; frequencies are
    the multiplicities."""
    if not params.bridge_valid:
        raise BridgeHypothesisFailed(
            f"(k, q) = ({params.k}, {params.q}): need k | (q-1)/(p-1) "
            f"and n a primitive divisor of q-1"
        )
    p, n = params.p, params.n
    table = {}
    for lam, mult in s.entries.items():
        if not isinstance(lam, int):
            raise NonIntegralWeight(f"eigenvalue {lam} is not a rational integer")
        num = (p - 1) * (n - lam)
        if num % p != 0:
            raise NonIntegralWeight(f"(p-1)(n - {lam}) is not divisible by p")
        w = num // p
        table[w] = table.get(w, 0) + mult
    return WeightDistribution(length=n, p=p, table=table, source="closed_form")


def eigenvalues_from_weights(wd: WeightDistribution,
                             params: CodeParams) -> Spectrum:
    """Inverse bridge: lambda = n - p*w/(p-1); round-trips exactly."""
    if not params.bridge_valid:
        raise BridgeHypothesisFailed(
            f"(k, q) = ({params.k}, {params.q}): need k | (q-1)/(p-1) "
            f"and n a primitive divisor of q-1"
        )
    p, n = params.p, params.n
    entries = {}
    for w, freq in wd.table.items():
        if (p * w) % (p - 1) != 0:
            raise NonIntegralWeight(f"p*{w} is not divisible by p-1")
        lam = n - (p * w) // (p - 1)
        entries[lam] = entries.get(lam, 0) + freq
    return Spectrum(p=p, q=params.q, entries=entries)
