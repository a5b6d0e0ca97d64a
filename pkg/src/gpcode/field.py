"""Exact arithmetic in GF(p^m) backed by full exp/dlog tables.

A field is modeled by FieldSpec: a deterministic modulus polynomial, a
deterministic primitive element omega, the exp table omega^i for
0 <= i < q-1, the inverse dlog table, and the trace table.  Elements are
plain python ints in [0, q): the canonical encoding sum(c_i * p^i) of the
polynomial-basis coordinates (c_0, ..., c_{m-1}).

Determinism: the modulus is the first monic irreducible degree-m
polynomial in canonical encoding order of its low coefficients, and omega
is the first element (in encoding order) of multiplicative order q - 1.
All derived quantities (coset labels, dlogs) are therefore reproducible;
value multisets are independent of these choices.

Integer helpers used throughout the package (psi, primitive-divisor
tests, deterministic primality) also live here.
"""

from dataclasses import dataclass, field
from functools import reduce
from math import lcm
from pathlib import Path
import os
import struct

import numpy as np

from .errors import CacheError, FieldTooLarge, NotPrime

DEFAULT_Q_BOUND = 1 << 32

_MAGIC = b"GPCODE1"

# deterministic Miller-Rabin witnesses, valid for all n < 2^64
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_SIEVE_LIMIT = 1 << 16
_small_primes = None


def small_primes() -> np.ndarray:
    """Primes below 2^16 (cached sieve); enough to trial-divide n < 2^32."""
    global _small_primes
    if _small_primes is None:
        mask = np.ones(_SIEVE_LIMIT, dtype=bool)
        mask[:2] = False
        for i in range(2, int(_SIEVE_LIMIT**0.5) + 1):
            if mask[i]:
                mask[i * i :: i] = False
        _small_primes = np.flatnonzero(mask)
    return _small_primes


def is_prime(n: int) -> bool:
    """Deterministic primality test for n < 2^64."""
    if n < 2:
        return False
    for sp in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n == sp:
            return True
        if n % sp == 0:
            return False
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def psi(x: int, b: int) -> int:
    """x^{b-1} + ... + x + 1, exactly (psi(x, 1) = 1, psi(x, 0) = 0)."""
    if b <= 0:
        return 0
    return (x**b - 1) // (x - 1)


def factorize(n: int) -> dict:
    """Prime factorization for n < 2^32 (trial division over a prime sieve)."""
    out = {}
    for d in small_primes():
        d = int(d)
        if d * d > n:
            break
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def multiplicative_order(a: int, n: int) -> int:
    """Order of a modulo n (gcd(a, n) = 1 required); ord(a mod 1) = 1."""
    if n == 1:
        return 1

    def lam(r, k):  # unit-group exponent of Z/r^k
        if r == 2:
            return 1 if k == 1 else (2 if k == 2 else 2 ** (k - 2))
        return r ** (k - 1) * (r - 1)

    e = reduce(lcm, [lam(r, k) for r, k in factorize(n).items()], 1)
    order = e
    for r in factorize(e):
        while order % r == 0 and pow(a, order // r, n) == 1:
            order //= r
    if pow(a, order, n) != 1:
        raise ValueError(f"{a} is not a unit modulo {n}")
    return order


def is_primitive_divisor(n: int, p: int, m: int) -> bool:
    """True iff n | p^m - 1 and n does not divide p^t - 1 for 1 <= t < m."""
    if n < 1 or (p**m - 1) % n != 0:
        return False
    if n == 1:
        return m == 1
    acc = 1
    x = p % n
    for _ in range(1, m):
        acc = acc * x % n
        if acc == 1:
            return False
    return True


def is_primitive_divisor_by_order(n: int, p: int, m: int) -> bool:
    """Same predicate via ord_n(p) = m; cross-check for the scan above."""
    if n < 1 or (p**m - 1) % n != 0:
        return False
    if n == 1:
        return m == 1
    return multiplicative_order(p, n) == m


# ----------------------------------------------------------------------
# polynomial arithmetic over GF(p) (coefficient lists, low to high);
# only used during construction, never in the hot kernels.

def _poly_mul_mod(a, b, mod, p):
    m = len(mod) - 1
    res = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                res[i + j] = (res[i + j] + ai * bj) % p
    for i in range(len(res) - 1, m - 1, -1):
        c = res[i]
        if c:
            for j in range(m + 1):
                res[i - m + j] = (res[i - m + j] - c * mod[j]) % p
    res = res[:m]
    res += [0] * (m - len(res))
    return res


def _poly_pow_mod(a, e, mod, p):
    m = len(mod) - 1
    acc = [1] + [0] * (m - 1)
    base = list(a)
    while e:
        if e & 1:
            acc = _poly_mul_mod(acc, base, mod, p)
        base = _poly_mul_mod(base, base, mod, p)
        e >>= 1
    return acc


def _poly_trim(a):
    i = len(a)
    while i > 0 and a[i - 1] == 0:
        i -= 1
    return a[:i]


def _poly_rem(a, b, p):
    a = _poly_trim(list(a))
    b = _poly_trim(list(b))
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        c = a[-1] * inv_lead % p
        off = len(a) - len(b)
        for j in range(len(b)):
            a[off + j] = (a[off + j] - c * b[j]) % p
        a = _poly_trim(a)
        if not a:
            break
    return a


def _poly_gcd(a, b, p):
    a, b = _poly_trim(list(a)), _poly_trim(list(b))
    while b:
        a, b = b, _poly_rem(a, b, p)
    return a


def _is_irreducible(mod, p):
    # Rabin: x^{p^m} = x (mod f) and, for every prime r | m,
    # gcd(x^{p^{m/r}} - x, f) = 1.  The Frobenius-orbit condition alone
    # is not sufficient (factor degrees {1, 2, 3} have lcm 6).
    m = len(mod) - 1
    if m == 1:
        return True
    x = [0, 1] + [0] * (m - 2)
    frob = [list(x)]  # frob[d] = x^{p^d} mod f
    for _ in range(m):
        frob.append(_poly_pow_mod(frob[-1], p, mod, p))
    if frob[m] != x:
        return False
    for r in set(factorize(m)):
        diff = [(a - b) % p for a, b in zip(frob[m // r], x)]
        g = _poly_gcd(mod, diff, p)
        if len(g) > 1:
            return False
    return True


def _find_modulus(p, m):
    # first monic irreducible x^m + sum c_i x^i by encoding of (c_i)
    for enc in range(p**m):
        coeffs, e = [], enc
        for _ in range(m):
            coeffs.append(e % p)
            e //= p
        mod = coeffs + [1]
        if _is_irreducible(mod, p):
            return tuple(mod)
    raise AssertionError("no irreducible polynomial found")  # unreachable


# ----------------------------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    """Immutable model of GF(p^m); safe to share across workers."""

    p: int
    m: int
    q: int
    modulus: tuple  # length m+1, monic, low-to-high coefficients
    omega: int  # canonical encoding of the primitive element
    exp: np.ndarray  # uint32[q-1], exp[i] = encoding of omega^i
    dlog: np.ndarray  # int64[q], dlog[exp[i]] = i, dlog[0] = -1
    trace_table: np.ndarray  # uint8[q], Tr(element) by encoding
    tr_dlog: np.ndarray = field(repr=False, default=None)  # uint8[q-1], Tr(omega^j)

    def digits(self, enc: int) -> tuple:
        out, e = [], enc
        for _ in range(self.m):
            out.append(e % self.p)
            e //= self.p
        return tuple(out)

    def encode(self, coeffs) -> int:
        e = 0
        for c in reversed(list(coeffs)):
            e = e * self.p + c % self.p
        return e

    def add(self, a: int, b: int) -> int:
        p, e, mul = self.p, 0, 1
        for _ in range(self.m):
            e += ((a % p) + (b % p)) % p * mul
            a //= p
            b //= p
            mul *= p
        return e

    def neg(self, a: int) -> int:
        p, e, mul = self.p, 0, 1
        for _ in range(self.m):
            e += (-(a % p)) % p * mul
            a //= p
            mul *= p
        return e

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp[(int(self.dlog[a]) + int(self.dlog[b])) % (self.q - 1)])

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError("0 has no negative powers")
            return 0
        return int(self.exp[(int(self.dlog[a]) * e) % (self.q - 1)])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 is not invertible")
        return int(self.exp[(-int(self.dlog[a])) % (self.q - 1)])

    def trace(self, a: int) -> int:
        return int(self.trace_table[a])

    def minus_one(self) -> int:
        return self.neg(1)

    def as_dict(self) -> dict:
        return {
            "p": self.p,
            "m": self.m,
            "q": self.q,
            "modulus": list(self.modulus),
            "omega": self.omega,
        }


def trace(f: FieldSpec, x: int) -> int:
    """Tr_{q/p}(x) as an element of {0, ..., p-1}."""
    return int(f.trace_table[x])


def _validate_pm(p, m, q_bound):
    if not is_prime(p):
        raise NotPrime(p)
    if m < 1:
        raise ValueError(f"extension degree must be >= 1, got {m}")
    q = p**m
    if q >= q_bound:
        raise FieldTooLarge(q, q_bound)
    return q


def _mult_matrix(mod, p, m, elt_coeffs):
    # matrix of multiplication by elt in the x^j basis: row j = elt * x^j
    W = np.zeros((m, m), dtype=np.int64)
    cur = list(elt_coeffs[:m]) + [0] * (m - len(elt_coeffs))
    for j in range(m):
        W[j, :] = cur
        cur = _poly_mul_mod([0, 1], cur, mod, p)  # multiply by x
    return W


def _find_omega(mod, p, m, q):
    fact = factorize(q - 1) if q > 2 else {}
    one = [1] + [0] * (m - 1)
    for enc in range(1, q):
        coeffs, e = [], enc
        for _ in range(m):
            coeffs.append(e % p)
            e //= p
        ok = True
        for r in fact:
            if _poly_pow_mod(coeffs, (q - 1) // r, mod, p) == one:
                ok = False
                break
        if ok:
            return enc, coeffs
    raise AssertionError("no primitive element found")  # unreachable


_EXP_BLOCK = 1 << 16


def _build_exp_table(mod, p, m, q, omega_coeffs):
    # Powers of omega, block by block: v -> v * omega^s is GF(p)-linear,
    # so a block of consecutive powers extends by one matrix multiply.
    # Only the current block of digit vectors is kept in memory.
    L = q - 1
    powers_of_p = (p ** np.arange(m, dtype=np.int64)).astype(np.int64)
    exp = np.zeros(L, dtype=np.uint32)

    B = min(L, _EXP_BLOCK)
    block = np.zeros((B, m), dtype=np.int64)
    block[0, 0] = 1  # omega^0 = 1
    size = 1
    step_elt = list(omega_coeffs)  # always equals omega^size
    while size < B:
        take = min(size, B - size)
        W = _mult_matrix(mod, p, m, step_elt)
        block[size : size + take] = block[:take] @ W % p
        if size + take < L:
            step_elt = _poly_mul_mod(step_elt, step_elt, mod, p)
        size += take
    exp[:B] = block @ powers_of_p

    if B < L:
        W = _mult_matrix(mod, p, m, _poly_pow_mod(omega_coeffs, B, mod, p))
        for s in range(B, L, B):
            take = min(B, L - s)
            block = block @ W % p
            exp[s : s + take] = block[:take] @ powers_of_p
    return exp


def _build_trace_table(mod, p, m, q):
    # Tr is GF(p)-linear; Tr(x^j) = matrix trace of multiplication by x^j
    if m == 1:
        basis_traces = [1]
    else:
        C = _mult_matrix(mod, p, m, [0, 1])
        M = np.eye(m, dtype=np.int64)
        basis_traces = []
        for _ in range(m):
            basis_traces.append(int(np.trace(M)) % p)
            M = M @ C % p
    tr = np.zeros(q, dtype=np.int64)
    rem = np.arange(q, dtype=np.int64)
    for j in range(m):
        tr += (rem % p) * basis_traces[j]
        rem //= p
    return (tr % p).astype(np.uint8)


def build_field(p: int, m: int, q_bound: int = DEFAULT_Q_BOUND,
                cache_dir=None) -> FieldSpec:
    """Construct GF(p^m) with its exp/dlog/trace tables.

    cache_dir (or the GPCODE_CACHE_DIR environment variable) enables the
    on-disk exp-table cache; results are identical with and without it.
    """
    q = _validate_pm(p, m, q_bound)
    mod = _find_modulus(p, m)
    omega_enc, omega_coeffs = _find_omega(mod, p, m, q)

    exp = None
    cache_path = _cache_path(p, m, cache_dir)
    if cache_path is not None and cache_path.exists():
        exp = _load_cache(cache_path, p, m, mod, q)
    if exp is None:
        exp = _build_exp_table(mod, p, m, q, omega_coeffs)
        if cache_path is not None:
            _save_cache(cache_path, p, m, mod, exp)

    dlog = np.full(q, -1, dtype=np.int64)
    dlog[exp] = np.arange(q - 1, dtype=np.int64)
    if int(exp[0]) != 1 or (q > 2 and int(exp[1]) != omega_enc) or (dlog[1:] < 0).any():
        raise AssertionError("exp table failed the bijection check")

    trace_table = _build_trace_table(mod, p, m, q)
    tr_dlog = trace_table[exp]
    return FieldSpec(
        p=p, m=m, q=q, modulus=mod, omega=omega_enc,
        exp=exp, dlog=dlog, trace_table=trace_table, tr_dlog=tr_dlog,
    )


# ----------------------------------------------------------------------
# exp-table cache: magic "GPCODE1", p, m, modulus coefficients, table.

def _cache_path(p, m, cache_dir):
    d = cache_dir if cache_dir is not None else os.environ.get("GPCODE_CACHE_DIR")
    if not d:
        return None
    d = Path(d)
    d.mkdir(parents=True, exist_ok=True)
    return d / f"gf_{p}_{m}.cache"


def _save_cache(path, p, m, mod, exp):
    header = _MAGIC + struct.pack("<QQQ", p, m, len(mod))
    header += struct.pack(f"<{len(mod)}Q", *mod)
    tmp = path.with_suffix(".tmp")
    with open(tmp, "wb") as fh:
        fh.write(header)
        fh.write(exp.astype("<u4").tobytes())
    tmp.replace(path)


def _load_cache(path, p, m, mod, q):
    try:
        raw = path.read_bytes()
        if raw[: len(_MAGIC)] != _MAGIC:
            raise CacheError(f"{path}: bad magic")
        off = len(_MAGIC)
        cp, cm, nmod = struct.unpack_from("<QQQ", raw, off)
        off += 24
        cmod = struct.unpack_from(f"<{nmod}Q", raw, off)
        off += 8 * nmod
        if (cp, cm) != (p, m) or tuple(cmod) != tuple(mod):
            raise CacheError(f"{path}: header mismatch")
        exp = np.frombuffer(raw, dtype="<u4", offset=off).astype(np.uint32)
        if exp.shape[0] != q - 1:
            raise CacheError(f"{path}: wrong table length")
        return exp
    except CacheError:
        return None  # stale or foreign cache: rebuild and overwrite
