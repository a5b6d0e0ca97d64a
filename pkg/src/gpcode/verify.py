"""Verification suites: exact reproduction of the worked examples and
exhaustive small-field sweeps of every cross-implementation identity.

Each suite returns a SuiteReport with one line per check; the CLI
`verify` subcommand prints the lines, and the acceptance tests assert
`passed`.  Sweep bounds are the suite defaults below; they are chosen so
the whole battery runs in minutes on one core while covering every
worked example exactly and every identity on a dense grid of small
fields.
"""

from collections import Counter
from dataclasses import dataclass, field as dfield
from functools import lru_cache

import numpy as np

from . import closed_forms as cf
from . import codes, curves, graph, kernels, periods
from .field import build_field, factorize, is_primitive_divisor, psi, small_primes

BRIDGE_SWEEP_Q = 1 << 14
BRIDGE_SWEEP_PRIMES = (2, 3, 5, 7)
ORACLE_SWEEP_Q = 1 << 12
COMPOSITION_SWEEP_Q = 1 << 20
CURVE_EXHAUSTIVE_Q = 1 << 11
CURVE_EXTENSION_Q = 1 << 12
CURVE_SAMPLED_FIELDS = (
    (2, 13), (2, 14), (2, 16), (3, 9), (3, 10),
    (5, 6), (7, 5), (11, 4), (13, 4), (251, 2),
)
CURVE_SAMPLES = 1024
NAIVE_FULL_Q = 32
NAIVE_SPOT_Q = 256


@dataclass
class SuiteReport:
    name: str
    lines: list = dfield(default_factory=list)
    failures: list = dfield(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, label: str):
        self.lines.append(f"{'PASS' if ok else 'FAIL'}  {label}")
        if not ok:
            self.failures.append(label)

    def note(self, label: str):
        self.lines.append(f"      {label}")

    def render(self) -> str:
        head = f"== suite {self.name}: {'PASS' if self.passed else 'FAIL'}"
        return "\n".join([head] + self.lines)


@lru_cache(maxsize=512)
def _field(p, m):
    return build_field(p, m)


def _prime_powers(max_q, min_m=1, primes=None):
    out = []
    ps = primes if primes is not None else [int(x) for x in small_primes()]
    for p in ps:
        if p**min_m > max_q:
            break
        m = min_m
        while p**m <= max_q:
            out.append((p, m, p**m))
            m += 1
    return sorted(out, key=lambda t: t[2])


def _divisors(n):
    out = [1]
    for r, e in factorize(n).items():
        out = [d * r**i for d in out for i in range(e + 1)]
    return sorted(out)


def _bridge_pairs(max_q, primes):
    """(p, m, k) with k | (q-1)/(p-1) and n = (q-1)/k a primitive divisor."""
    for p, m, q in _prime_powers(max_q, primes=primes):
        for k in _divisors((q - 1) // (p - 1)):
            if is_primitive_divisor((q - 1) // k, p, m):
                yield p, m, k


def _undirected_pairs(max_q):
    """(p, m, k) over all prime powers with k | q-1 giving undirected graphs."""
    for p, m, q in _prime_powers(max_q):
        top = q - 1 if p == 2 else (q - 1) // 2
        for k in _divisors(top):
            yield p, m, k


# ----------------------------------------------------------------------
# worked-example suites

def one_weight_example(workers: int = 1) -> SuiteReport:
    """Seven-fold tower over the simplex code of GF(8) inside GF(2^21)."""
    rep = SuiteReport("one-weight-example")
    expected = {0: 1, 4: 49, 8: 1029, 12: 12005, 16: 84035,
                20: 352947, 24: 823543, 28: 823543}
    tower = cf.one_weight_tower(2, 3, 7)
    rep.check(tower.table == expected, "closed-form table has the expected rows")
    f = _field(2, 21)
    brute = codes.brute_weight_distribution(f, 42799, workers=workers)
    rep.check(brute.matches(tower), "brute force over GF(2^21) agrees exactly")
    return rep


def semiprimitive_example() -> SuiteReport:
    """The [36, 6, 8] code for (434, 5^6) from the Paley base over GF(25)."""
    rep = SuiteReport("semiprimitive-example")
    expected = {0: 1, 8: 36, 12: 36, 16: 432, 20: 864, 24: 2160,
                28: 5184, 32: 5184, 36: 1728}
    tower = cf.semiprimitive_tower(5, 2, 2, 3)
    rep.check(tower.table == expected, "closed-form table has the expected rows")
    f = _field(5, 6)
    brute = codes.brute_weight_distribution(f, 434)
    rep.check(brute.matches(tower), "brute force over GF(5^6) agrees exactly")
    rep.check(brute.length == 36, "length 36")
    rep.check(brute.min_distance() == 8, "minimum distance 8")
    distinct = len({codes.codeword(f, 434, g).tobytes() for g in range(f.q)})
    rep.check(distinct == 5**6, "q distinct codewords: dimension 6")
    return rep


def cubic_table() -> SuiteReport:
    """Ten-row table of the tower code for (516, 7^6)."""
    rep = SuiteReport("cubic-table")
    expected = {0: 1, 96: 228, 108: 228, 90: 228, 192: 114**2, 216: 114**2,
                180: 114**2, 204: 2 * 114**2, 186: 2 * 114**2, 198: 2 * 114**2}
    tower = cf.cubic_tower(7, 1, 2)
    rep.check(tower.table == expected, "closed-form table has the ten expected rows")
    f = _field(7, 6)
    brute = codes.brute_weight_distribution(f, 516)
    rep.check(brute.matches(tower), "brute force over GF(7^6) agrees exactly")
    spec_check = all(
        t.value == 2 * (49 * sum(t.exponents[1:]) - t.exponents[1]
                        + 5 * t.exponents[2] - 4 * t.exponents[3])
        for t in tower.indexed
    )
    rep.check(spec_check, "indexed weights equal 2(49h - l1 + 5l2 - 4l3)")
    return rep


def table1_symbolic(ps=(5, 11)) -> SuiteReport:
    """Row-by-row symbolic form of the three-fold Paley tower at given p."""
    rep = SuiteReport("table1-symbolic")
    for p in ps:
        c = (p * p - 1) // 2
        rows = {
            (3, 0, 0): (0, 1),
            (2, 1, 0): ((p - 1) ** 2 // 2, 3 * c),
            (1, 2, 0): ((p - 1) ** 2, 3 * c**2),
            (0, 3, 0): (3 * (p - 1) ** 2 // 2, c**3),
            (2, 0, 1): ((p * p - 1) // 2, 3 * c),
            (1, 0, 2): (p * p - 1, 3 * c**2),
            (0, 0, 3): (3 * (p * p - 1) // 2, c**3),
            (1, 1, 1): (p * (p - 1), 6 * c**2),
            (0, 2, 1): ((p - 1) * (3 * p - 1) // 2, 3 * c**3),
            (0, 1, 2): ((p - 1) * (3 * p + 1) // 2, 3 * c**3),
        }
        tower = cf.semiprimitive_tower(p, 2, 2, 3)
        got = {t.exponents: (t.value, t.frequency) for t in tower.indexed}
        rep.check(got == rows, f"p = {p}: all ten indexed rows match the formulas")
    return rep


def period_example() -> SuiteReport:
    """Periods for (434, 5^6): values, multiplicities, and identities."""
    rep = SuiteReport("period-example")
    f = _field(5, 6)
    ps = periods.gaussian_periods(f, 434)
    expected = {26: 36, 21: 36, 16: 432, 11: 864, 6: 2160,
                1: 5184, -4: 5184, -9: 1728}
    rep.check(ps.value_multiset() == expected,
              "nine period values with the expected multiplicities")
    merged = ps.merged()
    rep.check(len(merged[6][1]) == 60, "value 6 aggregates 60 cosets (12 + 48)")
    rel = periods.check_relations(ps)
    rep.check(rel.sum_ok, "sum of all periods is -1")
    v = np.asarray(ps.values, dtype=np.int64)
    rep.check(int(v @ v) == 15589, "sum of squared periods is 15589 = q - n")
    rep.check(rel.shifted_ok, "all shifted sums equal -36 = -n (j != 0)")
    g = graph.graph_spec(5, 6, 434)
    spec = graph.spectrum(g, f)
    rep.check(spec.entries.get(36) == 1, "trivial eigenvalue [36]^1 present")
    expected_spec = dict(expected)
    expected_spec[36] = 1
    rep.check(spec.entries == expected_spec, "full spectrum matches")
    return rep


# ----------------------------------------------------------------------
# sweep suites

def bridge_sweep(max_q: int = BRIDGE_SWEEP_Q,
                 primes=BRIDGE_SWEEP_PRIMES, workers: int = 1) -> SuiteReport:
    """weights_from_spectrum(spectrum()) == brute distribution, exactly,
    for every (p, m, k) with the bridge hypotheses in range."""
    rep = SuiteReport("bridge-sweep")
    bad, count = [], 0
    for p, m, k in _bridge_pairs(max_q, primes):
        f = _field(p, m)
        g = graph.graph_spec(p, m, k)
        params = codes.code_params(p, m, k)
        via_spec = codes.weights_from_spectrum(graph.spectrum(g, f), params)
        brute = codes.brute_weight_distribution(f, k, workers=workers)
        count += 1
        if not via_spec.matches(brute):
            bad.append((p, m, k))
    rep.check(not bad, f"exact table equality on {count} (p, m, k) triples"
                       + (f"; failures: {bad[:5]}" if bad else ""))
    return rep


def spectrum_oracle_sweep(max_q: int = ORACLE_SWEEP_Q) -> SuiteReport:
    """spectrum() == brute character-sum oracle for every undirected
    graph with q <= max_q, including non-integral spectra."""
    rep = SuiteReport("spectrum-oracle-sweep")
    bad, count = [], 0
    for p, m, k in _undirected_pairs(max_q):
        f = _field(p, m)
        g = graph.graph_spec(p, m, k)
        s1 = graph.spectrum(g, f)
        s2 = graph.brute_spectrum_oracle(g, f, max_q=max_q)
        count += 1
        if s1 != s2 or s1.total() != g.q or not s1.is_traceless():
            bad.append((p, m, k))
        if g.connected and s1.entries.get(g.n) != 1:
            bad.append((p, m, k, "trivial multiplicity"))
    rep.check(not bad, f"oracle equality on {count} undirected graphs"
                       + (f"; failures: {bad[:5]}" if bad else ""))
    return rep


def _decomposable_pairs(max_q):
    for p, m, q in _prime_powers(max_q, min_m=2):
        for k in _divisors(q - 1):
            g = graph.graph_spec(p, m, k)
            if k != g.k or not (g.undirected and g.connected):
                continue
            w = graph.find_decomposition(g)
            if w is None:
                continue
            c = w.c
            if c % (p - 1) != 0:
                continue  # tower formulas need p-1 | c
            yield g, w


def composition_sweep(max_q: int = COMPOSITION_SWEEP_Q,
                      workers: int = 1) -> SuiteReport:
    """compose(brute base, b) == brute tower for every decomposition
    witness with p^{ab} <= max_q."""
    rep = SuiteReport("composition-sweep")
    bad, count = [], 0
    for g, w in _decomposable_pairs(max_q):
        base = codes.brute_weight_distribution(_field(g.p, w.a), w.u)
        composed = cf.compose(base, w.b)
        brute = codes.brute_weight_distribution(_field(g.p, g.m), g.k,
                                                workers=workers)
        count += 1
        if not composed.matches(brute):
            bad.append((g.p, g.m, g.k, w))
    rep.check(count > 0, f"found {count} decomposable towers in range")
    rep.check(not bad, f"composition equals brute on all {count} towers"
                       + (f"; failures: {bad[:3]}" if bad else ""))
    return rep


def curve_suite(workers: int = 1) -> SuiteReport:
    """Point counts: trace criterion vs naive loop, weight identity for
    every beta on small fields, sampled beta on larger fields, the
    count-set of the degree-21 binary example, and the congruences."""
    rep = SuiteReport("curve-suite")

    # (a) the Hilbert-90 trace criterion against the naive (x, y) loop
    bad = []
    for p, m, q in _prime_powers(NAIVE_SPOT_Q):
        f = _field(p, m)
        for k in _divisors(q - 1):
            betas = range(q) if q <= NAIVE_FULL_Q else \
                [0] + [int(f.exp[d]) for d in range(0, q - 1, max(1, (q - 1) // 7))]
            for beta in betas:
                if curves.count_points_naive(f, k, beta) != \
                        curves.count_points_brute(f, k, beta):
                    bad.append((p, m, k, beta))
    rep.check(not bad, "trace criterion matches the naive (x, y) count"
                       + (f"; failures: {bad[:5]}" if bad else ""))

    # (b) weight identity for every beta, exhaustively on small fields
    bad, nfields = [], 0
    for p, m, q in _prime_powers(CURVE_EXHAUSTIVE_Q):
        _curve_field_check(p, m, bad, workers)
        nfields += 1
    for p, m, q in _prime_powers(CURVE_EXTENSION_Q, min_m=2):
        if q <= CURVE_EXHAUSTIVE_Q:
            continue
        _curve_field_check(p, m, bad, workers)
        nfields += 1
    rep.check(not bad, f"count == p^(m+1) - p k w + 1 for every beta on "
                       f"{nfields} fields" + (f"; failures: {bad[:5]}" if bad else ""))

    # (c) sampled beta on the larger fields
    bad = []
    for p, m in CURVE_SAMPLED_FIELDS:
        f = _field(p, m)
        q = f.q
        params_ks = [k for k in _divisors(q - 1)
                     if ((q - 1) // (p - 1)) % k == 0
                     and is_primitive_divisor((q - 1) // k, p, m)]
        step = max(1, (q - 1) // CURVE_SAMPLES)
        dlogs = np.arange(0, q - 1, step, dtype=np.int64)
        for k in params_ks:
            zero = kernels.curve_zero_counts(f.tr_dlog, k, dlogs, workers=workers)
            cp = codes.code_params(p, m, k)
            for d, z in zip(dlogs, zero):
                beta = int(f.exp[d])
                w = int((codes.codeword(f, k, beta) != 0).sum())
                if 1 + p * (1 + int(z)) != curves.count_from_weight(cp, w):
                    bad.append((p, m, k, int(d)))
            # the eigenvalue variant must disagree exactly when m > 1
            w0 = int((codes.codeword(f, k, int(f.exp[0])) != 0).sum())
            lam = cp.n - p * w0 // (p - 1)
            derived, variant = curves.count_points_from_eigenvalue(cp, lam)
            if (derived == variant) != (m == 1):
                bad.append((p, m, k, "variant-discrepancy"))
    rep.check(not bad, f"sampled-beta weight identity on {len(CURVE_SAMPLED_FIELDS)} "
                       f"larger fields" + (f"; failures: {bad[:5]}" if bad else ""))

    # (d) degree-21 binary example: the full count set
    f8 = _field(2, 3)
    tower = cf.one_weight_tower(2, 3, 7)
    k21 = psi(8, 7) // 7
    expected_counts = {2**22 + 1 - k21 * l * 8 for l in range(8)}
    f21 = _field(2, 21)
    brute = codes.brute_weight_distribution(f21, k21, workers=workers)
    got_counts = {2**22 - 2 * k21 * w + 1 for w in brute.table}
    rep.check(got_counts == expected_counts,
              "count set {2^22 + 1 - 8 k l} reproduced from the brute table")
    spot = [0, 1, 12345, 2**20 + 7]
    ok_spot = True
    for d in spot:
        beta = int(f21.exp[d])
        cnt = curves.count_points_brute(f21, k21, beta)
        w = int((codes.codeword(f21, k21, beta) != 0).sum())
        ok_spot &= cnt == 2**22 - 2 * k21 * w + 1 and cnt in expected_counts
    rep.check(ok_spot, "spot-checked brute counts over GF(2^21) land in the set")

    # (e) subfield reduction and congruences
    reps_by_weight = {}
    for al in range(f8.q):
        w = int((codes.codeword(f8, 1, al) != 0).sum())
        reps_by_weight.setdefault(w, al)
    alpha_sets = [[reps_by_weight[4]] * l + [0] * (7 - l) for l in range(8)]
    base8 = codes.brute_weight_distribution(f8, 1)
    composed8 = cf.compose(base8, 7)
    ok_red, ok_cong = True, True
    for alphas in alpha_sets:
        red = curves.curve_reduction(f8, 7, 1, alphas, composed=composed8)
        ok_red &= red.count == red.count_via_subcounts and red.count in expected_counts
        ok_cong &= curves.count_congruences(red).ok
    rep.check(ok_red, "subfield reduction reproduces the count set")
    rep.check(ok_cong, "all displayed congruences hold for the binary family")

    f25 = _field(5, 2)
    base25 = codes.brute_weight_distribution(f25, 2)
    composed25 = cf.compose(base25, 3)
    reps = {}
    for al in range(25):
        reps.setdefault(int((codes.codeword(f25, 2, al) != 0).sum()), al)
    ok_cong = True
    for w1 in sorted(reps):
        for w2 in sorted(reps):
            for w3 in sorted(reps):
                red = curves.curve_reduction(
                    f25, 3, 2, [reps[w1], reps[w2], reps[w3]], composed=composed25
                )
                ok_cong &= curves.count_congruences(red).ok
                ok_cong &= red.count == red.count_via_subcounts
    rep.check(ok_cong, "congruences hold across the full (5, 2, 3, 2) weight family")
    return rep


def _weights_per_beta(f, k):
    # codeword weight for beta = omega^d, every d, chunked to bound memory
    L = f.q - 1
    n = L // k
    offs = (k * np.arange(n, dtype=np.int64)) % L
    out = np.empty(L, dtype=np.int64)
    step = max(1, (1 << 22) // n)
    nz = (f.tr_dlog != 0).astype(np.int64)
    for lo in range(0, L, step):
        d = np.arange(lo, min(lo + step, L), dtype=np.int64)
        out[lo : lo + len(d)] = nz[(d[:, None] + offs[None, :]) % L].sum(axis=1)
    return out


def _curve_field_check(p, m, bad, workers):
    f = _field(p, m)
    q = f.q
    for k in _divisors(q - 1):
        counts = curves.counts_all_beta(f, k, workers=workers)
        w_all = _weights_per_beta(f, k)
        expect = p ** (m + 1) - p * k * w_all + 1
        if counts[0] != p ** (m + 1) + 1 or not (counts[1:] == expect).all():
            bad.append((p, m, k))
            continue
        # multiset bijection with the weight distribution
        brute = codes.brute_weight_distribution(f, k)
        cnt_multiset = Counter(counts.tolist())
        wd_multiset = Counter()
        for w, a in brute.table.items():
            wd_multiset[p ** (m + 1) - p * k * w + 1] += a
        if cnt_multiset != wd_multiset:
            bad.append((p, m, k, "multiset"))


def relation_suite(max_q_bridge: int = BRIDGE_SWEEP_Q,
                   max_q_all: int = ORACLE_SWEEP_Q) -> SuiteReport:
    """Partition and arithmetic identities for every period set computed
    in the bridge and oracle sweeps (non-integral sets included)."""
    rep = SuiteReport("relation-suite")
    bad_partition, bad_full, n_sets, n_full = [], [], 0, 0
    seen = set()
    pairs = list(_bridge_pairs(max_q_bridge, BRIDGE_SWEEP_PRIMES))
    pairs += [t for t in _undirected_pairs(max_q_all)]
    for p, m, k in pairs:
        if (p, m, k) in seen:
            continue
        seen.add((p, m, k))
        f = _field(p, m)
        ps = periods.gaussian_periods(f, k)
        rel = periods.check_relations(ps)
        n_sets += 1
        if not rel.partition_ok:
            bad_partition.append((p, m, k))
        if rel.full_applicable:
            n_full += 1
            if not (rel.integral and rel.mod_p_ok and rel.sum_ok and rel.shifted_ok):
                bad_full.append((p, m, k, rel.failures))
    rep.check(not bad_partition, f"partition identities on {n_sets} period sets"
              + (f"; failures: {bad_partition[:5]}" if bad_partition else ""))
    rep.check(not bad_full, f"integrality, mod-p, sum and shifted identities on "
              f"{n_full} applicable sets" + (f"; failures: {bad_full[:3]}" if bad_full else ""))
    return rep


ALL_SUITES = {
    "one-weight-example": one_weight_example,
    "semiprimitive-example": semiprimitive_example,
    "cubic-table": cubic_table,
    "table1-symbolic": table1_symbolic,
    "period-example": period_example,
    "bridge": bridge_sweep,
    "spectrum-oracle": spectrum_oracle_sweep,
    "composition": composition_sweep,
    "curves": curve_suite,
    "relations": relation_suite,
}

PAPER_TABLE_SUITES = ("one-weight-example", "semiprimitive-example",
                      "cubic-table", "table1-symbolic", "period-example")


def run_suite(name: str, **kwargs) -> list:
    """Run one suite, 'paper-tables', or 'all'; returns SuiteReports."""
    if name == "all":
        return [fn() for fn in ALL_SUITES.values()]
    if name == "paper-tables":
        return [ALL_SUITES[s]() for s in PAPER_TABLE_SUITES]
    if name not in ALL_SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from "
                       f"{', '.join(list(ALL_SUITES) + ['paper-tables', 'all'])}")
    return [ALL_SUITES[name](**kwargs)]
