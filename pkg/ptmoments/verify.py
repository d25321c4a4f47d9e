#
#  ptmoments/verify.py
#  PartialTransposeMoments
#
#  Brute-force verification suites: every identity used by the exact
#  pipeline, checked by enumeration at small sizes.
#
import logging
log = logging.getLogger(__name__)

import numpy as np
from math import factorial
from fractions import Fraction
from itertools import product
from dataclasses import dataclass, field
from scipy.sparse import csr_matrix

from .utils import PtmUsageError, check_cap
from .permutations import (CycleType,
                           Permutation,
                           catalan,
                           compose,
                           inverse,
                           cycle_count,
                           cycle_type,
                           enumerate_sk,
                           standard_cycle,
                           count_defect,
                           defect_histogram,
                           geodesic_catalan_product,
                           adrianov_B,
                           lemma2_count_bound,
                           primitive_factorization_table,
                           primitive_factorization_count)
from .symmetric import partitions_of, syt_count, mn_character, schur_dim
from .weingarten import (wg_exact,
                         wg_cycle_formula,
                         wg_series_truncated,
                         wg_bound_check,
                         verify_gram_inverse)
from .operators import RngStream, random_hermitian

MAX_VERIFY_DEGREE = 7
SUITES = ('lemma2', 'adrianov', 'gram', 'characters', 'series', 'trace', 'cycle')

@dataclass
class SuiteReport:
    name: str
    passed: bool = True
    checks: int = 0
    counterexample: str = None
    details: dict = field(default_factory = dict)

    def check(self, ok, message):
        """ Record one check; keep the first failure as the counterexample. """
        self.checks += 1
        if not ok and self.passed:
            self.passed = False
            self.counterexample = message
            log.warning(f'{self.name}: {message}')
        return ok

def suite_lemma2(kmax):
    rep = SuiteReport('lemma2')
    for k in range(1, kmax + 1):
        for mu in partitions_of(k):
            pi = Permutation.from_cycle_type(mu)
            hist = defect_histogram(pi)
            rep.check(sum(hist.values()) == factorial(k), f'{mu}: counts do not sum to {k}!')
            for delta, count in hist.items():
                rep.check(delta >= 0, f'{mu}: c(π⁻¹σ) + c(σ) > k + c(π) (δ={delta})')
                if delta % 2:
                    rep.check(count == 0, f'{mu}: {count} permutations at odd δ={delta}')
                    continue
                bound = lemma2_count_bound(k, delta)
                rep.check(count <= bound, f'{mu}, δ={delta}: count {count} > {bound}')
                ratio = Fraction(count, bound)
                key = f'k={k},delta={delta}'
                rep.details[key] = max(rep.details.get(key, Fraction(0)), ratio)
            geo = count_defect(pi, 0).count
            rep.check(geo == geodesic_catalan_product(mu),
                      f'{mu}: {geo} geodesic permutations, expected ∏ C_μi')
            rep.check(geo <= catalan(k), f'{mu}: {geo} geodesic permutations exceed C_{k}')
    return rep

def suite_adrianov(kmax):
    rep = SuiteReport('adrianov')
    for k in range(1, kmax + 1):
        kappa = standard_cycle(k)
        rep.check(adrianov_B(0, k) == catalan(k), f'B_0({k}) != C_{k}')
        for g in range((k - 1) // 2 + 1):
            brute = count_defect(kappa, g).count
            rec = adrianov_B(g, k)
            rep.details[f'B_{g}({k})'] = rec
            rep.check(brute == rec, f'B_{g}({k}) = {rec} but enumeration gives {brute}')
    return rep

def suite_gram(kmax):
    rep = SuiteReport('gram')
    for k in range(1, min(kmax, 5) + 1):
        for d in (k, k + 1, k + 2):
            res = verify_gram_inverse(k, d)
            msg = None if res.passed else f'k={k}, d={d}: entry {res.failure}'
            rep.check(res.passed, msg)
    return rep

def suite_characters(kmax):
    rep = SuiteReport('characters')
    for k in range(1, min(kmax, 6) + 1):
        parts = list(partitions_of(k))
        rep.check(sum(syt_count(lam) ** 2 for lam in parts) == factorial(k),
                  f'Σ (f^λ)² != {k}!')
        types = [cycle_type(p) for p in enumerate_sk(k)]
        table = {(lam, mu): mn_character(lam, mu) for lam in parts for mu in parts}
        for lam in parts:
            rep.check(table[(lam, CycleType((1,) * k))] == syt_count(lam),
                      f'χ^{lam}(e) != f^{lam}')
            for nu in parts:
                s = sum(table[(lam, t)] * table[(nu, t)] for t in types)
                rep.check(s == (factorial(k) if lam == nu else 0),
                          f'<χ^{lam}, χ^{nu}> = {s}')
        for d in range(k, k + 4):
            for mu in parts:
                s = sum(schur_dim(lam, d) * table[(lam, mu)] for lam in parts)
                rep.check(s == d ** len(mu), f'Σ s_λ(1^{d}) χ^λ({mu}) = {s}')
    return rep

def suite_series(kmax):
    rep = SuiteReport('series')
    for d in (2, 3, 4):
        for mu in ((2,), (1, 1)):
            exact = wg_exact(mu, d)
            previous = None
            for max_len in range(8):
                err = abs(exact - wg_series_truncated(mu, d, max_len))
                # all terms share a sign; the tail is geometric with ratio 1/d²
                parity = len(mu) % 2
                nxt = max_len + 1 if (max_len + 1) % 2 == parity else max_len + 2
                tail = Fraction(1, d ** (nxt + 2)) * Fraction(d * d, d * d - 1)
                rep.check(err == tail, f'Wg{mu}, d={d}, len={max_len}: error {err} != {tail}')
                if previous is not None:
                    rep.check(err <= previous, f'Wg{mu}, d={d}: error grew at len={max_len}')
                previous = err
    for k in range(2, min(kmax, 4) + 1):
        for length in range(7):
            values = {}
            for p, w in primitive_factorization_table(k, length).items():
                values.setdefault(cycle_type(p), set()).add(w)
            for mu, ws in values.items():
                rep.check(len(ws) == 1, f'w_{length} not constant on class {mu}: {ws}')
    # the full cycle dominates: w_{k-c(π)+2g}(π) <= w_{k-1+2g}(κ)
    for k in range(2, min(kmax, 5) + 1):
        kappa = standard_cycle(k)
        for g in range(3):
            top = primitive_factorization_count(kappa, k - 1 + 2 * g)
            for mu in partitions_of(k):
                w = primitive_factorization_count(Permutation.from_cycle_type(mu),
                                                  k - len(mu) + 2 * g)
                rep.check(w <= top, f'w({mu}) = {w} exceeds w(κ) = {top} at k={k}, g={g}')
    return rep

def perm_operator(p, d):
    """ D_d(π) on (C^d)^{⊗k}: sends system j to slot π(j), i.e.
    D(π)|j_1 ... j_k> = |i_1 ... i_k> with i_{π(n)} = j_n. """
    k = p.k
    rows, cols = [], []
    for j in product(range(d), repeat = k):
        i = [0] * k
        for n in range(k):
            i[p(n + 1) - 1] = j[n]
        rows.append(int(np.ravel_multi_index(i, (d,) * k)))
        cols.append(int(np.ravel_multi_index(j, (d,) * k)))
    side = d ** k
    return csr_matrix((np.ones(side), (rows, cols)), shape = (side, side))

def _transpose_b(x, k, dA, dB):
    # systems ordered (A1 B1 A2 B2 ...); transpose every B factor
    t = x.reshape((dA, dB) * k * 2)
    axes = list(range(4 * k))
    for m in range(k):
        rb, cb = 2 * m + 1, 2 * k + 2 * m + 1
        axes[rb], axes[cb] = cb, rb
    side = (dA * dB) ** k
    return t.transpose(axes).reshape(side, side)

def suite_trace(kmax):
    rep = SuiteReport('trace')
    gen = RngStream(0).generator()
    for k in range(1, min(kmax, 3) + 1):
        kappa = standard_cycle(k)
        kinv = inverse(kappa)
        perms = list(enumerate_sk(k))
        for d in (2, 3):
            for p in perms:
                tr = perm_operator(p, d).diagonal().sum()
                rep.check(tr == d ** cycle_count(p), f'tr D_{d}({p}) = {tr}')
            for p, q in product(perms, repeat = 2):
                lhs = perm_operator(p, d) @ perm_operator(q, d)
                rep.check((lhs != perm_operator(compose(p, q), d)).nnz == 0,
                          f'D({p}) D({q}) != D({p}∘{q}) at d={d}')
            xs = [random_hermitian(d, gen).matrix for _ in range(k)]
            big = xs[0]
            for x in xs[1:]:
                big = np.kron(big, x)
            lhs = (perm_operator(kappa, d) @ big).trace()
            ordered = np.eye(d)
            for x in xs:
                ordered = x @ ordered
            rep.check(abs(lhs - np.trace(ordered)) <= 1e-9 * max(1, abs(lhs)),
                      f'tr[D(κ) X_1⊗...⊗X_k] != tr[X_k...X_1] at k={k}, d={d}')
            power = np.linalg.matrix_power(xs[0], k)
            same = xs[0]
            for _ in range(k - 1):
                same = np.kron(same, xs[0])
            val = (perm_operator(kappa, d) @ same).trace()
            rep.check(abs(val - np.trace(power)) <= 1e-9 * max(1, abs(val)),
                      f'tr[X^{k}] != tr[D(κ) X^⊗{k}] at d={d}')
        for dA, dB in product((1, 2, 3), repeat = 2):
            gamma = _transpose_b(perm_operator(kappa, dA * dB).toarray(), k, dA, dB)
            for p in perms:
                val = int(round(np.sum(gamma.T * perm_operator(p, dA * dB).toarray())))
                expected = dA ** cycle_count(compose(kappa, p)) * dB ** cycle_count(compose(kinv, p))
                rep.check(val == expected,
                          f'tr[D(κ)^Γ D({p})] = {val} != {expected} (d_A={dA}, d_B={dB})')
    return rep

def suite_cycle(kmax):
    rep = SuiteReport('cycle')
    for k in range(1, min(kmax, 6) + 1):
        for d in range(k, k + 4):
            a, b = wg_exact((k,), d), wg_cycle_formula(k, d)
            rep.check(a == b, f'Wg(({k},), {d}) = {a} != {b}')
        if k <= 5:
            for d in range(k, k + 3):
                for mu in partitions_of(k):
                    sign = (-1) ** (k - len(mu))
                    rep.check(wg_exact(mu, d) * sign > 0, f'sign of Wg({mu}, {d})')
        d = k
        while k ** 3 > d * d:
            d += 1
        res = wg_bound_check(k, d)
        rep.details[f'k={k},d={d}'] = res.max_ratio
        rep.check(res.passed, f'|Wg| bound fails for k={k}, d={d}: ratio {res.max_ratio}')
    return rep

_SUITES = {'lemma2': suite_lemma2,
           'adrianov': suite_adrianov,
           'gram': suite_gram,
           'characters': suite_characters,
           'series': suite_series,
           'trace': suite_trace,
           'cycle': suite_cycle}

def verify_suites(kmax, suites = None):
    """ Run the named suites (all by default) up to degree `kmax` (<= 7).

    Returns:
        dict: suite name -> SuiteReport.
    """
    check_cap('kmax', kmax, MAX_VERIFY_DEGREE)
    if kmax < 1:
        raise PtmUsageError(f'kmax must be positive, got {kmax}.')
    if suites is None or 'all' in suites:
        suites = SUITES
    unknown = [s for s in suites if s not in _SUITES]
    if unknown:
        raise PtmUsageError(f'Unknown verification suite(s): {", ".join(unknown)}.')
    out = {}
    for name in suites:
        log.info(f'Running suite {name} (kmax={kmax}).')
        out[name] = _SUITES[name](kmax)
    return out

