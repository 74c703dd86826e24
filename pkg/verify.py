"""
Γ^(m) 直線化ツールキット - 検証スイープ

verify サブコマンドから呼ばれ、gamma_ring の展開をオラクルと突き合わせる。
"""

import logging
import time
from collections.abc import Callable, Iterator, Sequence
from dataclasses import dataclass, field

import numpy as np
import pandas as pd

from combinatorics import (
    EMPTY,
    Composition,
    Partition,
    count_good_compositions,
    epsilon,
    partitions_of,
)
from config import (
    DEFAULT_SEED,
    SPECIALIZATION_SAMPLES,
    SPECIALIZATION_VALUE_RANGE,
    SPECIALIZATION_VARIABLES,
    STABILITY_SHIFTS,
    Guards,
    load_guards,
)
from errors import GuardExceededError
from gamma_ring import (
    BasisKey,
    basis_monomial,
    coefficient,
    d_coefficient,
    expand_e,
    psi,
    straighten_direct,
    straighten_product,
)
from oracles import (
    EvaluationPoint,
    check_classical_limit,
    check_defining_relation,
    check_specialization,
    d_via_W,
    eq1_sides,
    expand_e_determinant,
    expand_e_recursive,
    p_intersection_sides,
)
from rep_theory import canonical_summand, expand_module, indecomposable_label, is_odd_prime

logger = logging.getLogger(__name__)

ORACLE_SUITES = ('recursive', 'determinant', 'numeric', 'identities')

# ψ の乗法性を確かめる標本数
PSI_PRODUCT_SAMPLES = 50


@dataclass
class CheckResult:
    """1件の検査結果"""
    suite: str
    name: str
    passed: bool
    detail: str = ''


@dataclass
class VerificationReport:
    """検証スイープ全体の結果"""
    moduli: tuple[int, ...]
    max_degree: int
    seed: int
    results: list[CheckResult] = field(default_factory=list)
    elapsed: dict[str, float] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if not r.passed]

    def summary(self) -> pd.DataFrame:
        """スイートごとの件数表（列: suite, checks, passed, failed, seconds）"""
        columns = ['suite', 'checks', 'passed', 'failed', 'seconds']
        if not self.results:
            return pd.DataFrame(columns=columns)
        df = pd.DataFrame([vars(r) for r in self.results])
        summary = (
            df.groupby('suite', sort=False)['passed']
            .agg(checks='size', passed='sum')
            .reset_index()
        )
        summary['failed'] = summary['checks'] - summary['passed']
        summary['seconds'] = summary['suite'].map(self.elapsed).fillna(0.0).round(3)
        return summary[columns]

    def to_dict(self) -> dict:
        summary = self.summary()
        return {
            'moduli': list(self.moduli),
            'max_degree': self.max_degree,
            'seed': self.seed,
            'passed': self.passed,
            'suites': [
                {
                    'suite': row.suite,
                    'checks': int(row.checks),
                    'passed': int(row.passed),
                    'failed': int(row.failed),
                    'seconds': float(row.seconds),
                }
                for row in summary.itertuples(index=False)
            ],
            'failures': [vars(r) for r in self.failures],
        }

    def to_text(self) -> str:
        lines = []
        for row in self.summary().itertuples(index=False):
            lines.append(f'{row.suite}: {int(row.passed)}/{int(row.checks)} passed ({row.seconds:.2f}s)')
        for failure in self.failures:
            lines.append(f'FAIL [{failure.suite}] {failure.name}: {failure.detail}')
        total = len(self.results)
        lines.append(f'total: {total - len(self.failures)}/{total} passed')
        return '\n'.join(lines)


Check = tuple[str, bool, str]


def _compare(name: str, left, right) -> Check:
    if left == right:
        return name, True, ''
    return name, False, f'{left} != {right}'


def _partitions_up_to(n: int) -> Iterator[Partition]:
    for size in range(n + 1):
        yield from partitions_of(size)


def _type_pairs(n: int) -> Iterator[tuple[Partition, Partition]]:
    """|α|+|β| ≤ n となる型の組 (α, β)"""
    for total in range(n + 1):
        for a_size in range(total + 1):
            for alpha in partitions_of(a_size):
                for beta in partitions_of(total - a_size):
                    yield alpha, beta


# ============================================================
# スイート
# ============================================================

def _suite_recursive(moduli: Sequence[int], max_degree: int, guards: Guards, rng) -> Iterator[Check]:
    for m in moduli:
        for n in range(max_degree + 1):
            yield _compare(f'e_{n} m={m}', expand_e(n, m), expand_e_recursive(n, m))


def _suite_determinant(moduli: Sequence[int], max_degree: int, guards: Guards, rng) -> Iterator[Check]:
    for m in moduli:
        for d in range(1, max_degree + 1):
            yield _compare(f'e_{d} m={m}', expand_e(d, m), expand_e_determinant(d, m, guards.determinant))


def _random_composition(rng: np.random.Generator, n: int) -> Composition:
    if n == 0:
        return Composition()
    cuts = [0] + [i for i in range(1, n) if rng.integers(0, 2)] + [n]
    return Composition(b - a for a, b in zip(cuts, cuts[1:]))


def _suite_numeric(moduli: Sequence[int], max_degree: int, guards: Guards, rng) -> Iterator[Check]:
    lo_vars, hi_vars = SPECIALIZATION_VARIABLES
    lo_val, hi_val = SPECIALIZATION_VALUE_RANGE
    for index in range(SPECIALIZATION_SAMPLES):
        m = int(moduli[rng.integers(0, len(moduli))])
        degree = int(rng.integers(0, max_degree + 1))
        a_size = int(rng.integers(0, degree + 1))
        alpha = _random_composition(rng, a_size)
        beta = _random_composition(rng, degree - a_size)
        count = int(rng.integers(lo_vars, hi_vars + 1))
        pt = EvaluationPoint(tuple(int(v) for v in rng.integers(lo_val, hi_val + 1, size=count)))
        ok = check_specialization(alpha, beta, m, pt)
        detail = '' if ok else f'pt={pt.values}'
        yield f'#{index} α=({alpha}) β=({beta}) m={m}', ok, detail


def _suite_identities(moduli: Sequence[int], max_degree: int, guards: Guards, rng) -> Iterator[Check]:
    for m in moduli:
        # d_λ の3通りの計算と、e_{|λ|+rm} における係数の安定性
        for lam in _partitions_up_to(max_degree):
            expected = epsilon(lam) * count_good_compositions(lam, m)
            yield _compare(f'd via W λ=({lam}) m={m}', d_via_W(lam, m, guards.enumeration), expected)
            yield _compare(f'd_coefficient λ=({lam}) m={m}', d_coefficient(lam, m), expected)
            for r in range(STABILITY_SHIFTS + 1):
                e_part = Partition((r * m,)) if r else EMPTY
                found = coefficient(expand_e(lam.size + r * m, m), BasisKey(lam, e_part, m))
                yield _compare(f'stability λ=({lam}) r={r} m={m}', found, expected)

            left, right = eq1_sides(lam, m, guards.enumeration)
            yield _compare(f'eq1 λ=({lam}) m={m}', left, right)

            for j in range(1, lam.size // m + 1):
                left, right = p_intersection_sides(lam, m, j, guards.enumeration)
                yield _compare(f'P-intersection λ=({lam}) j={j} m={m}', left, right)

        for d in range(1, max_degree + 1):
            if d % m:
                yield f'relation d={d} m={m}', check_defining_relation(d, m), ''

        for alpha, beta in _type_pairs(max_degree):
            yield _compare(
                f'straighten α=({alpha}) β=({beta}) m={m}',
                straighten_direct(alpha, beta, m),
                straighten_product(alpha, beta, m),
            )

        monomials = []
        for n in range(max_degree + 1):
            for lam, m_mu in _basis_pairs(n, m):
                monomial = basis_monomial(lam, m_mu, m)
                monomials.append((n, monomial))
                yield _compare(f'ψ² h[{lam}] e[{m_mu}] m={m}', psi(psi(monomial)), monomial)

        # 積の次数が max_degree を超えない組だけを引く
        for index in range(PSI_PRODUCT_SAMPLES):
            a_degree, a = monomials[int(rng.integers(0, len(monomials)))]
            fitting = [b for degree, b in monomials if degree <= max_degree - a_degree]
            b = fitting[int(rng.integers(0, len(fitting)))]
            yield _compare(f'ψ multiplicative #{index} m={m}', psi(a * b), psi(a) * psi(b))

    for n in range(1, max_degree + 1):
        yield f'classical limit n={n}', check_classical_limit(n), ''

    for p in (m for m in moduli if is_odd_prime(m)):
        for alpha, beta in _type_pairs(max_degree):
            pair = canonical_summand(alpha, beta, p)
            found = expand_module(alpha, beta, p).coefficient(pair)
            yield _compare(f'canonical α=({alpha}) β=({beta}) p={p} -> {pair}', found, 1)
        for a in range(max_degree + 1):
            for b in range(max_degree + 1):
                label = indecomposable_label(a, b, p)
                if label is not None:
                    alpha = (a,) if a else ()
                    beta = (b,) if b else ()
                    yield _compare(f'label a={a} b={b} p={p}', label, canonical_summand(alpha, beta, p))


def _basis_pairs(n: int, m: int) -> Iterator[tuple[Partition, Partition]]:
    for s in range(n // m + 1):
        for mu in partitions_of(s):
            for lam in partitions_of(n - m * s):
                yield lam, Partition(m * x for x in mu)


SUITES: dict[str, Callable[..., Iterator[Check]]] = {
    'recursive': _suite_recursive,
    'determinant': _suite_determinant,
    'numeric': _suite_numeric,
    'identities': _suite_identities,
}


def run_verification(
    moduli: Sequence[int],
    max_degree: int,
    oracle: str = 'all',
    seed: int = DEFAULT_SEED,
    guards: Guards | None = None,
) -> VerificationReport:
    """
    オラクルスイートを実行する。

    Args:
        moduli: 検査する m の一覧
        max_degree: 次数の上限
        oracle: 'recursive' / 'determinant' / 'numeric' / 'identities' / 'all'
        seed: 乱数シード（同じシードなら同じ結果）
        guards: ガード設定（省略時は環境変数を考慮した既定値）

    Returns:
        VerificationReport
    """
    guards = guards or load_guards()
    if oracle != 'all' and oracle not in SUITES:
        raise ValueError(f'未知のオラクルです: {oracle}')
    if not moduli or any(isinstance(m, bool) or not isinstance(m, int) or m < 1 for m in moduli):
        raise ValueError(f'm は正の整数の並びで指定してください: {moduli!r}')
    if max_degree < 0:
        raise ValueError(f'--max-degree は0以上で指定してください: {max_degree}')
    if max_degree > guards.sweep:
        raise GuardExceededError('max-degree', max_degree, guards.sweep)

    names = list(SUITES) if oracle == 'all' else [oracle]
    report = VerificationReport(tuple(moduli), max_degree, seed)
    rng = np.random.default_rng(seed)

    for name in names:
        logger.info('【%s】 検証開始 (m=%s, 次数 ≤ %d)', name, ','.join(map(str, moduli)), max_degree)
        start = time.perf_counter()
        for check_name, ok, detail in SUITES[name](moduli, max_degree, guards, rng):
            report.results.append(CheckResult(name, check_name, bool(ok), detail))
            if not ok:
                logger.warning('検証失敗 [%s] %s %s', name, check_name, detail)
        report.elapsed[name] = time.perf_counter() - start
        done = [r for r in report.results if r.suite == name]
        logger.info(
            '【%s】 %d/%d 件成功 (%.2f秒)',
            name, sum(r.passed for r in done), len(done), report.elapsed[name],
        )
    return report
