"""
Γ^(m) 直線化ツールキット - 独立オラクル

gamma_ring の展開を別経路で検算するための実装群。
定義関係からの再帰的簡約、Hessenberg 型行列式、W(λ) の交代和、
恒等式の両辺評価、x = y での数値特殊化を提供する。
"""

import logging
import operator
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import lru_cache
from math import prod

from combinatorics import (
    EMPTY,
    Composition,
    count_rearrangements,
    enumerate_P_i,
    enumerate_W,
    epsilon,
    index_subsets,
    partitions_of,
    split_multiset,
    type_of,
)
from config import CACHE_SIZE, load_guards
from errors import GuardExceededError
from gamma_ring import BasisKey, RingElement, basis_monomial, coefficient, d_coefficient, expand_e, straighten_direct

logger = logging.getLogger(__name__)


def _check_modulus(m: int) -> None:
    if isinstance(m, bool) or not isinstance(m, int) or m < 1:
        raise ValueError(f'm は正の整数である必要があります: {m!r}')


def _h(k: int, m: int) -> RingElement:
    if k < 0:
        return RingElement.zero(m)
    if k == 0:
        return RingElement.one(m)
    return basis_monomial((k,), EMPTY, m)


# ============================================================
# 定義関係からの再帰
# ============================================================

@lru_cache(maxsize=CACHE_SIZE)
def _expand_e_recursive(n: int, m: int) -> RingElement:
    if n == 0:
        return RingElement.one(m)
    if n % m == 0:
        return basis_monomial(EMPTY, (n,), m)
    result = RingElement.zero(m)
    for i in range(1, n + 1):
        term = _h(i, m) * _expand_e_recursive(n - i, m)
        result = result + (term if i % 2 else -term)
    return result


def expand_e_recursive(n: int, m: int) -> RingElement:
    """m ∤ n のとき e_n = Σ_{i=1}^n (−1)^(i−1) h_i e_{n−i} を再帰的に解く"""
    _check_modulus(m)
    if n < 0:
        raise ValueError(f'n は0以上で指定してください: {n}')
    return _expand_e_recursive(n, m)


# ============================================================
# 行列式
# ============================================================

@dataclass(frozen=True)
class HessenbergMatrix:
    """e_d を与える d×d 行列 (a_ij)。成分は Γ^(m) の元。"""
    dimension: int
    modulus: int

    def __post_init__(self):
        if self.dimension < 1:
            raise ValueError(f'次元は1以上で指定してください: {self.dimension}')
        _check_modulus(self.modulus)

    def entry(self, i: int, j: int) -> RingElement:
        """
        a_ij（1始まり）

        m ∤ j の列は h_{1−i+j}、m | j の列は 1 行目に (−1)^(j+1) e_j、(j+1, j) に 1。
        """
        m = self.modulus
        if not (1 <= i <= self.dimension and 1 <= j <= self.dimension):
            raise IndexError(f'添字が範囲外です: ({i}, {j})')
        if j % m:
            return _h(1 - i + j, m)
        if i == 1:
            generator = basis_monomial(EMPTY, (j,), m)
            return generator if j % 2 else -generator
        if i == j + 1:
            return RingElement.one(m)
        return RingElement.zero(m)

    def principal_minors(self) -> list[RingElement]:
        """
        先頭主小行列式 D_0,…,D_d を最終列の余因子展開で求める。

        i > j+1 の成分は 0 なので
        D_k = Σ_i (−1)^(k−i) a_ik (∏_{l=i}^{k−1} a_{l+1,l}) D_{i−1}。
        """
        m = self.modulus
        minors = [RingElement.one(m)]
        for k in range(1, self.dimension + 1):
            total = RingElement.zero(m)
            for i in range(1, k + 1):
                a_ik = self.entry(i, k)
                if a_ik.is_zero():
                    continue
                chain = a_ik
                for l in range(i, k):
                    chain = chain * self.entry(l + 1, l)
                term = chain * minors[i - 1]
                total = total + (term if (k - i) % 2 == 0 else -term)
            minors.append(total)
        return minors

    def determinant(self) -> RingElement:
        return self.principal_minors()[-1]


@lru_cache(maxsize=CACHE_SIZE)
def _expand_e_determinant(d: int, m: int) -> RingElement:
    return HessenbergMatrix(d, m).determinant()


def expand_e_determinant(d: int, m: int, guard: int | None = None) -> RingElement:
    """e_d = det(a_ij)_{1≤i,j≤d}"""
    _check_modulus(m)
    if d < 1:
        raise ValueError(f'd は1以上で指定してください: {d}')
    limit = load_guards().determinant if guard is None else guard
    if d > limit:
        raise GuardExceededError('d', d, limit)
    return _expand_e_determinant(d, m)


# ============================================================
# d_λ と恒等式
# ============================================================

def d_via_W(lam: Iterable[int], m: int, guard: int | None = None) -> int:
    """d_λ = −ε_λ Σ_{A∈W(λ)} (−1)^len(A) c_A"""
    lam = type_of(lam)
    total = sum(
        (-1) ** len(seq) * seq.rearrangement_count()
        for seq in enumerate_W(lam, m, guard)
    )
    return -epsilon(lam) * total


def eq1_sides(lam: Iterable[int], m: int, guard: int | None = None) -> tuple[int, int]:
    """
    ε_λ c_λ と Σ_{δ∪μ=λ, m | |δ|} ε_δ c_δ d_μ の組を返す。

    δ は λ の部分多重集合（∅ を含む）を走る。
    """
    _check_modulus(m)
    lam = type_of(lam)
    limit = load_guards().enumeration if guard is None else guard
    if lam.length > limit:
        raise GuardExceededError('ℓ(λ)', lam.length, limit)
    left = epsilon(lam) * count_rearrangements(lam)
    right = sum(
        epsilon(delta) * count_rearrangements(delta) * d_coefficient(rest, m)
        for delta, rest in split_multiset(lam)
        if delta.size % m == 0
    )
    return left, right


def check_eq1(lam: Iterable[int], m: int, guard: int | None = None) -> bool:
    """eq1_sides の両辺が一致するか"""
    left, right = eq1_sides(lam, m, guard)
    return left == right


def p_intersection_sides(lam: Iterable[int], m: int, j: int, guard: int | None = None) -> tuple[int, int]:
    """
    Σ_{i₁<⋯<i_j} |P_{i₁} ∩ ⋯ ∩ P_{i_j}| と Σ_{A∈W(λ), len(A)=j+1} c_A の組。
    """
    lam = type_of(lam)
    b = lam.size // m
    if not 1 <= j <= b:
        raise ValueError(f'j は 1 ≤ j ≤ {b} の範囲で指定してください: {j}')
    p_sets = {i: set(enumerate_P_i(lam, m, i, guard)) for i in range(1, b + 1)}
    left = sum(
        len(set.intersection(*(p_sets[i] for i in indices)))
        for indices in index_subsets(b, j)
    )
    right = sum(
        seq.rearrangement_count()
        for seq in enumerate_W(lam, m, guard)
        if len(seq) == j + 1
    )
    return left, right


def check_p_intersection(lam: Iterable[int], m: int, j: int, guard: int | None = None) -> bool:
    """p_intersection_sides の両辺が一致するか"""
    left, right = p_intersection_sides(lam, m, j, guard)
    return left == right


def relation_sum(d: int, m: int) -> RingElement:
    """Σ_{i=0}^d (−1)^i h_i e_{d−i}（Γ^(m) 内で計算）"""
    _check_modulus(m)
    total = RingElement.zero(m)
    for i in range(d + 1):
        term = _h(i, m) * expand_e(d - i, m)
        total = total + (term if i % 2 == 0 else -term)
    return total


def check_defining_relation(d: int, m: int) -> bool:
    """m ∤ d のとき定義関係が商環で 0 になるか"""
    _check_modulus(m)
    if d < 1 or d % m == 0:
        raise ValueError(f'd は m で割り切れない正の整数である必要があります: d={d}, m={m}')
    return relation_sum(d, m).is_zero()


def check_classical_limit(n: int, guard: int | None = None) -> bool:
    """m = n+1 のとき e_n の係数が古典的な ε_λ c_λ と一致するか"""
    if n < 1:
        raise ValueError(f'n は1以上で指定してください: {n}')
    m = n + 1
    expansion = expand_e(n, m)
    expected = {
        BasisKey(lam, EMPTY, m): epsilon(lam) * count_rearrangements(lam)
        for lam in partitions_of(n, guard)
    }
    if any(key not in expected for key in expansion.terms):
        return False
    return all(coefficient(expansion, key) == value for key, value in expected.items())


# ============================================================
# 数値特殊化 (x = y)
# ============================================================

@dataclass(frozen=True)
class EvaluationPoint:
    """x_i = y_i = values[i] とする評価点"""
    values: tuple[int, ...]

    def __post_init__(self):
        try:
            values = tuple(operator.index(v) for v in self.values)
        except TypeError:
            raise ValueError(f'評価点の座標は整数である必要があります: {self.values!r}') from None
        if not values:
            raise ValueError('評価点は1個以上の変数を持つ必要があります')
        object.__setattr__(self, 'values', values)

    @property
    def variables(self) -> int:
        return len(self.values)

    def h_table(self, top: int) -> list[int]:
        """h_0,…,h_top（∏ 1/(1−x_i t) の係数）"""
        table = [1] + [0] * top
        for x in self.values:
            for k in range(1, top + 1):
                table[k] += x * table[k - 1]
        return table

    def e_table(self, top: int) -> list[int]:
        """e_0,…,e_top（∏ (1+x_i t) の係数）"""
        table = [1] + [0] * top
        for x in self.values:
            for k in range(top, 0, -1):
                table[k] += x * table[k - 1]
        return table


def evaluate_h(r: int, pt: EvaluationPoint) -> int:
    """h_r(x) を点 pt で評価する（r < 0 なら 0）"""
    if r < 0:
        return 0
    return pt.h_table(r)[r]


def evaluate_e(r: int, pt: EvaluationPoint) -> int:
    """e_r(x) を点 pt で評価する（r が変数の個数を超えれば 0）"""
    if r < 0 or r > pt.variables:
        return 0
    return pt.e_table(r)[r]


def _evaluate_monomial(h_parts: Sequence[int], e_parts: Sequence[int], h_table: list[int], e_table: list[int]) -> int:
    return prod(h_table[k] for k in h_parts) * prod(e_table[k] for k in e_parts)


def evaluate_element(a: RingElement, pt: EvaluationPoint) -> int:
    """x = y で Γ^(m) の元を整数に評価する"""
    top = max(a.degrees(), default=0)
    h_table, e_table = pt.h_table(top), pt.e_table(top)
    return sum(
        coeff * _evaluate_monomial(key.h_index, key.e_index, h_table, e_table)
        for key, coeff in a.terms.items()
    )


def check_specialization(alpha: Iterable[int], beta: Iterable[int], m: int, pt: EvaluationPoint) -> bool:
    """h_α(pt) e_β(pt) と直線化結果の評価値が一致するか"""
    alpha = Composition(alpha)
    beta = Composition(beta)
    top = alpha.size + beta.size
    h_table, e_table = pt.h_table(top), pt.e_table(top)
    left = _evaluate_monomial(alpha, beta, h_table, e_table)
    right = evaluate_element(straighten_direct(alpha, beta, m), pt)
    if left != right:
        logger.debug('特殊化が不一致: α=%s β=%s m=%d pt=%s (%d != %d)', alpha, beta, m, pt.values, left, right)
    return left == right
