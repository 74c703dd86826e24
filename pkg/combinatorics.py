"""
Γ^(m) 直線化ツールキット - 分割・合成の組合せ論

分割・合成・分割の組 (λ|mμ) と、直線化公式に現れる係数
（c_λ, c_λ^(m), ε_λ, W(λ), P_i, V, 構造定数）および組の支配順序を扱う。
すべての値は不変で、関数はすべて純粋関数。
"""

import logging
import operator
from collections import Counter, defaultdict
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import accumulate, combinations, product
from math import factorial, prod

from config import CACHE_SIZE, load_guards
from errors import GuardExceededError

logger = logging.getLogger(__name__)


class Composition(tuple):
    """合成: 正の整数の有限列（順序に意味がある）。空列 ∅ も許す。"""

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()):
        try:
            values = tuple(operator.index(x) for x in parts)
        except TypeError:
            raise ValueError(f'合成の成分は整数である必要があります: {parts!r}') from None
        if any(x < 1 for x in values):
            raise ValueError(f'合成の成分は正の整数である必要があります: {values}')
        return super().__new__(cls, values)

    @property
    def size(self) -> int:
        """|δ|"""
        return sum(self)

    @property
    def length(self) -> int:
        """ℓ(δ)"""
        return len(self)

    def __str__(self) -> str:
        return ','.join(str(x) for x in self)

    def __repr__(self) -> str:
        return f'{type(self).__name__}({tuple(self)!r})'


class Partition(Composition):
    """分割: 広義単調減少な合成。0 の成分は保持しない。"""

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()):
        self = super().__new__(cls, parts)
        if any(a < b for a, b in zip(self, self[1:])):
            raise ValueError(f'分割は広義単調減少である必要があります: {tuple(self)}')
        return self

    @classmethod
    def from_parts(cls, parts: Iterable[int]) -> 'Partition':
        """任意の順序の成分から分割を作る（0 の成分は捨てる）"""
        return cls(sorted((x for x in parts if x != 0), reverse=True))

    def multiplicities(self) -> Counter:
        """成分ごとの重複度 n_i"""
        return Counter(self)


EMPTY = Partition()


@dataclass(frozen=True, order=True, slots=True)
class PartitionSequence:
    """分割の有限列 A = (δ⁽¹⁾,…,δ⁽ʳ⁾)"""
    entries: tuple[Partition, ...]

    def __post_init__(self):
        if not self.entries:
            raise ValueError('分割列は少なくとも1つの成分を持つ必要があります')
        object.__setattr__(self, 'entries', tuple(Partition(e) for e in self.entries))

    def __len__(self) -> int:
        return len(self.entries)

    def rearrangement_count(self) -> int:
        """c_A"""
        return prod(count_rearrangements(e) for e in self.entries)

    def sign(self) -> int:
        """ε_A"""
        return prod(epsilon(e) for e in self.entries)

    def good_count(self, m: int) -> int:
        """c_A^(m)"""
        return prod(count_good_compositions(e, m) for e in self.entries)

    def __str__(self) -> str:
        return '(' + ', '.join(f'({e})' if e else '∅' for e in self.entries) + ')'


@dataclass(frozen=True, slots=True)
class PairPartition:
    """分割の組 (λ|mμ)。second は mμ をそのまま保持する。"""
    first: Partition
    second: Partition
    modulus: int

    def __post_init__(self):
        object.__setattr__(self, 'first', Partition(self.first))
        object.__setattr__(self, 'second', Partition(self.second))
        _check_modulus(self.modulus)
        bad = [x for x in self.second if x % self.modulus]
        if bad:
            raise ValueError(
                f'組の第2成分は {self.modulus} の倍数である必要があります: {self.second}'
            )

    @property
    def size(self) -> int:
        """n = |λ| + |mμ|"""
        return self.first.size + self.second.size

    def quotient(self) -> Partition:
        """μ（second を modulus で割ったもの）"""
        return Partition(x // self.modulus for x in self.second)

    def sort_key(self) -> tuple[Partition, Partition]:
        return (self.first, self.second)

    def __str__(self) -> str:
        return f'{self.first}|{self.second}'


class Dominance(Enum):
    """支配順序による2つの組の関係"""
    EQUAL = 'equal'
    GREATER_OR_EQUAL = 'greater-or-equal'
    LESS_OR_EQUAL = 'less-or-equal'
    INCOMPARABLE = 'incomparable'


def _check_modulus(m: int) -> None:
    if isinstance(m, bool) or not isinstance(m, int) or m < 1:
        raise ValueError(f'm は正の整数である必要があります: {m!r}')


def _guard_check(what: str, value: int, guard: int | None, field: str) -> None:
    limit = getattr(load_guards(), field) if guard is None else guard
    if value > limit:
        logger.warning('計算を拒否: %s = %d (上限 %d)', what, value, limit)
        raise GuardExceededError(what, value, limit)


# ============================================================
# 基本操作
# ============================================================

def type_of(delta: Iterable[int]) -> Partition:
    """合成の型（降順への並べ替え）"""
    return Partition(sorted(Composition(delta), reverse=True))


def concat(alpha: Iterable[int], beta: Iterable[int]) -> Composition:
    """連結 α#β"""
    return Composition(tuple(Composition(alpha)) + tuple(Composition(beta)))


def union(delta: Iterable[int], xi: Iterable[int]) -> Partition:
    """δ ∪ ξ = type_of(δ#ξ)"""
    return type_of(concat(delta, xi))


def scale(m: int, mu: Iterable[int]) -> Composition:
    """mμ = (mμ₁,…,mμ_s)。分割を渡した場合は分割を返す。"""
    _check_modulus(m)
    cls = Partition if isinstance(mu, Partition) else Composition
    return cls(m * x for x in Composition(mu))


def epsilon(lam: Iterable[int]) -> int:
    """ε_λ = (−1)^(|λ|−ℓ(λ))"""
    parts = Composition(lam)
    return -1 if (parts.size - parts.length) % 2 else 1


def count_rearrangements(lam: Iterable[int]) -> int:
    """c_λ = ℓ(λ)! / ∏ n_i!（多項係数で計算し、列挙はしない）"""
    parts = Composition(lam)
    return factorial(len(parts)) // prod(factorial(k) for k in Counter(parts).values())


def _iter_arrangements(values: tuple[int, ...], counts: list[int]) -> Iterator[tuple[int, ...]]:
    if not any(counts):
        yield ()
        return
    for idx, value in enumerate(values):
        if counts[idx] == 0:
            continue
        counts[idx] -= 1
        for rest in _iter_arrangements(values, counts):
            yield (value,) + rest
        counts[idx] += 1


def enumerate_rearrangements(lam: Iterable[int], guard: int | None = None) -> list[Composition]:
    """
    𝒞(λ): λ の並べ替えとして得られる合成をすべて列挙する。

    Args:
        lam: 分割（任意順序の合成も可、型で扱う）
        guard: ℓ(λ) の上限（省略時は設定値）

    Returns:
        辞書式降順の合成リスト
    """
    lam = type_of(lam)
    _guard_check('ℓ(λ)', lam.length, guard, 'enumeration')
    counts = lam.multiplicities()
    values = tuple(sorted(counts, reverse=True))
    return [Composition(d) for d in _iter_arrangements(values, [counts[v] for v in values])]


def _has_prefix_sum(delta: Iterable[int], predicate) -> bool:
    return any(predicate(s) for s in accumulate(delta))


def good_compositions(lam: Iterable[int], m: int, guard: int | None = None) -> list[Composition]:
    """どの部分和も m で割り切れない並べ替え（c_λ^(m) の証拠）を列挙する"""
    _check_modulus(m)
    return [
        delta for delta in enumerate_rearrangements(lam, guard)
        if not _has_prefix_sum(delta, lambda s: s % m == 0)
    ]


def count_good_compositions(lam: Iterable[int], m: int) -> int:
    """
    c_λ^(m): 部分和がどれも m で割り切れない並べ替えの個数。

    使った成分の個数ベクトルを状態とし、1成分ずつ層ごとに数え上げる。
    部分和は個数ベクトルから決まるので剰余は状態に含めない。
    """
    _check_modulus(m)
    counts = Counter(type_of(lam))
    values = tuple(sorted(counts, reverse=True))
    limits = tuple(counts[v] for v in values)

    layer = {tuple(0 for _ in values): 1}
    for _ in range(sum(limits)):
        following = defaultdict(int)
        for used, ways in layer.items():
            total = sum(v * k for v, k in zip(values, used))
            for idx, value in enumerate(values):
                if used[idx] == limits[idx] or (total + value) % m == 0:
                    continue
                following[used[:idx] + (used[idx] + 1,) + used[idx + 1:]] += ways
        if not following:
            return 0
        layer = following
    return sum(layer.values())


def split_multiset(lam: Partition) -> Iterator[tuple[Partition, Partition]]:
    """λ の部分多重集合 δ と補集合の組 (δ, λ−δ) をすべて返す"""
    counts = lam.multiplicities()
    values = sorted(counts, reverse=True)
    for chosen in product(*(range(counts[v], -1, -1) for v in values)):
        taken = Partition([v for v, k in zip(values, chosen) for _ in range(k)])
        rest = Partition([v for v, k in zip(values, chosen) for _ in range(counts[v] - k)])
        yield taken, rest


def _iter_w(lam: Partition, m: int) -> Iterator[tuple[Partition, ...]]:
    yield (lam,)
    for delta, rest in split_multiset(lam):
        if delta and delta.size % m == 0:
            for tail in _iter_w(rest, m):
                yield (delta,) + tail


def enumerate_W(lam: Iterable[int], m: int, guard: int | None = None) -> list[PartitionSequence]:
    """
    W(λ): ξ ∪ δ⁽¹⁾ ∪ ⋯ ∪ δ⁽ʳ⁾ = λ、δ⁽ⁱ⁾ ≠ ∅、m | |δ⁽ⁱ⁾| を満たす列 (δ⁽¹⁾,…,δ⁽ʳ⁾,ξ)。

    r = 0 の列 (λ) を含む。δ⁽ⁱ⁾ の順序は区別する。
    """
    _check_modulus(m)
    lam = type_of(lam)
    _guard_check('ℓ(λ)', lam.length, guard, 'enumeration')
    sequences = {PartitionSequence(entries) for entries in _iter_w(lam, m)}
    return sorted(sequences, reverse=True)


def enumerate_P_i(lam: Iterable[int], m: int, i: int, guard: int | None = None) -> list[Composition]:
    """P_i: ある部分和がちょうど mi になる λ の並べ替え"""
    _check_modulus(m)
    lam = type_of(lam)
    b = lam.size // m
    if not 1 <= i <= b:
        raise ValueError(f'i は 1 ≤ i ≤ {b} の範囲で指定してください: {i}')
    target = m * i
    return [
        delta for delta in enumerate_rearrangements(lam, guard)
        if _has_prefix_sum(delta, lambda s: s == target)
    ]


# ============================================================
# 分割の生成
# ============================================================

def _iter_partitions(n: int, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    top = n if max_part is None else min(n, max_part)
    for first in range(top, 0, -1):
        for rest in _iter_partitions(n - first, first):
            yield (first,) + rest


@lru_cache(maxsize=CACHE_SIZE)
def _partitions(n: int) -> tuple[Partition, ...]:
    return tuple(Partition(p) for p in _iter_partitions(n))


def partitions_of(n: int, guard: int | None = None) -> list[Partition]:
    """n の分割をすべて辞書式降順で返す"""
    if n < 0:
        raise ValueError(f'n は0以上で指定してください: {n}')
    _guard_check('n', n, guard, 'partition')
    return list(_partitions(n))


@lru_cache(maxsize=CACHE_SIZE)
def _remainder_partitions(n: int, m: int) -> tuple[Partition, ...]:
    found = [p for size in range(n % m, n + 1, m) for p in _partitions(size)]
    return tuple(sorted(found, reverse=True))


def partitions_with_remainder(n: int, m: int) -> list[Partition]:
    """𝒫(n;m) = {μ : n = |μ| + sm, s ∈ ℕ₀}"""
    _check_modulus(m)
    if n < 0:
        raise ValueError(f'n は0以上で指定してください: {n}')
    return list(_remainder_partitions(n, m))


def pairs_of_total(n: int, m: int) -> list[PairPartition]:
    """𝒫²_m(n): |λ| + m|μ| = n となる組 (λ|mμ) をすべて返す"""
    _check_modulus(m)
    if n < 0:
        raise ValueError(f'n は0以上で指定してください: {n}')
    pairs = []
    for s in range(n // m + 1):
        for mu in _partitions(s):
            second = scale(m, mu)
            for lam in _partitions(n - m * s):
                pairs.append(PairPartition(lam, second, m))
    pairs.sort(key=PairPartition.sort_key, reverse=True)
    return pairs


# ============================================================
# V(β;(ξ,mμ)) と構造定数
# ============================================================

def _check_e_part(m_mu: Partition, m: int) -> None:
    if any(x % m for x in m_mu):
        raise ValueError(f'mμ の成分は {m} の倍数である必要があります: {m_mu}')


def enumerate_V(
    beta: Iterable[int],
    xi: Iterable[int],
    m_mu: Iterable[int],
    m: int,
) -> list[tuple[Partition, ...]]:
    """
    V(β;(ξ,mμ)) を列挙する。

    Args:
        beta: 合成 β（s = ℓ(β)）
        xi: 分割 ξ
        m_mu: 成分がすべて m の倍数の分割 mμ
        m: 法

    Returns:
        ξ⁽ⁱ⁾ ∈ 𝒫(β_i;m)、ξ = ∪ξ⁽ⁱ⁾、mμ = ∪(β_i−|ξ⁽ⁱ⁾|)（0 は捨てる）を満たす
        s 個組のリスト（辞書式降順）
    """
    _check_modulus(m)
    beta = Composition(beta)
    xi = type_of(xi)
    m_mu = type_of(m_mu)
    _check_e_part(m_mu, m)
    if xi.size + m_mu.size != beta.size:
        return []

    need_h = Counter(xi)
    need_e = Counter(m_mu)
    chosen: list[Partition] = []
    found: list[tuple[Partition, ...]] = []

    def search(pos: int) -> None:
        if pos == len(beta):
            if not any(need_h.values()) and not any(need_e.values()):
                found.append(tuple(chosen))
            return
        b = beta[pos]
        for cand in _remainder_partitions(b, m):
            rest = b - cand.size
            if rest and need_e[rest] == 0:
                continue
            counts = cand.multiplicities()
            if any(need_h[v] < k for v, k in counts.items()):
                continue
            need_h.subtract(counts)
            if rest:
                need_e[rest] -= 1
            chosen.append(cand)
            search(pos + 1)
            chosen.pop()
            if rest:
                need_e[rest] += 1
            need_h.update(counts)

    search(0)
    return found


@lru_cache(maxsize=CACHE_SIZE)
def _structure_constant(beta: Partition, xi: Partition, m_mu: Partition, m: int) -> int:
    return sum(
        prod(epsilon(part) * count_good_compositions(part, m) for part in tup)
        for tup in enumerate_V(beta, xi, m_mu, m)
    )


def structure_constant(beta: Iterable[int], xi: Iterable[int], m_mu: Iterable[int], m: int) -> int:
    """
    c^(m)_{β;(ξ,mμ)} = Σ_{A∈V} ε_A c_A^(m)。V が空なら 0。

    値は β の並べ替えで変わらないので β の型でキャッシュする。
    """
    _check_modulus(m)
    m_mu = type_of(m_mu)
    _check_e_part(m_mu, m)
    return _structure_constant(type_of(beta), type_of(xi), m_mu, m)


# ============================================================
# 支配順序
# ============================================================

def _prefix_sums(parts: Partition, length: int) -> list[int]:
    padded = list(parts) + [0] * (length - len(parts))
    return list(accumulate(padded))


def _dominates(a: PairPartition, b: PairPartition) -> bool:
    length = max(len(a.first), len(a.second), len(b.first), len(b.second), 1)
    a_first, b_first = _prefix_sums(a.first, length), _prefix_sums(b.first, length)
    a_second, b_second = _prefix_sums(a.second, length), _prefix_sums(b.second, length)
    a_size, b_size = a.first.size, b.first.size
    for ell in range(length):
        if a_first[ell] < b_first[ell]:
            return False
        if a_size + a_second[ell] < b_size + b_second[ell]:
            return False
    return True


def dominance_compare(a: PairPartition, b: PairPartition, p: int) -> Dominance:
    """
    𝒫²_p(n) 上の支配順序 ⊵ で a と b を比較する。

    条件 (a) Σλ_i ≥ Σδ_i と (b) |λ|+pΣμ_i ≥ |δ|+pΣξ_i をすべての ℓ で両方向に評価する。
    """
    _check_modulus(p)
    if a.modulus != p or b.modulus != p:
        raise ValueError(f'組の法が p={p} と一致しません: {a.modulus}, {b.modulus}')
    if a.size != b.size:
        raise ValueError(f'大きさの異なる組は比較できません: |{a}|={a.size}, |{b}|={b.size}')
    forward = _dominates(a, b)
    backward = _dominates(b, a)
    if forward and backward:
        return Dominance.EQUAL
    if forward:
        return Dominance.GREATER_OR_EQUAL
    if backward:
        return Dominance.LESS_OR_EQUAL
    return Dominance.INCOMPARABLE


def strictly_dominates(a: PairPartition, b: PairPartition, p: int) -> bool:
    """a ⊳ b"""
    return dominance_compare(a, b, p) is Dominance.GREATER_OR_EQUAL


def index_subsets(b: int, j: int) -> Iterator[tuple[int, ...]]:
    """1 ≤ i₁ < ⋯ < i_j ≤ b となる添字集合"""
    return combinations(range(1, b + 1), j)
