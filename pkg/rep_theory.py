"""
Γ^(m) 直線化ツールキット - 表現論的解釈

符号付き Young 置換加群 [M(α|β)] と混合冪 [K^{α|β}E] の展開、
標準直和因子、符号付き p-Kostka 表による重複度の移送、直既約ラベルを扱う。
"""

import logging
import warnings
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from enum import Enum
from types import MappingProxyType

from combinatorics import (
    EMPTY,
    Composition,
    Dominance,
    PairPartition,
    Partition,
    concat,
    dominance_compare,
    strictly_dominates,
    type_of,
)
from errors import IncompleteTableError, KostkaConsistencyWarning, KostkaTableError
from gamma_ring import BasisKey, RingElement, psi, straighten_direct

logger = logging.getLogger(__name__)


class Flavor(Enum):
    """展開の解釈"""
    SIGNED_YOUNG = 'M'     # 符号付き Young 置換加群 M(α|β)
    MIXED_POWER = 'K'      # 混合冪 K^{α|β}E


def is_odd_prime(p: int) -> bool:
    """p が奇素数か（試し割り）"""
    if isinstance(p, bool) or not isinstance(p, int) or p < 3 or p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def check_odd_prime(p: int) -> None:
    """奇素数でなければ ValueError"""
    if not is_odd_prime(p):
        raise ValueError(f'p は奇素数である必要があります: {p!r}')


def _paren(parts: Composition) -> str:
    return f'({parts})' if parts else '∅'


def _power_label(symbol: str, parts: Composition) -> str | None:
    if not parts:
        return None
    if len(parts) == 1:
        return 'E' if parts[0] == 1 else f'{symbol}^{parts[0]}E'
    return f'{symbol}^{{({parts})}}E'


def _module_label(first: Composition, second: Composition, flavor: Flavor) -> str:
    if flavor is Flavor.SIGNED_YOUNG:
        return f'[M({_paren(first)}|{_paren(second)})]'
    factors = [f for f in (_power_label('S', first), _power_label('⋀', second)) if f]
    return '[' + ('⊗'.join(factors) if factors else 'k') + ']'


def describe_module(alpha: Iterable[int], beta: Iterable[int], flavor: Flavor) -> str:
    """展開前の加群の表示。例: [M(∅|(4))], [⋀^4E]"""
    return _module_label(Composition(alpha), Composition(beta), flavor)


@dataclass(frozen=True)
class ModuleExpansion:
    """[M(α|β)] または [K^{α|β}E] の基底展開"""
    flavor: Flavor
    prime: int
    element: RingElement

    def __post_init__(self):
        check_odd_prime(self.prime)
        if self.element.modulus != self.prime:
            raise ValueError(f'法が一致しません: p={self.prime}, m={self.element.modulus}')

    @property
    def terms(self) -> dict[PairPartition, int]:
        """正準順序の {(λ|pμ): 係数}"""
        return {
            PairPartition(key.h_index, key.e_index, self.prime): coeff
            for key, coeff in self.element.items()
        }

    def coefficient(self, pair: PairPartition) -> int:
        """[M(pair)] の係数（無ければ 0）"""
        if pair.modulus != self.prime:
            raise ValueError(f'組の法が p={self.prime} と一致しません: {pair.modulus}')
        return self.element.terms.get(BasisKey(pair.first, pair.second, self.prime), 0)

    def __mul__(self, other: 'ModuleExpansion') -> 'ModuleExpansion':
        """外部積 [M(α|β)]×[M(γ|δ)] = [M(α#γ|β#δ)]"""
        if not isinstance(other, ModuleExpansion):
            return NotImplemented
        if self.flavor is not other.flavor:
            raise ValueError(f'解釈の異なる展開は掛けられません: {self.flavor.value}, {other.flavor.value}')
        if self.prime != other.prime:
            raise ValueError(f'p の異なる展開は掛けられません: {self.prime}, {other.prime}')
        return ModuleExpansion(self.flavor, self.prime, self.element * other.element)

    def to_text(self) -> str:
        """例: "-[M((2)|∅)] + [M((1,1)|∅)]" """
        if self.element.is_zero():
            return '0'
        pieces = []
        for index, (pair, coeff) in enumerate(self.terms.items()):
            label = _module_label(pair.first, pair.second, self.flavor)
            body = label if abs(coeff) == 1 else f'{abs(coeff)}{label}'
            if index == 0:
                pieces.append(f'-{body}' if coeff < 0 else body)
            else:
                pieces.append(f'{"-" if coeff < 0 else "+"} {body}')
        return ' '.join(pieces)

    def to_dict(self) -> dict:
        return {
            'flavor': self.flavor.value,
            'p': self.prime,
            'terms': [
                {'pair': str(pair), 'coeff': str(coeff)}
                for pair, coeff in self.terms.items()
            ],
        }

    def __str__(self) -> str:
        return self.to_text()


def expand_module(
    alpha: Iterable[int],
    beta: Iterable[int],
    p: int,
    flavor: Flavor = Flavor.SIGNED_YOUNG,
) -> ModuleExpansion:
    """[M(α|β)] = Σ c^(p)_{β;(ξ,pμ)} [M(λ|pμ)]（K 型も同じ係数）"""
    check_odd_prime(p)
    return ModuleExpansion(flavor, p, straighten_direct(alpha, beta, p))


def twist(expansion: ModuleExpansion) -> ModuleExpansion:
    """
    対合 ψ を展開に施す。

    twist(expand_module(α, β, p, F)) == expand_module(β, α, p, F) が成り立つ。
    """
    return ModuleExpansion(expansion.flavor, expansion.prime, psi(expansion.element))


def canonical_summand(alpha: Iterable[int], beta: Iterable[int], p: int) -> PairPartition:
    """
    β_i = pη_i + r_i (0 ≤ r_i < p) とし、(α ∪ (1^r) | p·η) を返す（r = Σ r_i）。

    この組の展開係数は常に 1。
    """
    check_odd_prime(p)
    alpha = Composition(alpha)
    beta = Composition(beta)
    r = sum(b % p for b in beta)
    eta = [b // p for b in beta if b >= p]
    return PairPartition(
        type_of(concat(alpha, (1,) * r)),
        Partition(p * x for x in type_of(eta)),
        p,
    )


def indecomposable_label(a: int, b: int, p: int) -> PairPartition | None:
    """
    M((a)|(b)) が直既約と分かる場合のラベル。b = sp + r (0 ≤ r < p)。

    a = 0 なら ((1^r)|p(s))、p | a+b なら ((a,1^r)|p(s))、それ以外は None。
    """
    check_odd_prime(p)
    if a < 0 or b < 0:
        raise ValueError(f'a, b は0以上で指定してください: a={a}, b={b}')
    s, r = divmod(b, p)
    second = Partition((p * s,)) if s else EMPTY
    if a == 0:
        return PairPartition(Partition((1,) * r), second, p)
    if (a + b) % p == 0:
        return PairPartition(type_of((a,) + (1,) * r), second, p)
    return None


# ============================================================
# 符号付き p-Kostka 表
# ============================================================

@dataclass(frozen=True)
class KostkaTable:
    """
    (base, summand) → (M(base) : Y(summand)) の部分表。

    対角成分は 1、非対角の正の成分は summand ⊳ base の場合に限る。
    """
    prime: int
    entries: Mapping[tuple[PairPartition, PairPartition], int] = field(default_factory=dict)

    def __post_init__(self):
        check_odd_prime(self.prime)
        checked = {}
        for (base, summand), mult in self.entries.items():
            self._check_entry(base, summand, mult)
            checked[(base, summand)] = mult
        object.__setattr__(self, 'entries', MappingProxyType(checked))

    def _check_entry(self, base: PairPartition, summand: PairPartition, mult: int) -> None:
        where = f'({base} ; {summand})'
        if base.modulus != self.prime or summand.modulus != self.prime:
            raise KostkaTableError(f'エントリ {where} の法が p={self.prime} と一致しません')
        if base.size != summand.size:
            raise KostkaTableError(f'エントリ {where} の大きさが一致しません: {base.size} != {summand.size}')
        if isinstance(mult, bool) or not isinstance(mult, int) or mult < 0:
            raise KostkaTableError(f'エントリ {where} の重複度は0以上の整数である必要があります: {mult!r}')
        if base == summand:
            if mult != 1:
                raise KostkaTableError(f'対角エントリ {where} は 1 である必要があります: {mult}')
        elif mult > 0 and not strictly_dominates(summand, base, self.prime):
            raise KostkaTableError(f'エントリ {where} は正ですが summand ⊳ base を満たしません')

    def __len__(self) -> int:
        return len(self.entries)

    def get(self, base: PairPartition, summand: PairPartition) -> int | None:
        """表にあるエントリの値。無ければ None（0 とは区別する）。"""
        return self.entries.get((base, summand))

    @classmethod
    def diagonal(cls, prime: int, pairs: Iterable[PairPartition]) -> 'KostkaTable':
        """対角成分だけを持つ表"""
        return cls(prime, {(pair, pair): 1 for pair in pairs})


def transfer_multiplicity(
    alpha: Iterable[int],
    beta: Iterable[int],
    target: PairPartition,
    table: KostkaTable,
    p: int,
) -> int:
    """
    (M(α|β) : Y(target)) = Σ c^(p)_{β;(ξ,pμ)} (M(λ|pμ) : Y(target))

    target ⊵ (λ|pμ) となる項のエントリだけが必要（それ以外は 0）。
    必要なエントリが欠けていれば IncompleteTableError。
    結果が負なら KostkaConsistencyWarning を出したうえで値を返す。
    """
    check_odd_prime(p)
    if table.prime != p:
        raise ValueError(f'表の p={table.prime} が指定の p={p} と一致しません')
    if target.modulus != p:
        raise ValueError(f'target の法が p={p} と一致しません: {target.modulus}')
    expansion = expand_module(alpha, beta, p)
    size = Composition(alpha).size + Composition(beta).size
    if target.size != size:
        raise ValueError(f'target の大きさ {target.size} が |α|+|β| = {size} と一致しません')

    terms = expansion.terms
    if len(table) == 0:
        raise IncompleteTableError([(pair, target) for pair in terms])

    missing = []
    total = 0
    for pair, coeff in terms.items():
        if dominance_compare(target, pair, p) not in (Dominance.EQUAL, Dominance.GREATER_OR_EQUAL):
            continue
        mult = table.get(pair, target)
        if mult is None:
            missing.append((pair, target))
            continue
        total += coeff * mult
    if missing:
        raise IncompleteTableError(missing)

    if total < 0:
        logger.debug('負の重複度: α=%s β=%s target=%s -> %d', alpha, beta, target, total)
        warnings.warn(
            f'重複度が負になりました ({total})。Kostka 表が矛盾している可能性があります',
            KostkaConsistencyWarning,
            stacklevel=2,
        )
    return total
