"""
Γ^(m) 直線化ツールキット - 環 Γ^(m) の元と直線化

基底 𝓑 = {h_λ e_{mμ}} による疎な整数係数表現、環演算、e_n の基底展開、
積 h_α e_β の直線化（直接公式と積展開の2通り）、対合 ψ を提供する。
"""

import json
import logging
import re
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from functools import lru_cache, reduce
from types import MappingProxyType

from combinatorics import (
    EMPTY,
    Composition,
    Partition,
    count_good_compositions,
    epsilon,
    pairs_of_total,
    partitions_with_remainder,
    structure_constant,
    type_of,
)
from config import CACHE_SIZE

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class BasisKey:
    """基底元 h_λ e_{mμ} の添字。e_index は mμ をそのまま保持する。"""
    h_index: Partition
    e_index: Partition
    modulus: int

    def __post_init__(self):
        object.__setattr__(self, 'h_index', Partition(self.h_index))
        object.__setattr__(self, 'e_index', Partition(self.e_index))
        if isinstance(self.modulus, bool) or not isinstance(self.modulus, int) or self.modulus < 1:
            raise ValueError(f'm は正の整数である必要があります: {self.modulus!r}')
        if any(x % self.modulus for x in self.e_index):
            raise ValueError(
                f'e の添字は {self.modulus} の倍数である必要があります: {self.e_index}'
            )

    @property
    def degree(self) -> int:
        return self.h_index.size + self.e_index.size

    def is_unit(self) -> bool:
        return not self.h_index and not self.e_index

    def merge(self, other: 'BasisKey') -> 'BasisKey':
        """h_λe_{mμ} · h_δe_{mν} = h_{λ∪δ} e_{mμ∪mν}"""
        return BasisKey(
            Partition.from_parts(self.h_index + other.h_index),
            Partition.from_parts(self.e_index + other.e_index),
            self.modulus,
        )

    def to_text(self) -> str:
        parts = []
        if self.h_index:
            parts.append(f'h[{self.h_index}]')
        if self.e_index:
            parts.append(f'e[{self.e_index}]')
        return ' '.join(parts) if parts else '1'

    def __str__(self) -> str:
        return self.to_text()


def canonical_order(keys: Iterable[BasisKey]) -> list[BasisKey]:
    """表示・直列化用の順序: 次数の昇順、同次数内は h 添字・e 添字の辞書式降順"""
    ordered = sorted(keys, key=lambda k: (k.h_index, k.e_index), reverse=True)
    ordered.sort(key=lambda k: k.degree)
    return ordered


class RingElement:
    """
    Γ^(m) の元。基底 𝓑 上の疎な整数係数写像として保持する不変値。

    係数 0 は保持しない。すべてのキーは元と同じ法 m を持つ。
    """

    __slots__ = ('_modulus', '_terms', '_hash')

    def __init__(self, modulus: int, terms: Mapping[BasisKey, int] | None = None):
        if isinstance(modulus, bool) or not isinstance(modulus, int) or modulus < 1:
            raise ValueError(f'm は正の整数である必要があります: {modulus!r}')
        cleaned: dict[BasisKey, int] = {}
        for key, coeff in (terms or {}).items():
            if key.modulus != modulus:
                raise ValueError(f'法が一致しません: 元は m={modulus}, キー {key} は m={key.modulus}')
            if coeff:
                cleaned[key] = int(coeff)
        self._modulus = modulus
        self._terms = MappingProxyType(cleaned)
        self._hash = None

    @classmethod
    def zero(cls, modulus: int) -> 'RingElement':
        """零元"""
        return cls(modulus)

    @classmethod
    def one(cls, modulus: int) -> 'RingElement':
        """単位元 h_∅ e_∅"""
        return cls(modulus, {BasisKey(EMPTY, EMPTY, modulus): 1})

    @property
    def modulus(self) -> int:
        return self._modulus

    @property
    def terms(self) -> Mapping[BasisKey, int]:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def degrees(self) -> set[int]:
        return {key.degree for key in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def items(self) -> Iterator[tuple[BasisKey, int]]:
        """正準順序で (キー, 係数) を返す"""
        for key in canonical_order(self._terms):
            yield key, self._terms[key]

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[BasisKey]:
        return iter(canonical_order(self._terms))

    def _check_same_modulus(self, other: 'RingElement') -> None:
        if self._modulus != other._modulus:
            raise ValueError(f'法の異なる元は演算できません: m={self._modulus}, m={other._modulus}')

    def __add__(self, other: 'RingElement') -> 'RingElement':
        if not isinstance(other, RingElement):
            return NotImplemented
        self._check_same_modulus(other)
        merged = dict(self._terms)
        for key, coeff in other._terms.items():
            merged[key] = merged.get(key, 0) + coeff
        return RingElement(self._modulus, merged)

    def __neg__(self) -> 'RingElement':
        return RingElement(self._modulus, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other: 'RingElement') -> 'RingElement':
        if not isinstance(other, RingElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other) -> 'RingElement':
        if isinstance(other, int) and not isinstance(other, bool):
            return RingElement(self._modulus, {k: other * c for k, c in self._terms.items()})
        if not isinstance(other, RingElement):
            return NotImplemented
        self._check_same_modulus(other)
        product: dict[BasisKey, int] = {}
        for key_a, coeff_a in self._terms.items():
            for key_b, coeff_b in other._terms.items():
                key = key_a.merge(key_b)
                product[key] = product.get(key, 0) + coeff_a * coeff_b
        return RingElement(self._modulus, product)

    def __rmul__(self, other) -> 'RingElement':
        if isinstance(other, int) and not isinstance(other, bool):
            return self * other
        return NotImplemented

    def __eq__(self, other) -> bool:
        if not isinstance(other, RingElement):
            return NotImplemented
        return self._modulus == other._modulus and dict(self._terms) == dict(other._terms)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._modulus, frozenset(self._terms.items())))
        return self._hash

    # --------------------------------------------------------
    # テキスト・JSON 形式
    # --------------------------------------------------------

    def to_text(self) -> str:
        """例: "-h[5,4,1,1] e[3] + 2 h[5,2,2,1,1] e[3]"。単位元は "1"、零元は "0"。"""
        if not self._terms:
            return '0'
        pieces = []
        for index, (key, coeff) in enumerate(self.items()):
            magnitude = abs(coeff)
            if key.is_unit():
                body = str(magnitude)
            elif magnitude == 1:
                body = key.to_text()
            else:
                body = f'{magnitude} {key.to_text()}'
            if index == 0:
                pieces.append(f'-{body}' if coeff < 0 else body)
            else:
                pieces.append(f'{"-" if coeff < 0 else "+"} {body}')
        return ' '.join(pieces)

    def to_dict(self) -> dict:
        return {
            'm': self._modulus,
            'terms': [
                {'h': list(key.h_index), 'e': list(key.e_index), 'coeff': str(coeff)}
                for key, coeff in self.items()
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False)

    @classmethod
    def from_dict(cls, data: Mapping) -> 'RingElement':
        """to_dict の逆。係数は文字列でも整数でもよい。"""
        try:
            modulus = data['m']
            raw_terms = data['terms']
        except (KeyError, TypeError):
            raise ValueError('JSON 形式の元には "m" と "terms" が必要です') from None
        terms: dict[BasisKey, int] = {}
        for raw in raw_terms:
            key = BasisKey(Partition(raw.get('h', [])), Partition(raw.get('e', [])), modulus)
            if key in terms:
                raise ValueError(f'重複した項があります: {key}')
            terms[key] = int(raw['coeff'])
        return cls(modulus, terms)

    @classmethod
    def from_json(cls, text: str) -> 'RingElement':
        return cls.from_dict(json.loads(text))

    @classmethod
    def from_text(cls, text: str, modulus: int) -> 'RingElement':
        """to_text の出力を読み戻す"""
        stripped = text.strip()
        if stripped == '0':
            return cls.zero(modulus)
        terms: dict[BasisKey, int] = {}
        for chunk in _TERM_SPLIT.split(stripped):
            match = _TERM_RE.fullmatch(chunk.strip())
            if match is None or not any(match.group('coeff', 'h', 'e')):
                raise ValueError(f'項の形式が不正です: {chunk!r}')
            coeff = int(match.group('coeff') or 1)
            if match.group('sign') == '-':
                coeff = -coeff
            key = BasisKey(_parse_index(match.group('h')), _parse_index(match.group('e')), modulus)
            terms[key] = terms.get(key, 0) + coeff
        return cls(modulus, terms)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f'RingElement(m={self._modulus}, {self.to_text()!r})'


_TERM_SPLIT = re.compile(r'\s+(?=[+-]\s)')
_TERM_RE = re.compile(
    r'(?P<sign>[+-])?\s*(?P<coeff>\d+)?\s*(?:h\[(?P<h>[\d,]*)\])?\s*(?:e\[(?P<e>[\d,]*)\])?'
)


def _parse_index(text: str | None) -> Partition:
    if not text:
        return EMPTY
    return Partition(int(x) for x in text.split(','))


# ============================================================
# 基本演算
# ============================================================

def basis_monomial(lam: Iterable[int], m_mu: Iterable[int], m: int) -> RingElement:
    """係数 1 の単項 h_λ e_{mμ}"""
    key = BasisKey(type_of(lam), type_of(m_mu), m)
    return RingElement(m, {key: 1})


def add(a: RingElement, b: RingElement) -> RingElement:
    """a + b（法が異なれば ValueError）"""
    return a + b


def negate(a: RingElement) -> RingElement:
    """−a"""
    return -a


def scalar_mul(c: int, a: RingElement) -> RingElement:
    """整数倍 c·a"""
    return a * c


def mul(a: RingElement, b: RingElement) -> RingElement:
    """
    a·b。基底元どうしの積は h と e の添字をそれぞれ和集合にしたものなので、
    結果もそのまま基底展開になっている。
    """
    return a * b


def coefficient(a: RingElement, key: BasisKey) -> int:
    """(a, h_λ e_{mμ})。キーが無ければ 0。"""
    if key.modulus != a.modulus:
        raise ValueError(f'法が一致しません: 元は m={a.modulus}, キーは m={key.modulus}')
    return a.terms.get(key, 0)


def _product(factors: Iterable[RingElement], m: int) -> RingElement:
    return reduce(mul, factors, RingElement.one(m))


# ============================================================
# e_n の展開と直線化
# ============================================================

def d_coefficient(mu: Iterable[int], m: int) -> int:
    """d_μ = ε_μ c_μ^(m)"""
    return epsilon(mu) * count_good_compositions(mu, m)


@lru_cache(maxsize=CACHE_SIZE)
def _expand_e(n: int, m: int) -> RingElement:
    if n == 0:
        return RingElement.one(m)
    if n % m == 0:
        return basis_monomial(EMPTY, (n,), m)
    terms = {}
    for mu in partitions_with_remainder(n, m):
        rest = n - mu.size
        terms[BasisKey(mu, Partition((rest,)) if rest else EMPTY, m)] = d_coefficient(mu, m)
    return RingElement(m, terms)


def expand_e(n: int, m: int) -> RingElement:
    """
    e_n の基底展開。

    Args:
        n: 次数（0以上）
        m: 法

    Returns:
        n = 0 なら 1、m | n なら生成元 e_(n)、それ以外は
        Σ_{μ∈𝒫(n;m)} d_μ h_μ e_{(n−|μ|)}
    """
    if n < 0:
        raise ValueError(f'n は0以上で指定してください: {n}')
    if isinstance(m, bool) or not isinstance(m, int) or m < 1:
        raise ValueError(f'm は正の整数である必要があります: {m!r}')
    return _expand_e(n, m)


@lru_cache(maxsize=CACHE_SIZE)
def _straighten_e(beta: Partition, m: int) -> RingElement:
    terms = {}
    for pair in pairs_of_total(beta.size, m):
        c = structure_constant(beta, pair.first, pair.second, m)
        if c:
            terms[BasisKey(pair.first, pair.second, m)] = c
    logger.debug('e_%s を直線化 (m=%d): %d 項', beta, m, len(terms))
    return RingElement(m, terms)


def straighten_direct(alpha: Iterable[int], beta: Iterable[int], m: int) -> RingElement:
    """
    h_α e_β = Σ c^(m)_{β;(ξ,mμ)} h_{α∪ξ} e_{mμ} を構造定数から直接組み立てる。

    結果は α と β の型だけに依存する。
    """
    alpha = type_of(alpha)
    beta = type_of(beta)
    if isinstance(m, bool) or not isinstance(m, int) or m < 1:
        raise ValueError(f'm は正の整数である必要があります: {m!r}')
    return basis_monomial(alpha, EMPTY, m) * _straighten_e(beta, m)


def straighten_product(alpha: Iterable[int], beta: Iterable[int], m: int) -> RingElement:
    """∏ h_{α_i} · ∏ expand_e(β_j) を環の積で計算する（straighten_direct と一致する）"""
    alpha = Composition(alpha)
    beta = Composition(beta)
    h_factors = (basis_monomial((a,), EMPTY, m) for a in alpha)
    e_factors = (expand_e(b, m) for b in beta)
    return _product(h_factors, m) * _product(e_factors, m)


# ============================================================
# 対合 ψ
# ============================================================

@lru_cache(maxsize=CACHE_SIZE)
def _psi_basis(key: BasisKey) -> RingElement:
    m = key.modulus
    images = [expand_e(part, m) for part in key.h_index]
    images.extend(basis_monomial((part,), EMPTY, m) for part in key.e_index)
    return _product(images, m)


def psi(a: RingElement) -> RingElement:
    """ψ(h_i) = e_i を環準同型として延長した対合"""
    result = RingElement.zero(a.modulus)
    for key, coeff in a.terms.items():
        result = result + _psi_basis(key) * coeff
    return result
