"""
Γ^(m) 直線化ツールキット - 設定ファイル
"""

import os
from collections.abc import Mapping
from dataclasses import dataclass, replace

# 列挙ガード（𝒞(λ), W(λ), P_i を実体化する際の ℓ(λ) の上限）
DEFAULT_ENUMERATION_GUARD = 12

# 行列式オラクルの次数上限
DEFAULT_DETERMINANT_GUARD = 14

# verify サブコマンドで受け付ける --max-degree の上限
DEFAULT_SWEEP_GUARD = 12

# partitions_of(n) の n の上限
DEFAULT_PARTITION_GUARD = 40

# ガード上書き用の環境変数
GUARD_ENV_VAR = 'GAMMA_GUARD'

# 検証スイープの既定値
VERIFY_MODULI = (2, 3, 5)
DEFAULT_VERIFY_DEGREE = 8
DEFAULT_SEED = 0
STABILITY_SHIFTS = 4              # 古典極限の安定性検査で試す r の上限

# 数値特殊化（x = y）による反証テストの設定
SPECIALIZATION_SAMPLES = 200
SPECIALIZATION_VARIABLES = (4, 8)       # 変数の個数 N の範囲（両端含む）
SPECIALIZATION_VALUE_RANGE = (-3, 3)    # 座標値の範囲（両端含む）

# 出力フォーマット
OUTPUT_FORMATS = ('text', 'json')

# メモ化キャッシュ（lru_cache）の上限
CACHE_SIZE = 4096

# HTTP サービスの既定ポート（run.sh serve）
DEFAULT_PORT = 8080


@dataclass(frozen=True)
class Guards:
    """計算拒否の閾値一式"""
    enumeration: int = DEFAULT_ENUMERATION_GUARD
    determinant: int = DEFAULT_DETERMINANT_GUARD
    sweep: int = DEFAULT_SWEEP_GUARD
    partition: int = DEFAULT_PARTITION_GUARD

    def override(self, value: int) -> 'Guards':
        """全ガードを同じ値で上書きしたコピーを返す（CLI の --guard 用）"""
        if value < 0:
            raise ValueError(f'ガード値は0以上で指定してください: {value}')
        return Guards(enumeration=value, determinant=value, sweep=value, partition=value)


def parse_guard_spec(spec: str, base: Guards | None = None) -> Guards:
    """
    GAMMA_GUARD 形式の文字列を解釈する。

    Args:
        spec: "14" のような単一整数、または "enumeration=10,determinant=16" 形式
        base: 上書き前のガード（省略時は既定値）

    Returns:
        Guards
    """
    base = base or Guards()
    text = spec.strip()
    if not text:
        return base
    if text.isdigit():
        return base.override(int(text))

    updates = {}
    for item in text.split(','):
        name, sep, raw = item.partition('=')
        name = name.strip()
        if not sep or name not in Guards.__dataclass_fields__:
            raise ValueError(f'{GUARD_ENV_VAR} の形式が不正です: {spec!r}')
        raw = raw.strip()
        if not raw.isdigit():
            raise ValueError(f'{GUARD_ENV_VAR} の値が整数ではありません: {item!r}')
        updates[name] = int(raw)
    return replace(base, **updates)


def load_guards(environ: Mapping[str, str] | None = None) -> Guards:
    """環境変数を考慮したガード設定を返す"""
    env = os.environ if environ is None else environ
    spec = env.get(GUARD_ENV_VAR)
    if spec is None:
        return Guards()
    return parse_guard_spec(spec)
