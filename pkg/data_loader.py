"""
Γ^(m) 直線化ツールキット - 入力の読み込み

コマンドライン・HTTP から受け取る分割・合成・組のテキスト形式の解釈と、
符号付き p-Kostka 表 (JSON) の読み込みを行う。
"""

import json
import logging
import re
from collections.abc import Mapping
from pathlib import Path

from pydantic import BaseModel, ConfigDict, ValidationError

from combinatorics import Composition, PairPartition, Partition
from errors import KostkaTableError
from rep_theory import KostkaTable

logger = logging.getLogger(__name__)

_FULLWIDTH = str.maketrans('０１２３４５６７８９，、｜　', '0123456789,,| ')


def normalize_text(text: str | None) -> str:
    """全角数字・全角区切りを半角にし、空白と ∅ を除去する"""
    if text is None:
        return ''
    s = str(text).translate(_FULLWIDTH)
    s = s.replace('∅', '')
    return re.sub(r'\s', '', s)


def parse_composition(text: str | None) -> Composition:
    """
    "4,3,2" 形式の合成を読む。空文字列（または None）は ∅。

    Raises:
        ValueError: 正の整数のカンマ区切りでない場合
    """
    s = normalize_text(text)
    if not s:
        return Composition()
    items = s.split(',')
    if not all(item.isdigit() for item in items):
        raise ValueError(f'正の整数のカンマ区切りで指定してください: {text!r}')
    return Composition(int(item) for item in items)


def parse_partition(text: str | None) -> Partition:
    """
    "3,2,1,1" 形式の分割を読む。広義単調減少でなければ ValueError。
    """
    return Partition(parse_composition(text))


def parse_pair(text: str, modulus: int) -> PairPartition:
    """
    "5,1,1,1|3,3" 形式の組 (λ|mμ) を読む。片側は空でもよい（"|3,3", "5|"）。
    """
    s = normalize_text(text)
    if s.count('|') != 1:
        raise ValueError(f'組は "λ|mμ" の形式で指定してください: {text!r}')
    first, second = s.split('|')
    return PairPartition(parse_partition(first), parse_partition(second), modulus)


# ============================================================
# Kostka 表
# ============================================================

class KostkaEntryModel(BaseModel):
    model_config = ConfigDict(extra='forbid')

    base: str
    summand: str
    mult: int


class KostkaFileModel(BaseModel):
    model_config = ConfigDict(extra='forbid')

    p: int
    entries: list[KostkaEntryModel]


def parse_kostka_table(data: Mapping) -> KostkaTable:
    """
    {"p": 3, "entries": [{"base": "λ|pμ", "summand": "δ|pθ", "mult": 1}, ...]} を検証して表にする。

    Raises:
        KostkaTableError: 形式の誤り、重複エントリ、不変条件違反（該当エントリを示す）
    """
    try:
        model = KostkaFileModel.model_validate(data)
    except ValidationError as e:
        raise KostkaTableError(f'Kostka 表の形式が不正です: {e}') from e

    entries: dict[tuple[PairPartition, PairPartition], int] = {}
    for index, entry in enumerate(model.entries):
        try:
            base = parse_pair(entry.base, model.p)
            summand = parse_pair(entry.summand, model.p)
        except ValueError as e:
            raise KostkaTableError(f'エントリ #{index} ({entry.base} ; {entry.summand}): {e}') from e
        if (base, summand) in entries:
            raise KostkaTableError(f'エントリ #{index} ({entry.base} ; {entry.summand}) が重複しています')
        entries[(base, summand)] = entry.mult

    try:
        return KostkaTable(model.p, entries)
    except KostkaTableError:
        raise
    except ValueError as e:
        raise KostkaTableError(f'Kostka 表が不正です: {e}') from e


def load_kostka_table(filepath: str | Path) -> KostkaTable:
    """Kostka 表の JSON ファイルを読み込む"""
    logger.info('Kostka 表読み込み: %s', filepath)
    try:
        data = json.loads(Path(filepath).read_text(encoding='utf-8'))
    except json.JSONDecodeError as e:
        raise KostkaTableError(f'Kostka 表の JSON を解釈できません: {filepath}: {e}') from e
    table = parse_kostka_table(data)
    logger.info('  エントリ数: %d (p=%d)', len(table), table.prime)
    return table
