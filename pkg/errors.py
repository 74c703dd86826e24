"""
Γ^(m) 直線化ツールキット - 例外定義
"""


class GammaError(Exception):
    """ツールキット共通の基底例外"""


class GuardExceededError(GammaError):
    """列挙・行列式・スイープのガードを超えたため計算を拒否した"""

    def __init__(self, what: str, value: int, limit: int):
        self.what = what
        self.value = value
        self.limit = limit
        super().__init__(
            f'{what} が上限を超えています ({value} > {limit})。'
            f'--guard または GAMMA_GUARD で上限を変更できます'
        )


class KostkaTableError(GammaError, ValueError):
    """符号付き p-Kostka 表の不変条件違反"""


class IncompleteTableError(KostkaTableError):
    """重複度の移送に必要なエントリが表にない"""

    def __init__(self, missing: list):
        self.missing = list(missing)
        listed = ', '.join(f'({base} ; {summand})' for base, summand in self.missing)
        super().__init__(f'Kostka 表が不完全です。必要なエントリ: {listed}')


class KostkaConsistencyWarning(UserWarning):
    """移送した重複度が負になった（表が矛盾している可能性）"""
