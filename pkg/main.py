#!/usr/bin/env python3
"""
Γ^(m) 直線化ツールキット - メインエントリーポイント

使用方法:
    python main.py expand-e --m 3 --n 4                     # e_4 の基底展開
    python main.py straighten --m 3 --h 5 --e 4,3,2          # h_(5) e_(4,3,2) の直線化
    python main.py straighten --m 3 --h 5 --e 4,3,2 --via product
    python main.py coeff --m 3 --h 5 --e 4,3,2 --target "5,2,2,1,1|3"
    python main.py count-cm --m 3 --lambda 3,2,1,1 --list    # c_λ^(m) と証拠の並べ替え
    python main.py canonical --p 3 --alpha 5 --beta 4,3,2     # 標準直和因子
    python main.py dominance --p 3 --left "3|" --right "|3"
    python main.py psi --m 3 --h 2,1 --e 3
    python main.py multiplicity --p 3 --alpha 5 --beta 4,3,2 --target "5,1,1,1|3,3" --kostka table.json
    python main.py module --p 3 --beta 4 --flavor K           # [⋀^4E] の展開
    python main.py label --a 2 --b 4 --p 3
    python main.py verify --m 2,3,5 --max-degree 8 --oracle all --seed 0

終了コード: 0 成功 / 1 入力エラー / 2 ガードによる計算拒否 / 3 検証失敗
"""

import argparse
import json
import logging
import sys
from collections.abc import Sequence

from combinatorics import count_good_compositions, dominance_compare, good_compositions
from config import DEFAULT_SEED, DEFAULT_VERIFY_DEGREE, OUTPUT_FORMATS, VERIFY_MODULI, Guards, load_guards
from data_loader import load_kostka_table, parse_composition, parse_pair, parse_partition
from errors import GuardExceededError, KostkaTableError
from gamma_ring import BasisKey, RingElement, coefficient, expand_e, psi, straighten_direct, straighten_product
from rep_theory import Flavor, canonical_summand, describe_module, expand_module, indecomposable_label, transfer_multiplicity
from verify import ORACLE_SUITES, run_verification

logger = logging.getLogger('main')

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_REFUSED = 2
EXIT_VERIFY_FAILED = 3


class ArgumentParser(argparse.ArgumentParser):
    """使用法エラーを終了コード 1 で報告するパーサ"""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f'{self.prog}: エラー: {message}\n')


def _common_options() -> ArgumentParser:
    common = ArgumentParser(add_help=False)
    common.add_argument(
        '--format',
        choices=OUTPUT_FORMATS,
        default='text',
        help='出力形式 (デフォルト: text)',
    )
    common.add_argument(
        '--guard',
        type=int,
        default=None,
        help='全ガードの上限を上書き（環境変数 GAMMA_GUARD より優先）',
    )
    common.add_argument(
        '--verbose', '-v',
        action='store_true',
        help='進捗ログを標準エラーに出力',
    )
    return common


def _excel_option(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        '--excel',
        type=str,
        default=None,
        help='結果を書き出す .xlsx ファイルパス',
    )


def build_parser() -> ArgumentParser:
    """コマンドライン引数の定義"""
    common = _common_options()
    parser = ArgumentParser(
        prog='gamma',
        description='Γ^(m) 直線化ツールキット',
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest='command', required=True, metavar='<subcommand>')

    p = sub.add_parser('expand-e', parents=[common], help='e_n の基底展開')
    p.add_argument('--m', type=int, required=True)
    p.add_argument('--n', type=int, required=True)
    _excel_option(p)

    p = sub.add_parser('straighten', parents=[common], help='h_α e_β の直線化')
    p.add_argument('--m', type=int, required=True)
    p.add_argument('--h', default='', help='合成 α（省略時 ∅）')
    p.add_argument('--e', default='', help='合成 β（省略時 ∅）')
    p.add_argument('--via', choices=('direct', 'product'), default='direct', help='計算方式')
    _excel_option(p)

    p = sub.add_parser('coeff', parents=[common], help='直線化結果の1係数')
    p.add_argument('--m', type=int, required=True)
    p.add_argument('--h', default='')
    p.add_argument('--e', default='')
    p.add_argument('--target', required=True, help='"λ|mμ"')

    p = sub.add_parser('count-cm', parents=[common], help='c_λ^(m)')
    p.add_argument('--m', type=int, required=True)
    p.add_argument('--lambda', dest='lam', default='', help='分割 λ')
    p.add_argument('--list', action='store_true', help='証拠の並べ替えも出力')

    p = sub.add_parser('canonical', parents=[common], help='標準直和因子')
    p.add_argument('--p', type=int, required=True)
    p.add_argument('--alpha', default='')
    p.add_argument('--beta', default='')

    p = sub.add_parser('dominance', parents=[common], help='組の支配順序')
    p.add_argument('--p', type=int, required=True)
    p.add_argument('--left', required=True)
    p.add_argument('--right', required=True)

    p = sub.add_parser('psi', parents=[common], help='対合 ψ')
    p.add_argument('--m', type=int, required=True)
    p.add_argument('--h', default='')
    p.add_argument('--e', default='')
    _excel_option(p)

    p = sub.add_parser('multiplicity', parents=[common], help='Kostka 表による重複度の移送')
    p.add_argument('--p', type=int, required=True)
    p.add_argument('--alpha', default='')
    p.add_argument('--beta', default='')
    p.add_argument('--target', required=True)
    p.add_argument('--kostka', required=True, help='Kostka 表の JSON ファイル')

    p = sub.add_parser('module', parents=[common], help='[M(α|β)] / [K^{α|β}E] の展開')
    p.add_argument('--p', type=int, required=True)
    p.add_argument('--alpha', default='')
    p.add_argument('--beta', default='')
    p.add_argument('--flavor', choices=[f.value for f in Flavor], default=Flavor.SIGNED_YOUNG.value)
    _excel_option(p)

    p = sub.add_parser('label', parents=[common], help='M((a)|(b)) の直既約ラベル')
    p.add_argument('--a', type=int, required=True)
    p.add_argument('--b', type=int, required=True)
    p.add_argument('--p', type=int, required=True)

    p = sub.add_parser('verify', parents=[common], help='オラクルによる検証スイープ')
    p.add_argument(
        '--m',
        default=','.join(str(m) for m in VERIFY_MODULI),
        help=f'カンマ区切りの m の一覧 (デフォルト: {",".join(str(m) for m in VERIFY_MODULI)})',
    )
    p.add_argument('--max-degree', type=int, default=DEFAULT_VERIFY_DEGREE)
    p.add_argument('--oracle', choices=ORACLE_SUITES + ('all',), default='all')
    p.add_argument('--seed', type=int, default=DEFAULT_SEED)
    _excel_option(p)

    return parser


# ============================================================
# 出力
# ============================================================

def _emit(args: argparse.Namespace, text: str, payload) -> None:
    if args.format == 'json':
        print(json.dumps(payload, ensure_ascii=False))
    else:
        print(text)


def _emit_element(args: argparse.Namespace, element: RingElement, title: str) -> None:
    _emit(args, element.to_text(), element.to_dict())
    if getattr(args, 'excel', None):
        from excel_output import export_expansion_to_excel
        export_expansion_to_excel(element, args.excel, title)


def _pair_payload(pair) -> dict:
    return {'pair': str(pair), 'first': list(pair.first), 'second': list(pair.second), 'modulus': pair.modulus}


# ============================================================
# サブコマンド
# ============================================================

def cmd_expand_e(args: argparse.Namespace, guards: Guards) -> int:
    _emit_element(args, expand_e(args.n, args.m), f'e_{args.n} (m={args.m})')
    return EXIT_OK


def cmd_straighten(args: argparse.Namespace, guards: Guards) -> int:
    alpha, beta = parse_composition(args.h), parse_composition(args.e)
    implementation = straighten_product if args.via == 'product' else straighten_direct
    logger.info('【直線化】 h_(%s) e_(%s) m=%d (%s)', alpha, beta, args.m, args.via)
    _emit_element(args, implementation(alpha, beta, args.m), f'h_({alpha}) e_({beta}) (m={args.m})')
    return EXIT_OK


def cmd_coeff(args: argparse.Namespace, guards: Guards) -> int:
    target = parse_pair(args.target, args.m)
    element = straighten_direct(parse_composition(args.h), parse_composition(args.e), args.m)
    value = coefficient(element, BasisKey(target.first, target.second, args.m))
    _emit(args, str(value), {'m': args.m, 'target': str(target), 'coeff': str(value)})
    return EXIT_OK


def cmd_count_cm(args: argparse.Namespace, guards: Guards) -> int:
    lam = parse_partition(args.lam)
    count = count_good_compositions(lam, args.m)
    payload = {'lambda': list(lam), 'm': args.m, 'count': str(count)}
    lines = [str(count)]
    if args.list:
        witnesses = good_compositions(lam, args.m, guards.enumeration)
        payload['witnesses'] = [list(w) for w in witnesses]
        lines.extend(str(w) for w in witnesses)
    _emit(args, '\n'.join(lines), payload)
    return EXIT_OK


def cmd_canonical(args: argparse.Namespace, guards: Guards) -> int:
    pair = canonical_summand(parse_composition(args.alpha), parse_composition(args.beta), args.p)
    _emit(args, str(pair), _pair_payload(pair))
    return EXIT_OK


def cmd_dominance(args: argparse.Namespace, guards: Guards) -> int:
    left, right = parse_pair(args.left, args.p), parse_pair(args.right, args.p)
    relation = dominance_compare(left, right, args.p)
    _emit(args, relation.value, {'left': str(left), 'right': str(right), 'p': args.p, 'relation': relation.value})
    return EXIT_OK


def cmd_psi(args: argparse.Namespace, guards: Guards) -> int:
    alpha, beta = parse_composition(args.h), parse_composition(args.e)
    image = psi(straighten_direct(alpha, beta, args.m))
    _emit_element(args, image, f'ψ(h_({alpha}) e_({beta})) (m={args.m})')
    return EXIT_OK


def cmd_multiplicity(args: argparse.Namespace, guards: Guards) -> int:
    table = load_kostka_table(args.kostka)
    target = parse_pair(args.target, args.p)
    value = transfer_multiplicity(
        parse_composition(args.alpha), parse_composition(args.beta), target, table, args.p,
    )
    _emit(args, str(value), {'p': args.p, 'target': str(target), 'multiplicity': str(value)})
    return EXIT_OK


def cmd_module(args: argparse.Namespace, guards: Guards) -> int:
    alpha, beta = parse_composition(args.alpha), parse_composition(args.beta)
    flavor = Flavor(args.flavor)
    expansion = expand_module(alpha, beta, args.p, flavor)
    header = describe_module(alpha, beta, flavor)
    payload = {'module': header, **expansion.to_dict()}
    _emit(args, f'{header} = {expansion.to_text()}', payload)
    if args.excel:
        from excel_output import export_expansion_to_excel
        export_expansion_to_excel(expansion.element, args.excel, header)
    return EXIT_OK


def cmd_label(args: argparse.Namespace, guards: Guards) -> int:
    pair = indecomposable_label(args.a, args.b, args.p)
    if pair is None:
        _emit(args, 'none', {'a': args.a, 'b': args.b, 'p': args.p, 'pair': None})
    else:
        _emit(args, str(pair), {'a': args.a, 'b': args.b, **_pair_payload(pair)})
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, guards: Guards) -> int:
    moduli = tuple(parse_composition(args.m))
    report = run_verification(moduli, args.max_degree, args.oracle, args.seed, guards)
    _emit(args, report.to_text(), report.to_dict())
    if args.excel:
        from excel_output import export_report_to_excel
        export_report_to_excel(report, args.excel)
    return EXIT_OK if report.passed else EXIT_VERIFY_FAILED


COMMANDS = {
    'expand-e': cmd_expand_e,
    'straighten': cmd_straighten,
    'coeff': cmd_coeff,
    'count-cm': cmd_count_cm,
    'canonical': cmd_canonical,
    'dominance': cmd_dominance,
    'psi': cmd_psi,
    'multiplicity': cmd_multiplicity,
    'module': cmd_module,
    'label': cmd_label,
    'verify': cmd_verify,
}


def setup_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format='%(levelname)s %(name)s: %(message)s',
        stream=sys.stderr,
        force=True,
    )
    logging.captureWarnings(True)


def run(argv: Sequence[str] | None = None) -> int:
    """サブコマンドを実行して終了コードを返す"""
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    setup_logging(args.verbose)

    try:
        guards = load_guards()
        if args.guard is not None:
            guards = guards.override(args.guard)
        return COMMANDS[args.command](args, guards)
    except GuardExceededError as e:
        print(f'エラー: {e}', file=sys.stderr)
        return EXIT_REFUSED
    except (KostkaTableError, ValueError, OSError) as e:
        print(f'エラー: {e}', file=sys.stderr)
        return EXIT_USAGE


def main() -> int:
    """メイン処理"""
    return run(sys.argv[1:])


if __name__ == '__main__':
    sys.exit(main())
