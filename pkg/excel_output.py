"""
Γ^(m) 直線化ツールキット - Excel出力モジュール
"""

import logging
from pathlib import Path

from openpyxl import Workbook
from openpyxl.styles import Alignment, Border, Font, PatternFill, Side
from openpyxl.utils import get_column_letter
from openpyxl.worksheet.worksheet import Worksheet

from gamma_ring import RingElement
from verify import VerificationReport

logger = logging.getLogger(__name__)

# Excel の数値は倍精度なので、これを超える係数は文字列で書く
EXACT_CELL_LIMIT = 10 ** 15


def create_styles():
    """共通スタイルを定義"""
    thin = Side(style='thin')
    return {
        'header_font_white': Font(bold=True, size=11, color='FFFFFF'),
        'header_fill': PatternFill(start_color='4472C4', end_color='4472C4', fill_type='solid'),
        'thin_border': Border(left=thin, right=thin, top=thin, bottom=thin),
        'number_format': '#,##0',
        'negative_fill': PatternFill(start_color='FCE4D6', end_color='FCE4D6', fill_type='solid'),
        'warning_fill': PatternFill(start_color='FFC7CE', end_color='FFC7CE', fill_type='solid'),
    }


def _write_header(ws: Worksheet, row: int, headers: list[str], styles: dict) -> None:
    for col, header in enumerate(headers, start=1):
        cell = ws.cell(row=row, column=col, value=header)
        cell.font = styles['header_font_white']
        cell.fill = styles['header_fill']
        cell.border = styles['thin_border']
        cell.alignment = Alignment(horizontal='center')


def _fit_columns(ws: Worksheet, widths: list[int]) -> None:
    for col, width in enumerate(widths, start=1):
        ws.column_dimensions[get_column_letter(col)].width = width


def _coefficient_value(coeff: int) -> int | str:
    return coeff if abs(coeff) < EXACT_CELL_LIMIT else str(coeff)


def create_expansion_sheet(wb: Workbook, element: RingElement, title: str = '') -> None:
    """展開結果シートを作成（1行1項、正準順序）"""
    ws = wb.active
    ws.title = '展開'
    styles = create_styles()

    ws['A1'] = title or '基底展開'
    ws['A1'].font = Font(bold=True, size=14)
    ws.merge_cells('A1:E1')
    ws['A2'] = f'm = {element.modulus}'
    ws['A3'] = f'項数 = {len(element)}'

    _write_header(ws, 5, ['#', 'h 添字', 'e 添字', '次数', '係数'], styles)
    row = 6
    for index, (key, coeff) in enumerate(element.items(), start=1):
        values = [index, str(key.h_index) or '∅', str(key.e_index) or '∅', key.degree, _coefficient_value(coeff)]
        for col, value in enumerate(values, start=1):
            ws.cell(row=row, column=col, value=value).border = styles['thin_border']
        coeff_cell = ws.cell(row=row, column=5)
        if isinstance(coeff_cell.value, int):
            coeff_cell.number_format = styles['number_format']
        if coeff < 0:
            coeff_cell.fill = styles['negative_fill']
        row += 1

    _fit_columns(ws, [6, 24, 16, 8, 14])


def export_expansion_to_excel(element: RingElement, output_path: str | Path, title: str = '') -> str:
    """
    Γ^(m) の元を Excel ファイルに出力

    Args:
        element: 出力する元
        output_path: 出力パス
        title: シート先頭に書く見出し（例: "h_(5) e_(4,3,2)"）

    Returns:
        出力ファイルパス
    """
    wb = Workbook()
    create_expansion_sheet(wb, element, title)

    save_path = Path(output_path)
    save_path.parent.mkdir(parents=True, exist_ok=True)
    wb.save(save_path)
    logger.info('Excel保存: %s', save_path)
    return str(save_path)


def create_report_summary_sheet(wb: Workbook, report: VerificationReport) -> None:
    """サマリーシートを作成"""
    ws = wb.active
    ws.title = 'サマリー'
    styles = create_styles()

    ws['A1'] = '検証結果'
    ws['A1'].font = Font(bold=True, size=14)
    ws.merge_cells('A1:E1')
    ws['A3'] = 'm'
    ws['B3'] = ','.join(str(m) for m in report.moduli)
    ws['A4'] = '最大次数'
    ws['B4'] = report.max_degree
    ws['A5'] = 'シード'
    ws['B5'] = report.seed
    ws['A6'] = '判定'
    ws['B6'] = 'PASS' if report.passed else 'FAIL'
    if not report.passed:
        ws['B6'].fill = styles['warning_fill']

    summary = report.summary()
    _write_header(ws, 8, list(summary.columns), styles)
    for row, record in enumerate(summary.itertuples(index=False), start=9):
        for col, value in enumerate(record, start=1):
            cell = ws.cell(row=row, column=col, value=value.item() if hasattr(value, 'item') else value)
            cell.border = styles['thin_border']
        if record.failed:
            ws.cell(row=row, column=4).fill = styles['warning_fill']

    _fit_columns(ws, [14, 10, 10, 10, 10])


def create_checks_sheet(wb: Workbook, report: VerificationReport) -> None:
    """全検査の一覧シートを作成（失敗行を強調）"""
    ws = wb.create_sheet('検査一覧')
    styles = create_styles()
    _write_header(ws, 1, ['スイート', '検査', '結果', '詳細'], styles)
    for row, result in enumerate(report.results, start=2):
        values = [result.suite, result.name, 'PASS' if result.passed else 'FAIL', result.detail]
        for col, value in enumerate(values, start=1):
            ws.cell(row=row, column=col, value=value).border = styles['thin_border']
        if not result.passed:
            ws.cell(row=row, column=3).fill = styles['warning_fill']
    ws.freeze_panes = 'A2'
    _fit_columns(ws, [14, 48, 8, 40])


def export_report_to_excel(report: VerificationReport, output_path: str | Path) -> str:
    """検証結果を Excel ファイルに出力（サマリー + 検査一覧）"""
    wb = Workbook()
    create_report_summary_sheet(wb, report)
    create_checks_sheet(wb, report)

    save_path = Path(output_path)
    save_path.parent.mkdir(parents=True, exist_ok=True)
    wb.save(save_path)
    logger.info('Excel保存: %s', save_path)
    return str(save_path)
