"""
Excel workbook export for invariant reports and check results.
"""

from pathlib import Path
from typing import Dict, List, Union

import numpy as np
import pandas as pd

from ..utils import log
from ..utils.constants import EXCEL_COLORS
from ..utils.helpers import format_value


SHEET_NAMES = {
    'report': 'Invariants',
    'checks': 'Checks',
}


def _cell_value(value):
    """xlsxwriter cannot store complex numbers; render those as text."""
    if isinstance(value, (complex, np.complexfloating)):
        return format_value(value)
    if isinstance(value, np.generic):
        return value.item()
    if value is None:
        return ''
    return value


def _write_csv_fallback(data: Dict[str, pd.DataFrame], output_path: Path) -> List[Path]:
    written = []
    for key, df in data.items():
        if not isinstance(df, pd.DataFrame):
            continue
        target = output_path.with_name(f"{output_path.stem}_{key}.csv")
        df.apply(lambda col: col.map(_cell_value)).to_csv(target, index=False)
        written.append(target)
    return written


def generate_excel_workbook(data: Dict[str, pd.DataFrame], output_path: Union[str, Path]) -> List[Path]:
    """
    Write each DataFrame to its own sheet.

    Args:
        data: Dictionary of DataFrames ('report', 'checks', or any other key)
        output_path: Path for the .xlsx file

    Returns:
        Paths written (CSV files next to output_path when xlsxwriter is missing)
    """
    output_path = Path(output_path)
    output_path.parent.mkdir(parents=True, exist_ok=True)
    try:
        import xlsxwriter
    except ImportError:
        log.warn("xlsxwriter not installed; writing CSV files instead")
        return _write_csv_fallback(data, output_path)

    workbook = xlsxwriter.Workbook(str(output_path))

    header_format = workbook.add_format({
        'bold': True,
        'bg_color': EXCEL_COLORS['header_blue'],
        'font_color': EXCEL_COLORS['white'],
        'align': 'center',
        'valign': 'vcenter',
        'border': 1,
    })

    text_format = workbook.add_format({
        'valign': 'vcenter',
    })

    value_format = workbook.add_format({
        'num_format': '0.000000000000',
        'align': 'right',
        'valign': 'vcenter',
    })

    deviation_format = workbook.add_format({
        'num_format': '0.00E+00',
        'align': 'right',
        'valign': 'vcenter',
    })

    pass_format = workbook.add_format({
        'bg_color': EXCEL_COLORS['pass_green'],
        'align': 'center',
    })

    fail_format = workbook.add_format({
        'bg_color': EXCEL_COLORS['fail_red'],
        'align': 'center',
    })

    for key, df in data.items():
        if not isinstance(df, pd.DataFrame) or df.empty:
            continue

        sheet_name = SHEET_NAMES.get(key, key.replace('_', ' ').title())[:31]
        worksheet = workbook.add_worksheet(sheet_name)

        for col_num, column in enumerate(df.columns):
            worksheet.write(0, col_num, column, header_format)

        for row_num, row in enumerate(df.itertuples(index=False), start=1):
            for col_num, value in enumerate(row):
                col_name = df.columns[col_num]
                value = _cell_value(value)

                if col_name == 'passed':
                    worksheet.write(row_num, col_num, value, pass_format if value else fail_format)
                elif col_name in ('max_deviation', 'tolerance'):
                    worksheet.write(row_num, col_num, value, deviation_format)
                elif isinstance(value, float):
                    worksheet.write(row_num, col_num, value, value_format)
                else:
                    worksheet.write(row_num, col_num, value, text_format)

        # Auto-fit columns
        for col_num, column in enumerate(df.columns):
            max_len = max(
                len(str(column)),
                df[column].astype(str).str.len().max() if len(df) > 0 else 0
            )
            worksheet.set_column(col_num, col_num, min(max_len + 2, 60))

        worksheet.freeze_panes(1, 0)

    workbook.close()
    return [output_path]
