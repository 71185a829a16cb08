"""
The census table: every (genus, d) cell of the generic-bundle theorem for
genus 1 and 2, with the theorem items that apply and where each value
comes from.
"""
import csv
import io
from dataclasses import dataclass
from pathlib import Path
from typing import List, Tuple

from .bundles import BundleSpec, ModuliDescription
from .classify import classify, theorem_items
from .serializers import CensusRowSerializer

GOLDEN_PATH = Path(__file__).resolve().parent / 'golden' / 'census_table.csv'

CENSUS_COLUMNS = (
    'theorem_items', 'genus', 'kind', 'd', 'sign', 'status', 'dimC',
    'euler', 'sw', 'compact', 'fueter_present', 'provenance',
)

TABLE_DEGREES = tuple(range(-2, 4))
TABLE_SPECS = (
    (1, 'split'),
    (2, 'stable_generic'),
)


@dataclass(frozen=True)
class CensusRow:
    spec: BundleSpec
    description: ModuliDescription
    items: Tuple[int, ...]


def census_table(degrees=TABLE_DEGREES) -> List[CensusRow]:
    rows = []
    for genus, kind in TABLE_SPECS:
        for d in degrees:
            spec = BundleSpec(genus=genus, kind=kind, d=d, sign=-1)
            rows.append(CensusRow(spec, classify(spec), tuple(theorem_items(genus, d))))
    return rows


def _cell(value):
    if value is None:
        return ''
    if isinstance(value, bool):
        return 'true' if value else 'false'
    return value


def write_census_csv(rows, stream=None):
    """Write census rows as CSV; returns the text when no stream is given."""
    target = io.StringIO() if stream is None else stream
    writer = csv.DictWriter(target, fieldnames=CENSUS_COLUMNS, lineterminator='\n')
    writer.writeheader()
    for row in rows:
        data = CensusRowSerializer(row).data
        writer.writerow({key: _cell(data[key]) for key in CENSUS_COLUMNS})
    return target.getvalue() if stream is None else None


def golden_text() -> str:
    return GOLDEN_PATH.read_text(encoding='utf-8')
