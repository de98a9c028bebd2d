"""Published reference values used as regression anchors.

HEIGHT_RECORDS: for each small p, a triple p*q*r whose height attains the
known global maximum M(p) over all ternary n with smallest factor p, with
the smallest index where the record magnitude appears and its sign.

CLASS_RECORD_TABLE: known values of the per-residue record
M_beta(p) = max over primes q = beta (mod p) of M(p;q).  exact=True marks
entries where the listed value is the record itself; exact=False marks
entries where it is the best known lower bound.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class HeightRecord:
    p: int
    q: int
    r: int
    n: int
    smallest_k: int
    value: int
    m_p: int


HEIGHT_RECORDS = (
    HeightRecord(p=3, q=5, r=7, n=105, smallest_k=7, value=-2, m_p=2),
    HeightRecord(p=5, q=7, r=11, n=385, smallest_k=119, value=-3, m_p=3),
    HeightRecord(p=7, q=17, r=23, n=2737, smallest_k=875, value=4, m_p=4),
    HeightRecord(p=11, q=19, r=601, n=125609, smallest_k=34884, value=7, m_p=7),
    HeightRecord(p=13, q=73, r=307, n=291343, smallest_k=89647, value=8, m_p=8),
    HeightRecord(p=19, q=53, r=859, n=865013, smallest_k=318742, value=-12, m_p=12),
)

KNOWN_M_P = {3: 2, 5: 3, 7: 4, 11: 7, 13: 8, 19: 12}


@dataclass(frozen=True)
class ClassRecordEntry:
    p: int
    beta: int
    value: int
    exact: bool


CLASS_RECORD_TABLE = (
    ClassRecordEntry(3, 1, 2, True),
    ClassRecordEntry(5, 1, 3, True),
    ClassRecordEntry(5, 2, 3, True),
    ClassRecordEntry(7, 1, 4, True),
    ClassRecordEntry(7, 2, 4, True),
    ClassRecordEntry(7, 3, 4, True),
    ClassRecordEntry(11, 1, 6, True),
    ClassRecordEntry(11, 2, 6, True),
    ClassRecordEntry(11, 3, 7, True),
    ClassRecordEntry(11, 4, 7, True),
    ClassRecordEntry(11, 5, 6, False),
    ClassRecordEntry(13, 1, 7, True),
    ClassRecordEntry(13, 2, 7, True),
    ClassRecordEntry(13, 3, 7, False),
    ClassRecordEntry(13, 4, 8, True),
    ClassRecordEntry(13, 5, 8, True),
    ClassRecordEntry(13, 6, 7, False),
    ClassRecordEntry(19, 1, 10, True),
    ClassRecordEntry(19, 2, 10, True),
    ClassRecordEntry(19, 3, 10, False),
    ClassRecordEntry(19, 4, 12, True),
    ClassRecordEntry(19, 5, 11, False),
    ClassRecordEntry(19, 6, 9, False),
    ClassRecordEntry(19, 7, 11, True),
    ClassRecordEntry(19, 8, 11, False),
    ClassRecordEntry(19, 9, 10, False),
)
