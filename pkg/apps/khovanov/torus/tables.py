"""
Closed-form rational Khovanov homology of the negative torus links T(3, q).

T(3, q) is obtained from T(3, q−1) by moving every generator down two
quantum degrees, Kh^{i,j}(new) = Kh^{i,j+2}(previous), and adding a
short list of corrections whose bidegrees are affine in N = q // 3:

    q = 3N      (−4N, −12N−1) +2   (−4N, −12N+1) +3   (−4N, −12N+3) +1
    q = 3N + 1  (−4N−1, −12N−5) +1  (−4N−1, −12N−3) +1
                (−4N, −12N−3) −2    (−4N, −12N−1) −2
    q = 3N + 2  (−4N−3, −12N−9) +1  (−4N−2, −12N−5) +1

Above each step's threshold only the shift acts.
"""
from dataclasses import dataclass
from typing import Dict, List, Tuple

from apps.khovanov import telemetry
from apps.khovanov.errors import DiagramError
from apps.khovanov.homology.khovanov import KhTable, mirror_table

logger = telemetry.get_logger(__name__)

Affine = Tuple[int, int]  # value = c0 + c1·N


@dataclass(frozen=True)
class TorusFamilyIndex:
    q: int

    def __post_init__(self):
        if self.q < 2:
            raise DiagramError(f"T(3,q) tables need q ≥ 2, got {self.q}")

    @property
    def residue(self) -> int:
        return self.q % 3

    @property
    def N(self) -> int:
        return self.q // 3

    @property
    def claim(self) -> int:
        """Recursion step producing this q: 1 for 3N, 2 for 3N+1, 3 for 3N+2."""
        return (1, 2, 3)[self.residue]

    @property
    def components(self) -> int:
        return 3 if self.residue == 0 else 1


@dataclass(frozen=True)
class RecursionDelta:
    claim: int
    corrections: Tuple[Tuple[Affine, Affine, int], ...]
    threshold: Affine  # corrections live at j ≤ threshold
    total_step: int
    j_shift: int = -2

    def at(self, N: int) -> List[Tuple[Tuple[int, int], int]]:
        return [((i0 + i1 * N, j0 + j1 * N), dim) for (i0, i1), (j0, j1), dim in self.corrections]

    def threshold_at(self, N: int) -> int:
        return self.threshold[0] + self.threshold[1] * N


DELTAS: Dict[int, RecursionDelta] = {
    1: RecursionDelta(
        1,
        (((0, -4), (-1, -12), 2), ((0, -4), (1, -12), 3), ((0, -4), (3, -12), 1)),
        threshold=(3, -12),
        total_step=6,
    ),
    2: RecursionDelta(
        2,
        (
            ((-1, -4), (-5, -12), 1),
            ((-1, -4), (-3, -12), 1),
            ((0, -4), (-3, -12), -2),
            ((0, -4), (-1, -12), -2),
        ),
        threshold=(-1, -12),
        total_step=-2,
    ),
    3: RecursionDelta(
        3,
        (((-3, -4), (-9, -12), 1), ((-2, -4), (-5, -12), 1)),
        threshold=(-5, -12),
        total_step=2,
    ),
}

BASE_TABLES: Dict[int, KhTable] = {
    2: KhTable({(0, -1): 1, (0, -3): 1, (-2, -5): 1, (-3, -9): 1}),
    3: KhTable({(0, -3): 1, (0, -5): 1, (-2, -7): 1, (-3, -11): 1, (-4, -13): 2, (-4, -11): 3, (-4, -9): 1}),
    4: KhTable(
        {
            (0, -5): 1,
            (0, -7): 1,
            (-2, -9): 1,
            (-3, -13): 1,
            (-4, -13): 1,
            (-4, -11): 1,
            (-5, -17): 1,
            (-5, -15): 1,
        }
    ),
    5: KhTable(
        {
            (0, -7): 1,
            (0, -9): 1,
            (-2, -11): 1,
            (-3, -15): 1,
            (-4, -15): 1,
            (-4, -13): 1,
            (-5, -19): 1,
            (-5, -17): 1,
            (-6, -17): 1,
            (-7, -21): 1,
        }
    ),
}


def recursion_step(previous: KhTable, q: int) -> KhTable:
    """Kh(T(3, q)) from Kh(T(3, q−1))."""
    index = TorusFamilyIndex(q)
    delta = DELTAS[index.claim]
    dims = {(i, j + delta.j_shift): v for (i, j), v in previous.items()}
    for key, v in delta.at(index.N):
        dims[key] = dims.get(key, 0) + v
    return KhTable(dims)


def _engine_base(q: int) -> KhTable:
    from apps.khovanov.homology.khovanov import khovanov_homology
    from apps.khovanov.knots.braids import from_braid, torus_braid

    return khovanov_homology(from_braid(torus_braid(q)))


def expected_kh_3q(q: int, base: str = "frozen") -> KhTable:
    """
    Kh(T(3, q)) for any q ≥ 2 from the base tables q = 2..5 and the
    recursion. `base="engine"` recomputes the base tables by brute force.
    """
    TorusFamilyIndex(q)
    if base not in ("frozen", "engine"):
        raise ValueError(f"unknown base {base!r}")
    start = min(q, max(BASE_TABLES))
    table = BASE_TABLES[start] if base == "frozen" else _engine_base(start)
    for step in range(start + 1, q + 1):
        table = recursion_step(table, step)
    return table


def positive_torus_table(q: int) -> KhTable:
    return mirror_table(expected_kh_3q(q))


def diagonal_count(t: KhTable) -> int:
    if not len(t):
        raise ValueError("diagonal count of an empty table")
    return len({j - 2 * i for (i, j) in t})


def total_dimension_step(q: int) -> int:
    """total dim Kh(T(3, q)) − total dim Kh(T(3, q−1)), for q ≥ 3."""
    if q < 3:
        raise DiagramError(f"dimension step needs q ≥ 3, got {q}")
    return DELTAS[TorusFamilyIndex(q).claim].total_step
