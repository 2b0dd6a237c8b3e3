"""
Bigraded rational Khovanov homology, its graded Euler characteristic and
the state-sum Jones polynomial used as an independent oracle.
"""
from dataclasses import dataclass
from typing import Dict, Iterator, Mapping, Tuple

from opentelemetry import trace

from apps.khovanov import config, telemetry
from apps.khovanov.errors import ConsistencyError
from apps.khovanov.homology.complex import build_complex, check_cube_limit, popcount
from apps.khovanov.homology.frobenius import KHOVANOV
from apps.khovanov.knots.diagram import LinkDiagram, crossing_signs
from apps.khovanov.knots.smoothing import CircleResolver
from apps.khovanov.linalg.cancel import homology_dims_many
from apps.khovanov.linalg.laurent import LaurentPoly

tracer = trace.get_tracer(__name__)
logger = telemetry.get_logger(__name__)


@dataclass(frozen=True)
class KhTable:
    """(i, j) -> dim, only positive dimensions stored."""

    entries: Mapping[Tuple[int, int], int]

    def __post_init__(self):
        clean = {}
        for (i, j), v in dict(self.entries).items():
            if v < 0:
                raise ConsistencyError(f"negative dimension {v} at ({i}, {j})")
            if v:
                clean[(int(i), int(j))] = int(v)
        object.__setattr__(self, "entries", dict(sorted(clean.items(), key=lambda kv: (kv[0][1], kv[0][0]))))

    def __getitem__(self, key: Tuple[int, int]) -> int:
        return self.entries.get(key, 0)

    def __iter__(self) -> Iterator[Tuple[int, int]]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def items(self):
        return self.entries.items()

    def __eq__(self, other):
        if isinstance(other, KhTable):
            return self.entries == other.entries
        if isinstance(other, Mapping):
            return self.entries == KhTable(other).entries
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self.entries.items()))

    def total_dimension(self) -> int:
        return sum(self.entries.values())

    def column(self, j: int) -> Dict[int, int]:
        """{i: dim} at fixed quantum degree j."""
        return {i: v for (i, jj), v in self.entries.items() if jj == j}

    def shifted(self, di: int = 0, dj: int = 0) -> "KhTable":
        return KhTable({(i + di, j + dj): v for (i, j), v in self.entries.items()})

    def __repr__(self):
        return f"KhTable({self.entries})"


def khovanov_homology(d: LinkDiagram, cube_limit: int = None, workers: int = None) -> KhTable:
    """
    Kh(D) over the rationals. The complex is split by quantum degree and
    each slice is reduced by cancelling pairs until its differential vanishes.
    """
    check_cube_limit(d, cube_limit)
    with tracer.start_as_current_span("khovanov_homology") as span:
        cx = build_complex(d, KHOVANOV, cube_limit)
        slices = cx.quantum_slices()
        survivors = homology_dims_many(slices, config.workers(workers))
        table = KhTable({(i, q + cx.q_shift): v for q, counts in survivors.items() for i, v in counts.items()})
        span.set_attribute("slices", len(slices))
        span.set_attribute("total_dimension", table.total_dimension())
        logger.info("khovanov_homology", crossings=d.n, slices=len(slices), total=table.total_dimension())
        return table


def graded_euler(t: KhTable) -> LaurentPoly:
    return LaurentPoly.from_terms((j, (-1) ** (i % 2) * v) for (i, j), v in t.items())


def kauffman_jones(d: LinkDiagram, cube_limit: int = None) -> LaurentPoly:
    """Σ_α (−1)^r q^r (q + q⁻¹)^k, times (−1)^{n⁻} q^{n⁺−2n⁻}."""
    check_cube_limit(d, cube_limit)
    resolver = CircleResolver(d)
    loop = LaurentPoly({1: 1, -1: 1})
    powers: Dict[int, LaurentPoly] = {}
    acc: Dict[int, int] = {}
    for mask in range(1 << d.n):
        r = popcount(mask)
        k, _ = resolver.labels(mask)
        if k not in powers:
            powers[k] = loop**k
        sign = -1 if r % 2 else 1
        for e, c in powers[k].terms():
            acc[e + r] = acc.get(e + r, 0) + sign * c
    n_plus, n_minus = crossing_signs(d)
    poly = LaurentPoly(acc).shift(n_plus - 2 * n_minus)
    return -poly if n_minus % 2 else poly


def mirror_table(t: KhTable) -> KhTable:
    return KhTable({(-i, -j): v for (i, j), v in t.items()})


def tensor_tables(t1: KhTable, t2: KhTable) -> KhTable:
    """Künneth product over a field (homology of a split union)."""
    out: Dict[Tuple[int, int], int] = {}
    for (i1, j1), v1 in t1.items():
        for (i2, j2), v2 in t2.items():
            key = (i1 + i2, j1 + j2)
            out[key] = out.get(key, 0) + v1 * v2
    return KhTable(out)


def _monomial(var: str, exp: int) -> str:
    if exp == 0:
        return ""
    return var if exp == 1 else f"{var}^{exp}"


def poincare_polynomial(t: KhTable) -> str:
    """Two-variable rendering Σ dim · q^j t^i, ordered by (j, i)."""
    if not len(t):
        return "0"
    terms = []
    for (i, j), v in t.items():
        body = " ".join(part for part in (_monomial("q", j), _monomial("t", i)) if part) or "1"
        terms.append(body if v == 1 else f"{v} {body}")
    return " + ".join(terms)
