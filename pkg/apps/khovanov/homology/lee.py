"""
Singly graded rational Lee homology.

The default "split" method works in the idempotent basis a = 1 + x,
b = 1 − x. There the differential keeps the a/b colour of every edge, so
each homological degree breaks into one small block per edge colouring.
The "direct" method eliminates the plain {1, x} complex instead.
"""
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Mapping

from opentelemetry import trace

from apps.khovanov import config, telemetry
from apps.khovanov.errors import ConsistencyError
from apps.khovanov.homology.complex import build_complex, check_cube_limit
from apps.khovanov.homology.frobenius import LEE, LEE_DIAGONAL
from apps.khovanov.homology.khovanov import KhTable
from apps.khovanov.knots.diagram import LinkDiagram, components_and_linking
from apps.khovanov.linalg.sparse import ranks

tracer = trace.get_tracer(__name__)
logger = telemetry.get_logger(__name__)


@dataclass(frozen=True)
class LeeTable:
    dims: Mapping[int, int]

    def __post_init__(self):
        object.__setattr__(self, "dims", {int(i): int(v) for i, v in sorted(dict(self.dims).items()) if v})

    def __getitem__(self, i: int) -> int:
        return self.dims.get(i, 0)

    def __eq__(self, other):
        if isinstance(other, LeeTable):
            return self.dims == other.dims
        if isinstance(other, Mapping):
            return self.dims == LeeTable(other).dims
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self.dims.items()))

    def total_dimension(self) -> int:
        return sum(self.dims.values())

    def __repr__(self):
        return f"LeeTable({self.dims})"


def lee_homology(d: LinkDiagram, method: str = "split", cube_limit: int = None, workers: int = None) -> LeeTable:
    if method not in ("split", "direct"):
        raise ValueError(f"unknown Lee method {method!r}")
    check_cube_limit(d, cube_limit)
    with tracer.start_as_current_span("lee_homology") as span:
        span.set_attribute("method", method)
        algebra = LEE_DIAGONAL if method == "split" else LEE
        cx = build_complex(d, algebra, cube_limit)

        if method == "split":
            labels = cx.circle_labels

            def colouring(r, generator, q):
                mask, lab = generator
                return tuple((lab >> circle) & 1 for circle in labels[mask])

        else:

            def colouring(r, generator, q):
                return 0

        degrees = cx.homological_degrees()
        keys, mats = [], []
        for i in degrees[:-1]:
            for _, (_, _, block) in cx.split_blocks(i, colouring).items():
                keys.append(i)
                mats.append(block)
        rank_of: Dict[int, int] = {}
        for i, rk in zip(keys, ranks(mats, config.workers(workers))):
            rank_of[i] = rank_of.get(i, 0) + rk

        dims = {i: len(cx.basis(i)) - rank_of.get(i, 0) - rank_of.get(i - 1, 0) for i in degrees}
        table = LeeTable(dims)

        components = len(components_and_linking(d)[0])
        if table.total_dimension() != 2**components:
            raise ConsistencyError(
                f"Lee homology has total dimension {table.total_dimension()}, expected {2 ** components}"
            )
        span.set_attribute("total_dimension", table.total_dimension())
        logger.info("lee_homology", crossings=d.n, method=method, dims=table.dims)
        return table


def expected_lee_degrees(d: LinkDiagram) -> Counter:
    """Degree 2·Σ_{l∈E, m∉E} lk(l, m) for every subset E of components."""
    comps, lk = components_and_linking(d)
    k = len(comps)
    degrees: Counter = Counter()
    for size in range(k + 1):
        for subset in combinations(range(k), size):
            inside = set(subset)
            degrees[2 * sum(lk[l][m] for l in inside for m in range(k) if m not in inside)] += 1
    return degrees


def lee_within_kh(lee: LeeTable, kh: KhTable) -> bool:
    """dim Lee^i ≤ Σ_j dim Kh^{i,j} for every i."""
    per_i: Dict[int, int] = {}
    for (i, _), v in kh.items():
        per_i[i] = per_i.get(i, 0) + v
    return all(v <= per_i.get(i, 0) for i, v in lee.dims.items())
