"""
The spectral sequence of the partial-resolution filtration at fixed j.

A generator of C(D) has filtration degree p when the first p selected
crossings are all 1-smoothed (capped at m), so F^p C(D) is the copy of
C(D_p). With R_i(a, b) the rank of d: F^a C^i → C^{i+1} / F^b C^{i+1},

    dim E_r^{p,i} = dim gr^p C^i − R_i(p, p+r) + R_i(p+1, p+r)
                    + R_{i−1}(p−r+1, p) − R_{i−1}(p−r+1, p+1)

and E_r^{s,t} is reported with t = i − s.

The rank of d_r leaving (p, i) is

    R_i(p, p+r+1) − R_i(p, p+r) − R_i(p+1, p+r+1) + R_i(p+1, p+r)

and every page satisfies dim E_{r+1} = dim E_r − 2 Σ rank d_r.
"""
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from opentelemetry import trace

from apps.khovanov import config, telemetry
from apps.khovanov.errors import ConsistencyError
from apps.khovanov.homology.complex import ChainComplex, build_complex, check_cube_limit
from apps.khovanov.homology.khovanov import KhTable, khovanov_homology
from apps.khovanov.knots.diagram import LinkDiagram
from apps.khovanov.knots.partial import PartialDiagrams, partial_diagrams
from apps.khovanov.linalg.sparse import SparseMat, rank
from apps.khovanov.specseq.constants import SSConstants, ss_constants

tracer = trace.get_tracer(__name__)
logger = telemetry.get_logger(__name__)


@dataclass(frozen=True)
class SSPage:
    r: int
    j: int
    dims: Dict[Tuple[int, int], int]

    def __getitem__(self, key: Tuple[int, int]) -> int:
        return self.dims.get(key, 0)

    def total(self) -> int:
        return sum(self.dims.values())

    def euler(self) -> int:
        return sum((-1) ** ((s + t) % 2) * v for (s, t), v in self.dims.items())

    def along_diagonal(self) -> Dict[int, int]:
        """{i: Σ_s dim E^{s, i−s}}."""
        out: Dict[int, int] = {}
        for (s, t), v in self.dims.items():
            out[s + t] = out.get(s + t, 0) + v
        return out


@dataclass
class SSReport:
    j: int
    selected: Tuple[int, ...]
    pages: List[SSPage]
    stable: SSPage
    kh_column: Dict[int, int]
    collapse_page: int
    converged: bool
    d_ranks: Dict[int, int] = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        text = f"collapsed at E{self.collapse_page}"
        return text if self.converged else text + "; does not converge to Kh"


class E1Terms:
    """Khovanov homology of the partial diagrams, shifted into E_1 position."""

    def __init__(self, parts: PartialDiagrams, constants: SSConstants = None, cube_limit: int = None):
        self.parts = parts
        self.constants = constants or ss_constants(parts)
        m = parts.m
        self.tables: List[KhTable] = [khovanov_homology(parts.open[s + 1].diagram, cube_limit) for s in range(m)]
        self.tables.append(khovanov_homology(parts.closed[m].diagram, cube_limit))

    def _shift(self, s: int) -> Tuple[int, int]:
        c, m = self.constants, self.parts.m
        if s < m:
            return s + c.A[s] + c.a_tilde[s], c.B[s] + c.b_tilde[s]
        return m + c.A[m], c.B[m]

    def page(self, j: int) -> SSPage:
        dims = {}
        for s, table in enumerate(self.tables):
            di, dj = self._shift(s)
            for (i, jj), v in table.items():
                if jj == j + dj:
                    dims[(s, i - di)] = v
        return SSPage(1, j, dims)

    def support(self) -> List[int]:
        js = set()
        for s, table in enumerate(self.tables):
            _, dj = self._shift(s)
            js.update(jj - dj for (_, jj) in table)
        return sorted(js)


def e1_page(
    d: LinkDiagram,
    selected: Sequence[int],
    j: int,
    rng: Optional[np.random.Generator] = None,
    cube_limit: int = None,
) -> SSPage:
    with tracer.start_as_current_span("e1_page"):
        return E1Terms(partial_diagrams(d, selected, rng), cube_limit=cube_limit).page(j)


def e1_support(d: LinkDiagram, selected: Sequence[int], cube_limit: int = None) -> List[int]:
    """Quantum degrees j with a nonzero E_1 column."""
    return E1Terms(partial_diagrams(d, selected), cube_limit=cube_limit).support()


class FilteredBlock:
    """The fixed-j part of C(D) with its filtration degrees and cached ranks."""

    def __init__(self, cx: ChainComplex, selected: Sequence[int], j: int):
        self.m = len(selected)
        self.j = j
        self.degrees = cx.homological_degrees()
        self._filt: Dict[int, List[int]] = {}
        self._index: Dict[int, List[int]] = {}
        for i in self.degrees:
            idx, filt = [], []
            for pos, ((mask, _), jj) in enumerate(zip(cx.basis(i), cx.jdegs(i))):
                if jj != j:
                    continue
                p = 0
                while p < self.m and (mask >> selected[p]) & 1:
                    p += 1
                idx.append(pos)
                filt.append(p)
            self._index[i] = idx
            self._filt[i] = filt
        self._d: Dict[int, SparseMat] = {}
        for i in self.degrees:
            if i + 1 in self._index:
                self._d[i] = cx.differential(i).submatrix(self._index[i + 1], self._index[i])
        self._ranks: Dict[Tuple[int, int, int], int] = {}

    def graded_dim(self, p: int, i: int) -> int:
        return sum(1 for f in self._filt.get(i, []) if f == p)

    def R(self, i: int, a: int, b: int) -> int:
        """rank of d: F^a C^i → C^{i+1} / F^b C^{i+1}."""
        if i not in self._d:
            return 0
        a, b = max(a, 0), min(b, self.m + 1)
        if a > self.m or b <= 0:
            return 0
        key = (i, a, b)
        if key not in self._ranks:
            cols = [c for c, f in enumerate(self._filt[i]) if f >= a]
            rows = [r for r, f in enumerate(self._filt[i + 1]) if f < b]
            self._ranks[key] = rank(self._d[i].submatrix(rows, cols)) if cols and rows else 0
        return self._ranks[key]

    def page(self, r: int) -> SSPage:
        dims = {}
        for i in self.degrees:
            for p in range(self.m + 1):
                g = self.graded_dim(p, i)
                if not g:
                    continue
                v = (
                    g
                    - self.R(i, p, p + r)
                    + self.R(i, p + 1, p + r)
                    + self.R(i - 1, p - r + 1, p)
                    - self.R(i - 1, p - r + 1, p + 1)
                )
                if v < 0:
                    raise ConsistencyError(f"negative page dimension at r={r}, p={p}, i={i}")
                if v:
                    dims[(p, i - p)] = v
        return SSPage(r, self.j, dims)

    def d_rank(self, r: int) -> int:
        """Σ over (p, i) of rank d_r: E_r^{p,i} → E_r^{p+r,i+1}."""
        total = 0
        for i in self.degrees:
            for p in range(self.m + 1):
                v = (
                    self.R(i, p, p + r + 1)
                    - self.R(i, p, p + r)
                    - self.R(i, p + 1, p + r + 1)
                    + self.R(i, p + 1, p + r)
                )
                if v < 0:
                    raise ConsistencyError(f"negative rank of d_{r} at p={p}, i={i}")
                total += v
        return total


def compute_pages(
    d: LinkDiagram,
    selected: Sequence[int],
    j: int,
    r_max: int = None,
    kh: KhTable = None,
    complex_: ChainComplex = None,
    cube_limit: int = None,
) -> SSReport:
    check_cube_limit(d, cube_limit)
    selected = tuple(selected)
    m = len(selected)
    partial_diagrams(d, selected)  # validates the selection
    with tracer.start_as_current_span("compute_pages") as span:
        span.set_attribute("j", j)
        span.set_attribute("selected", len(selected))
        cx = complex_ or build_complex(d, cube_limit=cube_limit)
        block = FilteredBlock(cx, selected, j)

        last = max(r_max or 1, m + 1)
        pages = [block.page(r) for r in range(1, last + 2)]
        stable = pages[m]
        if pages[m + 1].dims != stable.dims:
            raise ConsistencyError(f"pages at j={j} not stable by E{m + 1}")
        for earlier, later in zip(pages, pages[1:]):
            for key, v in later.dims.items():
                if v > earlier[key]:
                    raise ConsistencyError(f"page dimension grew at {key} from E{earlier.r} to E{later.r}")
            if earlier.euler() != later.euler():
                raise ConsistencyError(f"Euler characteristic changed between E{earlier.r} and E{later.r}")

        d_ranks = {r: block.d_rank(r) for r in range(1, last + 1)}
        for r, k in d_ranks.items():
            if pages[r - 1].total() - pages[r].total() != 2 * k:
                raise ConsistencyError(f"dim E{r + 1} ≠ dim E{r} − 2 rank d_{r} at j={j}")

        collapse = next(p.r for p in pages if p.dims == stable.dims)
        kh = kh if kh is not None else khovanov_homology(d, cube_limit)
        column = kh.column(j)
        converged = stable.along_diagonal() == column
        shown = pages[: max(r_max or 1, collapse)]
        span.set_attribute("collapse_page", collapse)
        logger.info("pages_stable", j=j, collapse=collapse, converged=converged)
        return SSReport(j, selected, shown, stable, column, collapse, converged, d_ranks)


def _pages_job(args):
    d, selected, j, r_max, cube_limit = args
    return compute_pages(d, selected, j, r_max, cube_limit=cube_limit)


def spectral_sequence(
    d: LinkDiagram,
    selected: Sequence[int],
    js: Sequence[int] = None,
    r_max: int = None,
    workers: int = None,
    cube_limit: int = None,
) -> List[SSReport]:
    """compute_pages for several j (default: every j with a nonzero E_1 column)."""
    if js is None:
        js = e1_support(d, selected, cube_limit)
    width = config.workers(workers)
    if width > 1 and len(js) > 1:
        with ProcessPoolExecutor(max_workers=width) as pool:
            return list(pool.map(_pages_job, [(d, tuple(selected), j, r_max, cube_limit) for j in js]))
    cx = build_complex(d, cube_limit=cube_limit)
    kh = khovanov_homology(d, cube_limit)
    return [compute_pages(d, selected, j, r_max, kh=kh, complex_=cx, cube_limit=cube_limit) for j in js]
