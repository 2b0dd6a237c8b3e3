from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, Field, model_validator

from apps.khovanov.homology.khovanov import KhTable
from apps.khovanov.homology.lee import LeeTable
from apps.khovanov.linalg.laurent import LaurentPoly
from apps.khovanov.specseq.pages import SSPage, SSReport

COMMANDS = ("kh", "lee", "jones", "specseq", "torus", "verify")


# Run configuration
class RunConfig(BaseModel):
    command: Literal["kh", "lee", "jones", "specseq", "torus", "verify"]
    pd_path: Optional[str] = None
    braid: Optional[str] = None
    torus: Optional[int] = None
    family: Optional[int] = None
    js: Optional[List[int]] = None
    select: Optional[str] = None
    r_max: Optional[int] = None
    pages: bool = False
    mirror: bool = False
    output_format: Literal["text", "json"] = "text"
    cube_limit: Optional[int] = None
    workers: Optional[int] = None
    structural_bound: int = 200
    lee_method: Literal["split", "direct"] = "split"

    @model_validator(mode="after")
    def check_inputs(self):
        sources = [s for s in (self.pd_path, self.braid, self.torus) if s is not None]
        if self.command == "verify" and self.family is not None:
            if sources:
                raise ValueError("verify --family takes no diagram input")
        elif len(sources) != 1:
            raise ValueError("exactly one of --pd, --braid, --torus is required")
        if self.select is not None and self.command != "specseq":
            raise ValueError("--select is only valid with specseq")
        if self.command == "specseq" and self.select is None:
            raise ValueError("specseq needs --select")
        if self.command == "torus" and self.torus is None:
            raise ValueError("torus needs --torus Q")
        if self.family is not None and self.command != "verify":
            raise ValueError("--family is only valid with verify")
        if self.torus is not None and self.torus < 1:
            raise ValueError("--torus must be positive")
        if self.r_max is not None and self.r_max < 1:
            raise ValueError("--r-max must be at least 1")
        return self

    @property
    def input_label(self) -> str:
        if self.pd_path is not None:
            return f"pd:{self.pd_path}"
        if self.braid is not None:
            return f"braid:{self.braid}"
        if self.torus is not None:
            return f"torus:{self.torus}"
        return f"family:{self.family}"


# Report schemas
class TableEntry(BaseModel):
    i: int
    j: int
    dim: int


class LeeEntry(BaseModel):
    i: int
    dim: int


class JonesTerm(BaseModel):
    exp: int
    coeff: int


class PageEntry(BaseModel):
    s: int
    t: int
    dim: int


class PageModel(BaseModel):
    r: int
    j: int
    entries: List[PageEntry]


class CheckModel(BaseModel):
    name: str
    status: Literal["ok", "violation"]
    detail: str = ""


class SpectralSequenceModel(BaseModel):
    j: int
    selected: List[int]
    pages: List[PageModel]
    stable: PageModel
    kh_column: Dict[int, int]
    collapse_page: int
    converged: bool
    verdict: str
    d_ranks: Dict[int, int] = Field(default_factory=dict)


class Report(BaseModel):
    schema_version: int = Field(default=1, alias="schema")
    kind: str
    input: str
    table: Optional[List[TableEntry]] = None
    lee: Optional[List[LeeEntry]] = None
    jones: Optional[List[JonesTerm]] = None
    pages: Optional[List[SpectralSequenceModel]] = None
    checks: List[CheckModel] = Field(default_factory=list)
    verdict: Optional[str] = None

    model_config = {"populate_by_name": True}

    @property
    def ok(self) -> bool:
        return all(c.status == "ok" for c in self.checks)

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True, exclude_none=True, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.model_validate_json(text)


def table_entries(t: KhTable) -> List[TableEntry]:
    return [TableEntry(i=i, j=j, dim=v) for (i, j), v in t.items()]


def table_from_entries(entries: List[TableEntry]) -> KhTable:
    return KhTable({(e.i, e.j): e.dim for e in entries})


def lee_entries(t: LeeTable) -> List[LeeEntry]:
    return [LeeEntry(i=i, dim=v) for i, v in t.dims.items()]


def jones_terms(p: LaurentPoly) -> List[JonesTerm]:
    return [JonesTerm(exp=e, coeff=c) for e, c in p.terms()]


def page_model(page: SSPage) -> PageModel:
    entries = [PageEntry(s=s, t=t, dim=v) for (s, t), v in sorted(page.dims.items())]
    return PageModel(r=page.r, j=page.j, entries=entries)


def spectral_sequence_model(report: SSReport) -> SpectralSequenceModel:
    return SpectralSequenceModel(
        j=report.j,
        selected=list(report.selected),
        pages=[page_model(p) for p in report.pages],
        stable=page_model(report.stable),
        kh_column=report.kh_column,
        collapse_page=report.collapse_page,
        converged=report.converged,
        verdict=report.verdict,
        d_ranks=report.d_ranks,
    )


def check_models(report: Dict) -> List[CheckModel]:
    return [CheckModel(name=c["name"], status=c["status"], detail=str(c.get("detail", ""))) for c in report["checks"]]
