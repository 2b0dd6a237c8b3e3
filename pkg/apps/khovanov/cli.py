"""
Command-line front end.

Usage:
    python -m apps.khovanov kh --torus 2
    python -m apps.khovanov lee --braid "3 -1 -2 -1 -2 -1 -2"
    python -m apps.khovanov jones --pd trefoil.pd
    python -m apps.khovanov specseq --torus 3 --select top2 --j -13 --pages
    python -m apps.khovanov torus --torus 100 --format json
    python -m apps.khovanov verify --family 6

Exit status: 0 success, 1 input error, 2 failed check.
"""
import argparse
import os
import sys
from typing import List, Optional, Tuple

from dotenv import load_dotenv
from pydantic import ValidationError

_root = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
for p in (os.path.join(_root, ".env"), os.path.join(_root, "apps", "khovanov", ".env")):
    if os.path.exists(p):
        load_dotenv(dotenv_path=p)
        break

from apps.khovanov import config, telemetry  # noqa: E402
from apps.khovanov.errors import ConsistencyError, CubeLimitError, DiagramError  # noqa: E402
from apps.khovanov.homology.khovanov import (  # noqa: E402
    KhTable,
    graded_euler,
    kauffman_jones,
    khovanov_homology,
    mirror_table,
    poincare_polynomial,
)
from apps.khovanov.homology.lee import expected_lee_degrees, lee_homology, lee_within_kh  # noqa: E402
from apps.khovanov.knots.braids import BraidWord, from_braid, torus_braid  # noqa: E402
from apps.khovanov.knots.diagram import LinkDiagram, mirror, parse_pd  # noqa: E402
from apps.khovanov.schemas import (  # noqa: E402
    COMMANDS,
    CheckModel,
    Report,
    RunConfig,
    check_models,
    jones_terms,
    lee_entries,
    spectral_sequence_model,
    table_entries,
)
from apps.khovanov.specseq.pages import SSPage, spectral_sequence  # noqa: E402
from apps.khovanov.torus.tables import expected_kh_3q, positive_torus_table  # noqa: E402
from apps.khovanov.torus.verify import verify_family  # noqa: E402

logger = telemetry.get_logger(__name__)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_CHECK = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="khovanov", description="Exact Khovanov and Lee homology engine")
    parser.add_argument("command", choices=COMMANDS)
    source = parser.add_mutually_exclusive_group()
    source.add_argument("--pd", dest="pd_path", help="PD file (X/O/B records)")
    source.add_argument("--braid", help='braid word "width l1 l2 ..."')
    source.add_argument("--torus", type=int, help="negative torus link T(3, Q)")
    parser.add_argument("--family", type=int, help="verify T(3, q) for q = 2..Q against the engine")
    parser.add_argument("--structural-bound", type=int, default=200, help="largest q for structural checks")
    parser.add_argument("--j", dest="js", action="append", help="fixed quantum degree(s), repeatable or comma-separated")
    parser.add_argument("--select", help='"top2" or comma-separated crossing indices')
    parser.add_argument("--r-max", type=int, help="last page to report")
    parser.add_argument("--pages", action="store_true", help="report every page, not just the stable one")
    parser.add_argument("--mirror", action="store_true", help="use the mirror image")
    parser.add_argument("--lee-method", choices=("split", "direct"), default="split")
    parser.add_argument("--format", dest="output_format", choices=("text", "json"), default="text")
    parser.add_argument("--cube-limit", type=int, help="override KHOVANOV_CUBE_LIMIT")
    parser.add_argument("--workers", type=int, help="override KHOVANOV_WORKERS")
    parser.add_argument("--verbose", action="store_true", help="log at INFO")
    return parser


def _parse_js(values: Optional[List[str]]) -> Optional[List[int]]:
    if not values:
        return None
    return [int(v) for chunk in values for v in chunk.split(",") if v.strip()]


def load_diagram(cfg: RunConfig) -> LinkDiagram:
    if cfg.pd_path is not None:
        with open(cfg.pd_path, encoding="utf-8") as fh:
            d = parse_pd(fh.read())
    elif cfg.braid is not None:
        tokens = cfg.braid.replace(",", " ").split()
        if tokens and tokens[0] == "B":
            tokens = tokens[1:]
        try:
            values = [int(t) for t in tokens]
        except ValueError:
            raise DiagramError(f"malformed braid {cfg.braid!r}") from None
        if not values:
            raise DiagramError("empty braid")
        d = from_braid(BraidWord(values[0], tuple(values[1:])))
    else:
        d = from_braid(torus_braid(cfg.torus))
    return mirror(d) if cfg.mirror else d


def parse_selection(text: str, d: LinkDiagram) -> Tuple[int, ...]:
    if text == "top2":
        if d.n < 2:
            raise DiagramError("top2 selection needs at least 2 crossings")
        return (0, 1)
    try:
        return tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise DiagramError(f"malformed selection {text!r}") from None


def render_table(t: KhTable) -> str:
    lines = ["    i     j   dim"]
    lines.extend(f"{i:5d} {j:5d} {v:5d}" for (i, j), v in t.items())
    lines.append(f"Poincaré: {poincare_polynomial(t)}")
    return "\n".join(lines)


def render_page(page: SSPage, m: int) -> str:
    """s×t grid, t decreasing downward."""
    header = f"E{page.r}  j={page.j}"
    if not page.dims:
        return header + "\n  (zero)"
    ts = sorted({t for _, t in page.dims}, reverse=True)
    lines = [header, "      t |" + "".join(f"{s:4d}" for s in range(m + 1))]
    for t in ts:
        cells = "".join(f"{page[(s, t)] or '.':>4}" for s in range(m + 1))
        lines.append(f"  {t:5d} |{cells}")
    return "\n".join(lines)


def _diagram_checks(d: LinkDiagram, cfg: RunConfig) -> Tuple[KhTable, List[CheckModel]]:
    kh = khovanov_homology(d, cfg.cube_limit, cfg.workers)
    checks = []
    jones = kauffman_jones(d, cfg.cube_limit)
    checks.append(CheckModel(name="euler_equals_jones", status="ok" if graded_euler(kh) == jones else "violation"))
    kh_mirror = khovanov_homology(mirror(d), cfg.cube_limit, cfg.workers)
    checks.append(CheckModel(name="mirror_symmetry", status="ok" if kh_mirror == mirror_table(kh) else "violation"))
    lee = lee_homology(d, cfg.lee_method, cfg.cube_limit, cfg.workers)
    checks.append(
        CheckModel(name="lee_degrees", status="ok" if dict(expected_lee_degrees(d)) == lee.dims else "violation")
    )
    checks.append(CheckModel(name="lee_within_kh", status="ok" if lee_within_kh(lee, kh) else "violation"))
    return kh, checks


def run(cfg: RunConfig) -> Tuple[int, Report, str]:
    """Dispatch one command; returns (exit status, report, text rendering)."""
    kind = cfg.command
    if kind == "torus":
        table = positive_torus_table(cfg.torus) if cfg.mirror else expected_kh_3q(cfg.torus)
        report = Report(kind=kind, input=cfg.input_label, table=table_entries(table))
        return EXIT_OK, report, render_table(table)

    if kind == "verify" and cfg.family is not None:
        result = verify_family(cfg.family, cfg.structural_bound, cube_limit=cfg.cube_limit, workers=cfg.workers)
        report = Report(kind=kind, input=cfg.input_label, checks=check_models(result), verdict=result["status"])
        text = "\n".join(f"{c.status:9s} {c.name} {c.detail}".rstrip() for c in report.checks)
        return (EXIT_OK if report.ok else EXIT_CHECK), report, text

    d = load_diagram(cfg)
    if kind == "kh":
        table = khovanov_homology(d, cfg.cube_limit, cfg.workers)
        return EXIT_OK, Report(kind=kind, input=cfg.input_label, table=table_entries(table)), render_table(table)

    if kind == "lee":
        lee = lee_homology(d, cfg.lee_method, cfg.cube_limit, cfg.workers)
        expected = dict(expected_lee_degrees(d))
        checks = [CheckModel(name="lee_degrees", status="ok" if expected == lee.dims else "violation")]
        report = Report(kind=kind, input=cfg.input_label, lee=lee_entries(lee), checks=checks)
        text = "\n".join(f"Lee^{i} = {v}" for i, v in lee.dims.items())
        return (EXIT_OK if report.ok else EXIT_CHECK), report, text

    if kind == "jones":
        poly = kauffman_jones(d, cfg.cube_limit)
        return EXIT_OK, Report(kind=kind, input=cfg.input_label, jones=jones_terms(poly)), str(poly)

    if kind == "specseq":
        selected = parse_selection(cfg.select, d)
        reports = spectral_sequence(d, selected, cfg.js, cfg.r_max, cfg.workers, cfg.cube_limit)
        models = [spectral_sequence_model(r) for r in reports]
        if not cfg.pages:
            for model in models:
                model.pages = []
        checks = [
            CheckModel(name=f"converges_j={r.j}", status="ok" if r.converged else "violation", detail=r.verdict)
            for r in reports
        ]
        collapse = max((r.collapse_page for r in reports), default=1)
        verdict = f"collapsed at E{collapse}"
        report = Report(kind=kind, input=cfg.input_label, pages=models, checks=checks, verdict=verdict)
        blocks = []
        for r in reports:
            shown = r.pages if cfg.pages else [r.stable]
            blocks.extend(render_page(p, len(selected)) for p in shown)
            blocks.append(f"j={r.j}: {r.verdict}")
        return (EXIT_OK if report.ok else EXIT_CHECK), report, "\n".join(blocks)

    # verify with a diagram input
    table, checks = _diagram_checks(d, cfg)
    report = Report(kind=kind, input=cfg.input_label, table=table_entries(table), checks=checks)
    text = "\n".join(f"{c.status:9s} {c.name}" for c in checks)
    return (EXIT_OK if report.ok else EXIT_CHECK), report, text


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    level = "INFO" if args.verbose else config.LOG_LEVEL
    telemetry.configure_logging(level, json_output=args.output_format == "json")
    telemetry.init_telemetry()

    try:
        cfg = RunConfig(
            command=args.command,
            pd_path=args.pd_path,
            braid=args.braid,
            torus=args.torus,
            family=args.family,
            js=_parse_js(args.js),
            select=args.select,
            r_max=args.r_max,
            pages=args.pages,
            mirror=args.mirror,
            output_format=args.output_format,
            cube_limit=args.cube_limit,
            workers=args.workers,
            structural_bound=args.structural_bound,
            lee_method=args.lee_method,
        )
    except (ValidationError, ValueError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_INPUT

    try:
        status, report, text = run(cfg)
    except (DiagramError, CubeLimitError, OSError) as e:
        logger.error("input_error", error=str(e))
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except ConsistencyError as e:
        logger.error("consistency_error", error=str(e))
        print(f"Check failed: {e}", file=sys.stderr)
        return EXIT_CHECK

    print(report.to_json() if cfg.output_format == "json" else text)
    return status


if __name__ == "__main__":
    sys.exit(main())
