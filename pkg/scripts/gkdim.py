#!/usr/bin/env python3
"""
Command-line entry point of the graded growth engine

Subcommands: am, fit, schur, sln, verify. Reports go to stdout or --out as
JSON or CSV; logs go to stderr. Exit status: 0 all checks pass,
1 mismatch or unstable fit, 2 usage error.
"""
import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

import pandas as pd

# Add project path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from algebra.graded_model import Family, grading_spec
from combinatorics.tableaux import InvalidShape, Partition, closed_form_dim, ssyt_count
from config.system_config import get_config
from growth.cocharacter import (
    InsufficientData,
    a_m,
    expected_gk_dimension,
    fit_degree,
    growth_sequence,
)
from growth.spanning import (
    ResourceLimitExceeded,
    a_m_bruteforce,
    assoc_component_dim,
    assoc_span_dim,
    check_word_budget,
    component_dim,
    component_dims,
    get_default_store,
)
from utils.logger import LogContext, get_logger, log_metrics, setup_logging
from utils.run_validator import RunConfig, RunConfigValidator, errors, format_validation_report

log = get_logger("cli")

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2


class UsageError(Exception):
    """Invalid configuration; reported with exit status 2."""


@dataclass
class Report:
    config: Dict[str, Any]
    rows: List[Dict[str, Any]] = field(default_factory=list)
    fit: Optional[Dict[str, Any]] = None
    timings: Optional[Dict[str, float]] = None
    status: int = EXIT_OK

    def payload(self) -> Dict[str, Any]:
        data = {"config": self.config, "rows": self.rows}
        if self.fit is not None:
            data["fit"] = self.fit
        if self.timings is not None:
            data["timings"] = self.timings
        return data

    def to_json(self) -> str:
        return json.dumps(self.payload(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    def to_csv(self) -> str:
        frame = pd.DataFrame(self.rows, dtype=object)
        return frame.to_csv(index=False, lineterminator="\n")

    def render(self, fmt: str) -> str:
        return self.to_csv() if fmt == "csv" else self.to_json()

    def write(self, fmt: str, output: Optional[str] = None):
        text = self.render(fmt)
        if output in (None, "-"):
            sys.stdout.write(text)
            sys.stdout.flush()
        else:
            path = Path(output)
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(text, encoding="utf-8")
            log.info(f"Report written to {path}")


def _timed_rows(cfg: RunConfig, report: Report, label: str, compute):
    """Run compute(m) for m = 1..m_max, collecting rows and per-m timings."""
    timings = {}
    for m in range(1, cfg.m_max + 1):
        with LogContext(f"{label} m={m}", "cli") as ctx:
            report.rows.extend(compute(m))
        timings[str(m)] = round(ctx.elapsed_seconds, 6)
    if cfg.timings:
        report.timings = timings


def _spec_for(cfg: RunConfig):
    family = Family.parse(cfg.family)
    return grading_spec(family, cfg.n if family is Family.SLN_VASILOVSKY else None)


def cmd_am(cfg: RunConfig) -> Report:
    """a_m for m = 1..m_max by brute force, formula, or both."""
    report = Report(cfg.echo())
    spec = _spec_for(cfg)
    brute = cfg.method in ("brute", "both")
    formula = cfg.method in ("formula", "both")
    if brute:
        check_word_budget(spec, cfg.k, cfg.m_max, cfg.word_cap, cfg.fix_first)

    def compute(m):
        row = {"m": m}
        if brute:
            row["a_m_brute"] = a_m_bruteforce(spec, cfg.k, m, fix_first=cfg.fix_first,
                                              word_cap=cfg.word_cap, workers=cfg.workers)
        if formula:
            row["a_m_formula"] = a_m(spec.family, cfg.k, m)
        if brute and formula:
            row["match"] = row["a_m_brute"] == row["a_m_formula"]
            if not row["match"]:
                log.warning(f"{spec.label} k={cfg.k} m={m}: brute force {row['a_m_brute']} "
                            f"!= formula {row['a_m_formula']}")
                report.status = EXIT_MISMATCH
        return [row]

    _timed_rows(cfg, report, f"am {spec.label}", compute)
    return report


def cmd_fit(cfg: RunConfig) -> Report:
    """Fit the polynomial degree of g(n) from formula values."""
    family = Family.parse(cfg.family)
    if not family.is_sl2:
        raise UsageError("fit needs a sl2 family; the sl_n model has no formula")
    report = Report(cfg.echo())
    expected = expected_gk_dimension(family, cfg.k)
    max_degree = cfg.extra.get("max_degree") or expected + 1

    sequence = []

    def compute(m):
        previous = sequence[-1][1] if sequence else 0
        value = a_m(family, cfg.k, m)
        sequence.append((m, previous + value))
        return [{"m": m, "a_m": value, "g": previous + value}]

    _timed_rows(cfg, report, f"fit {family.value}", compute)
    try:
        fit = fit_degree(sequence, max_degree=max_degree)
    except InsufficientData as e:
        raise UsageError(f"{e}; increase --m-max to at least {2 * max_degree + 4} "
                         f"or lower --max-degree") from None

    agrees = fit.degree == expected
    report.fit = dict(fit.to_dict(), expected_degree=expected, agrees_with_expected=agrees)
    if not agrees:
        log.warning(f"{family.value} k={cfg.k}: measured degree {fit.degree}, stated {expected}")
    if not fit.stable:
        log.warning(f"{family.value} k={cfg.k}: fit is not stable")
        report.status = EXIT_MISMATCH
    return report


def cmd_schur(cfg: RunConfig) -> Report:
    """Tableau count of a shape and, for at most two rows, the closed form."""
    shape = Partition.parse(cfg.extra["shape"])
    report = Report(cfg.echo())
    row = {"shape": ",".join(map(str, shape.parts)), "k": cfg.k, "ssyt_count": ssyt_count(shape, cfg.k)}
    closed = closed_form_dim(shape, cfg.k)
    if closed is not None:
        row["closed_form"] = closed
        row["equal"] = closed == row["ssyt_count"]
        if not row["equal"]:
            log.warning(f"shape {shape}: closed form {closed} != count {row['ssyt_count']}")
            report.status = EXIT_MISMATCH
    report.rows.append(row)
    return report


def check_fixture(rows: List[Dict[str, Any]], path: Path) -> bool:
    """Compare (m, multidegree, dim) with a stored fixture, writing it when absent."""
    current = {f"{row['m']}|{row['multidegree']}": row["dim"] for row in rows}
    if not path.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(current, sort_keys=True, indent=2) + "\n", encoding="utf-8")
        log.info(f"Regression fixture created at {path}")
        return True
    stored = json.loads(path.read_text(encoding="utf-8"))
    degrees = {str(row["m"]) for row in rows}
    # stored rows of degrees outside this run are not compared
    stored = {key: value for key, value in stored.items() if key.split("|", 1)[0] in degrees}
    differing = sorted(key for key in stored.keys() | current.keys() if stored.get(key) != current.get(key))
    for key in differing:
        log.error(f"fixture {path.name}: {key} stored {stored.get(key)}, computed {current.get(key)}")
    return not differing


def cmd_sln(cfg: RunConfig) -> Report:
    """Per-multidegree component dimensions of the Z_n-graded sl_n model."""
    spec = _spec_for(cfg)
    check_word_budget(spec, cfg.k, cfg.m_max, cfg.word_cap, cfg.fix_first)
    report = Report(cfg.echo())
    reference = grading_spec(Family.SL2_Z2) if spec.n == 2 else None
    with_assoc = cfg.extra.get("assoc", False)

    def compute(m):
        rows = []
        dims = component_dims(spec, cfg.k, m, fix_first=cfg.fix_first,
                              word_cap=cfg.word_cap, workers=cfg.workers)
        if with_assoc:
            assoc = assoc_component_dim(spec, cfg.k, m)
            span = assoc_span_dim(spec, cfg.k, m)
            lie_total = sum(dim for _, dim in dims)
            if lie_total > span:
                log.error(f"{spec.label} m={m}: Lie dimension {lie_total} exceeds associative {span}")
                report.status = EXIT_MISMATCH
        for md, dim in dims:
            row = {"m": m, "multidegree": md.key(), "dim": dim}
            if reference is not None:
                row["sl2_z2_dim"] = component_dim(reference, cfg.k, md, fix_first=cfg.fix_first,
                                                  word_cap=cfg.word_cap)
                row["match"] = row["sl2_z2_dim"] == dim
                if not row["match"]:
                    log.warning(f"{md.key()}: sl_2 model {dim} != Z2 model {row['sl2_z2_dim']}")
                    report.status = EXIT_MISMATCH
            if with_assoc:
                row["assoc_dim"] = assoc
                row["assoc_span_dim"] = span
            rows.append(row)
        return rows

    _timed_rows(cfg, report, f"sln {spec.label}", compute)
    fixture = cfg.extra.get("fixture")
    if fixture and not check_fixture(report.rows, Path(fixture)):
        report.status = EXIT_MISMATCH
    return report


def _load_verify_matrix(settings, quick: bool) -> List[Dict[str, Any]]:
    data = json.loads(Path(settings.VERIFY_MATRIX_PATH).read_text(encoding="utf-8"))
    return data["quick_configs" if quick else "configs"]


def cmd_verify(cfg: RunConfig, settings=None) -> Report:
    """Brute force against formula over the built-in configuration matrix."""
    settings = settings or get_config()
    report = Report(cfg.echo())
    pruning = cfg.extra.get("check_pruning", False)
    timings = {}
    for entry in _load_verify_matrix(settings, cfg.extra.get("quick", False)):
        spec = grading_spec(entry["family"])
        k = entry["k"]
        for m in range(entry["m_min"], entry["m_max"] + 1):
            with LogContext(f"verify {spec.label} k={k} m={m}", "cli") as ctx:
                brute = a_m_bruteforce(spec, k, m, fix_first=False, word_cap=cfg.word_cap, workers=cfg.workers)
                formula = a_m(spec.family, k, m)
                row = {"family": spec.label, "k": k, "m": m, "a_m_brute": brute,
                       "a_m_formula": formula, "match": brute == formula}
                if pruning:
                    row["a_m_brute_fixed_first"] = a_m_bruteforce(spec, k, m, fix_first=True,
                                                                  word_cap=cfg.word_cap, workers=cfg.workers)
                    row["pruning_match"] = row["a_m_brute_fixed_first"] == brute
                if not row["match"] or not row.get("pruning_match", True):
                    log.warning(f"verification mismatch: {row}")
                    report.status = EXIT_MISMATCH
            report.rows.append(row)
            timings[f"{spec.label}/k{k}/m{m}"] = round(ctx.elapsed_seconds, 6)
    if cfg.timings:
        report.timings = timings
    return report


COMMANDS = {
    "am": cmd_am,
    "fit": cmd_fit,
    "schur": cmd_schur,
    "sln": cmd_sln,
    "verify": cmd_verify,
}


def build_parser(settings) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--format', choices=['json', 'csv'], default='json', help='Report format (default: json)')
    common.add_argument('--out', default=None, help='Report file (default: standard output)')
    common.add_argument('--log-level', default=None, help=f'Log level (default: {settings.LOG_LEVEL})')
    common.add_argument('--timings', action='store_true', help='Include per-m wall-clock timings')
    common.add_argument('--workers', type=int, default=settings.WORKERS, help='Worker processes for component dimensions')
    common.add_argument('--word-cap', type=int, default=settings.WORD_CAP,
                        help=f'Maximum words per multidegree (default: {settings.WORD_CAP})')
    common.add_argument('--fix-first', action='store_true', default=settings.FIX_FIRST_LETTER,
                        help='Pin the first letter of every word to the minimal letter')

    parser = argparse.ArgumentParser(description='Growth of graded identities of graded Lie algebras')
    parser.add_argument('--profile', default=None, help='Configuration profile (development, production, testing)')
    sub = parser.add_subparsers(dest='command', required=True)

    am = sub.add_parser('am', parents=[common], help='Table of a_m')
    am.add_argument('--family', required=True)
    am.add_argument('--n', type=int, default=None, help='Matrix size for the sln family')
    am.add_argument('--k', type=int, required=True)
    am.add_argument('--m-max', type=int, default=settings.DEFAULT_M_MAX)
    am.add_argument('--method', default='brute')

    fit = sub.add_parser('fit', parents=[common], help='Fit the degree of g(n)')
    fit.add_argument('--family', required=True)
    fit.add_argument('--k', type=int, required=True)
    fit.add_argument('--m-max', type=int, default=settings.FIT_M_MAX)
    fit.add_argument('--max-degree', type=int, default=None)

    schur = sub.add_parser('schur', parents=[common], help='Semistandard tableau counts')
    schur.add_argument('--shape', required=True, help='Comma separated parts, e.g. 2,1')
    schur.add_argument('--k', type=int, required=True)

    sln = sub.add_parser('sln', parents=[common], help='Component dimensions of the Z_n-graded sl_n model')
    sln.add_argument('--n', type=int, required=True)
    sln.add_argument('--k', type=int, required=True)
    sln.add_argument('--m-max', type=int, default=settings.DEFAULT_M_MAX)
    sln.add_argument('--assoc', action='store_true', help='Add associative dimensions per m')
    sln.add_argument('--fixture', default=None, help='Regression fixture to compare with (created if absent)')

    verify = sub.add_parser('verify', parents=[common], help='Brute force against formula on the built-in matrix')
    verify.add_argument('--quick', action='store_true', help='Use the reduced matrix')
    verify.add_argument('--check-pruning', action='store_true', help='Also compare with first-letter pinning')
    return parser


def run_config_from_args(args) -> RunConfig:
    extra = {}
    for name in ('max_degree', 'shape', 'assoc', 'fixture', 'quick', 'check_pruning'):
        value = getattr(args, name, None)
        if value not in (None, False):
            extra[name] = value
    family = getattr(args, 'family', None)
    if args.command == 'sln':
        family = 'sln'
    return RunConfig(
        command=args.command,
        family=family,
        k=getattr(args, 'k', None),
        m_max=getattr(args, 'm_max', None),
        method=getattr(args, 'method', 'formula' if args.command == 'fit' else 'brute'),
        n=getattr(args, 'n', None),
        output=args.out,
        format=args.format,
        fix_first=args.fix_first,
        word_cap=args.word_cap,
        workers=args.workers,
        timings=args.timings,
        extra=extra,
    )


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    profile = None
    if '--profile' in argv and argv.index('--profile') + 1 < len(argv):
        profile = argv[argv.index('--profile') + 1]
    settings = get_config(profile)
    parser = build_parser(settings)
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    setup_logging(args.log_level or settings.LOG_LEVEL, settings.LOG_FILE, settings.STRUCTURED_LOG_FILE)
    cfg = run_config_from_args(args)

    results = RunConfigValidator(settings).validate(cfg)
    if results:
        for result in results:
            if result.is_valid:
                log.warning(str(result))
    if errors(results):
        sys.stderr.write(format_validation_report(errors(results)) + "\n")
        return EXIT_USAGE

    try:
        if cfg.command == 'verify':
            report = cmd_verify(cfg, settings)
        else:
            report = COMMANDS[cfg.command](cfg)
    except (UsageError, InvalidShape, ResourceLimitExceeded) as e:
        log.error(str(e))
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE

    report.write(cfg.format, cfg.output)
    log_metrics("run_finished", "cli", command=cfg.command, rows=len(report.rows),
                status=report.status, cache_hits=get_default_store().hits)
    return report.status


if __name__ == "__main__":
    sys.exit(main())
