"""Command-line surface for the library.

Subcommands emit plot-ready tables (CSV with a header row, or JSON with
one object per row and the run manifest as the trailing object):

  dist       theoretical curves: rank, benford, bell, loglog
  enumerate  exhaustive microstate lists / exact occupancy census
  sample     reproducible uniform microstate sampling, optional comparison
  benford    first-digit conformance screening of numeric files
  zipf       token rank-frequency analysis of text files
  fit        power-law slope fit of an (x, y) table
  gen        deterministic synthetic data generators (self-test inputs)

Exit codes: 0 success/conforming, 1 completed but non-conforming,
2 usage or input error, 3 resource guard tripped.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import math
import sys
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import __version__
from .microstates import (
    EnumerationGuardError,
    SamplerConfig,
    compare_to_theory,
    enumerate_microstates,
    exact_occupancy_spectrum,
    occupancy_census,
    sample_uniform_microstates,
)
from .statfit import (
    DEFAULT_MAD_THRESHOLD,
    DEFAULT_SIGNIFICANCE,
    DigitHistogram,
    _NUMBER_RE,
    benford_expected,
    benford_test,
    count_tokens,
    first_significant_digit,
    loglog_slope_fit,
    power_law_fit,
    rank_distribution_from_counts,
    zipf_check,
)
from .theory import (
    LagrangeParams,
    SystemShape,
    bell_curve,
    benford_frequency,
    boltzmann_entropy_exact,
    boltzmann_entropy_stirling,
    iter_rank_frequencies,
    loglog_curve,
    omega,
    theoretical_occupancy_spectrum,
)

# Fit slopes shallower than this are flagged as the small-rank regime.
_ASYMPTOTIC_SLOPE = -0.95

EXIT_OK = 0
EXIT_NONCONFORMING = 1
EXIT_USAGE = 2
EXIT_GUARD = 3


class CliError(Exception):
    """Operational failure with a designated exit code."""

    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


@dataclass(frozen=True)
class RunManifest:
    """Provenance record embedded in every report.

    Identical manifests imply byte-identical primary output. Execution
    knobs that cannot change the result (thread count, output path) are
    deliberately excluded.
    """

    command: str
    parameters: dict
    input_digest: str | None
    version: str = __version__

    def as_dict(self) -> dict:
        return {
            "command": self.command,
            "parameters": dict(sorted(self.parameters.items())),
            "input_digest": self.input_digest,
            "version": self.version,
        }


def _digest_files(paths: Sequence[str]) -> str:
    h = hashlib.sha256()
    for path in paths:
        try:
            with open(path, "rb") as fh:
                for chunk in iter(lambda: fh.read(1 << 20), b""):
                    h.update(chunk)
        except OSError as exc:
            raise CliError(EXIT_USAGE, f"cannot read {path}: {exc}") from exc
    return h.hexdigest()


def _fmt_cell(value) -> str:
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def _emit(
    out,
    fmt: str,
    columns: Sequence[str],
    rows: Iterable[Sequence],
    summary: dict | None,
    manifest: RunManifest,
) -> None:
    manifest_json = json.dumps(
        manifest.as_dict(), sort_keys=True, separators=(",", ":")
    )
    if fmt == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt_cell(v) for v in row])
        if summary:
            for key, value in summary.items():
                out.write(f"# {key}={_fmt_cell(value)}\n")
        out.write(f"# manifest={manifest_json}\n")
    else:
        for row in rows:
            out.write(json.dumps(dict(zip(columns, row))) + "\n")
        if summary:
            out.write(json.dumps({"summary": summary}) + "\n")
        out.write(f'{{"manifest":{manifest_json}}}\n')


def _emit_lines(out, lines: Iterable[str], manifest: RunManifest) -> None:
    for line in lines:
        out.write(line + "\n")
    manifest_json = json.dumps(
        manifest.as_dict(), sort_keys=True, separators=(",", ":")
    )
    out.write(f"# manifest={manifest_json}\n")


def _open_output(args):
    if args.output is None:
        return sys.stdout, False
    try:
        return open(args.output, "w", encoding="utf-8"), True
    except OSError as exc:
        raise CliError(EXIT_USAGE, f"cannot write {args.output}: {exc}") from exc


def _data_lines(text: str) -> list[str]:
    """Non-blank lines with comment lines (leading '#') removed."""
    kept = []
    for line in text.splitlines():
        stripped = line.strip()
        if stripped and not stripped.startswith("#"):
            kept.append(stripped)
    return kept


def _read_text(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(EXIT_USAGE, f"cannot read {path}: {exc}") from exc


def _require_seed(args) -> int:
    if args.seed is None:
        raise CliError(EXIT_USAGE, f"{args.command} requires an explicit --seed")
    return args.seed


# ---------------------------------------------------------------------------
# dist


def _cmd_dist(args) -> int:
    params: dict = {"kind": args.kind, "format": args.format}
    if args.kind == "rank":
        if args.max_rank is None:
            raise CliError(EXIT_USAGE, "dist rank requires --max-rank")
        if args.max_rank < 1:
            raise CliError(EXIT_USAGE, "--max-rank must be >= 1")
        params["max_rank"] = args.max_rank
        columns = ("rank", "frequency")
        rows = iter_rank_frequencies(args.max_rank)
        summary = None
    elif args.kind == "benford":
        columns = ("digit", "frequency")
        rows = [(d, benford_frequency(d)) for d in range(1, 10)]
        summary = None
    elif args.kind == "bell":
        lag = _lagrange(args.beta)
        phi_max = args.phi_max if args.phi_max is not None else 5.0 / args.beta
        if phi_max <= 0:
            raise CliError(EXIT_USAGE, "--phi-max must be > 0")
        if args.steps < 2:
            raise CliError(EXIT_USAGE, "--steps must be >= 2")
        params.update(
            beta=args.beta, phi_max=phi_max, steps=args.steps,
            normalize=args.normalize,
        )
        grid = np.linspace(0.0, phi_max, args.steps)
        points = bell_curve(lag, grid.tolist(), normalize=args.normalize)
        columns = ("phi", "particle_fraction", "weight")
        rows = [(p.frequency_phi, p.particle_fraction, p.weight) for p in points]
        summary = {"mode_phi": 1.0 / args.beta}
    else:  # loglog
        lag = _lagrange(args.beta)
        if not (0 < args.n_min <= args.n_max):
            raise CliError(EXIT_USAGE, "need 0 < --n-min <= --n-max")
        if args.points < 2:
            raise CliError(EXIT_USAGE, "--points must be >= 2")
        params.update(
            beta=args.beta, n_min=args.n_min, n_max=args.n_max, points=args.points
        )
        ns = np.geomspace(args.n_min, args.n_max, args.points)
        columns = ("ln_n", "ln_phi")
        rows = loglog_curve(lag, ns.tolist())
        summary = None

    manifest = RunManifest("dist", params, None)
    out, close = _open_output(args)
    try:
        _emit(out, args.format, columns, rows, summary, manifest)
    finally:
        if close:
            out.close()
    return EXIT_OK


def _lagrange(beta: float) -> LagrangeParams:
    try:
        return LagrangeParams(beta=beta)
    except ValueError as exc:
        raise CliError(EXIT_USAGE, str(exc)) from exc


# ---------------------------------------------------------------------------
# enumerate


def _cmd_enumerate(args) -> int:
    p, n = args.particles, args.boxes
    if n < 1 or p < 0:
        raise CliError(EXIT_USAGE, "need boxes >= 1 and particles >= 0")
    shape = SystemShape(boxes=n, particles=p)
    total = 0
    if args.emit == "states":
        columns = tuple(f"box_{i}" for i in range(1, n + 1))
        rows = []
        for state in enumerate_microstates(p, n):
            rows.append(state)
            total += 1
    else:
        if p < 1:
            raise CliError(
                EXIT_USAGE, "census needs at least one particle; use --emit states"
            )
        spectrum = occupancy_census(p, n)
        columns = ("occupancy", "count", "frequency")
        rows = [(occ, w, w / spectrum.normalizer) for occ, w in spectrum.entries]
        total = None

    summary = {
        "particles": p,
        "boxes": n,
        "microstates": omega(p, n),
        "entropy_exact": boltzmann_entropy_exact(p, n),
        "entropy_stirling": boltzmann_entropy_stirling(shape),
    }
    manifest = RunManifest(
        "enumerate",
        {"particles": p, "boxes": n, "emit": args.emit, "format": args.format},
        None,
    )
    out, close = _open_output(args)
    try:
        _emit(out, args.format, columns, rows, summary, manifest)
    finally:
        if close:
            out.close()
    return EXIT_OK


# ---------------------------------------------------------------------------
# sample


def _cmd_sample(args) -> int:
    seed = _require_seed(args)
    p, n = args.particles, args.boxes
    try:
        config = SamplerConfig(draws=args.draws, seed=seed, chunk_size=args.chunk_size)
        spectrum = sample_uniform_microstates(p, n, config, threads=args.threads)
    except ValueError as exc:
        raise CliError(EXIT_USAGE, str(exc)) from exc

    summary = {
        "particles": p,
        "boxes": n,
        "draws": config.draws,
        "seed": config.seed,
        "chunk_size": config.chunk_size,
        "occupied_incidences": spectrum.normalizer,
    }
    if args.compare == "none":
        columns = ("occupancy", "count", "frequency")
        rows = [(occ, w, w / spectrum.normalizer) for occ, w in spectrum.entries]
    else:
        reference = (
            exact_occupancy_spectrum(p, n)
            if args.compare == "exact"
            else theoretical_occupancy_spectrum(p)
        )
        report = compare_to_theory(spectrum, reference)
        emp = dict(spectrum.entries)
        ref = {occ: w / reference.normalizer for occ, w in reference.entries}
        columns = ("occupancy", "count", "frequency", "reference_frequency", "deviation")
        rows = [
            (
                occ,
                emp.get(occ, 0),
                emp.get(occ, 0) / spectrum.normalizer,
                ref.get(occ, 0.0),
                dev,
            )
            for occ, dev in report.deviations
        ]
        summary["max_abs_deviation"] = report.max_abs_deviation
        summary["chi_square"] = report.chi_square

    manifest = RunManifest(
        "sample",
        {
            "particles": p,
            "boxes": n,
            "draws": config.draws,
            "seed": config.seed,
            "chunk_size": config.chunk_size,
            "compare": args.compare,
            "format": args.format,
        },
        None,
    )
    out, close = _open_output(args)
    try:
        _emit(out, args.format, columns, rows, summary, manifest)
    finally:
        if close:
            out.close()
    return EXIT_OK


# ---------------------------------------------------------------------------
# benford


def _select_column(text: str, selector: str, path: str) -> list[str]:
    rows = list(csv.reader(text.splitlines()))
    rows = [r for r in rows if r and not (r[0].lstrip().startswith("#"))]
    if not rows:
        return []
    header = rows[0]
    if selector.lstrip("+-").isdigit():
        idx = int(selector)
        data = rows
    else:
        try:
            idx = header.index(selector)
        except ValueError:
            raise CliError(
                EXIT_USAGE, f"{path}: no column named {selector!r} in header"
            ) from None
        data = rows[1:]
    out = []
    for row in data:
        if idx < len(row):
            out.append(row[idx].strip())
    return out


def _cmd_benford(args) -> int:
    tokens: list[str] = []
    for path in args.paths:
        text = _read_text(path)
        if args.column is not None:
            tokens.extend(_select_column(text, args.column, path))
        else:
            tokens.extend(_data_lines(text))

    counts = [0] * 9
    skipped = 0
    unparseable = 0
    for token in tokens:
        if not _NUMBER_RE.fullmatch(token):
            unparseable += 1
            continue
        digit = first_significant_digit(token)
        if digit is None:
            skipped += 1
        else:
            counts[digit - 1] += 1

    considered = len(tokens)
    if considered and unparseable > considered / 2:
        raise CliError(
            EXIT_USAGE,
            f"{unparseable} of {considered} values failed numeric parse (>50%)",
        )
    hist = DigitHistogram(counts=tuple(counts), skipped=skipped)
    try:
        report = benford_test(
            hist,
            statistic_kind=args.statistic,
            threshold=args.threshold,
            significance=args.significance,
        )
    except ValueError as exc:
        raise CliError(EXIT_USAGE, str(exc)) from exc

    expected = benford_expected()
    total = hist.total
    columns = ("digit", "count", "observed_frequency", "expected_frequency")
    rows = [
        (d, hist.counts[d - 1], hist.counts[d - 1] / total, float(expected[d - 1]))
        for d in range(1, 10)
    ]
    summary = {
        "values_considered": considered,
        "counted": total,
        "skipped_no_digit": skipped,
        "unparseable": unparseable,
        "statistic_kind": report.statistic_kind,
        "statistic": report.statistic,
        "threshold": report.threshold,
        "conforms": report.conforms,
    }
    if report.degrees_of_freedom is not None:
        summary["degrees_of_freedom"] = report.degrees_of_freedom
    if args.statistic == "chi_square" and args.threshold is None:
        summary["significance"] = args.significance

    manifest = RunManifest(
        "benford",
        {
            "paths": list(args.paths),
            "column": args.column,
            "statistic": args.statistic,
            "threshold": args.threshold,
            "significance": args.significance,
            "format": args.format,
        },
        _digest_files(args.paths),
    )
    out, close = _open_output(args)
    try:
        _emit(out, args.format, columns, rows, summary, manifest)
    finally:
        if close:
            out.close()
    return EXIT_OK if report.conforms else EXIT_NONCONFORMING


# ---------------------------------------------------------------------------
# zipf


def _cmd_zipf(args) -> int:
    text = _read_text(args.path)
    tokens = []
    for line in _data_lines(text):
        tokens.extend(line.split())
    if args.lowercase:
        tokens = [t.lower() for t in tokens]
    if not tokens:
        raise CliError(EXIT_USAGE, f"{args.path}: no tokens found")

    counter = count_tokens(tokens)
    dist = rank_distribution_from_counts(counter)
    total = len(tokens)

    columns = ("rank", "token", "count", "frequency")
    rows = [
        (r, dist.labels[r - 1], counter[dist.labels[r - 1]], f)
        for r, f in dist.items()
    ]

    summary: dict = {
        "total_tokens": total,
        "distinct_tokens": dist.max_rank,
    }
    n = 1
    while 2 * n <= dist.max_rank:
        summary[f"ratio_f{n}_f{2 * n}"] = zipf_check(dist, n)
        n *= 2

    lo = args.fit_min if args.fit_min is not None else 1
    hi = args.fit_max if args.fit_max is not None else dist.max_rank
    try:
        fit = loglog_slope_fit(dist, (lo, hi))
        summary.update(
            slope=fit.slope,
            intercept=fit.intercept,
            r_squared=fit.r_squared,
            fit_min=lo,
            fit_max=hi,
            fit_points=fit.points_used,
        )
        if fit.slope > _ASYMPTOTIC_SLOPE:
            summary["regime_note"] = (
                f"slope shallower than {_ASYMPTOTIC_SLOPE}: small-rank regime"
            )
    except ValueError as exc:
        summary["fit_error"] = str(exc)

    manifest = RunManifest(
        "zipf",
        {
            "path": args.path,
            "lowercase": args.lowercase,
            "fit_min": args.fit_min,
            "fit_max": args.fit_max,
            "format": args.format,
        },
        _digest_files([args.path]),
    )
    out, close = _open_output(args)
    try:
        _emit(out, args.format, columns, rows, summary, manifest)
    finally:
        if close:
            out.close()
    return EXIT_OK


# ---------------------------------------------------------------------------
# fit


def _parse_table(text: str, x_sel: str, y_sel: str):
    lines = _data_lines(text)
    if not lines:
        raise CliError(EXIT_USAGE, "no data rows in input")
    delimiter = "," if "," in lines[0] else None
    split = (lambda s: next(csv.reader([s]))) if delimiter else str.split

    def resolve(cells: list[str], sel: str, header: list[str] | None) -> int:
        if sel.lstrip("+-").isdigit():
            return int(sel)
        if header is None or sel not in header:
            raise CliError(EXIT_USAGE, f"no column named {sel!r} in header")
        return header.index(sel)

    first = [c.strip() for c in split(lines[0])]
    header = None
    start = 0
    if any(not _NUMBER_RE.fullmatch(c) for c in first):
        header = first
        start = 1
    xi = resolve(first, x_sel, header)
    yi = resolve(first, y_sel, header)

    xs, ys, bad = [], [], 0
    for line in lines[start:]:
        cells = [c.strip() for c in split(line)]
        if max(xi, yi) >= len(cells):
            bad += 1
            continue
        if _NUMBER_RE.fullmatch(cells[xi]) and _NUMBER_RE.fullmatch(cells[yi]):
            xs.append(float(cells[xi]))
            ys.append(float(cells[yi]))
        else:
            bad += 1
    return xs, ys, bad


def _cmd_fit(args) -> int:
    text = _read_text(args.path)
    xs, ys, bad = _parse_table(text, args.x_column, args.y_column)
    lo = args.min_x if args.min_x is not None else -math.inf
    hi = args.max_x if args.max_x is not None else math.inf
    pairs = [(x, y) for x, y in zip(xs, ys) if lo <= x <= hi]
    if len(pairs) < 3:
        raise CliError(
            EXIT_USAGE,
            f"need at least 3 usable points in range, got {len(pairs)}",
        )
    try:
        fit = power_law_fit([p[0] for p in pairs], [p[1] for p in pairs])
    except ValueError as exc:
        raise CliError(EXIT_USAGE, str(exc)) from exc

    columns = ("slope", "intercept", "r_squared", "fit_min", "fit_max", "points_used")
    rows = [
        (
            fit.slope,
            fit.intercept,
            fit.r_squared,
            fit.fit_range[0],
            fit.fit_range[1],
            fit.points_used,
        )
    ]
    summary = {"rows_skipped": bad}
    if fit.slope > _ASYMPTOTIC_SLOPE:
        summary["regime_note"] = (
            f"slope shallower than {_ASYMPTOTIC_SLOPE}: small-rank regime"
        )
    manifest = RunManifest(
        "fit",
        {
            "path": args.path,
            "x_column": args.x_column,
            "y_column": args.y_column,
            "min_x": args.min_x,
            "max_x": args.max_x,
            "format": args.format,
        },
        _digest_files([args.path]),
    )
    out, close = _open_output(args)
    try:
        _emit(out, args.format, columns, rows, summary, manifest)
    finally:
        if close:
            out.close()
    return EXIT_OK


# ---------------------------------------------------------------------------
# gen


def _cmd_gen(args) -> int:
    seed = _require_seed(args)
    rng = np.random.default_rng(seed)
    if args.kind == "benford":
        if args.count is None or args.count < 1:
            raise CliError(EXIT_USAGE, "gen benford requires --count >= 1")
        values = np.power(10.0, rng.random(args.count))
        lines = [repr(float(v)) for v in values]
        params = {"kind": "benford", "count": args.count, "seed": seed}
    else:  # corpus
        if args.max_rank is None or args.max_rank < 1:
            raise CliError(EXIT_USAGE, "gen corpus requires --max-rank >= 1")
        if args.draws is None or args.draws < 1:
            raise CliError(EXIT_USAGE, "gen corpus requires --draws >= 1")
        r = args.max_rank
        probs = np.array([math.log1p(1.0 / k) for k in range(1, r + 1)])
        probs /= probs.sum()
        width = len(str(r))
        ranks = rng.choice(r, size=args.draws, p=probs) + 1
        lines = [f"w{int(k):0{width}d}" for k in ranks]
        params = {
            "kind": "corpus",
            "max_rank": args.max_rank,
            "draws": args.draws,
            "seed": seed,
        }

    manifest = RunManifest("gen", params, None)
    out, close = _open_output(args)
    try:
        _emit_lines(out, lines, manifest)
    finally:
        if close:
            out.close()
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=("csv", "json"), default="csv",
        help="output format (default csv)",
    )
    common.add_argument(
        "--output", metavar="PATH", default=None,
        help="write to PATH instead of standard output",
    )
    common.add_argument(
        "--seed", type=int, default=None,
        help="random seed (required by randomized subcommands)",
    )

    parser = argparse.ArgumentParser(
        prog="boxent",
        description="Occupancy statistics of particles in boxes: theoretical "
        "curves, exact enumeration, uniform sampling, and Benford/Zipf "
        "conformance reports.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(
        dest="command",
        required=True,
        metavar="{dist,enumerate,sample,benford,zipf,fit}",
    )

    p_dist = sub.add_parser(
        "dist", parents=[common], help="emit a theoretical distribution table"
    )
    p_dist.add_argument("kind", choices=("rank", "benford", "bell", "loglog"))
    p_dist.add_argument("--max-rank", type=int, default=None, help="R for kind=rank")
    p_dist.add_argument("--beta", type=float, default=1.0, help="Lagrange multiplier")
    p_dist.add_argument("--phi-max", type=float, default=None,
                        help="grid end for kind=bell (default 5/beta)")
    p_dist.add_argument("--steps", type=int, default=201,
                        help="grid points for kind=bell")
    p_dist.add_argument("--normalize", action="store_true",
                        help="scale bell weights to a unit-mass density")
    p_dist.add_argument("--n-min", type=float, default=1e-3,
                        help="smallest occupancy for kind=loglog")
    p_dist.add_argument("--n-max", type=float, default=1e6,
                        help="largest occupancy for kind=loglog")
    p_dist.add_argument("--points", type=int, default=200,
                        help="points for kind=loglog")
    p_dist.set_defaults(handler=_cmd_dist)

    p_enum = sub.add_parser(
        "enumerate", parents=[common],
        help="list all microstates or their exact occupancy census",
    )
    p_enum.add_argument("particles", type=int)
    p_enum.add_argument("boxes", type=int)
    p_enum.add_argument("--emit", choices=("census", "states"), default="census")
    p_enum.set_defaults(handler=_cmd_enumerate)

    p_sample = sub.add_parser(
        "sample", parents=[common],
        help="draw uniform microstates and report the occupancy spectrum",
    )
    p_sample.add_argument("particles", type=int)
    p_sample.add_argument("boxes", type=int)
    p_sample.add_argument("--draws", type=int, required=True)
    p_sample.add_argument("--chunk-size", type=int, default=65536)
    p_sample.add_argument("--threads", type=int, default=1,
                          help="worker threads (never changes the result)")
    p_sample.add_argument("--compare", choices=("none", "exact", "theory"),
                          default="none",
                          help="append deviation report against the exact census "
                          "law or the occupancy-law spectrum")
    p_sample.set_defaults(handler=_cmd_sample)

    p_benford = sub.add_parser(
        "benford", parents=[common],
        help="first-digit conformance test of numeric file(s)",
    )
    p_benford.add_argument("paths", nargs="+", metavar="PATH")
    p_benford.add_argument("--column", default=None,
                           help="CSV column name or 0-based index")
    p_benford.add_argument("--statistic", choices=("chi_square", "mad"),
                           default="chi_square")
    p_benford.add_argument("--threshold", type=float, default=None,
                           help="explicit conformance threshold "
                           f"(mad default {DEFAULT_MAD_THRESHOLD})")
    p_benford.add_argument("--significance", type=float,
                           default=DEFAULT_SIGNIFICANCE,
                           help="chi-square significance level")
    p_benford.set_defaults(handler=_cmd_benford)

    p_zipf = sub.add_parser(
        "zipf", parents=[common],
        help="token rank-frequency table, ratio checks, and slope fit",
    )
    p_zipf.add_argument("path", metavar="PATH")
    p_zipf.add_argument("--lowercase", action="store_true")
    p_zipf.add_argument("--fit-min", type=int, default=None)
    p_zipf.add_argument("--fit-max", type=int, default=None)
    p_zipf.set_defaults(handler=_cmd_zipf)

    p_fit = sub.add_parser(
        "fit", parents=[common], help="power-law slope fit of an (x, y) table"
    )
    p_fit.add_argument("path", metavar="PATH")
    p_fit.add_argument("--x-column", default="0")
    p_fit.add_argument("--y-column", default="1")
    p_fit.add_argument("--min-x", type=float, default=None)
    p_fit.add_argument("--max-x", type=float, default=None)
    p_fit.set_defaults(handler=_cmd_fit)

    p_gen = sub.add_parser("gen", parents=[common])
    p_gen.add_argument("kind", choices=("benford", "corpus"))
    p_gen.add_argument("--count", type=int, default=None,
                       help="values for kind=benford")
    p_gen.add_argument("--max-rank", type=int, default=None,
                       help="distinct tokens for kind=corpus")
    p_gen.add_argument("--draws", type=int, default=None,
                       help="tokens drawn for kind=corpus")
    p_gen.set_defaults(handler=_cmd_gen)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except CliError as exc:
        print(f"boxent {args.command}: {exc}", file=sys.stderr)
        return exc.code
    except EnumerationGuardError as exc:
        print(f"boxent {args.command}: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except ValueError as exc:
        print(f"boxent {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
