"""Command-line entry point: ``bitarm {mine,measures,benchmark,synth}``.

Exit codes: 0 ok, 1 I/O error, 2 parse/validation error, 3 bad configuration,
4 benchmark output mismatch.  Errors go to stderr as one JSON object.
"""
from __future__ import annotations

import argparse
import io
import json
import logging
import math
import sys
from dataclasses import asdict

from .benchmark import OutputMismatch, run_benchmark
from .dataset import DiscretizeConfig, ParseError, discretize, parse_similarity_matrix
from .measures import ContingencyCounts, MeasureError, select_measures
from .pipeline import RunConfig, rule_set_diversity, run_mine
from .report import ITEM_SEP, read_rules_table, render_json, render_tsv
from .rules import AssociationRule, contingency
from .synth import BadDensity, synth_csv

EXIT_IO, EXIT_PARSE, EXIT_CONFIG, EXIT_MISMATCH = 1, 2, 3, 4


class CliError(Exception):
    def __init__(self, code: int, kind: str, message: str):
        super().__init__(message)
        self.code = code
        self.kind = kind


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise CliError(EXIT_IO, "io", f"{path}: {e.strerror or e}") from None


def _write(path: str | None, text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as e:
        raise CliError(EXIT_IO, "io", f"{path}: {e.strerror or e}") from None


def _config(fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except (ValueError, MeasureError) as e:
        raise CliError(EXIT_CONFIG, "config", str(e)) from None


def _run_config(args) -> RunConfig:
    return _config(
        RunConfig,
        input=args.input,
        discretize=_config(DiscretizeConfig.parse, args.discretize),
        min_support=args.min_support,
        min_conf=args.min_confidence,
        top_n=args.top,
        measures=_config(select_measures, args.measures),
        entropy_mode=args.entropy_mode,
        format=args.format,
        strict_paper=args.strict_paper,
        paper_early_exit=args.paper_early_exit,
        workers=args.workers,
    )


def _render(fmt: str, *parts) -> str:
    return (render_json if fmt == "json" else render_tsv)(*parts)


def cmd_mine(args) -> int:
    cfg = _run_config(args)
    try:
        if cfg.input == "-":
            stream = io.StringIO(sys.stdin.read())
            res = run_mine(stream, cfg)
        else:
            with open(cfg.input, encoding="utf-8", newline="") as fh:
                res = run_mine(fh, cfg)
    except OSError as e:
        raise CliError(EXIT_IO, "io", f"{cfg.input}: {e.strerror or e}") from None
    except ParseError as e:
        raise CliError(EXIT_PARSE, type(e).__name__, str(e)) from None
    summary = {"n_rows": res.n_rows, "n_items": res.n_items,
               "new_support": res.itemsets.new_support,
               "frequent_itemsets": len(res.itemsets), "rules_total": res.rules_total,
               "rules_reported": len(res.ranked)}
    if res.skipped_by_early_exit is not None:
        summary["early_exit_would_skip"] = res.skipped_by_early_exit
    footer = {f"entropy_{res.diversity.mode}": res.diversity.entropy,
              "variance": res.diversity.variance}
    _write(args.output, _render(cfg.format, "bitarm mine", cfg.as_header(), summary,
                                res.ranked, cfg.measures, footer))
    return 0


def _rules_from_table(text: str, args) -> list[AssociationRule]:
    header, rows = read_rules_table(text)
    if not rows:
        return []
    if "antecedent" not in header or "consequent" not in header:
        raise CliError(EXIT_PARSE, "ParseError", "rule table needs antecedent and consequent columns")
    have_counts = all(c in header for c in ("n", "n_a", "n_b", "n_ab"))
    matrix = None
    if not have_counts:
        if not args.matrix:
            raise CliError(EXIT_CONFIG, "config",
                           "rule table has no n,n_a,n_b,n_ab columns; pass --matrix")
        m = parse_similarity_matrix(_read(args.matrix))
        matrix = discretize(m, _config(DiscretizeConfig.parse, args.discretize))
        index = {g: i for i, g in enumerate(matrix.col_ids)}
    rules = []
    for row in rows:
        lhs = tuple(s for s in row["antecedent"].split(ITEM_SEP) if s)
        rhs = tuple(s for s in row["consequent"].split(ITEM_SEP) if s)
        try:
            if have_counts:
                counts = ContingencyCounts(int(row["n"]), int(row["n_a"]),
                                           int(row["n_b"]), int(row["n_ab"]))
                ids = (tuple(range(len(lhs))), tuple(range(len(lhs), len(lhs) + len(rhs))))
            else:
                ids = (tuple(index[g] for g in lhs), tuple(index[g] for g in rhs))
                counts = contingency(ids, matrix)
            rules.append(AssociationRule(ids[0], ids[1], counts, (lhs, rhs)))
        except KeyError as e:
            raise CliError(EXIT_PARSE, "UnknownItem", f"unknown item {e}") from None
        except ValueError as e:
            raise CliError(EXIT_PARSE, "ParseError", str(e)) from None
    return rules


def cmd_measures(args) -> int:
    measures = _config(select_measures, args.measures)
    if args.entropy_mode not in ("mean", "sum"):
        raise CliError(EXIT_CONFIG, "config", "entropy mode must be mean or sum")
    try:
        rules = _rules_from_table(_read(args.rules), args)
    except ParseError as e:
        raise CliError(EXIT_PARSE, type(e).__name__, str(e)) from None
    div = rule_set_diversity(rules, args.entropy_mode)
    header = {"rules": args.rules, "measures": list(measures), "entropy_mode": args.entropy_mode}
    footer = {f"entropy_{div.mode}": div.entropy, "variance": div.variance}
    _write(args.output, _render(args.format, "bitarm measures", header,
                                {"rules": len(rules)}, rules, measures, footer))
    return 0


def cmd_benchmark(args) -> int:
    if args.input:
        text = _read(args.input)
    else:
        try:
            text = synth_csv(args.seed, args.rows, args.items, args.density)
        except ValueError as e:
            raise CliError(EXIT_CONFIG, "config", str(e)) from None
    disc = _config(DiscretizeConfig.parse, args.discretize)
    if not 0 < args.min_support <= 1:
        raise CliError(EXIT_CONFIG, "config", "min_support must lie in (0, 1]")
    try:
        rep = run_benchmark(text, args.min_support, disc, args.repeat, args.strict_paper)
    except ParseError as e:
        raise CliError(EXIT_PARSE, type(e).__name__, str(e)) from None
    except OutputMismatch as e:
        raise CliError(EXIT_MISMATCH, "OutputMismatch", str(e)) from None
    doc = asdict(rep)
    doc["miner_faster"] = rep.miner_faster
    doc["miner_leaner"] = rep.miner_leaner
    if args.format == "json":
        _write(args.output, json.dumps(doc, indent=2) + "\n")
    else:
        fields = ["name", "wall_clock_s", "peak_alloc_bytes", "candidates",
                  "peak_level_candidates", "database_passes", "itemsets"]
        lines = [f"# bitarm benchmark rows={rep.n_rows} items={rep.n_items} "
                 f"min_support={rep.min_support} new_support={rep.new_support} "
                 f"repeat={rep.repeat} source_passes={rep.source_passes}",
                 "\t".join(fields)]
        for algo in (doc["miner"], doc["apriori"]):
            lines.append("\t".join(str(algo[f]) for f in fields))
        lines.append(f"# miner_faster={rep.miner_faster} miner_leaner={rep.miner_leaner}")
        _write(args.output, "\n".join(lines) + "\n")
    return 0


def cmd_synth(args) -> int:
    try:
        text = synth_csv(args.seed, args.rows, args.items, args.density)
    except BadDensity as e:
        raise CliError(EXIT_CONFIG, "BadDensity", str(e)) from None
    except ValueError as e:
        raise CliError(EXIT_CONFIG, "config", str(e)) from None
    _write(args.output, text)
    return 0


def _unit(value: str) -> float:
    try:
        x = float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {value!r}") from None
    if math.isnan(x):
        raise argparse.ArgumentTypeError("nan is not allowed")
    return x


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bitarm", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="count", default=0)
    sub = p.add_subparsers(dest="command", required=True)

    def common_out(sp):
        sp.add_argument("--format", choices=("tsv", "json"), default="tsv")
        sp.add_argument("-o", "--output", default=None, help="output file (default stdout)")

    m = sub.add_parser("mine", help="mine ranked association rules from a similarity CSV")
    m.add_argument("input", help="similarity matrix CSV, or - for stdin")
    m.add_argument("--discretize", default="max-minus-x:25",
                   help="max-minus-x:<x> or beta:<b> (default max-minus-x:25)")
    m.add_argument("--min-support", type=_unit, default=0.1)
    m.add_argument("--min-confidence", type=_unit, default=0.5)
    m.add_argument("--top", type=int, default=15)
    m.add_argument("--measures", default="all", help="comma list of acronyms, or all")
    m.add_argument("--entropy-mode", default="mean")
    m.add_argument("--strict-paper", action="store_true",
                   help="enumerate every k-combination of live columns")
    m.add_argument("--paper-early-exit", action="store_true",
                   help="log the rules the found<2 early exit would skip")
    m.add_argument("--workers", type=int, default=1)
    common_out(m)
    m.set_defaults(func=cmd_mine)

    s = sub.add_parser("measures", help="score an existing rule table")
    s.add_argument("rules", help="rule TSV/CSV (antecedent, consequent[, n, n_a, n_b, n_ab])")
    s.add_argument("--matrix", help="similarity CSV to count rules against")
    s.add_argument("--discretize", default="max-minus-x:25")
    s.add_argument("--measures", default="all")
    s.add_argument("--entropy-mode", default="mean")
    common_out(s)
    s.set_defaults(func=cmd_measures)

    b = sub.add_parser("benchmark", help="time the bit-matrix miner against Apriori")
    b.add_argument("--input", help="similarity CSV (default: synthetic corpus)")
    b.add_argument("--rows", type=int, default=5000)
    b.add_argument("--items", type=int, default=50)
    b.add_argument("--density", type=float, default=0.3)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--discretize", default="max-minus-x:25")
    b.add_argument("--min-support", type=_unit, default=0.1)
    b.add_argument("--repeat", type=int, default=3)
    b.add_argument("--strict-paper", action="store_true")
    common_out(b)
    b.set_defaults(func=cmd_benchmark)

    y = sub.add_parser("synth", help="write a reproducible synthetic similarity CSV")
    y.add_argument("--seed", type=int, default=0)
    y.add_argument("--rows", type=int, default=100)
    y.add_argument("--items", type=int, default=12)
    y.add_argument("--density", type=float, default=0.3)
    y.add_argument("-o", "--output", default=None)
    y.set_defaults(func=cmd_synth)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_CONFIG if e.code not in (0, None) else 0
    logging.basicConfig(level=logging.WARNING - 10 * args.verbose,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except CliError as e:
        sys.stderr.write(json.dumps({"error": e.kind, "message": str(e), "exit": e.code}) + "\n")
        return e.code


if __name__ == "__main__":
    sys.exit(main())
