"""TSV / JSON rendering of rule tables.

Both formats carry the same fields.  Floats are written with ``repr`` so they
round-trip exactly; infinities are the strings ``inf`` / ``-inf`` and missing
diversity values are ``NA`` in TSV and ``null`` in JSON.
"""
from __future__ import annotations

import json
import math
from typing import Sequence

from .rules import AssociationRule

ITEM_SEP = ";"
COUNT_COLUMNS = ("n", "n_a", "n_b", "n_ab")


def fmt_float(x: float) -> str:
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if math.isnan(x):
        return "nan"
    return repr(float(x))


def _json_float(x: float):
    return fmt_float(x) if not math.isfinite(x) else x


def extra_measures(measures: Sequence[str]) -> list[str]:
    """Selected measures other than SUP/CONF, which always have own columns."""
    return [m for m in measures if m not in ("SUP", "CONF")]


def columns(measures: Sequence[str]) -> list[str]:
    return ["antecedent", "consequent", "support", "confidence",
            *extra_measures(measures), *COUNT_COLUMNS]


def rule_record(rule: AssociationRule, measures: Sequence[str]) -> dict:
    lhs, rhs = rule.names or (tuple(map(str, rule.antecedent)), tuple(map(str, rule.consequent)))
    values = rule.measures()
    rec = {"antecedent": list(lhs), "consequent": list(rhs),
           "support": rule.support, "confidence": rule.confidence}
    for m in extra_measures(measures):
        rec[m] = values[m]
    c = rule.counts
    rec.update(n=c.n, n_a=c.n_a, n_b=c.n_b, n_ab=c.n_ab)
    return rec


def render_tsv(title: str, header: dict, summary: dict, rules: list[AssociationRule],
               measures: Sequence[str], footer: dict) -> str:
    lines = [f"# {title}",
             "# config: " + json.dumps(header, sort_keys=True)]
    if summary:
        lines.append("# " + " ".join(f"{k}={v}" for k, v in summary.items()))
    cols = columns(measures)
    lines.append("\t".join(cols))
    for r in rules:
        rec = rule_record(r, measures)
        cells = []
        for col in cols:
            v = rec[col]
            if isinstance(v, list):
                cells.append(ITEM_SEP.join(v))
            elif isinstance(v, float):
                cells.append(fmt_float(v))
            else:
                cells.append(str(v))
        lines.append("\t".join(cells))
    for k, v in footer.items():
        lines.append(f"# {k}=" + ("NA" if v is None else fmt_float(v) if isinstance(v, float) else str(v)))
    return "\n".join(lines) + "\n"


def render_json(title: str, header: dict, summary: dict, rules: list[AssociationRule],
                measures: Sequence[str], footer: dict) -> str:
    doc = {
        "title": title,
        "config": header,
        "summary": summary,
        "columns": columns(measures),
        "rules": [{k: (_json_float(v) if isinstance(v, float) else v)
                   for k, v in rule_record(r, measures).items()} for r in rules],
        "diversity": {k: (_json_float(v) if isinstance(v, float) else v)
                      for k, v in footer.items()},
    }
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def read_rules_table(text: str) -> tuple[list[str], list[dict[str, str]]]:
    """Read a TSV/CSV rule table (comment lines start with '#')."""
    body = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not body:
        return [], []
    sep = "\t" if "\t" in body[0] else ","
    header = [h.strip() for h in body[0].split(sep)]
    rows = []
    for ln in body[1:]:
        cells = [c.strip() for c in ln.split(sep)]
        if len(cells) != len(header):
            raise ValueError(f"rule row has {len(cells)} fields, header has {len(header)}")
        rows.append(dict(zip(header, cells)))
    return header, rows
