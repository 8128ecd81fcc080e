"""JSON and CSV renderings of class reports; rationals are always ``num/den``."""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

from .channel import SymmetricChannel, fmt_fraction
from .equivalence import ClassReport, EquivalenceClass

SCHEMA = "polarsym.report/1"

CLASS_FIELDS = ["n", "i", "domain", "count", "probability", "size", "representative"]


def vector_label(ch: SymmetricChannel, y) -> str:
    return " ".join(ch.symbols[s] for s in y)


def parse_vector(ch: SymmetricChannel, text: str) -> tuple:
    return tuple(ch.index(tok) for tok in text.split())


def report_to_dict(report: ClassReport, ch: SymmetricChannel) -> dict:
    return {
        "n": report.n,
        "i": report.i,
        "domain": report.domain,
        "count": report.count,
        "degenerate": report.degenerate,
        "classes": [
            {
                "probability": fmt_fraction(c.probability),
                "size": c.size,
                "representative": vector_label(ch, c.representative),
            }
            for c in report.classes
        ],
    }


def report_from_dict(data: dict, ch: SymmetricChannel) -> ClassReport:
    classes = tuple(
        EquivalenceClass(parse_vector(ch, c["representative"]), Fraction(c["probability"]), int(c["size"]))
        for c in data["classes"]
    )
    report = ClassReport(int(data["n"]), int(data["i"]), data["domain"], classes, bool(data["degenerate"]))
    if report.count != data["count"]:
        raise ValueError("count field disagrees with the class list")
    return report


def envelope(config: dict, results: list, failures: list) -> dict:
    return {"schema": SCHEMA, "config": config, "results": results, "failures": failures}


def dumps_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def rows_to_csv(header: list, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def reports_to_csv(reports, ch: SymmetricChannel) -> str:
    rows = []
    for r in reports:
        for c in r.classes:
            rows.append([r.n, r.i, r.domain, r.count, fmt_fraction(c.probability), c.size,
                         vector_label(ch, c.representative)])
    return rows_to_csv(CLASS_FIELDS, rows)


def reports_from_csv(text: str, ch: SymmetricChannel, degenerate: bool = False) -> list:
    grouped: dict = {}
    for row in csv.DictReader(io.StringIO(text)):
        key = (int(row["n"]), int(row["i"]), row["domain"])
        grouped.setdefault(key, []).append(
            EquivalenceClass(parse_vector(ch, row["representative"]), Fraction(row["probability"]), int(row["size"]))
        )
    return [ClassReport(n, i, d, tuple(cs), degenerate) for (n, i, d), cs in grouped.items()]
