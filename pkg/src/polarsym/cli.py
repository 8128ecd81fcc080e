"""Command-line interface: count, enumerate, verify, table, validate-channel."""

from __future__ import annotations

import argparse
import itertools
import random
import sys
from dataclasses import dataclass, field

from . import limits as _limits
from .channel import ChannelError, SymmetricChannel, distinct_d_check, is_degenerate, parse_channel, validate
from .counting import (
    CountInstance,
    bsc_class_count,
    class_count,
    naive_count,
    reduced_class_count,
    upper_bound_i0,
    valid_a_primes,
)
from .equivalence import (
    count_classes,
    enumerate_classes,
    verify_blocklength_invariance,
    verify_canonicalization,
    verify_doubling,
    verify_orbits,
    verify_permutations,
)
from .gf2 import block_exponent
from .report import dumps_json, envelope, report_to_dict, reports_to_csv, rows_to_csv

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3

SUITES = ("permutation", "orbit", "canonicalization", "doubling", "blocklength", "reduction", "bound")

CLI_DEFAULTS = {"max_domain": 1 << 22, "max_rowspace": 1 << 20}


@dataclass
class RunConfig:
    channel: str
    n: int
    indices: list
    method: str = "both"
    fmt: str = "text"
    max_domain: int = CLI_DEFAULTS["max_domain"]
    max_rowspace: int = CLI_DEFAULTS["max_rowspace"]
    workers: int = 1
    seed: int = 0
    suites: list = field(default_factory=lambda: list(SUITES))

    def echo(self) -> dict:
        # worker count is left out so output is identical for any pool size
        return {
            "channel": self.channel,
            "n": self.n,
            "i": self.indices,
            "method": self.method,
            "max_domain": self.max_domain,
            "max_rowspace": self.max_rowspace,
            "seed": self.seed,
        }


def parse_indices(text: str | None, N: int, default: list) -> list:
    if text is None:
        return default
    if text == "all":
        return list(range(1, N + 1))
    out = []
    for part in text.split(","):
        lo, sep, hi = part.partition("-")
        if sep:
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    for i in out:
        if not 0 <= i <= N:
            raise ValueError(f"bit index {i} outside 0..{N}")
    return out


def _fmt_value(v) -> str:
    return "NA" if v is None else str(v)


# -- count -----------------------------------------------------------------


def cmd_count(cfg: RunConfig, ch: SymmetricChannel):
    n_exp = block_exponent(cfg.n)
    rows, failures = [], []
    for i in cfg.indices:
        res = class_count(ch, CountInstance.for_channel(ch, cfg.n, i))
        brute = None
        if cfg.method in ("brute", "both"):
            brute = count_classes(ch, n_exp, i, workers=cfg.workers)
        row = {
            "i": i,
            "formula": res.value if cfg.method != "brute" else None,
            "exactness": res.exactness if cfg.method != "brute" else None,
            "a_prime": res.a_prime,
            "brute": brute,
            "naive": naive_count(ch, i),
            "degenerate": is_degenerate(ch),
            "agree": None,
        }
        if brute is not None and row["formula"] is not None:
            row["agree"] = brute == res.value if res.exact else brute <= res.value
            if not row["agree"]:
                failures.append({"command": "count", "i": i, "formula": res.value, "brute": brute})
        rows.append(row)
    return rows, failures


def render_count(rows, fmt):
    header = ["i", "formula", "exactness", "a_prime", "brute", "naive", "degenerate", "agree"]
    if fmt == "csv":
        return rows_to_csv(header, [[_fmt_value(r[h]) for h in header] for r in rows])
    lines = []
    for r in rows:
        verdict = {True: "agree", False: "DISAGREE", None: ""}[r["agree"]]
        flag = " degenerate" if r["degenerate"] else ""
        lines.append(
            f"i={r['i']}: formula={_fmt_value(r['formula'])} ({r['exactness']}, a'={r['a_prime']}) "
            f"brute={_fmt_value(r['brute'])} naive={r['naive']} {verdict}{flag}".rstrip()
        )
    return "\n".join(lines) + "\n"


# -- enumerate -------------------------------------------------------------


def cmd_enumerate(cfg: RunConfig, ch: SymmetricChannel):
    n_exp = block_exponent(cfg.n)
    return [enumerate_classes(ch, n_exp, i, workers=cfg.workers) for i in cfg.indices], []


def render_enumerate(reports, fmt, ch):
    if fmt == "csv":
        return reports_to_csv(reports, ch)
    lines = []
    for r in reports:
        lines.append(f"N={r.n} i={r.i} domain={r.domain} classes={r.count}" + (" degenerate" if r.degenerate else ""))
        for c in r.classes:
            p = c.probability
            lines.append(f"  {p.numerator}/{p.denominator} (~{float(p):.6g})  size={c.size}  rep={' '.join(ch.symbols[s] for s in c.representative)}")
    return "\n".join(lines) + "\n"


# -- verify ----------------------------------------------------------------


def _suite_result(name, verdicts, skipped=None):
    out = {"suite": name, "passed": all(v.passed for v in verdicts), "checked": sum(v.checked for v in verdicts)}
    if skipped:
        out["skipped"] = skipped
    examples = [dict(cx, i=v.details.get("i")) if "i" in v.details else cx for v in verdicts for cx in v.counterexamples]
    out["counterexamples"] = examples[:10]
    return out


def _run_suite(name, ch, cfg):
    from .equivalence import Verdict

    N = cfg.n
    n_exp = block_exponent(N)
    rng = random.Random(cfg.seed)
    sample = None if N <= 8 else 200
    idx = range(N + 1)
    verdicts = []
    if name == "permutation":
        perms = []
        for a, b in itertools.combinations(range(N), 2):
            p = list(range(N))
            p[a], p[b] = p[b], p[a]
            perms.append(p)
        for _ in range(4):
            p = list(range(N))
            rng.shuffle(p)
            perms.append(p)
        for i in idx:
            v = verify_permutations(ch, n_exp, i, perms, sample=sample, seed=cfg.seed)
            v.details["i"] = i
            verdicts.append(v)
    elif name == "orbit":
        for i in idx:
            v = verify_orbits(ch, n_exp, i, sample=sample, seed=cfg.seed)
            v.details["i"] = i
            verdicts.append(v)
    elif name == "canonicalization":
        if not ch.is_bsc_like:
            return _suite_result(name, [], skipped="channel is not binary with bit-flip conjugation")
        for i in idx:
            v = verify_canonicalization(ch, n_exp, i)
            v.details["i"] = i
            verdicts.append(v)
    elif name == "doubling":
        for i in idx:
            v = verify_doubling(ch, n_exp, i)
            v.details["i"] = i
            verdicts.append(v)
    elif name == "blocklength":
        if not ch.is_bsc_like:
            return _suite_result(name, [], skipped="channel is not binary with bit-flip conjugation")
        for i in idx:
            v = verify_blocklength_invariance(ch, i, n_exp, n_exp + 1, workers=cfg.workers)
            v.details["i"] = i
            verdicts.append(v)
    elif name == "reduction":
        for i in idx:
            original = count_classes(ch, n_exp, i, workers=cfg.workers)
            for ap in valid_a_primes(N, i):
                if ap == N:
                    continue
                reduced = reduced_class_count(ch, n_exp, i, ap, workers=cfg.workers)
                v = Verdict("reduction", checked=1, details={"i": i, "a_prime": ap})
                if reduced != original:
                    v.fail({"a_prime": ap, "original": original, "reduced": reduced})
                verdicts.append(v)
    elif name == "bound":
        part = ch.partition()
        brute0 = count_classes(ch, n_exp, 0, workers=cfg.workers)
        bound = upper_bound_i0(N, part.s1, part.s2)
        v = Verdict("bound", checked=1, details={"i": 0, "brute": brute0, "bound": bound})
        if brute0 > bound or (distinct_d_check(ch) and brute0 != bound):
            v.fail({"brute": brute0, "bound": bound, "distinct_d": distinct_d_check(ch)})
        verdicts.append(v)
        for i in idx:
            res = class_count(ch, CountInstance.for_channel(ch, N, i))
            brute = count_classes(ch, n_exp, i, workers=cfg.workers)
            w = Verdict("bound", checked=1, details={"i": i})
            if brute > res.value or (res.exact and brute != res.value):
                w.fail({"formula": res.value, "exactness": res.exactness, "brute": brute})
            verdicts.append(w)
    else:
        raise ValueError(f"unknown suite {name!r}")
    return _suite_result(name, verdicts)


def cmd_verify(cfg: RunConfig, ch: SymmetricChannel):
    results, failures = [], []
    for name in cfg.suites:
        res = _run_suite(name, ch, cfg)
        results.append(res)
        if not res["passed"]:
            failures.append({"suite": name, "counterexamples": res["counterexamples"]})
    return results, failures


def render_verify(results, fmt):
    if fmt == "csv":
        return rows_to_csv(
            ["suite", "passed", "checked", "skipped"],
            [[r["suite"], r["passed"], r["checked"], r.get("skipped", "")] for r in results],
        )
    lines = []
    for r in results:
        state = "SKIP" if "skipped" in r else ("PASS" if r["passed"] else "FAIL")
        extra = f" ({r['skipped']})" if "skipped" in r else f" checked={r['checked']}"
        lines.append(f"{state} {r['suite']}{extra}")
        for cx in r["counterexamples"][:3]:
            lines.append(f"    counterexample: {cx}")
    return "\n".join(lines) + "\n"


# -- table -----------------------------------------------------------------

TABLE_HEADER = ["i", "formula", "brute", "naive"]


def default_table_indices(N: int) -> list:
    return sorted(N - (1 << k) for k in range(block_exponent(N) + 1))


def cmd_table(cfg: RunConfig, ch: SymmetricChannel):
    if not ch.is_bsc_like:
        raise ValueError("table requires a binary channel with bit-flip conjugation")
    n_exp = block_exponent(cfg.n)
    rows = []
    for i in cfg.indices:
        a = cfg.n - i
        formula = None
        if a >= 1 and not a & (a - 1):
            if cfg.n % (2 * a) == 0:
                formula = bsc_class_count(n_exp, i)
            else:
                res = class_count(ch, CountInstance.for_channel(ch, cfg.n, i))
                formula = res.value if res.exact else None
        brute = None
        if cfg.method in ("brute", "both"):
            try:
                brute = count_classes(ch, n_exp, i, workers=cfg.workers)
            except _limits.CapExceeded:
                brute = None
        rows.append({"i": i, "formula": formula, "brute": brute, "naive": 2**i})
    failures = [
        {"command": "table", "i": r["i"], "formula": r["formula"], "brute": r["brute"]}
        for r in rows
        if r["formula"] is not None and r["brute"] is not None and r["formula"] != r["brute"]
    ]
    return rows, failures


def render_table(rows):
    return rows_to_csv(TABLE_HEADER, [[r["i"], _fmt_value(r["formula"]), _fmt_value(r["brute"]), r["naive"]] for r in rows])


# -- driver ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    env = _limits.from_env(_limits.Limits(max_domain=CLI_DEFAULTS["max_domain"], max_rowspace=CLI_DEFAULTS["max_rowspace"]))
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--channel", required=True, help="bsc:<p>, bec:<eps> or a JSON channel file")
    common.add_argument("--n", type=int, default=4, help="block length N (power of two)")
    common.add_argument("--i", dest="indices", default=None, help="bit index, range a-b, list, or 'all'")
    common.add_argument("--format", dest="fmt", choices=("json", "csv", "text"), default="text")
    common.add_argument("--max-domain", type=int, default=env.max_domain)
    common.add_argument("--max-rowspace", type=int, default=env.max_rowspace)
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default=None, help="write output here instead of stdout")

    parser = argparse.ArgumentParser(prog="polarsym", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("count", parents=[common], help="class counts by formula and brute force")
    p.add_argument("--method", choices=("formula", "brute", "both"), default="both")
    sub.add_parser("enumerate", parents=[common], help="list equivalence classes")
    p = sub.add_parser("verify", parents=[common], help="empirical theorem checks")
    p.add_argument("--suite", default="all", help="comma list of " + ", ".join(SUITES) + " or 'all'")
    p = sub.add_parser("table", parents=[common], help="CSV of formula vs brute-force class counts")
    p.add_argument("--method", choices=("formula", "both"), default="both")
    p = sub.add_parser("validate-channel", help="check a channel description")
    p.add_argument("--channel", required=True)
    return parser


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        ch = parse_channel(args.channel)
    except ChannelError as exc:
        print(f"invalid channel: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, ValueError, ZeroDivisionError) as exc:
        print(f"cannot read channel {args.channel!r}: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if args.command == "validate-channel":
        bad = validate(ch)
        part = ch.partition()
        print(f"ok: {ch.size} symbols, S1={part.s1}, S2={part.s2}, "
              f"distinct_d={distinct_d_check(ch)}, degenerate={is_degenerate(ch)}")
        return EXIT_OK if not bad else EXIT_USAGE

    try:
        N = args.n
        block_exponent(N)
        default = default_table_indices(N) if args.command == "table" else list(range(1, N + 1))
        cfg = RunConfig(
            channel=args.channel,
            n=N,
            indices=parse_indices(args.indices, N, default),
            method=getattr(args, "method", "both"),
            fmt=args.fmt,
            max_domain=args.max_domain,
            max_rowspace=args.max_rowspace,
            workers=max(1, args.workers),
            seed=args.seed,
        )
        if args.command == "verify":
            cfg.suites = list(SUITES) if args.suite == "all" else args.suite.split(",")
            for s in cfg.suites:
                if s not in SUITES:
                    raise ValueError(f"unknown suite {s!r}")
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    try:
        with _limits.limits(max_domain=cfg.max_domain, max_rowspace=cfg.max_rowspace):
            if args.command == "count":
                results, failures = cmd_count(cfg, ch)
                text = render_count(results, cfg.fmt) if cfg.fmt != "json" else None
            elif args.command == "enumerate":
                reports, failures = cmd_enumerate(cfg, ch)
                results = [report_to_dict(r, ch) for r in reports]
                text = render_enumerate(reports, cfg.fmt, ch) if cfg.fmt != "json" else None
            elif args.command == "verify":
                results, failures = cmd_verify(cfg, ch)
                text = render_verify(results, cfg.fmt) if cfg.fmt != "json" else None
            else:
                results, failures = cmd_table(cfg, ch)
                text = render_table(results) if cfg.fmt != "json" else None
    except _limits.CapExceeded as exc:
        print(f"cap exceeded: {exc}; lower --n, raise the cap, or use --method formula", file=sys.stderr)
        return EXIT_CAP
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if text is None:
        text = dumps_json(envelope(cfg.echo(), results, failures))
    _emit(text, args.out)
    return EXIT_FAIL if failures else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
