"""Command line front end.

    partial-macdonald compute {E,P,J,Estar} --n N --k K --lambda a,b --gamma c,d
    partial-macdonald pieri {e1,xj} --n N --k K --lambda a,b --gamma c,d [--j J]
    partial-macdonald verify SUITE [--max-n 4] [--max-deg 3] [--seed 0] [--report FILE]

Exit codes: 0 success, 1 a verification check failed, 2 usage error,
3 an internal arithmetic/theory error (for example a singular solve).
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from . import pieri as pr
from .checks import SUITES, run_checks, thread_count
from .interpolation import Estar
from .nonsym import E
from .partial import J, P
from .qtfield import QtRational
from .shapes import SplitComposition

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    what: str
    n: Optional[int] = None
    k: Optional[int] = None
    lam: tuple = ()
    gamma: tuple = ()
    j: Optional[int] = None
    fmt: str = "text"
    seed: int = 0
    max_n: int = 4
    max_deg: int = 3
    oracle: str = "auto"
    timing: bool = True
    report: Optional[str] = None
    extra: dict = field(default_factory=dict)


def _parse_comp(text: Optional[str]) -> tuple:
    if text is None or not text.strip():
        return ()
    try:
        parts = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"not a composition: {text!r}") from None
    if any(p < 0 for p in parts):
        raise UsageError(f"negative entry in {text!r}")
    return parts


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="partial-macdonald",
                                 description="Partially-symmetric Macdonald polynomials and Pieri rules.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--n", type=int)
        p.add_argument("--k", type=int)
        p.add_argument("--lambda", dest="lam", default="")
        p.add_argument("--gamma", default="")
        p.add_argument("--format", dest="fmt", choices=("text", "json", "latex"), default="text")
        p.add_argument("--seed", type=int, default=0)

    c = sub.add_parser("compute", help="print E, P, J or E* for a composition")
    c.add_argument("what", choices=("E", "P", "J", "Estar"))
    common(c)

    p = sub.add_parser("pieri", help="coefficient table for e1 or x_j times P")
    p.add_argument("what", choices=("e1", "xj"))
    common(p)
    p.add_argument("--j", type=int, help="variable index for xj (default: every nonsymmetric j)")
    p.add_argument("--oracle", choices=("auto", "on", "off"), default="auto",
                   help="include the brute-force column (auto: only when n <= 4)")

    v = sub.add_parser("verify", help="run a named verification suite")
    v.add_argument("what", nargs="?", choices=sorted(SUITES) + ["all"])
    v.add_argument("--suite", choices=sorted(SUITES) + ["all"])
    common(v)
    v.add_argument("--max-n", type=int, default=4)
    v.add_argument("--max-deg", type=int, default=3)
    v.add_argument("--report", help="also write the JSON report to this file")
    v.add_argument("--no-timing", action="store_true", help="zero the elapsed fields for byte-stable reports")
    return ap


def config_from_args(argv: Sequence[str]) -> RunConfig:
    ap = build_parser()
    try:
        ns = ap.parse_args(list(argv))
    except SystemExit as exc:
        raise UsageError("bad arguments") from exc
    what = ns.what
    if ns.command == "verify":
        if ns.what and ns.suite and ns.what != ns.suite:
            raise UsageError("suite given twice with different values")
        what = ns.what or ns.suite
        if what is None:
            raise UsageError("verify needs a suite name")
    cfg = RunConfig(ns.command, what, ns.n, ns.k, _parse_comp(ns.lam), _parse_comp(ns.gamma),
                    fmt=ns.fmt, seed=ns.seed)
    if ns.command == "pieri":
        cfg.j, cfg.oracle = ns.j, ns.oracle
    if ns.command == "verify":
        cfg.max_n, cfg.max_deg, cfg.report = ns.max_n, ns.max_deg, ns.report
        cfg.timing = not ns.no_timing
    return cfg


def _validate_block(cfg: RunConfig, strict: bool):
    n = len(cfg.lam) + len(cfg.gamma)
    if cfg.n is not None and cfg.n != n:
        raise UsageError(f"--n {cfg.n} does not match |lambda|+|gamma| lengths = {n}")
    if cfg.k is not None and cfg.k != len(cfg.gamma):
        raise UsageError(f"--k {cfg.k} does not match the length of gamma")
    if n == 0:
        raise UsageError("empty composition")
    if any(cfg.lam[i] < cfg.lam[i + 1] for i in range(len(cfg.lam) - 1)):
        raise UsageError("lambda must be weakly decreasing")
    if strict and not 0 < len(cfg.gamma) < n:
        raise UsageError("Pieri rules need 0 < k < n")


def _fmt(c: QtRational, fmt: str) -> str:
    return c.to_latex() if fmt == "latex" else str(c)


def _target_json(s: SplitComposition) -> dict:
    return {"mu": list(s.lam), "eta": list(s.gamma)}


def _split(s: SplitComposition) -> str:
    return f"({','.join(map(str, s.lam))}|{','.join(map(str, s.gamma))})"


# commands --------------------------------------------------------------------

def cmd_compute(cfg: RunConfig, out) -> int:
    if cfg.what in ("P", "J"):
        _validate_block(cfg, strict=False)
        f = (P if cfg.what == "P" else J)(cfg.lam, cfg.gamma)
    else:
        if cfg.n is not None and cfg.n != len(cfg.lam) + len(cfg.gamma):
            raise UsageError("--n does not match the composition length")
        nu = cfg.lam + cfg.gamma
        if not nu:
            raise UsageError("empty composition")
        f = E(nu) if cfg.what == "E" else Estar(nu)
    if cfg.fmt == "json":
        out.write(json.dumps({"object": cfg.what, "lambda": list(cfg.lam), "gamma": list(cfg.gamma),
                              "terms": f.to_records()}, sort_keys=True) + "\n")
    elif cfg.fmt == "latex":
        out.write(f.to_latex() + "\n")
    else:
        out.write(f.to_text() + "\n")
    return EXIT_OK


def e1_rows(lam, gamma, oracle: bool) -> List[dict]:
    ref = pr.oracle_expand(pr.e1_product(lam, gamma), len(lam) + len(gamma), len(gamma)) if oracle else None
    rows = []
    for term in pr.support_set(lam, gamma):
        C = pr.pieri_C(lam, gamma, term)
        Jc = pr.pieri_J(lam, gamma, term)
        A = pr.simplified_A(lam, gamma, term)
        row = dict(term.to_json(), C=C, Jcoeff=Jc, A=A)
        agree = Jc == A
        if ref is not None:
            row["oracle"] = ref[term.target]
            agree = agree and ref[term.target] == C
        row["agree"] = agree
        rows.append(row)
    if ref is not None:
        missing = set(ref.keys()) - {SplitComposition(tuple(r["target"]["mu"]), tuple(r["target"]["eta"]))
                                     for r in rows}
        for tg in sorted(missing, key=lambda s: (s.lam, s.gamma)):
            rows.append({"target": _target_json(tg), "oracle": ref[tg], "agree": False})
    return rows


def xj_rows(lam, gamma, j: int, oracle: bool) -> List[dict]:
    n, k = len(lam) + len(gamma), len(gamma)
    idx = pr.xj_expand(lam, gamma, j)
    ev = pr.xj_expand(lam, gamma, j, "evaluation") if n <= 4 else None
    cert = {}
    for c in pr.xj_certificates(lam, gamma, j):
        cert.setdefault(c.target, []).append(c.value)
    ref = pr.oracle_expand(pr.xj_product(lam, gamma, j), n, k) if oracle else None
    keys = set(idx.keys()) | (set(ref.keys()) if ref is not None else set())
    rows = []
    for tg in sorted(keys, key=lambda s: (s.lam, s.gamma)):
        row = {"j": j, "target": _target_json(tg), "D": idx[tg]}
        agree = True
        if ev is not None:
            row["evaluation"] = ev[tg]
            agree = agree and ev[tg] == idx[tg]
        vals = cert.get(tg)
        row["certificate"] = vals[0] if vals and len(vals) == 1 else None
        if ref is not None:
            row["oracle"] = ref[tg]
            agree = agree and ref[tg] == idx[tg]
        row["agree"] = agree
        rows.append(row)
    return rows


def _render_rows(rows: List[dict], cols: List[str], fmt: str, out):
    if fmt == "json":
        enc = [{k: (str(v) if isinstance(v, QtRational) else v) for k, v in r.items()} for r in rows]
        out.write(json.dumps(enc, sort_keys=True, indent=1) + "\n")
        return

    def cell(r, c):
        v = r.get(c)
        if c == "target":
            return _split(SplitComposition(tuple(v["mu"]), tuple(v["eta"])))
        if isinstance(v, QtRational):
            return _fmt(v, fmt)
        if v is None:
            return "-"
        if isinstance(v, list):
            return "{" + ",".join(map(str, v)) + "}"
        return str(v)
    if fmt == "latex":
        out.write("\\begin{tabular}{" + "l" * len(cols) + "}\n")
        out.write(" & ".join(cols) + " \\\\\n\\hline\n")
        for r in rows:
            out.write(" & ".join(f"${cell(r, c)}$" if isinstance(r.get(c), QtRational) else cell(r, c)
                                 for c in cols) + " \\\\\n")
        out.write("\\end{tabular}\n")
        return
    for r in rows:
        out.write("  ".join(f"{c}={cell(r, c)}" for c in cols if c in r) + "\n")


def cmd_pieri(cfg: RunConfig, out) -> int:
    _validate_block(cfg, strict=True)
    n = len(cfg.lam) + len(cfg.gamma)
    oracle = cfg.oracle == "on" or (cfg.oracle == "auto" and n <= 4)
    if cfg.what == "e1":
        rows = e1_rows(cfg.lam, cfg.gamma, oracle)
        cols = ["target", "I1", "C", "Jcoeff", "A", "oracle", "agree"]
    else:
        k = len(cfg.gamma)
        js = [cfg.j] if cfg.j is not None else list(range(n - k + 1, n + 1))
        if any(not n - k < j <= n for j in js):
            raise UsageError(f"--j must lie in ({n - k}, {n}]")
        rows = [r for j in js for r in xj_rows(cfg.lam, cfg.gamma, j, oracle)]
        cols = ["j", "target", "D", "evaluation", "certificate", "oracle", "agree"]
    _render_rows(rows, cols, cfg.fmt, out)
    return EXIT_OK if all(r["agree"] for r in rows) else EXIT_FAIL


def cmd_verify(cfg: RunConfig, out) -> int:
    names = sorted(SUITES) if cfg.what == "all" else [cfg.what]
    results = []
    for name in names:
        checks = SUITES[name](cfg)
        results.extend((name, r) for r in run_checks(checks, thread_count()))
    results.sort(key=lambda nr: (nr[1].identity, nr[1].instance, nr[0]))
    ok = all(r.passed for _, r in results)
    report = {
        "suites": names,
        "config": {"max_n": cfg.max_n, "max_deg": cfg.max_deg, "seed": cfg.seed},
        "checks": [dict(r.to_json(cfg.timing), suite=name) for name, r in results],
        "passed": sum(r.passed for _, r in results),
        "failed": sum(not r.passed for _, r in results),
    }
    text = json.dumps(report, sort_keys=True, indent=1) + "\n"
    if cfg.report:
        with open(cfg.report, "w", encoding="utf-8") as fh:
            fh.write(text)
    if cfg.fmt == "json":
        out.write(text)
    else:
        by_id = {}
        for _, r in results:
            p, f = by_id.get(r.identity, (0, 0))
            by_id[r.identity] = (p + r.passed, f + (not r.passed))
        for ident in sorted(by_id):
            p, f = by_id[ident]
            out.write(f"{'PASS' if not f else 'FAIL'}  {ident}  {p}/{p + f}\n")
        for _, r in results:
            if not r.passed:
                out.write(f"  failed: {r.identity} {r.instance} {r.detail}\n")
        out.write(f"{report['passed']} passed, {report['failed']} failed\n")
    return EXIT_OK if ok else EXIT_FAIL


COMMANDS = {"compute": cmd_compute, "pieri": cmd_pieri, "verify": cmd_verify}


def run(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    try:
        return COMMANDS[cfg.command](cfg, out)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except (pr.PieriError, ValueError) as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except ArithmeticError as exc:
        sys.stderr.write(f"internal error: {type(exc).__name__}: {exc}\n")
        return EXIT_INTERNAL


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        cfg = config_from_args(sys.argv[1:] if argv is None else argv)
    except UsageError as exc:
        if str(exc) != "bad arguments":
            sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
