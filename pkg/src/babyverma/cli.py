"""Command line: ``babyverma {tables,verify,dihedral,smooth,ingest-check}``.

Exit codes: 0 success, 1 a verification failed, 2 usage or data error.
JSON output is deterministic for fixed arguments; wall times appear only with
``--timing``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
import time
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import cherepoly
from .cache import DiskCache, resolve_dir
from .cherepoly import MAX_SUITE_N, fake_degree, km_tt, kostka_poly, poincare_p
from .exactalg import LaurentPoly
from .smoothcheck import (
    InvariantViolation,
    MissingData,
    SchemaError,
    check_singular,
    ingest_coxeter_datum,
    internal_datum,
)
from .symcomb import TooLarge, partitions

log = logging.getLogger("babyverma")

MAX_M = 12
SUITES = ("import", "simmult", "oracles")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    n: Optional[int] = None
    m: Optional[int] = None
    c: Optional[tuple] = None
    seed: int = 0
    max_n: int = MAX_SUITE_N
    fmt: str = "json"
    cache_dir: Optional[str] = None
    timing: bool = False

    def check_limits(self) -> None:
        if self.max_n > MAX_SUITE_N:
            raise UsageError(f"--max-n may not exceed {MAX_SUITE_N}")
        if self.n is not None and not 1 <= self.n <= self.max_n:
            raise UsageError(f"--n must lie in 1..{self.max_n}")
        if self.m is not None and not 3 <= self.m <= MAX_M:
            raise UsageError(f"--m must lie in 3..{MAX_M}")


@dataclass
class VerificationReport:
    suite: str
    n: int
    cases: int
    failures: list = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self, timing: bool = False) -> dict:
        out = {"suite": self.suite, "n": self.n, "cases": self.cases, "ok": self.ok, "failures": self.failures}
        if timing:
            out["wall_time_s"] = round(self.wall_time, 3)
        return out


def _poly_str(p: LaurentPoly, var: str = "t") -> str:
    return str(p).replace("t", var)


def _lam_str(lam) -> str:
    return "(" + ",".join(map(str, lam)) + ")"


def _emit(out, cfg: RunConfig, payload, csv_rows=None, pretty: Optional[str] = None) -> None:
    if cfg.fmt == "json":
        out.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    elif cfg.fmt == "csv":
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(csv_rows or [])
        out.write(buf.getvalue())
    else:
        out.write((pretty if pretty is not None else json.dumps(payload, indent=2)) + "\n")


def _warm_cache(cfg: RunConfig, n: int, km: bool = True) -> None:
    root = resolve_dir(cfg.cache_dir)
    if root is None:
        return
    cache = DiskCache(root)
    cache.character_table(n)
    if km:
        cache.km_table(n)


# commands


def cmd_tables(cfg: RunConfig, out) -> int:
    n = cfg.n
    _warm_cache(cfg, n)
    lams = partitions(n)
    rows = []
    for lam in lams:
        rec = fake_degree(lam)
        rows.append(
            {
                "lambda": list(lam),
                "fake_degree": rec.f,
                "b": rec.b,
                "kostka_poly": kostka_poly(lam),
                "poincare_p": poincare_p(lam),
            }
        )
    km = {(mu, lam): km_tt(mu, lam) for mu in lams for lam in lams}
    payload = {
        "n": n,
        "order": "reverse lexicographic",
        "partitions": [list(lam) for lam in lams],
        "fake_degree": [r["fake_degree"].to_json() for r in rows],
        "kostka_poly": [r["kostka_poly"].to_json() for r in rows],
        "poincare_p": [r["poincare_p"].to_json() for r in rows],
        "km_tt": [[km[(mu, lam)].to_json() for lam in lams] for mu in lams],
    }
    csv_rows = [["lambda", "b", "fake_degree", "kostka_poly", "poincare_p"]]
    csv_rows += [
        [_lam_str(r["lambda"]), r["b"], str(r["fake_degree"]), str(r["kostka_poly"]), str(r["poincare_p"])]
        for r in rows
    ]
    csv_rows.append([])
    csv_rows.append(["km_tt mu\\lambda"] + [_lam_str(lam) for lam in lams])
    csv_rows += [[_lam_str(mu)] + [str(km[(mu, lam)]) for lam in lams] for mu in lams]
    width = max(len(_lam_str(lam)) for lam in lams)
    lines = [f"S_{n}, partitions in reverse lexicographic order"]
    for r in rows:
        lines.append(
            f"{_lam_str(r['lambda']).ljust(width)}  f = {r['fake_degree']}   K = {r['kostka_poly']}   p = {r['poincare_p']}"
        )
    lines.append("K_{mu,lambda}(t,t):")
    for mu in lams:
        lines.append(f"  {_lam_str(mu).ljust(width)}  " + " | ".join(str(km[(mu, lam)]) for lam in lams))
    _emit(out, cfg, payload, csv_rows, "\n".join(lines))
    return 0


def _faulty_km(mu, lam):
    # test hook: perturb one entry so the simmult suite must fail
    val = km_tt(mu, lam)
    if mu == lam:
        val = val + LaurentPoly.monomial(99)
    return val


def cmd_verify(cfg: RunConfig, out, suite: str, inject_fault: bool = False) -> int:
    n = cfg.n
    _warm_cache(cfg, n)
    suites = SUITES if suite == "all" else (suite,)
    reports = []
    for name in suites:
        start = time.perf_counter()
        km = _faulty_km if inject_fault else None
        if name == "import":
            rep = cherepoly.verify_import(n, km=km, max_n=cfg.max_n)
        elif name == "simmult":
            rep = cherepoly.verify_simmult(n, km=km, max_n=cfg.max_n)
        else:
            rep = cherepoly.verify_oracles(n, max_n=cfg.max_n)
        elapsed = time.perf_counter() - start
        reports.append(VerificationReport(name, n, rep.cases, [m.to_json() for m in rep.failures], elapsed))
        log.info("%s n=%d: %d cases, %d failures, %.2fs", name, n, rep.cases, len(rep.failures), elapsed)
    ok = all(r.ok for r in reports)
    payload = {"n": n, "ok": ok, "reports": [r.to_json(cfg.timing) for r in reports]}
    csv_rows = [["suite", "n", "cases", "failures"]] + [[r.suite, r.n, r.cases, len(r.failures)] for r in reports]
    lines = []
    for r in reports:
        status = "ok" if r.ok else f"{len(r.failures)} FAILURES"
        lines.append(f"{r.suite:8s} n={n}: {r.cases} cases, {status} ({r.wall_time:.2f}s)")
        for f in r.failures[:10]:
            lines.append(f"    {f['identity']} lambda={f['lambda']} rho={f['rho']}: expected {f['expected']}, got {f['got']}")
    _emit(out, cfg, payload, csv_rows, "\n".join(lines))
    return 0 if ok else 1


def _c_json(c: dict) -> dict:
    return {k: str(v) for k, v in c.items()}


def cmd_dihedral(cfg: RunConfig, out, action: str, label: Optional[str]) -> int:
    from .rank2engine import build_group, irrep
    from .rank2engine.verma import analyze, generic_analysis

    m = cfg.m
    data = build_group(m)
    if cfg.c is not None:
        try:
            c = data.c_from_values(cfg.c)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        analysis = analyze(m, c, data)
        generic = None
    else:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            result = generic_analysis(m, seed=cfg.seed)
        for w in caught:
            log.warning("%s", w.message)
        analysis = result.analysis
        generic = {
            "seed": cfg.seed,
            "agreed": result.agreed,
            "samples": [_c_json(s) for s in result.samples],
            "notes": result.notes,
        }
    labels = list(analysis.matrix.labels)
    payload = {"m": m, "c": _c_json(analysis.c), "generic": generic, "labels": labels}
    if action == "decompose":
        payload["matrix"] = analysis.matrix.to_json()
        payload["blocks"] = analysis.blocks
        csv_rows = [["S", "T", "m_ST"]] + [
            [S, T, _poly_str(p, "q")] for S in labels for T, p in analysis.matrix.row(S).items()
        ]
        width = max(len(x) for x in labels)
        lines = [f"I2({m}), c = {', '.join(f'{k}={v}' for k, v in analysis.c.items())}"]
        lines += ["m_{S,T}(q):"]
        for S in labels:
            row = analysis.matrix.row(S)
            lines.append("  " + S.ljust(width) + "  " + ", ".join(f"{T}: {_poly_str(p, 'q')}" for T, p in row.items()))
        lines.append("blocks: " + " ".join("{" + ", ".join(b) + "}" for b in analysis.blocks))
    elif action == "blocks":
        payload["blocks"] = analysis.blocks
        csv_rows = [["block", "label"]] + [[i, S] for i, b in enumerate(analysis.blocks) for S in b]
        lines = [f"I2({m}): {len(analysis.blocks)} blocks"] + ["  {" + ", ".join(b) + "}" for b in analysis.blocks]
    else:
        if label is None:
            raise UsageError("lsimple needs an irreducible label")
        try:
            irrep(m, label)
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from None
        char = analysis.simple_classes[label]
        payload["label"] = label
        payload["dimension"] = analysis.simple_dims[label]
        payload["graded_character"] = {T: p.to_json() for T, p in char.items() if not p.is_zero()}
        csv_rows = [["T", "multiplicity"]] + [[T, _poly_str(p, "q")] for T, p in char.items() if not p.is_zero()]
        lines = [f"L({label}) for I2({m}): dimension {analysis.simple_dims[label]}"]
        lines += [f"  {T}: {_poly_str(p, 'q')}" for T, p in char.items() if not p.is_zero()]
    _emit(out, cfg, payload, csv_rows, "\n".join(lines))
    return 0


def cmd_smooth(cfg: RunConfig, out, group: Optional[str], file: Optional[str]) -> int:
    datum = ingest_coxeter_datum(file) if file else internal_datum(group)
    report = check_singular(datum)
    payload = report.to_json()
    csv_rows = [["label", "dim", "b", "j", "bound", "refined_bound", "verdict"]] + [
        [e.label, e.dim, e.b, e.j, e.bound, e.refined, e.verdict] for e in report.entries
    ]
    _emit(out, cfg, payload, csv_rows, report.to_table())
    return 0


def cmd_ingest_check(cfg: RunConfig, out, file: str) -> int:
    datum = ingest_coxeter_datum(file)
    payload = {
        "name": datum.name,
        "order": datum.order,
        "degrees": list(datum.degrees),
        "irreducibles": len(datum.irreducibles),
        "valid": True,
    }
    csv_rows = [["name", "order", "irreducibles", "valid"], [datum.name, datum.order, len(datum.irreducibles), "true"]]
    pretty = f"{datum.name}: |W| = {datum.order}, degrees {list(datum.degrees)}, {len(datum.irreducibles)} irreducibles, valid"
    _emit(out, cfg, payload, csv_rows, pretty)
    return 0


# argument parsing


def _c_values(text: str) -> tuple:
    try:
        return tuple(Fraction(part.strip()) for part in text.split(","))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad parameter list {text!r}; expected rationals like 1,-2/3") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "pretty"), default="json", dest="fmt")
    common.add_argument("--cache-dir", help="directory for cached tables (default: $BABYVERMA_CACHE_DIR)")
    common.add_argument("--max-n", type=int, default=MAX_SUITE_N)
    common.add_argument("--timing", action="store_true", help="include wall times in JSON output")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="babyverma", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tables", parents=[common], help="fake degrees, Kostka and Poincare polynomials for S_n")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("verify", parents=[common], help="run identity suites for S_n")
    p.add_argument("suite", choices=SUITES + ("all",))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)

    p = sub.add_parser("dihedral", parents=[common], help="baby Verma modules of I2(m)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--c", type=_c_values, help="one value per reflection class; omit for generic sampling")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("action", choices=("decompose", "blocks", "lsimple"))
    p.add_argument("label", nargs="?")

    p = sub.add_parser("smooth", parents=[common], help="singularity bounds for a Coxeter group")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--group", help="I2:<m>, H3 or Sn:<n>")
    g.add_argument("--file", help="JSON datum file")

    p = sub.add_parser("ingest-check", parents=[common], help="validate a Coxeter datum file")
    p.add_argument("file")
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    cfg = RunConfig(
        command=args.command,
        n=getattr(args, "n", None),
        m=getattr(args, "m", None),
        c=getattr(args, "c", None),
        seed=getattr(args, "seed", 0),
        max_n=args.max_n,
        fmt=args.fmt,
        cache_dir=args.cache_dir,
        timing=args.timing,
    )
    try:
        cfg.check_limits()
        if args.command == "tables":
            return cmd_tables(cfg, out)
        if args.command == "verify":
            return cmd_verify(cfg, out, args.suite, args.inject_fault)
        if args.command == "dihedral":
            return cmd_dihedral(cfg, out, args.action, args.label)
        if args.command == "smooth":
            return cmd_smooth(cfg, out, args.group, args.file)
        return cmd_ingest_check(cfg, out, args.file)
    except (UsageError, MissingData, SchemaError, InvariantViolation, TooLarge, cherepoly.TooLarge, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, MissingData) and exc.args else exc
        print(f"babyverma: error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
