"""Batch command line: ``kcone [compute|selftest|oracle-check]``.

Exit codes: 0 success, 1 failed check or unstabilized computation,
2 invalid input. Diagnostics go to stderr, documents to stdout.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from . import __version__
from .cohomology import plane_curve, veronese
from .errors import InvalidInputError, KConeError
from .ktheory import Fixture, KReport, TransDeg, fixture, oracle_suite, report

FORMAT_VERSION = 1
CHECK_FLAGS = ("oracle", "riemann_roch", "torsion_exactness")
DEFAULT_CHECKS = {"oracle": False, "riemann_roch": True, "torsion_exactness": False}
COMMANDS = ("compute", "selftest", "oracle-check")


def _int(value, name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InvalidInputError(f"{name} must be an integer, got {value!r}")
    return value


@dataclass
class JobConfig:
    variety: Dict[str, Any]
    trans_deg: Any = "symbolic"
    n_min: int = -2
    n_max: int = 4
    t_max: Optional[int] = None
    checks: Dict[str, bool] = field(default_factory=lambda: dict(DEFAULT_CHECKS))

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "JobConfig":
        if not isinstance(data, dict):
            raise InvalidInputError("job config must be a JSON object")
        unknown = set(data) - {"variety", "trans_deg", "n_min", "n_max", "t_max", "checks"}
        if unknown:
            raise InvalidInputError(f"unknown config fields: {sorted(unknown)}")
        if "variety" not in data:
            raise InvalidInputError("config needs a 'variety'")
        checks = dict(DEFAULT_CHECKS)
        raw_checks = data.get("checks", {})
        if not isinstance(raw_checks, dict):
            raise InvalidInputError("'checks' must be an object")
        for k, v in raw_checks.items():
            if k not in CHECK_FLAGS or not isinstance(v, bool):
                raise InvalidInputError(f"bad check flag {k!r}: {v!r}")
            checks[k] = v
        cfg = cls(
            variety=data["variety"],
            trans_deg=data.get("trans_deg", "symbolic"),
            n_min=data.get("n_min", -2),
            n_max=data.get("n_max", 4),
            t_max=data.get("t_max"),
            checks=checks,
        )
        cfg.validate()
        return cfg

    def validate(self) -> None:
        v = self.variety
        if not isinstance(v, dict) or "type" not in v:
            raise InvalidInputError("'variety' must be an object with a 'type'")
        kind = v["type"]
        allowed = {
            "plane_curve": {"type", "polynomial"},
            "veronese": {"type", "ambient_dim", "degree"},
            "fixture": {"type", "name"},
        }
        if kind not in allowed:
            raise InvalidInputError(f"unknown variety type {kind!r}")
        if set(v) != allowed[kind]:
            raise InvalidInputError(f"variety of type {kind!r} needs exactly the fields {sorted(allowed[kind])}")
        if kind == "plane_curve" and not isinstance(v["polynomial"], str):
            raise InvalidInputError("'polynomial' must be a string")
        if kind == "veronese":
            if _int(v["ambient_dim"], "ambient_dim") < 1 or _int(v["degree"], "degree") < 1:
                raise InvalidInputError("Veronese ambient_dim and degree must be positive")
        try:
            TransDeg.parse(self.trans_deg)
        except (TypeError, ValueError) as exc:
            raise InvalidInputError(f"trans_deg: {exc}") from None
        if self.trans_deg != "symbolic" and (isinstance(self.trans_deg, bool) or not isinstance(self.trans_deg, int)):
            raise InvalidInputError("trans_deg must be an integer or 'symbolic'")
        if _int(self.n_min, "n_min") > _int(self.n_max, "n_max"):
            raise InvalidInputError("n_min must not exceed n_max")
        if self.t_max is not None:
            _int(self.t_max, "t_max")

    def build_model(self):
        v = self.variety
        if v["type"] == "plane_curve":
            model = plane_curve(v["polynomial"])
        elif v["type"] == "veronese":
            model = veronese(v["ambient_dim"], v["degree"])
        else:
            model = fixture(v["name"])
        if self.t_max is not None:
            floor = model.degree if not isinstance(model, Fixture) else model.n
            if self.t_max < max(floor, 3):
                raise InvalidInputError(f"t_max must be at least {max(floor, 3)} for this variety")
        return model

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class OutputDocument:
    config: Dict[str, Any]
    model: Dict[str, Any]
    trans_deg: Any
    t_max: int
    sections: List[Dict[str, Any]]
    totals: List[Dict[str, Any]]
    checks: List[Dict[str, Any]]
    warnings: List[str]
    versions: Dict[str, Any]
    timing: Optional[Dict[str, float]] = None

    @classmethod
    def from_report(cls, cfg: JobConfig, rep: KReport, timing=None) -> "OutputDocument":
        r = rep.trans_deg
        sections = []
        for n in range(rep.n_range[0], rep.n_range[1] + 1):
            cells = []
            for c in rep.cells:
                if c.n != n:
                    continue
                entry = {"n": c.n, "i": c.i, "t": c.t, "dim": r.serialize(c.dim), "provenance": c.provenance, "status": c.status}
                if c.note:
                    entry["doc"] = c.note
                cells.append(entry)
            sections.append({"n": n, "cells": cells})
        totals = [{"n": n, "extra": None if d is None else r.serialize(d)} for n, d in rep.totals().items()]
        checks = [{"name": ch.name, "passed": ch.passed, "details": ch.details} for ch in rep.checks]
        return cls(
            config=cfg.to_dict(),
            model=rep.model,
            trans_deg=None if r.symbolic else r.value,
            t_max=rep.t_max,
            sections=sections,
            totals=totals,
            checks=checks,
            warnings=list(rep.warnings),
            versions={"kcone": __version__, "format": FORMAT_VERSION},
            timing=timing,
        )

    @property
    def passed(self) -> bool:
        return all(ch["passed"] for ch in self.checks)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "OutputDocument":
        return cls(**json.loads(text))

    def to_table(self) -> str:
        lines = [f"model: {json.dumps(self.model, sort_keys=True)}"]
        lines.append(f"trans_deg: {'symbolic' if self.trans_deg is None else self.trans_deg}   t_max: {self.t_max}")
        rows = [("n", "i", "t", "dim", "status", "provenance")]
        for sec in self.sections:
            for c in sec["cells"]:
                rows.append((str(c["n"]), str(c["i"]), str(c["t"]), _fmt_dim(c["dim"]), c["status"], c["provenance"]))
        widths = [max(len(r[k]) for r in rows) for k in range(len(rows[0]))]
        for row in rows:
            lines.append("  ".join(s.ljust(w) for s, w in zip(row, widths)).rstrip())
        lines.append("")
        lines.append("totals:")
        for tot in self.totals:
            lines.append(f"  K_{tot['n']} extra: {'unavailable' if tot['extra'] is None else _fmt_dim(tot['extra'])}")
        lines.append("checks:")
        for ch in self.checks:
            lines.append(f"  {'PASS' if ch['passed'] else 'FAIL'} {ch['name']}")
            if not ch["passed"]:
                lines.extend(f"    {d}" for d in ch["details"])
        for w in self.warnings:
            lines.append(f"warning: {w}")
        return "\n".join(lines) + "\n"


def _fmt_dim(d) -> str:
    if isinstance(d, dict):
        from .ktheory import BinomDim

        return str(BinomDim(tuple(d["binom_coeffs"])))
    return str(d)


def run(cfg: JobConfig, timing: bool = False) -> Tuple[OutputDocument, int]:
    """Compute the report for one job; raises KConeError subclasses on bad input or unstable runs."""
    start = time.perf_counter()
    model = cfg.build_model()
    rep = report(
        model,
        (cfg.n_min, cfg.n_max),
        cfg.trans_deg,
        t_max=cfg.t_max,
        oracle=cfg.checks["oracle"],
        riemann_roch=cfg.checks["riemann_roch"],
        torsion_exactness=cfg.checks["torsion_exactness"],
    )
    elapsed = {"seconds": round(time.perf_counter() - start, 3)} if timing else None
    doc = OutputDocument.from_report(cfg, rep, elapsed)
    return doc, 0 if doc.passed else 1


def load_config(path: Optional[str], stdin=None) -> Dict[str, Any]:
    try:
        if path is None or path == "-":
            text = (stdin or sys.stdin).read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise InvalidInputError(f"cannot read config: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"config is not valid JSON: {exc}") from None


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kcone", description="K-theory dimension tables of cones over smooth curves")
    p.add_argument("--version", action="version", version=f"kcone {__version__}")
    sub = p.add_subparsers(dest="command")
    comp = sub.add_parser("compute", help="assemble the table for a job config (default)")
    comp.add_argument("--config", help="job config JSON file, '-' or omitted for stdin")
    comp.add_argument("--format", choices=("json", "table"), default="json")
    comp.add_argument("--t-max", type=int, dest="t_max")
    comp.add_argument("--r", dest="r", help="transcendence degree: integer or 'symbolic'")
    comp.add_argument("--timing", action="store_true", help="include wall-clock timing (output is no longer byte-stable)")
    st = sub.add_parser("selftest", help="run the built-in known-value fixtures")
    st.add_argument("--torsion-cap", type=int, default=None, help="override the torsion exponent cap")
    oc = sub.add_parser("oracle-check", help="compare the Čech oracle with closed forms")
    oc.add_argument("--config", help="job config JSON file, '-' or omitted for stdin")
    oc.add_argument("--m-min", type=int, default=-6)
    oc.add_argument("--m-max", type=int, default=8)
    return p


def _apply_overrides(data: Dict[str, Any], args) -> Dict[str, Any]:
    data = dict(data) if isinstance(data, dict) else data
    if isinstance(data, dict):
        if getattr(args, "t_max", None) is not None:
            data["t_max"] = args.t_max
        if getattr(args, "r", None) is not None:
            if args.r == "symbolic":
                data["trans_deg"] = "symbolic"
            else:
                try:
                    data["trans_deg"] = int(args.r)
                except ValueError:
                    raise InvalidInputError(f"--r must be an integer or 'symbolic', got {args.r!r}") from None
    return data


def _err(msg: str) -> None:
    print(f"kcone: {msg}", file=sys.stderr)


def cmd_compute(args, out=None) -> int:
    out = out or sys.stdout
    cfg = JobConfig.from_dict(_apply_overrides(load_config(args.config), args))
    doc, code = run(cfg, timing=args.timing)
    out.write(doc.to_json() if args.format == "json" else doc.to_table())
    if code:
        failed = [ch["name"] for ch in doc.checks if not ch["passed"]]
        _err(f"checks failed: {', '.join(failed)}")
    return code


def cmd_selftest(args, out=None) -> int:
    from .selftest import run_selftest

    out = out or sys.stdout
    results = run_selftest(torsion_cap=args.torsion_cap)
    for res in results:
        out.write(f"{'PASS' if res.passed else 'FAIL'}  {res.name}\n")
        for d in res.details[:5]:
            out.write(f"      {d}\n")
    failed = [r.name for r in results if not r.passed]
    out.write(f"{len(results) - len(failed)}/{len(results)} fixtures passed\n")
    if failed:
        _err(f"selftest failed: {'; '.join(failed)}")
        return 1
    return 0


def cmd_oracle(args, out=None) -> int:
    out = out or sys.stdout
    cfg = JobConfig.from_dict(load_config(args.config))
    model = cfg.build_model()
    if isinstance(model, Fixture) or not model.is_curve:
        raise InvalidInputError("the Čech oracle is available for curves only")
    res = oracle_suite(model, range(args.m_min, args.m_max + 1))
    for d in res.details:
        out.write(d + "\n")
    out.write(("all agree" if res.passed else "DISAGREEMENT FOUND") + "\n")
    return 0 if res.passed else 1


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv or (argv[0] not in COMMANDS and argv[0] not in ("-h", "--help", "--version")):
        argv.insert(0, "compute")
    args = _parser().parse_args(argv)
    handler = {"compute": cmd_compute, "selftest": cmd_selftest, "oracle-check": cmd_oracle}[args.command]
    try:
        return handler(args)
    except InvalidInputError as exc:
        _err(f"invalid input: {exc}")
        return 2
    except KConeError as exc:
        _err(f"{type(exc).__name__}: {exc}")
        if "t_max" not in str(exc) and "cap" in str(exc):
            _err("raise t_max (or the exponent cap) and rerun")
        return 1


if __name__ == "__main__":
    sys.exit(main())
