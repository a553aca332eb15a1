"""Command-line driver: verify suites, count quotients, manipulate classes.

Exit codes: 0 all checks pass, 1 some check fails, 2 usage or parse error,
3 a q is not tame for a scenario, 4 the oracle point budget was exceeded.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict, dataclass, field

from .classes import MotivicClass, evaluate_count, mod_L, sym_power_class, zeta_coefficients
from .errors import (
    BoundedInputError,
    GrothquotError,
    InvalidScenarioError,
    ResourceError,
    UnknownCheckError,
    UnsupportedClassError,
    UnsupportedParametersError,
)
from .ffcount.actions import PermutationOnPower, burnside_quotient_count
from .ffcount.field import FieldSpec, prime_power
from .ffcount.oracle import DEFAULT_BUDGET, oracle_orbit_count, oracle_sym_power
from .identities import (
    SUITE_NAMES,
    IdentityCheck,
    anchors,
    check_scenario_tameness,
    resolve_name,
    run_check,
    run_suite,
)
from .scenarios import base_variety, linear_action, linear_variety

SCHEMA = "1"
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_TAME, EXIT_BUDGET = 0, 1, 2, 3, 4


@dataclass
class RunConfig:
    suites: list[str] = field(default_factory=list)
    q_list: list[int] | None = None
    scenario_paths: list[str] = field(default_factory=list)
    format: str = "text"
    out: str | None = None
    seed: int = 0
    budget: int = DEFAULT_BUDGET


class UsageError(GrothquotError):
    pass


# ------------------------------------------------------------ parsing helpers

def parse_q_list(text: str | None) -> list[int] | None:
    if text is None:
        return None
    try:
        qs = [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError as exc:
        raise UsageError(f"bad --q list {text!r}") from exc
    if not qs:
        raise UsageError("empty --q list")
    for q in qs:
        try:
            prime_power(q)
        except UnsupportedParametersError as exc:
            raise UsageError(str(exc)) from exc
    return qs


def load_scenarios(path: str) -> list[dict]:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidScenarioError(f"{path}: {exc}") from exc
    if isinstance(data, dict) and "checks" in data:
        schema = str(data.get("schema", SCHEMA))
        if schema != SCHEMA:
            raise InvalidScenarioError(f"{path}: unsupported schema {schema!r}")
        data = data["checks"]
    if isinstance(data, dict):
        data = [data]
    if not isinstance(data, list) or not all(isinstance(d, dict) for d in data):
        raise InvalidScenarioError(f"{path}: expected a scenario object or a list of them")
    return data


# ------------------------------------------------------------ rendering

def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    if fmt == "csv":
        return _render_csv(report)
    return _render_text(report)


def _render_csv(report: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if "checks" in report:
        w.writerow(["check", "label", "anchor", "instance", "q", "lhs", "rhs", "relation", "passed"])
        for c in report["checks"]:
            for i in c["instances"]:
                w.writerow([c["name"], c["label"], c["anchor"], i["label"], i["q"], i["lhs"], i["rhs"],
                            i["relation"], i["passed"]])
    else:
        rows = report.get("rows", [])
        if rows:
            keys = list(rows[0])
            w.writerow(keys)
            for r in rows:
                w.writerow([r[k] for k in keys])
    return buf.getvalue()


def _render_text(report: dict) -> str:
    lines = []
    if "checks" in report:
        for c in report["checks"]:
            mark = "PASS" if c["passed"] else "FAIL"
            lines.append(f"{mark} {c['name']} [{c['label']}] ({c['anchor']})")
            for i in c["instances"]:
                rel = "=" if i["relation"] == "=" else f"= (mod {i['q']})"
                extra = ""
                if "oracle" in i:
                    extra = " oracle " + ("ok" if i["oracle"].get("agrees") else "MISMATCH")
                flag = "" if i["passed"] else "   <-- FAIL"
                lines.append(f"    {i['label']}: {i['lhs']} {rel} {i['rhs']}{extra}{flag}")
        n_pass = sum(c["passed"] for c in report["checks"])
        lines.append(f"{n_pass}/{len(report['checks'])} checks passed")
        moduli = report.get("fields", {})
        if moduli:
            lines.append("fields: " + "; ".join(f"F_{q} = F_{v['p']}[x]/({v['modulus_text']})"
                                                 for q, v in sorted(moduli.items(), key=lambda kv: int(kv[0]))))
    else:
        for key in ("title", "class", "mod_L"):
            if key in report:
                lines.append(f"{key}: {report[key]}")
        for r in report.get("rows", []):
            lines.append("  " + "  ".join(f"{k}={v}" for k, v in r.items()))
        for key in ("text",):
            if key in report:
                lines.append(report[key])
    return "\n".join(lines) + "\n"


def emit(report: dict, cfg_format: str, out: str | None) -> None:
    text = render(report, cfg_format)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fields_for(checks: list[IdentityCheck]) -> dict:
    qs = sorted({i.q for c in checks for i in c.instances})
    return {str(q): FieldSpec.for_query(q).to_json() for q in qs}


# ------------------------------------------------------------ commands

def run(cfg: RunConfig) -> tuple[int, dict]:
    """Execute a verification run; returns (exit status, report)."""
    if not cfg.suites and not cfg.scenario_paths:
        raise UsageError("nothing to run: give --suite and/or --scenario")
    for s in cfg.suites:
        if s != "all" and s not in SUITE_NAMES:
            raise UsageError(f"unknown suite {s!r}; choose from all, {', '.join(SUITE_NAMES)}")
    user = []
    for path in cfg.scenario_paths:
        for sc in load_scenarios(path):
            sc = dict(sc)
            if cfg.q_list is not None:
                sc["q"] = list(cfg.q_list)
            resolve_name(str(sc.get("check", "")))
            # user scenarios are screened up front: a non-tame q rejects the run
            check_scenario_tameness(sc)
            user.append(sc)
    checks = run_suite(cfg.suites, q_override=cfg.q_list, budget=cfg.budget, seed=cfg.seed) if cfg.suites else []
    checks += [run_check(sc, budget=cfg.budget) for sc in user]
    checks.sort(key=lambda c: (c.name, c.label))
    passed = all(c.passed for c in checks) and bool(checks)
    report = {
        "schema": SCHEMA,
        "command": "verify",
        "config": {k: v for k, v in asdict(cfg).items() if k not in ("out", "format")},
        "passed": passed,
        "checks": [c.to_json() for c in checks],
        "fields": _fields_for(checks),
    }
    return (EXIT_OK if passed else EXIT_FAIL), report


def cmd_verify(args) -> int:
    cfg = RunConfig(
        suites=[s for part in (args.suite or []) for s in part.split(",") if s],
        q_list=parse_q_list(args.q),
        scenario_paths=args.scenario or [],
        format=args.format,
        out=args.out,
        seed=args.seed,
        budget=args.budget,
    )
    status, report = run(cfg)
    emit(report, cfg.format, cfg.out)
    return status


def cmd_count(args) -> int:
    qs = parse_q_list(args.q) or [3]
    rows = []
    if args.power or args.tower:
        X = base_variety(args.power or args.tower)
        n = args.n or 2
        for q in qs:
            row = {"q": q}
            if args.power:
                row["count"] = burnside_quotient_count(PermutationOnPower(X.sequence, n), q)
                if args.oracle:
                    if X.model is None:
                        raise UsageError("no explicit model for this base")
                    row["oracle"] = oracle_sym_power(X.model, n, q, budget=args.budget).count
            else:
                from .polydiag import oracle_tower_counts, tower_quotient_count

                row["count"] = tower_quotient_count(X.sequence, X.dim, n, q)
                if args.oracle:
                    row["oracle"] = oracle_tower_counts(X.dim, n, q, args.budget)["quotient"]
            rows.append(row)
        title = f"#({'Sym^' + str(n) if args.power else ''}{X.label}{'<' + str(n) + '>/S' + str(n) if args.tower else ''})(F_q)"
    else:
        if not args.space:
            raise UsageError("count needs --space, --power or --tower")
        try:
            rep = json.loads(args.space)
        except json.JSONDecodeError as exc:
            raise InvalidScenarioError(f"--space is not JSON: {exc}") from exc
        action = linear_action(rep, args.ambient)
        for q in qs:
            action.check_tame(q)
            row = {"q": q, "count": burnside_quotient_count(action, q)}
            if args.oracle:
                row["oracle"] = oracle_orbit_count(linear_variety(action), action, q, budget=args.budget).count
            rows.append(row)
        title = f"#({args.ambient} model of {json.dumps(rep, sort_keys=True)}/G)(F_q)"
    for r in rows:
        r["modulus"] = FieldSpec.for_query(r["q"]).modulus_string()
    ok = all(r.get("oracle", r["count"]) == r["count"] for r in rows)
    emit({"schema": SCHEMA, "command": "count", "title": title, "rows": rows}, args.format, args.out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_class(args) -> int:
    c = MotivicClass.coerce(args.expr)
    if args.sym is not None:
        c = sym_power_class(c, args.sym)
    report = {"schema": SCHEMA, "command": "class", "class": str(c), "mod_L": str(mod_L(c)), "json": c.to_json()}
    qs = parse_q_list(args.q)
    if qs:
        report["rows"] = [{"q": q, "count": evaluate_count(c, q)} for q in qs]
    emit(report, args.format, args.out)
    return EXIT_OK


def cmd_zeta(args) -> int:
    series = zeta_coefficients(args.cls, args.N)
    qs = parse_q_list(args.q) or []
    rows = []
    for n, coeff in enumerate(series.coefficients):
        row = {"n": n, "class": str(coeff)}
        for q in qs:
            row[f"count_q{q}"] = evaluate_count(coeff, q)
        rows.append(row)
    report = {"schema": SCHEMA, "command": "zeta", "title": f"zeta of {MotivicClass.coerce(args.cls)} to t^{args.N}",
              "rows": rows}
    emit(report, args.format, args.out)
    return EXIT_OK


def explain_text(name: str) -> str:
    key = resolve_name(name)
    entry = anchors()[key]
    lines = [f"{key}: {entry['statement']}", f"  anchor: {entry['anchor']}"]
    if entry.get("quote"):
        lines.append(f"  quote:  {entry['quote']}")
    lines.append("  scenario schema: " + json.dumps(entry["schema"], sort_keys=True))
    return "\n".join(lines)


def cmd_explain(args) -> int:
    text = explain_text(args.check)
    if args.format == "json":
        key = resolve_name(args.check)
        emit({"schema": SCHEMA, "command": "explain", "check": key, **anchors()[key]}, "json", args.out)
    else:
        emit({"text": text}, "text", args.out)
    return EXIT_OK


# ------------------------------------------------------------ entry point

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="grothquot", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, q=True):
        if q:
            sp.add_argument("--q", help="comma-separated prime powers")
        sp.add_argument("--format", choices=("text", "json", "csv"), default="text")
        sp.add_argument("--out", help="write the report here instead of stdout")

    v = sub.add_parser("verify", help="run identity suites and scenario files")
    v.add_argument("--suite", action="append", help="all, " + ", ".join(SUITE_NAMES) + " (comma list allowed)")
    v.add_argument("--scenario", action="append", help="JSON scenario file")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    common(v)
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("count", help="count F_q-points of a quotient")
    c.add_argument("--space", help='representation JSON, e.g. \'{"dim":2,"weights":[1,2],"k":3}\'')
    c.add_argument("--ambient", default="affine",
                   choices=("affine", "punctured", "projective", "blowup_origin", "torus"))
    c.add_argument("--power", help="base X for Sym^n X, e.g. P1")
    c.add_argument("--tower", help="base X for X<n>/S_n, e.g. P2")
    c.add_argument("--n", type=int)
    c.add_argument("--oracle", action="store_true", help="also count by brute-force enumeration")
    c.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    c.add_argument("--seed", type=int, default=0)
    common(c)
    c.set_defaults(func=cmd_count)

    k = sub.add_parser("class", help="normalize, reduce and evaluate a class")
    k.add_argument("--expr", required=True, help='e.g. "(1+L)^2"')
    k.add_argument("--sym", type=int, help="take the n-th symmetric power first")
    common(k)
    k.set_defaults(func=cmd_class)

    z = sub.add_parser("zeta", help="Kapranov zeta coefficients of a class")
    z.add_argument("--class", dest="cls", required=True)
    z.add_argument("--N", type=int, default=4)
    common(z)
    z.set_defaults(func=cmd_zeta)

    e = sub.add_parser("explain", help="show an identity, its anchor and scenario schema")
    e.add_argument("check")
    common(e, q=False)
    e.set_defaults(func=cmd_explain)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UnsupportedParametersError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TAME
    except ResourceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, InvalidScenarioError, UnknownCheckError, BoundedInputError, UnsupportedClassError,
            ValueError, KeyError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
