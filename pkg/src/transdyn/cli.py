"""Config-driven batch runner.

Config files are sectioned plain text::

    [system tent]
    kind=builtin
    name=tent

    [check]
    system=tent
    property=leo
    epsilon=1/8
    horizon=16

Report lines are tab separated and sorted, so a run is byte-for-byte
reproducible whatever ``--jobs`` is.
"""
from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Optional

from . import __version__
from .actions import SemigroupAction, constant, multiply, rotation_gen
from .actions import builtin as action_builtin
from .core import Circle, CheckBudget, SequenceSpace, Status, UnitInterval, Verdict, fmt_value, rational
from .errors import BadRational, ConfigError, DynamicsError, ParseError, UnknownName, UnknownSystemKind
from .hierarchy import FACTORS, VerdictTable, builtin_factor, implication_audit, verify_preservation
from .hitting import product_identity_sweep
from .properties import PROPERTIES, check
from .symbolic import full_shift, golden_mean, morse_thue, sft, substitution_shift
from .systems_interval import PLMap, TranslationSemiflow, rotation
from .systems_interval import builtin as interval_builtin

EXIT_OK, EXIT_CONFIG, EXIT_AUDIT = 0, 1, 2

BUILTIN_SYSTEMS = {
    "tent": lambda: interval_builtin("tent"),
    "doubling": lambda: interval_builtin("doubling"),
    "swap_F": lambda: interval_builtin("swap_F"),
    "translation_semiflow": TranslationSemiflow,
    "full_shift": lambda: full_shift(2, name="full_shift"),
    "full_shift_two_sided": lambda: full_shift(2, two_sided=True, name="full_shift_two_sided"),
    "golden_mean": lambda: golden_mean(),
    "morse_thue": lambda: morse_thue(),
    "pnst": lambda: action_builtin("pnst"),
    "dai": lambda: action_builtin("dai"),
    "nao_standin": lambda: action_builtin("nao_standin"),
    "leo_sampled": lambda: action_builtin("leo_sampled"),
}

KIND_KEYS = {
    "builtin": {"name"},
    "pl": {"breakpoints", "values", "circle"},
    "rotation": {"angle"},
    "translation": set(),
    "full_shift": {"alphabet", "sides"},
    "sft": {"matrix", "sides"},
    "substitution": {"substitution", "sides", "seed"},
    "action": {"space", "n_max", "generators", "abelian", "delta"},
}
CHECK_KEYS = {"system", "property", "epsilon", "horizon", "order", "wordlen"}
AUDIT_KEYS = {"implication", "preservation", "product_identity", "epsilon", "horizon"}
INJECT_KEYS = {"system", "property", "verdict"}
RATIONAL_KEYS = {"angle", "breakpoints", "values", "delta"}


# --------------------------------------------------------------------------
# plan

@dataclass(frozen=True)
class SystemDef:
    name: str
    kind: str
    params: tuple  # sorted (key, value) pairs
    line: int = 0


@dataclass(frozen=True)
class CheckDef:
    system: str
    prop: str
    budget: CheckBudget
    line: int = 0


@dataclass
class AuditSpec:
    implication: bool = False
    preservation: tuple = ()
    product_identity: tuple = ()
    epsilon: Fraction = Fraction(1, 4)
    horizon: int = 32


@dataclass
class RunPlan:
    systems: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    audits: AuditSpec = field(default_factory=AuditSpec)
    injections: list = field(default_factory=list)


def _flag(value: str, line: int) -> bool:
    v = value.strip().lower()
    if v in ("yes", "true", "1", "on"):
        return True
    if v in ("no", "false", "0", "off"):
        return False
    raise ParseError(line, f"expected yes/no, got {value!r}")


def _int(value: str, line: int, key: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise ParseError(line, f"{key} must be an integer, got {value!r}") from None


def _rat(value: str, line: int):
    try:
        return rational(value)
    except BadRational as exc:
        raise BadRational(f"line {line}: {exc}") from None


def _sides(params: dict) -> bool:
    s = params.get("sides", "one")
    if s not in ("one", "two"):
        raise ConfigError(f"sides must be one or two, got {s!r}")
    return s == "two"


def _generators(spec: str, delta, line: int) -> tuple:
    gens = []
    for tok in (t.strip() for t in spec.split(",") if t.strip()):
        kind, _, arg = tok.partition(":")
        if kind == "mul":
            gens.append(multiply(_int(arg, line, "mul"), f"x{arg}"))
        elif kind in ("rot", "rotinv"):
            gens.append(rotation_gen(_rat(arg, line), delta, inverse=kind == "rotinv", name=tok))
        elif kind == "const":
            target = _int(arg, line, "const") if "/" not in arg else _rat(arg, line)
            gens.append(constant(target, f"f{arg}"))
        else:
            raise ParseError(line, f"unknown generator {tok!r} (mul:, rot:, rotinv:, const:)")
    return tuple(gens)


def build_system(d: SystemDef):
    """Instantiate the system a config block describes."""
    p = dict(d.params)
    line = d.line
    if d.kind == "builtin":
        name = p.get("name", d.name)
        if name in BUILTIN_SYSTEMS:
            return BUILTIN_SYSTEMS[name]()
        try:
            return interval_builtin(name)
        except UnknownName:
            raise ParseError(line, f"unknown builtin {name!r}") from None
    if d.kind == "pl":
        bs = [_rat(v, line) for v in p["breakpoints"].split(",")]
        vs = [_rat(v, line) for v in p["values"].split(",")]
        return PLMap(tuple(bs), tuple(vs), mod_one=_flag(p.get("circle", "no"), line), name=d.name)
    if d.kind == "rotation":
        return rotation(_rat(p["angle"], line))
    if d.kind == "translation":
        return TranslationSemiflow()
    if d.kind == "full_shift":
        return full_shift(_int(p.get("alphabet", "2"), line, "alphabet"), _sides(p), name=d.name)
    if d.kind == "sft":
        rows = [[_int(c, line, "matrix") for c in r.split()] for r in p["matrix"].split(";")]
        return sft(rows, _sides(p), name=d.name)
    if d.kind == "substitution":
        rule = {}
        for part in p["substitution"].split(","):
            a, _, w = part.partition(":")
            rule[_int(a.strip(), line, "substitution")] = tuple(int(c) for c in w.strip())
        rules = tuple(rule[k] for k in sorted(rule))
        return substitution_shift(rules, p.get("sides", "two") == "two",
                                  _int(p.get("seed", "0"), line, "seed"), name=d.name)
    if d.kind == "action":
        space_name = p.get("space", "circle")
        if space_name == "circle":
            space = Circle()
        elif space_name == "interval":
            space = UnitInterval()
        elif space_name == "sequence":
            space = SequenceSpace(_int(p.get("n_max", "64"), line, "n_max"))
        else:
            raise ParseError(line, f"unknown space {space_name!r}")
        delta = _rat(p.get("delta", "0"), line)
        return SemigroupAction(space, _generators(p.get("generators", ""), delta, line),
                               _flag(p.get("abelian", "no"), line), d.name)
    raise UnknownSystemKind(f"line {line}: unknown system kind {d.kind!r}")


@lru_cache(maxsize=None)
def _cached_system(d: SystemDef):
    return build_system(d)


def parse_config(text: str) -> RunPlan:
    """Parse a config; raises the first positioned error (all of them in ``.errors``)."""
    blocks = []  # (header, arg, line, {key: (value, line)})
    errors: list = []
    current = None
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith(("#", ";")):
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                errors.append(ParseError(n, f"unterminated section header {line!r}"))
                current = None
                continue
            head = line[1:-1].split(None, 1)
            kind = head[0] if head else ""
            arg = head[1].strip() if len(head) > 1 else ""
            if kind not in ("system", "check", "audit", "inject"):
                errors.append(ParseError(n, f"unknown section [{kind}]"))
                current = None
                continue
            if kind == "system" and not arg:
                errors.append(ParseError(n, "[system] needs a name"))
            current = (kind, arg, n, {})
            blocks.append(current)
            continue
        if "=" not in line:
            errors.append(ParseError(n, f"expected key=value, got {line!r}"))
            continue
        if current is None:
            errors.append(ParseError(n, "key outside any section"))
            continue
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key in current[3]:
            errors.append(ParseError(n, f"duplicate key {key!r}"))
            continue
        current[3][key] = (value, n)

    plan = RunPlan()
    for kind, arg, n, kv in blocks:
        try:
            if kind == "system":
                _add_system(plan, arg, n, kv)
            elif kind == "check":
                _add_checks(plan, n, kv)
            elif kind == "audit":
                _set_audit(plan, n, kv)
            else:
                _add_injection(plan, n, kv)
        except ParseError as exc:
            errors.append(exc)
    for c in plan.checks:
        if c.system not in plan.systems:
            errors.append(ParseError(c.line, f"check references undeclared system {c.system!r}"))
    for name in plan.audits.product_identity:
        if name not in plan.systems:
            errors.append(ParseError(0, f"audit references undeclared system {name!r}"))
    for sysname, _, _, line in plan.injections:
        if sysname not in plan.systems:
            errors.append(ParseError(line, f"inject references undeclared system {sysname!r}"))
    if errors:
        errors.sort(key=lambda e: e.line)
        first = errors[0]
        first.errors = errors
        raise first
    return plan


def _unknown_keys(kv: dict, allowed: set, n: int):
    for key, (_, line) in sorted(kv.items(), key=lambda x: x[1][1]):
        if key not in allowed:
            raise ParseError(line, f"unknown key {key!r}")


def _add_system(plan: RunPlan, name: str, n: int, kv: dict):
    if name in plan.systems:
        raise ParseError(n, f"duplicate system {name!r}")
    if "kind" not in kv:
        raise ParseError(n, "system block needs kind=")
    kind = kv["kind"][0]
    if kind not in KIND_KEYS:
        raise UnknownSystemKind(f"line {kv['kind'][1]}: unknown system kind {kind!r}")
    _unknown_keys(kv, KIND_KEYS[kind] | {"kind"}, n)
    for key in sorted(RATIONAL_KEYS & kv.keys()):
        value, ln = kv[key]
        for v in value.split(","):
            _rat(v, ln)
    params = tuple(sorted((k, v) for k, (v, _) in kv.items() if k != "kind"))
    d = SystemDef(name, kind, params, n)
    try:
        build_system(d)
    except (BadRational, ParseError, UnknownSystemKind):
        raise
    except KeyError as exc:
        raise ParseError(n, f"system {name!r} is missing key {exc.args[0]!r}") from None
    except DynamicsError as exc:
        raise ParseError(n, f"system {name!r}: {exc}") from None
    plan.systems[name] = d


def _budget(kv: dict) -> CheckBudget:
    base = CheckBudget()
    args = dict(epsilon=base.epsilon, horizon=base.horizon, order=base.order, wordlen=base.wordlen)
    for key in ("horizon", "order", "wordlen"):
        if key in kv:
            args[key] = _int(kv[key][0], kv[key][1], key)
    if "epsilon" in kv:
        args["epsilon"] = _rat(kv["epsilon"][0], kv["epsilon"][1])
    try:
        return CheckBudget(**args)
    except DynamicsError as exc:
        raise ParseError(min(v[1] for v in kv.values()), str(exc)) from None


def _add_checks(plan: RunPlan, n: int, kv: dict):
    _unknown_keys(kv, CHECK_KEYS, n)
    for key in ("system", "property"):
        if key not in kv:
            raise ParseError(n, f"check block needs {key}=")
    props = kv["property"][0]
    names = list(PROPERTIES) if props == "all" else [p.strip() for p in props.split(",")]
    for p in names:
        if p not in PROPERTIES:
            raise ParseError(kv["property"][1], f"unknown property {p!r}")
    b = _budget(kv)
    for p in names:
        plan.checks.append(CheckDef(kv["system"][0], p, b, n))


def _set_audit(plan: RunPlan, n: int, kv: dict):
    _unknown_keys(kv, AUDIT_KEYS, n)
    a = plan.audits
    if "implication" in kv:
        a.implication = _flag(*kv["implication"])
    if "preservation" in kv:
        names = tuple(x.strip() for x in kv["preservation"][0].split(",") if x.strip())
        for f in names:
            if f not in FACTORS:
                raise ParseError(kv["preservation"][1], f"unknown factor {f!r}")
        a.preservation = names
    if "product_identity" in kv:
        a.product_identity = tuple(x.strip() for x in kv["product_identity"][0].split(",") if x.strip())
    if "epsilon" in kv:
        a.epsilon = _rat(*kv["epsilon"])
    if "horizon" in kv:
        a.horizon = _int(kv["horizon"][0], kv["horizon"][1], "horizon")


def _add_injection(plan: RunPlan, n: int, kv: dict):
    _unknown_keys(kv, INJECT_KEYS, n)
    for key in INJECT_KEYS:
        if key not in kv:
            raise ParseError(n, f"inject block needs {key}=")
    verdict = kv["verdict"][0]
    if verdict not in {s.value for s in Status}:
        raise ParseError(kv["verdict"][1], f"verdict must be Holds, Fails or Undetermined, got {verdict!r}")
    prop = kv["property"][0]
    if prop not in PROPERTIES:
        raise ParseError(kv["property"][1], f"unknown property {prop!r}")
    plan.injections.append((kv["system"][0], prop, verdict, n))


# --------------------------------------------------------------------------
# execution

def _clean(s: str) -> str:
    return s.replace("\t", " ").replace("\n", " ")


def _task(job: tuple) -> tuple:
    """Run one job in a worker; returns plain strings so results pickle cheaply."""
    kind = job[0]
    try:
        if kind == "check":
            _, d, prop, b = job
            handle = _cached_system(d)
            v = check(prop, handle, b)
            return ("CHECK", d.name, prop, str(b), str(v.status), _clean(v.evidence_str()),
                    bool(handle.abelian), bool(handle.central))
        if kind == "preserve":
            _, fname, prop, b = job
            v = verify_preservation(_factor(fname), prop, b)
            return ("PRESERVE", fname, prop, str(b), str(v.status), _clean(v.evidence_str()))
        _, d, eps, H = job
        v = product_identity_sweep(_cached_system(d), eps, H)
        return ("PRODUCT", d.name, f"eps={fmt_value(eps)},H={H}", "", str(v.status), _clean(v.evidence_str()))
    except DynamicsError as exc:
        head = {"check": "CHECK", "preserve": "PRESERVE", "product": "PRODUCT"}[kind]
        name = job[1].name if hasattr(job[1], "name") else job[1]
        prop = job[2] if kind != "product" else ""
        budget = str(job[3]) if kind != "product" else ""
        return (head, name, prop, budget, "Error", _clean(f"{type(exc).__name__}: {exc}"), False, False)


@lru_cache(maxsize=None)
def _factor(name: str):
    return builtin_factor(name)


@dataclass
class Report:
    lines: list
    violations: int
    exit_code: int

    def render(self, fmt: str = "tsv") -> str:
        if not self.lines:
            return ""
        if fmt == "tsv":
            return "".join("\t".join(r) + "\n" for r in self.lines)
        widths: dict = {}
        for r in self.lines:
            for i, f in enumerate(r[:-1]):
                widths[i] = max(widths.get(i, 0), len(f))
        out = []
        for r in self.lines:
            cells = [f.ljust(widths[i]) for i, f in enumerate(r[:-1])] + [r[-1]]
            out.append("  ".join(cells).rstrip() + "\n")
        return "".join(out)


def run(plan: RunPlan, jobs: int = 1, audit: bool = False) -> Report:
    """Execute every check and audit; output order never depends on scheduling."""
    check_jobs = [("check", plan.systems[c.system], c.prop, c.budget) for c in plan.checks]
    extra = []
    for fname in plan.audits.preservation:
        for prop in PROPERTIES:
            extra.append(("preserve", fname, prop, CheckBudget()))
    for name in plan.audits.product_identity:
        extra.append(("product", plan.systems[name], plan.audits.epsilon, plan.audits.horizon))
    all_jobs = check_jobs + extra
    if jobs > 1 and len(all_jobs) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_task, all_jobs, chunksize=1))
    else:
        results = [_task(j) for j in all_jobs]

    checks = sorted((r for r in results if r[0] == "CHECK"), key=lambda r: (r[1], r[2], r[3]))
    others = sorted((r for r in results if r[0] != "CHECK"), key=lambda r: (r[0], r[1], r[2]))
    lines = [r[:6] for r in checks]
    for r in others:
        lines.append(r[:6] if r[0] == "PRESERVE" else (r[0], r[1], r[2], r[4], r[5]))

    failed_audit = any(r[0] in ("PRESERVE", "PRODUCT") and r[4] == "Fails" for r in others)
    violations = 0
    if audit or plan.audits.implication or plan.injections:
        table = VerdictTable()
        for r in checks:
            if r[4] in ("Holds", "Fails", "Undetermined"):
                table.add(r[1], r[2], Verdict(Status(r[4])), r[6], r[7])
        for sysname, prop, verdict, _ in sorted(plan.injections):
            d = plan.systems[sysname]
            h = _cached_system(d)
            table.add(sysname, prop, Verdict(Status(verdict)), bool(h.abelian), bool(h.central))
            lines.append(("INJECT", sysname, prop, verdict))
        found = implication_audit(table)
        violations = len(found)
        for v in found:
            lines.append(("VIOLATION", v.system, v.antecedent, v.consequent))
        lines.append(("AUDIT", "implication", f"systems={len(table.rows)}", f"violations={violations}"))
    code = EXIT_AUDIT if violations or failed_audit else EXIT_OK
    return Report(lines, violations, code)


def default_plan_text() -> str:
    return resources.files("transdyn").joinpath("data/zoo.cfg").read_text()


def list_builtins() -> str:
    rows = ["systems: " + ", ".join(sorted(BUILTIN_SYSTEMS) + ["rotation(p/q)"]),
            "kinds: " + ", ".join(sorted(KIND_KEYS)),
            "properties: " + ", ".join(PROPERTIES),
            "factors: " + ", ".join(FACTORS)]
    return "\n".join(rows) + "\n"


def main(argv: Optional[list] = None) -> int:
    ap = argparse.ArgumentParser(prog="transdyn", description="Check transitivity-type properties of dynamical systems.")
    ap.add_argument("--config", metavar="PATH", help="run plan (default: the shipped zoo plan)")
    ap.add_argument("--audit", action="store_true", help="run the implication audit over the results")
    ap.add_argument("--format", choices=("tsv", "pretty"), default="tsv")
    ap.add_argument("--jobs", type=int, default=1, metavar="N")
    ap.add_argument("--list-builtins", action="store_true")
    ap.add_argument("--version", action="version", version=f"transdyn {__version__}")
    args = ap.parse_args(argv)
    if args.list_builtins:
        sys.stdout.write(list_builtins())
        return EXIT_OK
    if args.jobs < 1:
        sys.stderr.write("error: --jobs must be at least 1\n")
        return EXIT_CONFIG
    try:
        if args.config:
            with open(args.config, encoding="utf-8") as fh:
                text = fh.read()
        else:
            text = default_plan_text()
        plan = parse_config(text)
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_CONFIG
    except (ConfigError, BadRational) as exc:
        for e in getattr(exc, "errors", [exc]):
            sys.stderr.write(f"config error: {e}\n")
        return EXIT_CONFIG
    report = run(plan, args.jobs, args.audit)
    sys.stdout.write(report.render(args.format))
    return report.exit_code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
