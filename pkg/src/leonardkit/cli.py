"""Command line front end: ``lk validate|descend|form|ortho --config <path> [--json]``.

The config is a JSON document with ``"schema": 1``, a ``"field"`` descriptor
and a ``"systems"`` map; each subcommand reads its own extra keys.  Exit
status is 0 when every verdict passes, 1 on a mathematical failure and 2 on
a usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from . import askey, descent, forms
from .errors import (
    CaseConstraintViolated,
    ConfigParse,
    DenominatorVanishes,
    DivisionByZero,
    EndpointOutOfRange,
    InvalidFieldSpec,
    LeonardError,
    MismatchedField,
    NotADescendent,
    ShapeMismatch,
)
from .fields import FieldSpec
from .leonard import check_axioms, extract_parameter_array, from_parameter_array
from .params import CASE_PARAMETERS, CaseParams, ParameterArray, evaluate_case, instantiate, validate

SCHEMA_VERSION = 1
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# errors that mean "the request itself is malformed" rather than "the maths says no"
USAGE_ERRORS = (ConfigParse, EndpointOutOfRange, DenominatorVanishes, CaseConstraintViolated,
                InvalidFieldSpec, MismatchedField, ShapeMismatch)


@dataclass
class Report:
    command: str
    verdicts: List[Dict[str, Any]] = field(default_factory=list)
    witnesses: Dict[str, Any] = field(default_factory=dict)
    data: Dict[str, Any] = field(default_factory=dict)
    error: Optional[str] = None
    exit_code: int = EXIT_OK

    def check(self, name: str, passed: bool, detail: str = "", **extra) -> bool:
        entry = {"check": name, "passed": bool(passed)}
        if detail:
            entry["detail"] = detail
        entry.update(extra)
        self.verdicts.append(entry)
        return bool(passed)

    def finish(self) -> "Report":
        if self.error is None:
            self.exit_code = EXIT_OK if all(v["passed"] for v in self.verdicts) else EXIT_FAIL
        return self

    def as_dict(self) -> Dict[str, Any]:
        out = {"command": self.command, "verdicts": self.verdicts, "witnesses": self.witnesses,
               "data": self.data, "exit_code": self.exit_code}
        if self.error is not None:
            out["error"] = self.error
        return out

    def render(self) -> str:
        lines = [f"lk {self.command}"]
        if self.error is not None:
            lines.append(f"error: {self.error}")
        for v in self.verdicts:
            extra = {k: x for k, x in v.items() if k not in ("check", "passed", "detail")}
            tail = " ".join(f"{k}={x}" for k, x in extra.items())
            lines.append(f"  {'PASS' if v['passed'] else 'FAIL'}  {v['check']}"
                         + (f"  {v['detail']}" if v.get("detail") else "")
                         + (f"  [{tail}]" if tail else ""))
        for k, x in self.witnesses.items():
            lines.append(f"  {k}: {x}")
        for k, x in self.data.items():
            if isinstance(x, list) and x and isinstance(x[0], list):
                lines.append(f"  {k}:")
                lines.extend("    " + "  ".join(f"{c:>6}" for c in row) for row in x)
            else:
                lines.append(f"  {k}: {x}")
        lines.append(f"exit {self.exit_code}")
        return "\n".join(lines)


def _s(x) -> str:
    return str(x)


def _matrix(rows) -> List[List[str]]:
    return [[_s(x) for x in row] for row in rows]


# --------------------------------------------------------------------------
# config parsing
# --------------------------------------------------------------------------

class Job:
    """A parsed config: the field plus lazily resolved named systems."""

    def __init__(self, raw: Dict[str, Any]):
        if not isinstance(raw, dict):
            raise ConfigParse("config must be a JSON object")
        if raw.get("schema") != SCHEMA_VERSION:
            raise ConfigParse(f"unsupported schema {raw.get('schema')!r}; expected {SCHEMA_VERSION}")
        self.raw = raw
        self.field = parse_field(raw.get("field", {"kind": "rational"}))
        systems = raw.get("systems", {})
        if not isinstance(systems, dict):
            raise ConfigParse("'systems' must be an object")
        self.systems = systems

    def get(self, key, default=None, kind=None):
        value = self.raw.get(key, default)
        if kind is not None and value is not None and not isinstance(value, kind):
            raise ConfigParse(f"'{key}' has the wrong type")
        return value

    def require(self, key, kind=None):
        if key not in self.raw:
            raise ConfigParse(f"missing key '{key}'")
        return self.get(key, kind=kind)

    def scalar(self, value):
        try:
            return self.field(value)
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise ConfigParse(f"cannot read {value!r} in {self.field}: {exc}") from exc

    def case(self, name: str) -> Optional[CaseParams]:
        entry = self._entry(name)
        if "case" not in entry:
            return None
        spec = entry["case"]
        try:
            tag, d = spec["tag"], spec.get("d", 3)
            params = spec.get("params", {})
        except (TypeError, KeyError) as exc:
            raise ConfigParse(f"system '{name}': case needs 'tag' and 'params'") from exc
        if tag not in CASE_PARAMETERS:
            raise ConfigParse(f"system '{name}': unknown case tag {tag!r}")
        if not isinstance(d, int) or d < 1:
            raise ConfigParse(f"system '{name}': diameter must be a positive integer")
        unknown = set(params) - set(CASE_PARAMETERS[tag])
        if unknown:
            raise ConfigParse(f"system '{name}': unknown parameters {sorted(unknown)} for case {tag}")
        values = {"theta0": self.field.zero, "theta0_star": self.field.zero}
        values.update({k: self.scalar(v) for k, v in params.items()})
        missing = set(CASE_PARAMETERS[tag]) - set(values)
        if missing:
            raise ConfigParse(f"system '{name}': missing parameters {sorted(missing)}")
        return CaseParams(tag, d, values)

    def array(self, name: str, checked: bool = True) -> ParameterArray:
        entry = self._entry(name)
        cp = self.case(name)
        if cp is not None:
            if checked:
                return instantiate(cp)
            try:
                return evaluate_case(cp)
            except DivisionByZero as exc:
                raise CaseConstraintViolated(f"a denominator vanishes: {exc}") from exc
        raw = entry.get("raw")
        keys = ("theta", "theta_star", "varphi", "phi")
        if not isinstance(raw, dict) or any(not isinstance(raw.get(k), list) for k in keys):
            raise ConfigParse(f"system '{name}' needs 'case' or 'raw' with {', '.join(keys)}")
        d = len(raw["theta"]) - 1
        if d < 1 or len(raw["theta_star"]) != d + 1 or len(raw["varphi"]) != d or len(raw["phi"]) != d:
            raise ConfigParse(f"system '{name}': inconsistent array lengths")
        return ParameterArray(*(tuple(self.scalar(x) for x in raw[k]) for k in keys))

    def _entry(self, name) -> Dict[str, Any]:
        if not isinstance(name, str) or name not in self.systems:
            raise ConfigParse(f"unknown system {name!r}")
        entry = self.systems[name]
        if not isinstance(entry, dict):
            raise ConfigParse(f"system '{name}' must be an object")
        return entry


def parse_field(spec) -> FieldSpec:
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ConfigParse("'field' must be an object with a 'kind'")
    kind = spec["kind"]
    if kind == "rational":
        return FieldSpec.rational()
    if kind == "prime":
        return FieldSpec.prime(spec.get("p"))
    if kind == "extension":
        return FieldSpec.extension(spec.get("p"), spec.get("modulus"))
    raise ConfigParse(f"unknown field kind {kind!r}")


def load_config(path: str) -> Job:
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigParse(f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigParse(f"malformed JSON: {exc}") from exc
    return Job(raw)


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------

def cmd_validate(job: Job) -> Report:
    rep = Report("validate")
    name = job.require("system", str)
    pa = job.array(name, checked=False)
    rep.data["parameter_array"] = pa.describe()
    result = validate(pa)
    for c in result.conditions:
        extra = {} if c.index is None else {"index": c.index}
        rep.check(c.name, c.passed, c.detail, **extra)
    if job.get("axioms", False, bool):
        if result.ok:
            for a in check_axioms(from_parameter_array(pa)).axioms:
                rep.check(a.name, a.passed, "" if a.passed else f"violations {list(a.violations)}")
        else:
            rep.check("axioms", False, "skipped: the parameter array is invalid")
    return rep


def _witness_dict(w) -> Dict[str, str]:
    return {"rho": w.rho, "xi_star": _s(w.xi_star), "zeta_star": _s(w.zeta_star)}


def cmd_descend(job: Job) -> Report:
    rep = Report("descend")
    if "target" in job.raw:
        pa = job.array(job.require("source", str))
        pa_prime = job.array(job.require("target", str))
        rho = job.get("rho", kind=int)
        rhos = [rho] if rho is not None else range(pa.d - pa_prime.d + 1)
        if rho is not None:
            descent._check_endpoint(pa.d, pa_prime.d, rho)
        found = []
        for r in rhos:
            w = descent.is_descendent(pa, pa_prime, r)
            if w is not None:
                found.append(r)
                rep.witnesses[f"rho={r}"] = _witness_dict(w)
                rep.check(f"identities at rho={r}", descent.witness_identities(pa, pa_prime, w))
        rep.data["valid_rho"] = found
        rep.check("descendent", bool(found), "" if found else "Absent")
        return rep

    name = job.require("source", str)
    cp = job.case(name)
    if cp is None:
        raise ConfigParse("enumeration needs a source given by case parameters")
    d_prime = job.require("d_prime", int)
    rho = job.get("rho", kind=int)
    free = job.get("free", {}, dict)
    rhos = [rho] if rho is not None else range(cp.d - d_prime + 1)
    descent._check_endpoint(cp.d, d_prime, 0 if rho is None else rho)
    targets = {}
    for r in rhos:
        ok, reason = descent.admissible(cp.tag, cp.d, d_prime, r)
        if not ok:
            rep.check(f"rho={r}", False, reason)
            continue
        try:
            out = descent.construct_descendent(cp, d_prime, r, free)
        except LeonardError:
            out = descent.existence_probe(cp, d_prime, r)
        if out is None:
            rep.check(f"rho={r}", False, "no feasible descendent found")
            continue
        rep.check(f"rho={r}", True)
        targets[str(r)] = {"case": out.describe(), "parameter_array": instantiate(out).describe()}
    rep.data["valid_rho"] = [int(r) for r in targets]
    rep.data["targets"] = targets
    if not targets:
        rep.check("descendent", False, "Does not occur")
    return rep


def _resolve_pair(job: Job):
    """(source system, target system, rho, source case params or None)."""
    src = job.require("source", str)
    pa = job.array(src)
    cp = job.case(src)
    rho = job.get("rho", kind=int)
    if "target" in job.raw:
        pa_prime = job.array(job.require("target", str))
        if rho is None:
            valid = descent.descendent_endpoints(pa, pa_prime)
            if not valid:
                raise NotADescendent("the target is not a descendent of the source")
            rho = valid[0]
    else:
        if cp is None:
            raise ConfigParse("a source without a target must be given by case parameters")
        d_prime = job.require("d_prime", int)
        rho = 0 if rho is None else rho
        out = descent.construct_descendent(cp, d_prime, rho, job.get("free", {}, dict))
        pa_prime = instantiate(out)
    return from_parameter_array(pa), from_parameter_array(pa_prime), rho, cp


def _form_checks(rep: Report, form: forms.BalancedForm, prefix: str = "") -> None:
    br = forms.check_balanced(form)
    rep.check(prefix + "nonzero", br.nonzero)
    rep.check(prefix + "B1", not br.b1, "" if not br.b1 else f"violations {list(br.b1)}")
    rep.check(prefix + "B2", not br.b2, "" if not br.b2 else f"violations {list(br.b2)}")
    rep.check(prefix + "full rank", br.full_rank, f"rank {br.rank}")
    for word, ok in br.remark_pairs.items():
        rep.check(prefix + f"balanced under {word}", ok)


def cmd_form(job: Job) -> Report:
    rep = Report("form")
    chain = job.get("chain", kind=list)
    if chain is not None:
        return _form_chain(job, chain, rep)
    ls, lsp, rho, cp = _resolve_pair(job)
    form = forms.build_balanced_form(ls, lsp, rho)
    rep.data["B"] = _matrix(form.B.rows)
    rep.witnesses["rho"] = rho
    _form_checks(rep, form)
    rep.check("sigma intertwining", forms.sigma_intertwine_check(form))
    pr = forms.projection_maps(form)
    rep.check("proj E0V = E0'V'", pr.maps_e0)
    rep.check("proj' injective", pr.injective)
    rep.check("epsilon", pr.epsilon is not None)
    rep.witnesses["epsilon"] = _s(pr.epsilon)
    dual = forms.dual_objects_check(form)
    rep.check("dual objects", dual.ok)
    rep.witnesses.update(xi_star=_s(dual.xi_star), zeta_star=_s(dual.zeta_star), factor=_s(dual.factor))
    dim = forms.uniqueness_dimension(ls, lsp, rho)
    rep.check("uniqueness", dim == 1, f"kernel dimension {dim}")
    if job.get("induce", False, bool):
        if cp is None:
            raise ConfigParse("'induce' needs a source given by case parameters")
        U = [lsp.eigenspace(i) for i in range(lsp.d + 1)]
        Us = [lsp.dual_eigenspace(i) for i in range(lsp.d + 1)]
        induced = forms.induce_descendent(ls, U, Us, form.standard_matrix, rho, cp)
        same = all(induced.eigenspace(i) == U[i] and induced.dual_eigenspace(i) == Us[i]
                   for i in range(lsp.d + 1))
        rep.check("induced subspaces", same)
        dims = forms.intersection_dimensions(ls, lsp.d, rho)
        rep.check("window intersections are lines", all(x == 1 for x in dims), f"dims {dims}")
    return rep


def _form_chain(job: Job, chain: list, rep: Report) -> Report:
    rhos = job.require("rhos", list)
    if len(chain) < 2 or len(rhos) != len(chain) - 1:
        raise ConfigParse("'chain' needs at least two systems and one rho per step")
    if not all(isinstance(r, int) for r in rhos):
        raise ConfigParse("'rhos' must be integers")
    systems = [from_parameter_array(job.array(n)) for n in chain]
    composite = None
    for (a, b), r in zip(zip(systems, systems[1:]), rhos):
        step = forms.build_balanced_form(a, b, r)
        composite = step if composite is None else forms.compose(composite, step)
    rep.data["B"] = _matrix(composite.B.rows)
    rep.witnesses["endpoint"] = composite.rho
    rep.check("endpoint additivity", composite.rho == sum(rhos), f"{composite.rho} = {'+'.join(map(str, rhos))}")
    _form_checks(rep, composite)
    return rep


def cmd_ortho(job: Job) -> Report:
    rep = Report("ortho")
    kraw = job.get("krawtchouk", kind=dict)
    if kraw is not None:
        try:
            d, dp, rho = int(kraw["d"]), int(kraw["d_prime"]), int(kraw.get("rho", 0))
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigParse("'krawtchouk' needs integer d, d_prime and rho") from exc
        if not (1 <= dp <= d and 0 <= rho <= d - dp):
            raise EndpointOutOfRange(f"need 1 <= d' <= d and 0 <= rho <= d-d', got {(d, dp, rho)}")
        p = job.scalar(kraw.get("p"))
        table = askey.krawtchouk_table(d, dp, rho, p)
        rep.data["krawtchouk"] = _matrix(table)
        _window_verdict(rep, table, d, dp)
        return rep
    ls, lsp, rho, _ = _resolve_pair(job)
    pa, pa_prime = extract_parameter_array(ls), extract_parameter_array(lsp)
    table = askey.orthogonality_table(pa, pa_prime, rho)
    rep.witnesses["rho"] = rho
    rep.data["sums"] = _matrix(table)
    _window_verdict(rep, table, pa.d, pa_prime.d)
    return rep


def _window_verdict(rep: Report, table, d: int, dp: int) -> None:
    bad = [(i, j) for i in range(d + 1) for j in range(dp + 1)
           if not askey.in_window(i, j, d, dp) and table[i][j]]
    rep.check("zero outside window", not bad, "" if not bad else f"nonzero at {bad}")
    rep.data["window"] = [["*" if askey.in_window(i, j, d, dp) else "." for j in range(dp + 1)]
                          for i in range(d + 1)]
    inside_zero = [(i, j) for i in range(d + 1) for j in range(dp + 1)
                   if askey.in_window(i, j, d, dp) and not table[i][j]]
    rep.data["zeros_inside_window"] = inside_zero


COMMANDS = {"validate": cmd_validate, "descend": cmd_descend, "form": cmd_form, "ortho": cmd_ortho}


def run(command: str, config_path: str) -> Report:
    rep = Report(command)
    try:
        job = load_config(config_path)
        rep = COMMANDS[command](job)
    except USAGE_ERRORS as exc:
        rep.error = f"{type(exc).__name__}: {exc}"
        rep.exit_code = EXIT_USAGE
    except LeonardError as exc:
        rep.error = f"{type(exc).__name__}: {exc}"
        rep.exit_code = EXIT_FAIL
    return rep.finish()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lk", description="Exact computations with Leonard systems and their descendents.")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "validate": "check the parameter-array conditions (and optionally the axioms) of one system",
        "descend": "test or enumerate descendents",
        "form": "build and check a balanced bilinear form, or compose a chain",
        "ortho": "tabulate orthogonality sums or the Krawtchouk identity",
    }
    for name, text in helps.items():
        p = sub.add_parser(name, help=text)
        p.add_argument("--config", required=True, help="path to the JSON config")
        p.add_argument("--json", action="store_true", help="emit the report as JSON")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    rep = run(args.command, args.config)
    if args.json:
        print(json.dumps(rep.as_dict(), indent=2, ensure_ascii=False))
    else:
        print(rep.render())
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
