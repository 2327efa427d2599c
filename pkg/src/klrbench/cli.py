"""Command-line front end: config parsing, command dispatch, reports.

Config files are line oriented::

    [graph]
    vertices = 1 2
    edge 1 2

    [weight lam]
    coroot 1 = 1
    coroot 2 = 1

    [task mul]
    command = klr-mul
    expr = psi(1)*psi(1)*e(1 1)

Usage::

    klrbench run CONFIG [--task NAME ...] [--jobs N]
    klrbench COMMAND [--config CONFIG] [VALUE] [key=value ...]

Each report is a short human-readable table followed by a JSON block with
sorted keys.  Exit status is 0 when every report is a value or a pass, 1 if
any check fails and 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .laurent import format_fraction, parse_fraction
from .rootdata import RootDatum, Weight, build_root_datum

__all__ = [
    "COMMANDS",
    "ConfigError",
    "Report",
    "Task",
    "WorkbenchConfig",
    "main",
    "parse_config",
    "run_command",
]

DEFAULT_DEG_CUTOFF = 8


def deg_cutoff() -> int:
    return int(os.environ.get("KLRBENCH_DEG_CUTOFF", DEFAULT_DEG_CUTOFF))


def jobs_default() -> int:
    return int(os.environ.get("KLRBENCH_JOBS", 1))


class ConfigError(ValueError):
    def __init__(self, lineno: int | None, msg: str):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {msg}" if lineno else msg)


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class CommandSpec:
    required: tuple = ()
    optional: tuple = ()
    positional: str | None = None
    dominant: bool = False   # the "weight" parameter must be dominant
    operations: tuple = ()   # library operations the command reaches


COMMANDS = {
    "klr-mul": CommandSpec(("expr",), ("right",), "expr", operations=("evaluate_expression", "multiply", "degree")),
    "klr-dim": CommandSpec(("from", "to"), ("max_degree",), operations=("graded_dim_hom",)),
    "klr-check": CommandSpec(("strands",), ("poly_degree", "words"), operations=("check_relations", "act_element")),
    "cyclotomic": CommandSpec(("weight", "nu"), ("cap", "tables"), dominant=True,
                              operations=("cyclotomic_quotient", "shapovalov_cyclotomic_dim",
                                          "check_relations_matrices")),
    "bubble-solve": CommandSpec(("vertex", "weight", "max_degree"), ("cw", "ccw"),
                                operations=("solve_fake_bubbles", "bubble_convolution")),
    "certify": CommandSpec((), ("weight", "fixture", "perturb_seed"),
                           operations=("certify", "ground_truth_action", "parse_candidate", "perturb")),
    "uq-build": CommandSpec(("weight", "depth"), (), dominant=True,
                            operations=("build_module", "freudenthal_multiplicity")),
    "uq-verify": CommandSpec(("weight", "depth"), (), dominant=True,
                             operations=("build_module", "verify_uq_relations")),
    "quiver-dims": CommandSpec(("weight", "v"), (), dominant=True,
                               operations=("quiver_space_dims", "mu_from_dimvec", "cartan_pairing")),
    "period": CommandSpec(("weight", "v"), (), dominant=True,
                          operations=("period_class", "mu_from_dimvec", "cartan_pairing")),
    "twist-check": CommandSpec(("vertex", "a", "b"), (), operations=("twist_integrality", "twist_coordinates")),
    "nakajima-nonempty": CommandSpec(("weight", "v"), ("vertex",), dominant=True,
                                     operations=("nakajima_nonempty", "nakajima_string")),
    "degree": CommandSpec(("bottom", "weight", "layers"), ("top",),
                          operations=("diagram_degree", "one_mor_weight")),
}


# --- config -----------------------------------------------------------------

@dataclass
class Task:
    name: str
    command: str
    params: dict
    line: int = 0


@dataclass
class WorkbenchConfig:
    datum: RootDatum
    weights: dict = field(default_factory=dict)
    tasks: list = field(default_factory=list)
    base_dir: str = "."


def _split_kv(lineno: int, text: str) -> tuple[str, str]:
    key, eq, value = text.partition("=")
    if not eq:
        raise ConfigError(lineno, f"expected 'key = value', found {text!r}")
    key, value = key.strip(), value.strip()
    if not key:
        raise ConfigError(lineno, "missing key before '='")
    return key, value


def parse_config(text: str, base_dir: str = ".") -> WorkbenchConfig:
    """Parse and validate a workbench config; errors carry the line number."""
    section = None
    vertices: list | None = None
    edges: list[tuple[int, str, str]] = []
    weight_lines: dict[str, list] = {}
    weight_decl: dict[str, int] = {}
    tasks: list[tuple[str, int, dict]] = []
    seen_graph = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ConfigError(lineno, f"unterminated section header {line!r}")
            head = line[1:-1].split()
            if head == ["graph"]:
                if seen_graph:
                    raise ConfigError(lineno, "duplicate [graph] section")
                seen_graph = True
                section = ("graph",)
            elif len(head) == 2 and head[0] == "weight":
                if head[1] in weight_decl:
                    raise ConfigError(lineno, f"weight {head[1]} declared twice")
                weight_decl[head[1]] = lineno
                weight_lines[head[1]] = []
                section = ("weight", head[1])
            elif len(head) == 2 and head[0] == "task":
                if any(t[0] == head[1] for t in tasks):
                    raise ConfigError(lineno, f"task {head[1]} declared twice")
                tasks.append((head[1], lineno, {}))
                section = ("task", head[1])
            else:
                raise ConfigError(lineno, f"unknown section {line!r}; expected [graph], [weight NAME] or [task NAME]")
            continue
        if section is None:
            raise ConfigError(lineno, "content before the first section header")
        if section[0] == "graph":
            if line.startswith("vertices"):
                _, value = _split_kv(lineno, line)
                vertices = value.split()
                if not vertices:
                    raise ConfigError(lineno, "no vertices declared")
                if len(set(vertices)) != len(vertices):
                    raise ConfigError(lineno, "repeated vertex name")
            elif line.split()[0] == "edge":
                parts = line.split()
                if len(parts) != 3:
                    raise ConfigError(lineno, "expected 'edge i j'")
                edges.append((lineno, parts[1], parts[2]))
            else:
                raise ConfigError(lineno, f"unknown key in [graph]: {line.split()[0]!r}")
        elif section[0] == "weight":
            parts = line.split()
            if parts[0] != "coroot":
                raise ConfigError(lineno, f"unknown key in [weight {section[1]}]: {parts[0]!r}")
            key, value = _split_kv(lineno, line[len("coroot"):])
            weight_lines[section[1]].append((lineno, key, value))
        else:
            key, value = _split_kv(lineno, line)
            params = tasks[-1][2]
            if key in params:
                raise ConfigError(lineno, f"key {key!r} repeated")
            params[key] = (lineno, value)
    if vertices is None:
        raise ConfigError(None, "missing [graph] section with a 'vertices' line")
    for lineno, a, b in edges:
        for v in (a, b):
            if v not in vertices:
                raise ConfigError(lineno, f"edge references undeclared vertex {v}")
        if a == b:
            raise ConfigError(lineno, f"edge {a} {b} is a loop; the graph must have no loops")
    verts = [int(v) if v.lstrip("-").isdigit() else v for v in vertices]
    lookup = dict(zip(vertices, verts))
    d = build_root_datum(verts, [(lookup[a], lookup[b]) for _, a, b in edges])
    weights = {}
    for name, entries in weight_lines.items():
        coords = [0] * d.rank
        seen = set()
        for lineno, key, value in entries:
            if key not in lookup:
                raise ConfigError(lineno, f"coroot of undeclared vertex {key}")
            if key in seen:
                raise ConfigError(lineno, f"coroot {key} given twice")
            seen.add(key)
            try:
                coords[d.index[lookup[key]]] = int(value)
            except ValueError:
                raise ConfigError(lineno, f"coroot value {value!r} is not an integer") from None
        weights[name] = Weight(tuple(coords))
    cfg = WorkbenchConfig(d, weights, [], base_dir)
    for name, lineno, params in tasks:
        if "command" not in params:
            raise ConfigError(lineno, f"task {name} has no 'command'")
        cline, command = params.pop("command")
        if command not in COMMANDS:
            raise ConfigError(cline, f"unknown command {command!r}")
        spec = COMMANDS[command]
        for key, (kline, _) in params.items():
            if key not in spec.required and key not in spec.optional:
                raise ConfigError(kline, f"unknown key {key!r} for {command}")
        for key in spec.required:
            if key not in params:
                raise ConfigError(lineno, f"task {name} ({command}) is missing {key!r}")
        if "weight" in params:
            kline, wtext = params["weight"]
            try:
                w = resolve_weight(cfg, wtext)
            except UsageError as exc:
                raise ConfigError(kline, str(exc)) from None
            if spec.dominant and not w.is_dominant():
                raise ConfigError(kline, f"weight {wtext} = {w} is not dominant; {command} needs a dominant weight")
        for key in ("vertex",):
            if key in params:
                kline, v = params[key]
                if v not in lookup:
                    raise ConfigError(kline, f"undeclared vertex {v}")
        cfg.tasks.append(Task(name, command, {k: v for k, (_, v) in params.items()}, lineno))
    return cfg


def resolve_weight(cfg: WorkbenchConfig, text: str) -> Weight:
    """A named weight from the config, or inline coroot values ``a,b,...``."""
    text = text.strip()
    if text in cfg.weights:
        return cfg.weights[text]
    try:
        coords = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"unknown weight {text!r}") from None
    if len(coords) != cfg.datum.rank:
        raise UsageError(f"weight {text!r} needs {cfg.datum.rank} coroot values")
    return Weight(coords)


# --- reports ----------------------------------------------------------------

@dataclass
class Report:
    command: str
    params: dict
    status: str                       # "value", "pass", "fail" or "error"
    payload: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)
    task: str | None = None

    def as_json(self) -> dict:
        out = {"command": self.command, "params": dict(self.params), "status": self.status,
               "payload": self.payload, "witnesses": list(self.witnesses)}
        if self.task is not None:
            out["task"] = self.task
        return out

    def render(self) -> str:
        title = f"{self.command}" + (f" [{self.task}]" if self.task else "")
        lines = [f"== {title} ==", f"status: {self.status}"]
        for k in sorted(self.params):
            lines.append(f"  {k} = {self.params[k]}")
        for k in sorted(self.payload):
            v = self.payload[k]
            if isinstance(v, list) and v and isinstance(v[0], dict):
                lines.append(k)
                lines.extend(f"  - {_human(x)}" for x in v)
            else:
                lines.append(f"{k:<24} {_human(v)}")
        for w in self.witnesses:
            lines.append(f"witness: {w}")
        lines.append("--- json ---")
        lines.append(json.dumps(self.as_json(), sort_keys=True, indent=2))
        return "\n".join(lines) + "\n"


def _human(v, nested: bool = False) -> str:
    if isinstance(v, dict):
        body = ", ".join(f"{k}: {_human(x, True)}" for k, x in sorted(v.items()))
        return "{" + body + "}" if nested else body
    if isinstance(v, list):
        return "[" + ", ".join(_human(x, True) for x in v) + "]"
    return str(v)


def _fr(x) -> str:
    return format_fraction(Fraction(x))


def _weight_str(w: Weight) -> str:
    return ",".join(str(a) for a in w.coords)


# --- parameter parsing ------------------------------------------------------

def _word(d: RootDatum, text: str) -> tuple:
    try:
        return tuple(d.vertex(v) for v in text.split())
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None


def _ints(d: RootDatum, text: str, what: str) -> tuple[int, ...]:
    try:
        vals = tuple(int(x) for x in text.replace(",", " ").split())
    except ValueError:
        raise UsageError(f"{what} must be integers, got {text!r}") from None
    if len(vals) != d.rank:
        raise UsageError(f"{what} needs {d.rank} entries, got {len(vals)}")
    return vals


def _int(params: dict, key: str, default=None) -> int:
    if key not in params:
        if default is None:
            raise UsageError(f"missing parameter {key!r}")
        return default
    try:
        return int(params[key])
    except ValueError:
        raise UsageError(f"{key} must be an integer, got {params[key]!r}") from None


def _pairs(text: str, what: str) -> list[tuple[str, Fraction]]:
    """``k=v k=v`` pairs with rational values."""
    out = []
    for item in text.split():
        k, eq, v = item.partition("=")
        if not eq:
            raise UsageError(f"{what}: expected key=value, got {item!r}")
        try:
            out.append((k, parse_fraction(v)))
        except ValueError as exc:
            raise UsageError(f"{what}: {exc}") from None
    return out


def _layers(d: RootDatum, text: str) -> tuple:
    out = []
    for k, item in enumerate(filter(None, (s.strip() for s in text.split(";"))), start=1):
        parts = item.split()
        try:
            if parts[0] in ("dot", "cross", "cap") and len(parts) == 2:
                out.append((parts[0], int(parts[1])))
            elif parts[0] == "cup" and len(parts) == 4:
                out.append(("cup", int(parts[1]), parts[2], d.vertex(parts[3])))
            else:
                raise ValueError
        except KeyError as exc:
            raise UsageError(f"layer {k}: {exc.args[0]}") from None
        except (ValueError, IndexError):
            raise UsageError(f"layer {k}: expected 'dot p', 'cross p', 'cap p' or 'cup p E|F color', got {item!r}") from None
    return tuple(out)


def _strands(d: RootDatum, text: str) -> tuple:
    out = []
    for s in text.split():
        if s[0] not in "EF" or len(s) < 2:
            raise UsageError(f"strand {s!r} should look like E1 or F2")
        try:
            out.append((s[0], d.vertex(s[1:])))
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from None
    return tuple(out)


# --- commands ---------------------------------------------------------------

def _cmd_klr_mul(cfg, p):
    from .klr import algebra_for, degree, evaluate_expression, multiply
    from .klr.algebra import format_basis

    d = cfg.datum
    x = evaluate_expression(d, p["expr"])
    if "right" in p:
        x = multiply(d, x, evaluate_expression(d, p["right"]))
    terms = [{"coefficient": _fr(c), "term": format_basis(b), "degree": degree(d, b)} for b, c in x.sorted_terms()]
    return "value", {"result": algebra_for(d).fmt(x), "terms": terms}, []


def _cmd_klr_dim(cfg, p):
    from .klr import graded_dim_hom

    d = cfg.datum
    top = _int(p, "max_degree", deg_cutoff())
    g = graded_dim_hom(d, _word(d, p["from"]), _word(d, p["to"]), top)
    return "value", {"graded_dim": str(g), "max_degree": top}, []


def _cmd_klr_check(cfg, p):
    from .klr import check_relations

    d = cfg.datum
    n = _int(p, "strands")
    words = [_word(d, w) for w in p["words"].split(";")] if "words" in p else None
    if words and any(len(w) != n for w in words):
        raise UsageError(f"every word must have {n} letters")
    r = check_relations(d, n, words=words, poly_degree=_int(p, "poly_degree", 3))
    fams = {k: v for k, v in sorted(r.by_family.items())}
    wit = list(r.failures)
    return ("pass" if r.passed else "fail"), {"checked": r.checked, "families": fams}, wit


def _cmd_cyclotomic(cfg, p):
    from .klr import check_relations_matrices, cyclotomic_quotient
    from .uqrep import shapovalov_cyclotomic_dim

    d = cfg.datum
    lam = resolve_weight(cfg, p["weight"])
    nu = _ints(d, p["nu"], "nu")
    cap = _int(p, "cap", deg_cutoff())
    C = cyclotomic_quotient(d, lam, nu, cap)
    oracle = shapovalov_cyclotomic_dim(d, lam, nu)
    payload = {"dimension": C.dimension, "graded_dim": str(C.graded_dim), "stabilized": C.stabilized,
               "shapovalov_graded_dim": str(oracle), "cap": cap}
    wit = []
    ok = C.graded_dim == oracle and C.stabilized
    if not C.stabilized:
        wit.append(f"ideal not certified stable below degree cap {cap}")
    if C.graded_dim != oracle:
        wit.append(f"graded dimension {C.graded_dim} differs from the Shapovalov value {oracle}")
    if p.get("tables", "no") == "yes" and C.dimension:
        r = check_relations_matrices(d, C.n, C.operator_tables(), C.words)
        payload["tables_checked"] = r.checked
        if not r.passed:
            ok = False
            wit.append(f"operator tables: {r.first_failure}")
    return ("pass" if ok else "fail"), payload, wit


def _cmd_bubble_solve(cfg, p):
    from .ucat import BubbleError, bubble_convolution, solve_fake_bubbles

    d = cfg.datum
    i = d.vertex(p["vertex"])
    lam = resolve_weight(cfg, p["weight"])
    given = {}
    for side in ("cw", "ccw"):
        given[side] = {}
        for k, v in _pairs(p.get(side, ""), side):
            try:
                given[side][int(k)] = v
            except ValueError:
                raise UsageError(f"{side}: dot count {k!r} is not an integer") from None
    top = _int(p, "max_degree")
    try:
        s = solve_fake_bubbles(d, i, lam, given, top)
    except BubbleError as exc:
        return "fail", {}, [str(exc)]
    # keyed by total dot count j; the identity asks for 1 at j = -2 and 0 above
    conv = {str(j): _fr(bubble_convolution(s, j)) for j in range(-2, top // 2 - 1)}
    return "value", {
        "m": s.m,
        "cw": {str(k): _fr(v) for k, v in sorted(s.cw.items())},
        "ccw": {str(k): _fr(v) for k, v in sorted(s.ccw.items())},
        "convolution_by_dots": conv,
    }, []


def _cmd_certify(cfg, p):
    import random

    from .ucat.certify import certify, ground_truth_action, perturb
    from .ucat.fixture import parse_candidate

    d = cfg.datum
    if ("weight" in p) == ("fixture" in p):
        raise UsageError("certify needs exactly one of 'weight' (ground truth) or 'fixture'")
    if "fixture" in p:
        path = Path(cfg.base_dir) / p["fixture"]
        c = parse_candidate(d, path.read_text())
    else:
        lam = resolve_weight(cfg, p["weight"])
        if not lam.is_dominant():
            raise UsageError(f"weight {p['weight']} is not dominant")
        c = ground_truth_action(d, lam)
    payload = {}
    if "perturb_seed" in p:
        c, desc = perturb(c, random.Random(_int(p, "perturb_seed")))
        payload["perturbation"] = desc
    r = certify(d, c)
    payload["conditions"] = dict(sorted(r.conditions.items()))
    payload["cyclicity"] = r.cyclicity
    wit = [f"({k}) {w}" for k in sorted(r.witnesses) for w in r.witnesses[k]]
    return ("pass" if r.passed else "fail"), payload, wit


def _cmd_uq_build(cfg, p):
    from .uqrep import build_module, freudenthal_multiplicity

    d = cfg.datum
    lam = resolve_weight(cfg, p["weight"])
    M = build_module(d, lam, _int(p, "depth"))
    dims = {}
    wit = []
    for beta in sorted(M.basis):
        key = ",".join(map(str, beta))
        dims[key] = len(M.basis[beta])
        f = freudenthal_multiplicity(d, lam, beta)
        if f != dims[key]:
            wit.append(f"depth {key}: {dims[key]} basis vectors, Freudenthal gives {f}")
    payload = {"dims_by_depth": dims, "complete": M.complete, "total": sum(dims.values()),
               "weights": {",".join(map(str, b)): _weight_str(M.weight(b)) for b in sorted(M.basis)}}
    return ("fail" if wit else "value"), payload, wit


def _cmd_uq_verify(cfg, p):
    from .uqrep import build_module, verify_uq_relations

    d = cfg.datum
    lam = resolve_weight(cfg, p["weight"])
    M = build_module(d, lam, _int(p, "depth"))
    r = verify_uq_relations(d, M)
    payload = {"checked": dict(sorted(r.checked.items())), "classical_limit": r.classical,
               "truncated": r.truncated}
    return ("pass" if r.passed else "fail"), payload, list(r.failures)


def _quiver_weight(cfg, p) -> dict:
    """mu = lambda - sum v_i alpha_i and its coroot pairings."""
    from .rootdata import cartan_pairing, mu_from_dimvec

    d = cfg.datum
    mu = mu_from_dimvec(d, resolve_weight(cfg, p["weight"]), _ints(d, p["v"], "v"))
    return {"mu": _weight_str(mu), "mu_pairings": {str(i): cartan_pairing(d, mu, i) for i in d.vertices}}


def _cmd_quiver_dims(cfg, p):
    from .uqrep import quiver_space_dims

    d = cfg.datum
    q = quiver_space_dims(d, resolve_weight(cfg, p["weight"]), _ints(d, p["v"], "v"))
    return "value", {"dim_E": q.dim_E, "dim_G": q.dim_G, "expected_dim": q.expected_dim,
                     "period": {str(k): _fr(v) for k, v in q.period.items()}, **_quiver_weight(cfg, p)}, []


def _cmd_period(cfg, p):
    from .uqrep import period_class

    d = cfg.datum
    coeffs, integral, indep = period_class(d, resolve_weight(cfg, p["weight"]), _ints(d, p["v"], "v"))
    return "value", {"coefficients": {str(k): _fr(v) for k, v in coeffs.items()},
                     "integral": integral, "orientation_independent_mod_Z": indep, **_quiver_weight(cfg, p)}, []


def _cmd_twist_check(cfg, p):
    from .uqrep import twist_coordinates, twist_integrality

    d = cfg.datum
    tables = {}
    for side in ("a", "b"):
        t = {v: Fraction(0) for v in d.vertices}
        for k, x in _pairs(p[side], side):
            try:
                t[d.vertex(k)] = x
            except KeyError as exc:
                raise UsageError(str(exc.args[0])) from None
        tables[side] = t
    i = d.vertex(p["vertex"])
    ok = twist_integrality(tables["a"], tables["b"], i)
    coords = twist_coordinates(tables["a"], tables["b"], i)
    shown = {(f"{k[0]}'" if isinstance(k, tuple) else str(k)): _fr(v) for k, v in coords.items()}
    return "value", {"integral": ok, "coordinates": shown}, []


def _cmd_nakajima(cfg, p):
    from .uqrep import nakajima_nonempty, nakajima_string

    d = cfg.datum
    lam = resolve_weight(cfg, p["weight"])
    v = _ints(d, p["v"], "v")
    payload = {"nonempty": nakajima_nonempty(d, lam, v)}
    status = "value"
    wit = []
    if "vertex" in p:
        ks, finite = nakajima_string(d, lam, v, p["vertex"])
        payload["string"] = ks
        payload["string_finite"] = finite
        if not finite:
            status = "fail"
            wit.append(f"{p['vertex']}-string through v={v} not certified finite")
    return status, payload, wit


def _cmd_degree(cfg, p):
    from .ucat import StringDiagram, diagram_degree, one_mor_weight

    d = cfg.datum
    bottom = _strands(d, p["bottom"])
    top = _strands(d, p["top"]) if "top" in p else None
    s = StringDiagram(bottom, resolve_weight(cfg, p["weight"]), _layers(d, p["layers"]), top)
    deg = diagram_degree(d, s)
    seqs = s.interfaces()
    wt = {str(k): v for k, v in sorted(one_mor_weight(seqs[-1]).items(), key=lambda kv: str(kv[0]))}
    return "value", {"degree": deg, "top": " ".join(f"{a}{i}" for a, i in seqs[-1]),
                     "top_weight_change": wt}, []


_HANDLERS = {
    "klr-mul": _cmd_klr_mul,
    "klr-dim": _cmd_klr_dim,
    "klr-check": _cmd_klr_check,
    "cyclotomic": _cmd_cyclotomic,
    "bubble-solve": _cmd_bubble_solve,
    "certify": _cmd_certify,
    "uq-build": _cmd_uq_build,
    "uq-verify": _cmd_uq_verify,
    "quiver-dims": _cmd_quiver_dims,
    "period": _cmd_period,
    "twist-check": _cmd_twist_check,
    "nakajima-nonempty": _cmd_nakajima,
    "degree": _cmd_degree,
}


def run_command(cfg: WorkbenchConfig, command: str, args: dict) -> Report:
    """Run one command.  Input problems become an "error" report; an unknown
    command raises UsageError."""
    if command not in COMMANDS:
        raise UsageError(f"unknown command {command!r}; choose from {', '.join(sorted(COMMANDS))}")
    spec = COMMANDS[command]
    for key in args:
        if key not in spec.required and key not in spec.optional:
            return Report(command, dict(args), "error", {}, [f"unknown parameter {key!r}"])
    missing = [k for k in spec.required if k not in args]
    if missing:
        return Report(command, dict(args), "error", {}, [f"missing parameter {missing[0]!r}"])
    try:
        status, payload, wit = _HANDLERS[command](cfg, dict(args))
    except (UsageError, ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        return Report(command, dict(args), "error", {}, [str(msg)])
    return Report(command, dict(args), status, payload, wit)


# --- entry point ------------------------------------------------------------

def _run_task(cfg: WorkbenchConfig, task: Task) -> Report:
    r = run_command(cfg, task.command, task.params)
    r.task = task.name
    return r


def _exit_code(reports: Sequence[Report]) -> int:
    if any(r.status == "error" for r in reports):
        return 2
    if any(r.status == "fail" for r in reports):
        return 1
    return 0


def _default_config() -> WorkbenchConfig:
    return WorkbenchConfig(build_root_datum([1]))


def _load(path: str) -> WorkbenchConfig:
    p = Path(path)
    return parse_config(p.read_text(), str(p.parent))


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = argparse.ArgumentParser(prog="klrbench", description="KLR / categorified quantum group workbench")
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run every task in a config file")
    run.add_argument("config")
    run.add_argument("--task", action="append", help="run only the named task (repeatable)")
    run.add_argument("--jobs", type=int, default=None, help="worker processes (default KLRBENCH_JOBS or 1)")
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--config", help="config file supplying the graph and named weights")
        sp.add_argument("params", nargs="*", help="key=value parameters")
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        if ns.command == "run":
            cfg = _load(ns.config)
            tasks = cfg.tasks
            if ns.task:
                names = {t.name for t in tasks}
                for t in ns.task:
                    if t not in names:
                        raise UsageError(f"no task named {t!r}")
                tasks = [t for t in tasks if t.name in ns.task]
            jobs = ns.jobs if ns.jobs is not None else jobs_default()
            if jobs > 1 and len(tasks) > 1:
                with ProcessPoolExecutor(max_workers=jobs) as ex:
                    reports = list(ex.map(_run_task, [cfg] * len(tasks), tasks))
            else:
                reports = [_run_task(cfg, t) for t in tasks]
        else:
            cfg = _load(ns.config) if ns.config else _default_config()
            spec = COMMANDS[ns.command]
            params = {}
            for item in ns.params:
                key, eq, value = item.partition("=")
                if eq and key.isidentifier():
                    params[key] = value
                elif spec.positional and spec.positional not in params:
                    params[spec.positional] = item
                else:
                    raise UsageError(f"expected key=value, got {item!r}")
            reports = [run_command(cfg, ns.command, params)]
    except (ConfigError, UsageError, OSError) as exc:
        print(f"klrbench: error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write("\n".join(r.render() for r in reports))
    return _exit_code(reports)


if __name__ == "__main__":
    sys.exit(main())
