"""Command-line interface and JSON workspace documents.

Exit codes: 0 success, 1 a check failed, 2 usage, parse or validation error.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any, Iterator

import jsonschema

from .conjugacy import conjugate_by_point, conjugate_by_subset, generated, is_maximal
from .errors import LConjError, ParseError, SchemaError, ValidationError
from .group import FiniteGroup, GroupHom, build_group, build_hom
from .lattice import Lattice, build_lattice
from .lsubset import (
    LPoint,
    LSubset,
    is_l_subgroup,
    is_l_subgroup_of,
    is_normal_in,
    point_membership,
    set_product,
)
from .normality import normalizer_conjugacy, normalizer_setproduct
from .verify import SUITES, reports_to_json, verify_seeds

_PAIR = {"type": "array", "items": {"type": "string"}, "minItems": 2, "maxItems": 2}
_STRINGS = {"type": "array", "items": {"type": "string"}}

GROUP_SCHEMA = {
    "type": "object",
    "required": ["kind"],
    "properties": {
        "kind": {"enum": ["symmetric", "dihedral", "cyclic", "permutation", "table", "quaternion"]},
        "n": {"type": "integer", "minimum": 1},
        "order": {"type": "integer", "minimum": 2},
        "degree": {"type": "integer", "minimum": 1},
        "generators": _STRINGS,
        "cap": {"type": "integer", "minimum": 1},
        "labels": _STRINGS,
        "mul": {"type": "array", "items": {"type": "array"}},
    },
    "additionalProperties": False,
}

_CLAUSE = {
    "type": "object",
    "required": ["value"],
    "properties": {
        "value": {"type": "string"},
        "set": _STRINGS,
        "in": {"oneOf": [{"type": "string"}, _STRINGS]},
        "set_minus": {"type": "array", "items": {"type": "string"}, "minItems": 2},
    },
    "additionalProperties": False,
    "oneOf": [{"required": ["set"]}, {"required": ["in"]}, {"required": ["set_minus"]}],
}

_SETS = {
    "type": "object",
    "additionalProperties": {
        "oneOf": [
            _STRINGS,
            {"type": "object", "required": ["generated_by"], "properties": {"generated_by": _STRINGS},
             "additionalProperties": False},
        ]
    },
}

_LSUBSETS = {
    "type": "object",
    "additionalProperties": {
        "type": "object",
        "properties": {
            "default": {"type": "string"},
            "assign": {"type": "array", "items": _CLAUSE},
            "subgroup_of": {"type": "string"},
            "normal_in": {"type": "string"},
            "l_subgroup": {"type": "boolean"},
        },
        "additionalProperties": False,
    },
}

DOCUMENT_SCHEMA = {
    "type": "object",
    "required": ["lattice", "group"],
    "properties": {
        "lattice": {
            "type": "object",
            "oneOf": [
                {"required": ["chain"], "properties": {"chain": {**_STRINGS, "minItems": 1}},
                 "additionalProperties": False},
                {"required": ["labels"],
                 "properties": {"labels": _STRINGS, "covers": {"type": "array", "items": _PAIR},
                                "leq": {"type": "array", "items": _PAIR}},
                 "additionalProperties": False},
            ],
        },
        "group": GROUP_SCHEMA,
        "sets": _SETS,
        "lsubsets": _LSUBSETS,
        "points": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "required": ["value", "at"],
                "properties": {"value": {"type": "string"}, "at": {"type": "string"}, "in": {"type": "string"}},
                "additionalProperties": False,
            },
        },
        "hom": {
            "type": "object",
            "required": ["target"],
            "properties": {
                "target": GROUP_SCHEMA,
                "map": {"type": "object", "additionalProperties": {"type": "string"}},
                "generator_images": {"type": "object", "additionalProperties": {"type": "string"}},
                "sets": _SETS,
                "lsubsets": _LSUBSETS,
            },
            "additionalProperties": False,
        },
    },
    "additionalProperties": False,
}


@dataclass
class Workspace:
    lattice: Lattice
    group: FiniteGroup
    sets: dict[str, frozenset[int]] = field(default_factory=dict)
    lsubsets: dict[str, LSubset] = field(default_factory=dict)
    points: dict[str, LPoint] = field(default_factory=dict)
    hom: GroupHom | None = None
    target: "Workspace | None" = None
    # (path, description, predicate) triples checked by `validate`
    flagged: list[tuple[str, str, Any]] = field(default_factory=list)

    def subset(self, name: str) -> LSubset:
        try:
            return self.lsubsets[name]
        except KeyError:
            raise ValidationError(f"no L-subset named {name!r}") from None

    def point(self, text: str) -> LPoint:
        """A named point, or the literal ``value@element``."""
        if text in self.points:
            return self.points[text]
        if "@" not in text:
            raise ValidationError(f"point {text!r} is neither named nor of the form value@element")
        value, at = text.split("@", 1)
        return LPoint(self.lattice.index(value.strip()), self.group.index(at.strip().strip('"')))


@contextmanager
def _at(path: str) -> Iterator[None]:
    try:
        yield
    except SchemaError:
        raise
    except LConjError as exc:
        if getattr(exc, "path", None) is None:
            exc.path = path
        raise


def _resolve_operand(token: str, G: FiniteGroup, sets: dict[str, frozenset[int]]) -> frozenset[int]:
    token = token.strip()
    if token in sets:
        return sets[token]
    if token.startswith("{") and token.endswith("}"):
        body = token[1:-1].strip()
        return frozenset(G.index(t) for t in body.split(",") if t.strip()) if body else frozenset()
    return frozenset([G.index(token)])


def _parse_sets(doc: dict, G: FiniteGroup, base: str) -> dict[str, frozenset[int]]:
    sets: dict[str, frozenset[int]] = {}
    for name, body in doc.items():
        with _at(f"{base}/{name}"):
            if isinstance(body, dict):
                sets[name] = G.subgroup_generated(G.index(g) for g in body["generated_by"])
            else:
                sets[name] = frozenset(G.index(x) for x in body)
    return sets


def _parse_lsubsets(doc: dict, ws: Workspace, base: str) -> None:
    G, L = ws.group, ws.lattice
    for name, body in doc.items():
        path = f"{base}/{name}"
        vals: list[int | None] = [None] * G.order
        for i, clause in enumerate(body.get("assign", [])):
            cpath = f"{path}/assign/{i}"
            with _at(cpath):
                value = L.index(clause["value"])
                if "set" in clause:
                    S = frozenset(G.index(x) for x in clause["set"])
                elif "in" in clause:
                    names = [clause["in"]] if isinstance(clause["in"], str) else clause["in"]
                    S = frozenset().union(*(_resolve_operand(n, G, ws.sets) for n in names))
                else:
                    first, *rest = clause["set_minus"]
                    S = _resolve_operand(first, G, ws.sets)
                    for r in rest:
                        S = S - _resolve_operand(r, G, ws.sets)
            clash = sorted(x for x in S if vals[x] is not None)
            if clash:
                raise SchemaError(cpath, f"overlaps an earlier clause at {G.label(clash[0])!r}")
            for x in S:
                vals[x] = value
        if "default" in body:
            with _at(f"{path}/default"):
                d = L.index(body["default"])
            vals = [d if v is None else v for v in vals]
        if None in vals:
            raise SchemaError(path, f"no value for {G.label(vals.index(None))!r} and no default")
        eta = LSubset(G, L, vals)
        ws.lsubsets[name] = eta
        if body.get("l_subgroup"):
            ws.flagged.append((f"{path}/l_subgroup", f"{name} is an L-subgroup", lambda e=eta: is_l_subgroup(e)))
        for key, pred, verb in (("subgroup_of", is_l_subgroup_of, "an L-subgroup of"),
                                ("normal_in", is_normal_in, "normal in")):
            if key in body:
                other = body[key]
                ws.flagged.append((f"{path}/{key}", f"{name} is {verb} {other}",
                                   lambda e=eta, o=other, p=pred: p(e, ws.subset(o))))


def parse_workspace(text: str) -> Workspace:
    """Parse and validate a workspace document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    errors = sorted(jsonschema.Draft202012Validator(DOCUMENT_SCHEMA).iter_errors(doc),
                    key=lambda e: list(map(str, e.absolute_path)))
    if errors:
        err = jsonschema.exceptions.best_match(errors)
        path = "/" + "/".join(str(p) for p in err.absolute_path)
        raise SchemaError(path if err.absolute_path else "", err.message)

    with _at("/lattice"):
        L = build_lattice(doc["lattice"])
    with _at("/group"):
        G = build_group(doc["group"])
    ws = Workspace(L, G)
    ws.sets = _parse_sets(doc.get("sets", {}), G, "/sets")
    _parse_lsubsets(doc.get("lsubsets", {}), ws, "/lsubsets")
    for name, body in doc.get("points", {}).items():
        path = f"/points/{name}"
        with _at(path):
            p = LPoint(L.index(body["value"]), G.index(body["at"]))
        ws.points[name] = p
        if "in" in body:
            amb = body["in"]
            ws.flagged.append((f"{path}/in", f"{name} is a point of {amb}",
                               lambda p=p, a=amb: point_membership(p, ws.subset(a))))
    if "hom" in doc:
        h = doc["hom"]
        with _at("/hom/target"):
            H = build_group(h["target"])
        with _at("/hom"):
            ws.hom = build_hom(G, H, mapping=h.get("map"), generator_images=h.get("generator_images"))
        target = Workspace(L, H)
        target.sets = _parse_sets(h.get("sets", {}), H, "/hom/sets")
        _parse_lsubsets(h.get("lsubsets", {}), target, "/hom/lsubsets")
        ws.flagged.extend(target.flagged)
        ws.target = target
    for path, _, pred in ws.flagged:
        with _at(path):
            pred()  # surfaces unknown names as validation errors
    return ws


def bundled_example(name: str) -> str:
    """Text of a shipped workspace, e.g. ``"d16_normalizer"``."""
    return resources.files("lconj").joinpath("data", f"{name}.json").read_text(encoding="utf-8")


# -- output ------------------------------------------------------------------------

def lsubset_json(eta: LSubset) -> list[list[str]]:
    """``[element, value]`` pairs in element order."""
    return [[eta.group.label(x), eta.lattice.label(v)] for x, v in enumerate(eta.values)]


def lsubset_table(eta: LSubset) -> str:
    """One line per value, values ordered by first occurrence."""
    groups: dict[int, list[int]] = {}
    for x, v in enumerate(eta.values):
        groups.setdefault(v, []).append(x)
    lines = []
    for v, xs in groups.items():
        lines.append(f"{eta.lattice.label(v)}: {{{', '.join(eta.group.label(x) for x in xs)}}}")
    return "\n".join(lines)


def _emit(args, data: Any, table: str) -> None:
    if args.format == "json":
        print(json.dumps(data, sort_keys=True, ensure_ascii=False))
    else:
        print(table)


def _emit_subset(args, name: str, eta: LSubset, **extra: Any) -> None:
    data = {"name": name, "values": lsubset_json(eta), **extra}
    _emit(args, data, lsubset_table(eta))


# -- commands ----------------------------------------------------------------------

def _load(args) -> Workspace:
    if not args.input:
        raise ParseError("--in is required")
    try:
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {args.input}: {exc.strerror}") from None
    return parse_workspace(text)


def cmd_validate(args) -> int:
    ws = _load(args)
    ok_dist, witness = ws.lattice.is_distributive()
    results = []
    for path, desc, pred in ws.flagged:
        results.append({"path": path, "check": desc, "holds": bool(pred())})
    subsets = {name: {"l_subgroup": is_l_subgroup(s), "tip": ws.lattice.label(s.tip()),
                      "tail": ws.lattice.label(s.tail())} for name, s in ws.lsubsets.items()}
    data = {
        "lattice": {"size": len(ws.lattice), "distributive": ok_dist, "chain": ws.lattice.is_chain,
                    "distributivity_witness": list(witness) if witness else None},
        "group": {"name": ws.group.name, "order": ws.group.order},
        "lsubsets": subsets,
        "checks": results,
    }
    lines = [f"lattice: {len(ws.lattice)} elements, "
             + ("distributive" if ok_dist else f"not distributive (witness {', '.join(witness)})"),
             f"group: {ws.group.name} of order {ws.group.order}"]
    for name, info in subsets.items():
        lines.append(f"{name}: {'L-subgroup' if info['l_subgroup'] else 'L-subset'}, "
                     f"tip {info['tip']}, tail {info['tail']}")
    for r in results:
        lines.append(f"{'ok  ' if r['holds'] else 'FAIL'} {r['check']}")
    _emit(args, data, "\n".join(lines))
    return 0 if all(r["holds"] for r in results) else 1


def cmd_eval(args) -> int:
    ws = _load(args)
    eta = ws.subset(args.subject)
    L = ws.lattice
    if args.at is not None:
        v = L.label(eta(ws.group.index(args.at)))
        _emit(args, {"name": args.subject, "element": args.at, "value": v}, v)
        return 0
    _emit_subset(args, args.subject, eta, tip=L.label(eta.tip()), tail=L.label(eta.tail()))
    return 0


def cmd_level(args) -> int:
    ws = _load(args)
    eta = ws.subset(args.subject)
    S = sorted(eta.level_set(ws.lattice.index(args.value)))
    labels = [ws.group.label(x) for x in S]
    _emit(args, {"name": args.subject, "value": args.value, "elements": labels},
          "{" + ", ".join(labels) + "}")
    return 0


def cmd_product(args) -> int:
    ws = _load(args)
    _emit_subset(args, f"{args.left}o{args.right}", set_product(ws.subset(args.left), ws.subset(args.right)))
    return 0


def cmd_conjugate(args) -> int:
    ws = _load(args)
    eta = ws.subset(args.subject)
    if args.by_subset:
        result = conjugate_by_subset(ws.subset(args.by_subset), eta)
    elif args.point:
        amb = ws.subset(args.ambient) if args.ambient else None
        result = conjugate_by_point(eta, ws.point(args.point), amb)
    else:
        raise ValidationError("give --point or --by-subset")
    _emit_subset(args, f"{args.subject}^{args.point or args.by_subset}", result)
    return 0


def cmd_generated(args) -> int:
    ws = _load(args)
    _emit_subset(args, f"<{args.subject}>", generated(ws.subset(args.subject), ws.subset(args.ambient)))
    return 0


def cmd_is_normal(args) -> int:
    ws = _load(args)
    verdict = is_normal_in(ws.subset(args.subject), ws.subset(args.ambient))
    _emit(args, {"subject": args.subject, "ambient": args.ambient, "normal": verdict}, str(verdict).lower())
    return 0


def cmd_normalizer(args) -> int:
    ws = _load(args)
    eta, mu = ws.subset(args.subject), ws.subset(args.ambient)
    if args.method == "setproduct":
        _emit_subset(args, f"N({args.subject})", normalizer_setproduct(eta, mu), method="setproduct")
        return 0
    if args.method == "conjugacy":
        _emit_subset(args, f"N({args.subject})", normalizer_conjugacy(eta, mu), method="conjugacy")
        return 0
    a, b = normalizer_setproduct(eta, mu), normalizer_conjugacy(eta, mu)
    equal = a == b
    if args.format == "json":
        print(json.dumps({"name": f"N({args.subject})", "equal": equal, "setproduct": lsubset_json(a),
                          "conjugacy": lsubset_json(b)}, sort_keys=True, ensure_ascii=False))
    else:
        print(lsubset_table(a))
        print("setproduct == conjugacy" if equal else "MISMATCH:\n" + lsubset_table(b))
    return 0 if equal else 1


def cmd_is_maximal(args) -> int:
    ws = _load(args)
    verdict = is_maximal(ws.subset(args.subject), ws.subset(args.ambient), cap=args.cap)
    _emit(args, {"subject": args.subject, "ambient": args.ambient, "maximal": verdict}, str(verdict).lower())
    return 0


def cmd_verify(args) -> int:
    suites = list(SUITES) if args.suite == "all" else [args.suite]
    bounds = {"max_group_order": args.max_group_order, "max_lattice_size": args.max_lattice_size,
              "lattice_kind": args.lattice_kind}
    seeds = range(args.seed_base, args.seed_base + args.seeds)
    reports = verify_seeds(suites, seeds, bounds, jobs=args.jobs)
    if args.format == "json":
        print(reports_to_json(reports, timing=args.timing))
    else:
        for r in reports:
            tail = f" {r.reason}" if r.reason else ""
            print(f"{r.verdict.upper():4} {r.suite:18} {r.instance}{tail}")
        counts = {v: sum(r.verdict == v for r in reports) for v in ("pass", "fail", "skip")}
        print(f"{counts['pass']} pass, {counts['fail']} fail, {counts['skip']} skip")
    return 1 if any(r.verdict == "fail" for r in reports) else 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--in", dest="input", metavar="FILE", help="workspace document (JSON)")
    common.add_argument("--format", choices=["table", "json"],
                        help="output format (default: json for verify, table otherwise)")

    parser = argparse.ArgumentParser(prog="lconj", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "validate a workspace and its flagged predicates")
    p = add("eval", cmd_eval, "print an L-subset or one of its values")
    p.add_argument("--subject", required=True)
    p.add_argument("--at")
    p = add("level", cmd_level, "print a level subset")
    p.add_argument("--subject", required=True)
    p.add_argument("--value", required=True)
    p = add("product", cmd_product, "set product of two L-subsets")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p = add("conjugate", cmd_conjugate, "conjugate by an L-point or an L-subset")
    p.add_argument("--subject", required=True)
    p.add_argument("--point", help="named point or value@element")
    p.add_argument("--by-subset", dest="by_subset")
    p.add_argument("--ambient", help="require the point to lie in this L-subset")
    p = add("generated", cmd_generated, "L-subgroup generated inside an ambient")
    p.add_argument("--subject", required=True)
    p.add_argument("--ambient", default="mu")
    p = add("is-normal", cmd_is_normal, "normality in an ambient L-subgroup")
    p.add_argument("--subject", required=True)
    p.add_argument("--ambient", default="mu")
    p = add("normalizer", cmd_normalizer, "normalizer of an L-subgroup")
    p.add_argument("--subject", required=True)
    p.add_argument("--ambient", default="mu")
    p.add_argument("--method", choices=["setproduct", "conjugacy", "both"], default="setproduct")
    p = add("is-maximal", cmd_is_maximal, "maximality by exhaustive search")
    p.add_argument("--subject", required=True)
    p.add_argument("--ambient", default="mu")
    p.add_argument("--cap", type=int, default=20_000_000)
    p = add("verify", cmd_verify, "run theorem suites over seeded random instances")
    p.add_argument("--suite", default="all", help="suite id or 'all'")
    p.add_argument("--seeds", type=int, default=10)
    p.add_argument("--seed-base", dest="seed_base", type=int, default=0)
    p.add_argument("--max-group-order", type=int, default=16)
    p.add_argument("--max-lattice-size", type=int, default=8)
    p.add_argument("--lattice-kind", choices=["any", "chain"], default="any")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--timing", action="store_true", help="include per-report timings (not reproducible)")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = "json" if args.command == "verify" else "table"
    try:
        return args.func(args)
    except (ParseError, SchemaError, ValidationError) as exc:
        path = getattr(exc, "path", None)
        prefix = f"{path}: " if path and not isinstance(exc, SchemaError) else ""
        print(f"error: {prefix}{exc}", file=sys.stderr)
        return 2
    except LConjError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
