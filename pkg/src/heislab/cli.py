"""The ``heislab`` command-line front end.

Exit codes: 0 = holds/success, 1 = violated/counterexample (witness printed),
2 = inconclusive/bound exhausted, 3 = usage or config error.

The environment variable HEISLAB_MAX_BOUND caps all search bounds
(default 6).  All output is deterministic for identical inputs.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys

from . import formula, nilform, reprs
from .formula import (
    CounterExample,
    FormulaError,
    NoneWithinBound,
    Witness,
    builtin,
    classify,
    parse as parse_formula,
    parse_term,
    print_formula,
    refute_universal,
    witness_existential,
)
from .reprs import ConfigError, Representation, Verdict
from .rings import RingParseError, parse_elem
from .ut3 import UT3Elem


class UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# Fixtures

FIXTURES = {
    # the representation over Z x Z whose C(a1) contains a zero-divisor entry
    "zxz-lame": """\
ring: Z x Z
full_center: false
generators: {
  b: {e12: 0, e13: 0, e23: (1,0)}
}
""",
    # the same group presented over the domain Z[theta]
    "ztheta-lame": """\
ring: Z[theta]
full_center: false
generators: {
  b: {e12: 0, e13: 0, e23: theta}
}
""",
    # full slices of UT3(Z x Z): tau (and NZCT) fail here
    "tau-fails-zxz": """\
ring: Z x Z
full_center: false
generators: {
  Y: {e12: (1,0), e13: 0, e23: 0},
  X: {e12: 0, e13: 0, e23: (0,1)}
}
""",
    # the integer Heisenberg group itself
    "heisenberg": """\
ring: Z
full_center: false
generators: {}
""",
}


def fixture(name: str) -> Representation:
    if name not in FIXTURES:
        raise UsageError(f"unknown example {name!r} (have: {', '.join(sorted(FIXTURES))})")
    return reprs.parse_config(FIXTURES[name])


# ---------------------------------------------------------------------------
# Helpers


def _max_bound() -> int:
    raw = os.environ.get("HEISLAB_MAX_BOUND", "6")
    try:
        cap = int(raw)
    except ValueError:
        raise UsageError(f"HEISLAB_MAX_BOUND must be an integer, got {raw!r}")
    if cap < 1:
        raise UsageError("HEISLAB_MAX_BOUND must be >= 1")
    return cap


def _bound(args, default: int) -> int:
    cap = _max_bound()
    b = args.bound if getattr(args, "bound", None) is not None else default
    if b < 1:
        raise UsageError("--bound must be >= 1")
    return min(b, cap)


def _load_rep(args) -> Representation:
    if getattr(args, "rep", None):
        try:
            with open(args.rep) as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {args.rep}: {exc}")
        return reprs.parse_config(text)
    if getattr(args, "example", None):
        return fixture(args.example)
    return reprs.heisenberg()


def _parse_z(rep: Representation, literal: str) -> UT3Elem:
    """A central element given by its (1,3) entry literal."""
    from .rings import RingElem

    z13 = parse_elem(rep.ring, literal)
    zero = RingElem.zero(rep.ring)
    return UT3Elem(rep.ring, zero, z13, zero)


_STATUS_EXIT = {"holds": 0, "violated": 1, "inconclusive": 2}


def _emit_verdict(name: str, v: Verdict, json_mode: bool) -> int:
    if json_mode:
        print(json.dumps({"check": name, **v.to_dict()}, indent=2, sort_keys=True))
    else:
        bound = "none" if v.bound is None else str(v.bound)
        print(f"{v.status} method={v.method} bound={bound}")
        if v.witness is not None:
            print("witness:")
            w = v.witness.to_dict() if hasattr(v.witness, "to_dict") else {"value": str(v.witness)}
            for key, value in w.items():
                print(f"  {key}: {value}")
    return _STATUS_EXIT[v.status]


def _resolve_formula(spec: str):
    """A builtin name, a file path, or inline formula text."""
    if os.path.exists(spec):
        with open(spec) as fh:
            spec = fh.read().strip()
    try:
        return builtin(spec)
    except FormulaError:
        pass
    return parse_formula(spec)


def _search_verdict(kind: str, result, json_mode: bool) -> int:
    """Report a bounded-search outcome (refutation or witness search)."""
    if isinstance(result, CounterExample):
        v = Verdict(
            "violated",
            "bounded_search",
            witness=_AssignmentWitness(result.words),
            bound=result.bound,
        )
        return _emit_verdict(kind, v, json_mode)
    if isinstance(result, Witness):
        if json_mode:
            print(
                json.dumps(
                    {
                        "check": kind,
                        "status": "holds",
                        "method": "bounded_search",
                        "bound": result.bound,
                        "witness": dict(sorted(result.words.items())),
                    },
                    indent=2,
                    sort_keys=True,
                )
            )
        else:
            print(f"holds method=bounded_search bound={result.bound}")
            print("witness:")
            for var, word in sorted(result.words.items()):
                print(f"  {var}: {word}")
        return 0
    assert isinstance(result, NoneWithinBound)
    v = Verdict("inconclusive", "bounded_search", bound=result.bound)
    return _emit_verdict(kind, v, json_mode)


class _AssignmentWitness:
    def __init__(self, words: dict):
        self.words = dict(sorted(words.items()))

    def to_dict(self):
        return self.words

    def __str__(self):
        return ", ".join(f"{v}={w}" for v, w in self.words.items())


# ---------------------------------------------------------------------------
# Subcommand handlers

_EXACT_BUILTINS = {"NZCT", "tau", "sigma"}


def cmd_check(args) -> int:
    rep = _load_rep(args)
    name = args.formula.strip()
    if name == "NZCT":
        return _emit_verdict("NZCT", reprs.nzct_check(rep, _bound(args, 2)), args.json)
    if name == "tau":
        return _emit_verdict("tau", reprs.tau_check(rep), args.json)
    if name == "sigma":
        return _emit_verdict("sigma", reprs.sigma_check(rep), args.json)
    f = _resolve_formula(args.formula)
    cls = classify(f)
    env = rep.env()
    bound = _bound(args, 2)
    if cls in ("universal", "quasi_identity", "identity"):
        return _search_verdict(cls, refute_universal(f, env, bound), args.json)
    if cls in ("existential", "primitive"):
        return _search_verdict(cls, witness_existential(f, env, bound), args.json)
    raise UsageError(f"no checker for sentences of class {cls!r}")


def cmd_refute(args) -> int:
    rep = _load_rep(args)
    f = _resolve_formula(args.formula)
    return _search_verdict(
        "refute", refute_universal(f, rep.env(), _bound(args, 2)), args.json
    )


def cmd_witness(args) -> int:
    rep = _load_rep(args)
    f = _resolve_formula(args.formula)
    return _search_verdict(
        "witness", witness_existential(f, rep.env(), _bound(args, 2)), args.json
    )


def cmd_lame(args) -> int:
    return _emit_verdict("lame", reprs.lame_check(_load_rep(args)), args.json)


def cmd_tau(args) -> int:
    return _emit_verdict("tau", reprs.tau_check(_load_rep(args)), args.json)


def cmd_sigma(args) -> int:
    return _emit_verdict("sigma", reprs.sigma_check(_load_rep(args)), args.json)


def cmd_nzct(args) -> int:
    rep = _load_rep(args)
    return _emit_verdict("NZCT", reprs.nzct_check(rep, _bound(args, 2)), args.json)


def _cmd_solve(args, solver, system: str) -> int:
    rep = _load_rep(args)
    z = _parse_z(rep, args.z)
    sol = solver(rep, z)
    if args.json:
        out = {"system": system, "z13": str(z.u13)}
        out["solvable"] = sol is not None
        if sol is not None:
            out["solution"] = sol.to_dict()
        print(json.dumps(out, indent=2, sort_keys=True))
    else:
        if sol is None:
            print(f"unsolvable system={system} z13={z.u13}")
        else:
            print(f"solvable system={system} z13={z.u13}")
            print(f"  element: {sol.element}")
            names = [n for n, _ in rep.generators]
            word = "*".join(
                f"{n}^{c}" for n, c in zip(names, sol.coefficients) if c
            )
            print(f"  word: {word or '1'}")
    return 0 if sol is not None else 1


def cmd_solve_s(args) -> int:
    return _cmd_solve(args, reprs.solve_S, "S")


def cmd_solve_t(args) -> int:
    return _cmd_solve(args, reprs.solve_T, "T")


def cmd_crank(args) -> int:
    rank = reprs.c_rank(_load_rep(args))
    if args.json:
        print(json.dumps({"c_rank": rank}))
    else:
        print(rank)
    return 0


def cmd_extend(args) -> int:
    i = 1 if args.at == "a1" else 2
    new = reprs.extend_centralizer(_load_rep(args), i, args.name)
    sys.stdout.write(reprs.serialize_config(new))
    return 0


def cmd_adjoin_y(args) -> int:
    rep = _load_rep(args)
    new = reprs.adjoin_Y(rep, _parse_z(rep, args.z))
    sys.stdout.write(reprs.serialize_config(new))
    return 0


def cmd_adjoin_center(args) -> int:
    sys.stdout.write(reprs.serialize_config(reprs.adjoin_center(_load_rep(args))))
    return 0


def cmd_appropriate(args) -> int:
    rep = _load_rep(args)
    if args.degree < 1:
        raise UsageError("--degree must be >= 1")
    result = reprs.appropriateness_check(rep, args.degree)
    if args.json:
        print(json.dumps(result.to_dict(), indent=2, sort_keys=True))
    else:
        print(f"{result.status} degree_bound={result.degree_bound}")
        if result.witness is not None:
            print(f"  unreached: {result.witness}")
    return {"confirmed": 0, "refuted": 1, "inconclusive": 2}[result.status]


_GEN_NAME_RE = re.compile(r"a(\d+)")


def _read_targets(path: str) -> list[str]:
    try:
        with open(path) as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}")
    out = [ln.split("#", 1)[0].strip() for ln in lines]
    return [ln for ln in out if ln]


def cmd_discriminate(args) -> int:
    lines = _read_targets(args.targets)
    if not lines:
        raise UsageError("targets file is empty")
    terms = [parse_term(ln) for ln in lines]
    n = 2
    for t in terms:
        for v in formula.free_vars(t) | {
            c for c in _const_names(t)
        }:
            m = _GEN_NAME_RE.fullmatch(v)
            if not m:
                raise UsageError(f"unknown generator {v!r} (expect a1, a2, a3, ...)")
            n = max(n, int(m.group(1)))
    env = formula.GroupEnv(
        nilform.identity(n),
        {"a1": nilform.generator(n, 1), "a2": nilform.generator(n, 2)},
        [(f"a{k}", nilform.generator(n, k)) for k in range(1, n + 1)],
    )
    assignment = {f"a{k}": nilform.generator(n, k) for k in range(3, n + 1)}
    targets = [formula.eval_term(t, env, assignment) for t in terms]
    for ln, t in zip(lines, targets):
        if t.is_identity():
            raise UsageError(f"target {ln!r} is the identity")
    try:
        cert = nilform.discriminate_to_H(targets, cap=_max_bound())
    except nilform.DiscriminationBoundExceeded as exc:
        print(f"inconclusive method=bounded_search bound={exc.cap}")
        return 2
    if args.json:
        print(
            json.dumps(
                {
                    "status": "holds",
                    "extra_images": [list(e) for e in cert.extra_images],
                    "target_images": [str(g) for g in cert.target_images],
                },
                indent=2,
                sort_keys=True,
            )
        )
    else:
        print("holds method=bounded_search")
        c = "[a2,a1]"
        for k, (p, q, r) in enumerate(cert.extra_images, start=3):
            print(f"  a{k} -> a1^{p}*a2^{q}*{c}^{r}")
        for ln, img in zip(lines, cert.target_images):
            print(f"  {ln} -> {img}")
    return 0


def _const_names(t):
    if isinstance(t, formula.Const):
        return {t.name}
    if isinstance(t, (formula.TMul, formula.TComm)):
        return _const_names(t.left) | _const_names(t.right)
    if isinstance(t, formula.TPow):
        return _const_names(t.base)
    return set()


def cmd_bigpowers(args) -> int:
    rep = _load_rep(args)
    lines = _read_targets(args.targets)
    if not lines:
        raise UsageError("targets file is empty")
    env = rep.env()
    targets = [formula.eval_term(parse_term(ln), env, {}) for ln in lines]
    i = 1 if args.at == "a1" else 2
    try:
        cert = reprs.big_powers_retraction(rep, targets, i, args.name)
    except ValueError as exc:
        raise UsageError(str(exc))
    if args.json:
        print(json.dumps(cert.to_dict(), indent=2, sort_keys=True))
    else:
        print(f"n={cert.n} indeterminate={cert.indeterminate}")
        for ln, img in zip(lines, cert.retracted_targets):
            print(f"  {ln} -> {img}")
    return 0


_EXAMPLE_CHECKS = {
    "zxz-lame": ("lame",),
    "ztheta-lame": ("lame",),
    "tau-fails-zxz": ("tau",),
    "heisenberg": ("lame", "tau", "sigma", "NZCT"),
}


def cmd_example(args) -> int:
    name = args.name
    rep = fixture(name)
    code = 0
    if not args.json:
        sys.stdout.write(FIXTURES[name])
        print()
    results = []
    for check in _EXAMPLE_CHECKS[name]:
        if check == "lame":
            v = reprs.lame_check(rep)
        elif check == "tau":
            v = reprs.tau_check(rep)
        elif check == "sigma":
            v = reprs.sigma_check(rep)
        else:
            v = reprs.nzct_check(rep, _bound(args, 2))
        results.append((check, v))
        code = max(code, _STATUS_EXIT[v.status])
    if args.json:
        print(
            json.dumps(
                {
                    "example": name,
                    "config": FIXTURES[name],
                    "checks": {c: v.to_dict() for c, v in results},
                },
                indent=2,
                sort_keys=True,
            )
        )
    else:
        for check, v in results:
            label = {
                "lame": "Lame property",
                "tau": "tau",
                "sigma": "sigma",
                "NZCT": "NZCT",
            }[check]
            print(f"{check}: {label} {v.status} (method={v.method})")
            if v.witness is not None:
                w = v.witness.to_dict() if hasattr(v.witness, "to_dict") else {"value": str(v.witness)}
                for key, value in w.items():
                    print(f"  {key}: {value}")
    return code


def cmd_parse(args) -> int:
    spec = args.formula
    if os.path.exists(spec):
        with open(spec) as fh:
            spec = fh.read().strip()
    f = parse_formula(spec)
    canonical = print_formula(f)
    fv = sorted(formula.free_vars(f))
    cls = classify(f) if not fv else "open"
    if args.json:
        print(
            json.dumps(
                {"canonical": canonical, "class": cls, "free_variables": fv},
                indent=2,
                sort_keys=True,
            )
        )
    else:
        print(canonical)
        print(f"class: {cls}")
        if fv:
            print(f"free variables: {', '.join(fv)}")
    return 0


# ---------------------------------------------------------------------------
# Argument parsing


def _add_rep_opts(p):
    p.add_argument("--rep", metavar="FILE", help="representation config file")
    p.add_argument(
        "--example",
        choices=sorted(FIXTURES),
        help="use a named fixture instead of --rep (default: heisenberg)",
    )
    p.add_argument("--json", action="store_true", help="emit JSON")


def _add_bound_opt(p):
    p.add_argument("--bound", type=int, help="search bound (capped by HEISLAB_MAX_BOUND)")


def build_parser() -> argparse.ArgumentParser:
    top = _ArgumentParser(prog="heislab", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="decide a builtin or formula (exact when available)")
    p.add_argument("formula", help="builtin name, formula file, or inline formula")
    _add_rep_opts(p)
    _add_bound_opt(p)
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("refute", help="bounded counterexample search for a universal sentence")
    p.add_argument("formula")
    _add_rep_opts(p)
    _add_bound_opt(p)
    p.set_defaults(fn=cmd_refute)

    p = sub.add_parser("witness", help="bounded witness search for an existential sentence")
    p.add_argument("formula")
    _add_rep_opts(p)
    _add_bound_opt(p)
    p.set_defaults(fn=cmd_witness)

    for name, fn, hlp in (
        ("lame", cmd_lame, "exact centralizer-entry (Lame property) check"),
        ("tau", cmd_tau, "exact tau check"),
        ("sigma", cmd_sigma, "exact sigma check"),
    ):
        p = sub.add_parser(name, help=hlp)
        _add_rep_opts(p)
        p.set_defaults(fn=fn)

    p = sub.add_parser("nzct", help="NZCT check (exact shortcut, else bounded)")
    _add_rep_opts(p)
    _add_bound_opt(p)
    p.set_defaults(fn=cmd_nzct)

    for name, fn in (("solve-s", cmd_solve_s), ("solve-t", cmd_solve_t)):
        p = sub.add_parser(name, help=f"solve the centralizer system {name[-1].upper()}")
        p.add_argument("--z", required=True, metavar="ELT", help="(1,3) entry of the central target")
        _add_rep_opts(p)
        p.set_defaults(fn=fn)

    p = sub.add_parser("crank", help="C-rank of the representation")
    _add_rep_opts(p)
    p.set_defaults(fn=cmd_crank)

    p = sub.add_parser("extend", help="free rank-1 centralizer extension")
    p.add_argument("--at", choices=("a1", "a2"), required=True)
    p.add_argument("--name", default="theta", help="fresh indeterminate name")
    _add_rep_opts(p)
    p.set_defaults(fn=cmd_extend)

    p = sub.add_parser("adjoin-y", help="adjoin Y with [a2,Y]=1 and [Y,a1]=z")
    p.add_argument("--z", required=True, metavar="ELT", help="(1,3) entry of the central target")
    _add_rep_opts(p)
    p.set_defaults(fn=cmd_adjoin_y)

    p = sub.add_parser("adjoin-center", help="mark the full center as adjoined")
    _add_rep_opts(p)
    p.set_defaults(fn=cmd_adjoin_center)

    p = sub.add_parser("appropriate", help="bounded ring-appropriateness check")
    p.add_argument("--degree", type=int, default=2)
    _add_rep_opts(p)
    p.set_defaults(fn=cmd_appropriate)

    p = sub.add_parser(
        "discriminate", help="discriminating retraction of a free 2-nilpotent group"
    )
    p.add_argument("--targets", required=True, metavar="FILE", help="one word per line over a1,a2,a3,...")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_discriminate)

    p = sub.add_parser("bigpowers", help="minimal big-powers retraction exponent")
    p.add_argument("--targets", required=True, metavar="FILE", help="one word per line over the generators")
    p.add_argument("--at", choices=("a1", "a2"), required=True)
    p.add_argument("--name", help="indeterminate to retract (default: last adjoined)")
    _add_rep_opts(p)
    p.set_defaults(fn=cmd_bigpowers)

    p = sub.add_parser("example", help="print a fixture and its verdicts")
    p.add_argument("name", choices=sorted(FIXTURES))
    p.add_argument("--json", action="store_true")
    _add_bound_opt(p)
    p.set_defaults(fn=cmd_example)

    p = sub.add_parser("parse", help="echo the canonical form and class of a formula")
    p.add_argument("formula", help="formula file or inline formula")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_parse)

    return top


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ConfigError, RingParseError, FormulaError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def entry():  # console_scripts hook
    raise SystemExit(main())


if __name__ == "__main__":
    raise SystemExit(main())
