"""Command-line interface: ``paveset <subcommand> ...``.

Every subcommand prints a human-readable report, or with ``--json`` a
canonical JSON object (``schema_version``, sorted keys, rationals as strings).
Exit codes: 0 computed / true, 1 predicate answered false, 2 validation
error, 3 usage error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Callable, Sequence

from . import insertion, suites
from .capacity import (
    caratheodory_algebra,
    caratheodory_restriction,
    count_zero_one,
    enumerate_zero_one,
    inner_extension,
    is_modular,
    outer_extension,
)
from .core import NatFn, PointFn, canonical_key, format_subset, nat_liminf, nat_limsup
from .errors import PavesetError
from .extrat import ExtRat, ext, fmt
from .integral import (
    UNDEFINED,
    choquet,
    choquet_over,
    choquet_signed,
    nat_filter_integral,
    staircase_integral,
)
from .measurable import (
    is_measurable,
    is_measurable_signed,
    nonmeasurability_witness,
    oracle_disagreement,
    staircase_approx,
    t3_partition,
)
from .nat import nat_is_measurable, nat_ultrafilter_limits
from .paving import NatPavingKind, Paving, atoms, nat_semicompact
from .sampling import default_seed
from .serialize import (
    SCHEMA_VERSION,
    InstanceDocument,
    ParseError,
    ValidationError,
    dumps,
    emit_instance,
    encode_function,
    encode_subset,
    parse_instance,
    subset_from_labels,
)

log = logging.getLogger("paveset")

EXIT_OK, EXIT_FALSE, EXIT_INVALID, EXIT_USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit with 2
        raise UsageError(message)


class Result:
    """What a handler computed: exit code, JSON payload and text lines."""

    def __init__(self, payload: dict[str, object], lines: list[str], code: int = EXIT_OK) -> None:
        self.payload, self.lines, self.code = payload, lines, code


# -- helpers ------------------------------------------------------------------


def _doc(args) -> InstanceDocument:
    if not args.instance:
        raise UsageError("this subcommand needs -i/--instance")
    return parse_instance(args.instance)


def _finite_paving(doc: InstanceDocument, name: str) -> Paving:
    E = doc.get("pavings", name)
    if not isinstance(E, Paving):
        raise ValidationError(f"paving {name!r} is not finite", "GroundMismatch")
    return E


def _point_fn(doc: InstanceDocument, name: str) -> PointFn:
    f = doc.get("functions", name)
    if not isinstance(f, PointFn):
        raise ValidationError(f"function {name!r} lives on ℕ", "GroundMismatch")
    return f


def _nat_fn(doc: InstanceDocument, name: str) -> NatFn:
    f = doc.get("functions", name)
    if not isinstance(f, NatFn):
        raise ValidationError(f"function {name!r} is not an ℕ function", "GroundMismatch")
    return f


def _subset_arg(doc: InstanceDocument, text: str) -> int:
    tokens = [t for t in text.replace(",", " ").split() if t]
    return subset_from_labels(tokens, doc.n, doc.labels)


def _table(n: int, lookup: Callable[[int], ExtRat]) -> list[list[object]]:
    return [[encode_subset(m), fmt(lookup(m))] for m in sorted(range(1 << n), key=canonical_key)]


def _show(doc: InstanceDocument | None, mask: int) -> str:
    return format_subset(mask, doc.labels if doc else None)


def _table_lines(doc: InstanceDocument | None, n: int, lookup: Callable[[int], ExtRat]) -> list[str]:
    return [f"  {_show(doc, m)}: {fmt(lookup(m))}" for m in sorted(range(1 << n), key=canonical_key)]


def _values(f: PointFn) -> list[str]:
    return [fmt(v) for v in f.values]


def _predicate(flag: bool) -> int:
    return EXIT_OK if flag else EXIT_FALSE


# -- handlers -----------------------------------------------------------------


def cmd_integrate(args) -> Result:
    doc = _doc(args)
    if args.filter:
        f = _nat_fn(doc, args.function)
        value = nat_filter_integral(f, doc.get("filter_capacities", args.filter))
    elif args.staircase:
        _, s = doc.get("staircases", args.staircase)
        value = staircase_integral(s, doc.get("capacities", args.capacity))
    else:
        if not args.capacity or not args.function:
            raise UsageError("integrate needs -f and -a (or -s/-c)")
        f = _point_fn(doc, args.function)
        alpha = doc.get("capacities", args.capacity)
        if args.over is not None:
            value = choquet_over(_subset_arg(doc, args.over), f, alpha)
        elif f.signed:
            value = choquet_signed(f, alpha)
        else:
            value = choquet(f, alpha)
    text = str(value) if value is UNDEFINED else fmt(value)
    return Result({"value": text}, [text])


def cmd_measurable(args) -> Result:
    doc = _doc(args)
    f, E = _point_fn(doc, args.function), _finite_paving(doc, args.paving)
    if f.signed:
        ok = is_measurable_signed(f, E)
        return Result({"measurable": ok, "signed": True}, ["measurable" if ok else "not measurable"], _predicate(ok))
    rep = is_measurable(f, E)
    payload: dict[str, object] = {
        "measurable": rep.measurable,
        "failing_pair": [fmt(v) for v in rep.failing_pair] if rep.failing_pair else None,
        "missing_level": encode_subset(rep.missing_level) if rep.missing_level is not None else None,
    }
    if rep.measurable:
        lines = ["measurable"]
    else:
        a, b = rep.failing_pair
        lines = [
            "not measurable",
            f"failing pair: a = {fmt(a)}, b = {fmt(b)}",
            f"missing level set: {_show(doc, rep.missing_level)}",
        ]
    return Result(payload, lines, _predicate(rep.measurable))


def cmd_oracle(args) -> Result:
    doc = _doc(args)
    f, E = _point_fn(doc, args.function), _finite_paving(doc, args.paving)
    pair = oracle_disagreement(f, E)
    ok = pair is None
    payload: dict[str, object] = {"measurable": ok, "disagreement": None}
    lines = ["measurable (all capacities agreeing on E give equal integrals)" if ok else "not measurable"]
    if pair is not None:
        a, b = pair
        payload["disagreement"] = {
            "alpha": _table(a.n, a.__getitem__),
            "beta": _table(b.n, b.__getitem__),
            "integral_alpha": fmt(choquet(f, a)),
            "integral_beta": fmt(choquet(f, b)),
        }
        lines.append(f"integrals {fmt(choquet(f, a))} vs {fmt(choquet(f, b))} for capacities agreeing on E")
    return Result(payload, lines, _predicate(ok))


def cmd_approx(args) -> Result:
    doc = _doc(args)
    f, E = _point_fn(doc, args.function), _finite_paving(doc, args.paving)
    s = staircase_approx(f, E, args.depth)
    g = s.to_pointfn()
    payload = {
        "depth": args.depth,
        "terms": [[fmt(a), encode_subset(h)] for a, h in s.terms],
        "values": _values(g),
    }
    lines = [f"g_{args.depth} = {g}"] + [f"  {fmt(a)} · φ{_show(doc, h)}" for a, h in s.terms]
    return Result(payload, lines)


def cmd_witness(args) -> Result:
    doc = _doc(args)
    f, E = _point_fn(doc, args.function), _finite_paving(doc, args.paving)
    w = nonmeasurability_witness(f, E)
    n = f.n
    payload = {
        "failing_pair": [fmt(v) for v in w.failing_pair],
        "g": _values(w.g),
        "tau1": _table(n, lambda m: w.tau1[m]),
        "tau2": _table(n, lambda m: w.tau2[m]),
        "alpha": _table(n, w.alpha.__getitem__),
        "beta": _table(n, w.beta.__getitem__),
        "t_gap": fmt(w.t_gap),
        "integral_alpha": fmt(w.integral_alpha),
        "integral_beta": fmt(w.integral_beta),
    }
    lines = [
        f"failing pair: a = {fmt(w.failing_pair[0])}, b = {fmt(w.failing_pair[1])}",
        f"g = {w.g}",
        f"∫g dα = {fmt(w.integral_alpha)} < ∫g dβ = {fmt(w.integral_beta)} (gap at t = {fmt(w.t_gap)})",
        "alpha:",
        *_table_lines(doc, n, w.alpha.__getitem__),
        "beta:",
        *_table_lines(doc, n, w.beta.__getitem__),
    ]
    return Result(payload, lines)


def cmd_extend(args) -> Result:
    doc = _doc(args)
    _, delta = doc.get("partial_capacities", args.delta)
    alpha = outer_extension(delta) if args.outer else inner_extension(delta)
    side = "outer" if args.outer else "inner"
    return Result(
        {"extension": side, "capacity": _table(alpha.n, alpha.__getitem__)},
        [f"{side} extension:", *_table_lines(doc, alpha.n, alpha.__getitem__)],
    )


def cmd_modular(args) -> Result:
    doc = _doc(args)
    _, delta = doc.get("partial_capacities", args.delta)
    ok, pair = is_modular(delta, args.mode)
    payload = {"mode": args.mode, "holds": ok, "pair": [encode_subset(a) for a in pair] if pair else None}
    lines = [f"{args.mode}: holds" if ok else f"{args.mode}: fails at {_show(doc, pair[0])}, {_show(doc, pair[1])}"]
    return Result(payload, lines, _predicate(ok))


def cmd_caratheodory(args) -> Result:
    doc = _doc(args)
    mu = doc.get("set_functions", args.set_function)
    A = caratheodory_algebra(mu)
    delta = caratheodory_restriction(mu)
    payload = {
        "algebra": A.as_lists(),
        "restriction": [[encode_subset(h), fmt(delta[h])] for h in A],
    }
    lines = ["algebra: " + ", ".join(_show(doc, h) for h in A)]
    lines += [f"  μ{_show(doc, h)} = {fmt(delta[h])}" for h in A]
    return Result(payload, lines)


def cmd_atoms(args) -> Result:
    doc = _doc(args)
    part = atoms(_finite_paving(doc, args.paving))
    blocks = list(part)
    return Result(
        {"atoms": [encode_subset(b) for b in blocks]},
        ["atoms: " + ", ".join(_show(doc, b) for b in blocks)],
    )


def cmd_t3_partition(args) -> Result:
    doc = _doc(args)
    f, A = _point_fn(doc, args.function), _finite_paving(doc, args.paving)
    cells = t3_partition(f, A, ext(args.a))
    return Result(
        {"a": fmt(ext(args.a)), "cells": [encode_subset(c) for c in cells]},
        ["cells: " + ", ".join(_show(doc, c) for c in cells)],
    )


def _kind(text: str) -> NatPavingKind:
    try:
        return NatPavingKind(text.replace("-", "_"))
    except ValueError:
        raise UsageError(f"unknown ℕ paving kind {text!r}; use one of {[k.value for k in NatPavingKind]}") from None


def cmd_nat_check(args) -> Result:
    doc = _doc(args)
    f = _nat_fn(doc, args.function)
    kind = _kind(args.nat_paving)
    ok = nat_is_measurable(f, kind)
    limits = nat_ultrafilter_limits(f)
    payload = {
        "paving": kind.value,
        "measurable": ok,
        "liminf": fmt(nat_liminf(f)),
        "limsup": fmt(nat_limsup(f)),
        "frechet_limit": fmt(limits.frechet) if limits.frechet is not None else None,
    }
    lines = [
        f"{'measurable' if ok else 'not measurable'} over {kind.value}",
        f"liminf {fmt(nat_liminf(f))}, limsup {fmt(nat_limsup(f))}",
    ]
    return Result(payload, lines, _predicate(ok))


def cmd_semicompact(args) -> Result:
    kind = _kind(args.nat_paving)
    ok, chain = nat_semicompact(kind)
    payload: dict[str, object] = {"paving": kind.value, "semicompact": ok, "witness": None}
    lines = [f"{kind.value}: {'semi-compact' if ok else 'not semi-compact'}"]
    if chain is not None:
        payload["witness"] = {"rule": "H_k = N minus {0..k}", "first": [str(chain(k)) for k in range(3)]}
        lines.append("witness: H_k = ℕ∖{0..k}, decreasing with empty intersection")
    return Result(payload, lines, _predicate(ok))


def _pair(doc: InstanceDocument, args) -> insertion.PavingPair:
    return insertion.PavingPair(_finite_paving(doc, args.K), _finite_paving(doc, args.U))


def cmd_property_n(args) -> Result:
    doc = _doc(args)
    ok, counter = insertion.has_property_N(_pair(doc, args))
    payload = {"property_N": ok, "counterexample": [encode_subset(s) for s in counter] if counter else None}
    lines = ["property (N) holds" if ok else f"property (N) fails at K = {_show(doc, counter[0])}, U = {_show(doc, counter[1])}"]
    return Result(payload, lines, _predicate(ok))


def _insert_result(doc: InstanceDocument, f: PointFn) -> Result:
    return Result({"f": encode_function(f)}, [f"f = {f}"])


def cmd_insert(args) -> Result:
    doc = _doc(args)
    k, u = _point_fn(doc, args.lower), _point_fn(doc, args.upper)
    return _insert_result(doc, insertion.insert(k, u, _pair(doc, args), args.max_depth))


def cmd_urysohn(args) -> Result:
    doc = _doc(args)
    K0, U0 = _subset_arg(doc, args.k0), _subset_arg(doc, args.u0)
    return _insert_result(doc, insertion.urysohn(K0, U0, _pair(doc, args), args.max_depth))


def cmd_verify(args) -> Result:
    suite = args.suite
    seed = default_seed() if args.seed is None else args.seed
    if suite == "theorem2":
        report = suites.verify_theorem2_nat(args.samples, seed)
    else:
        doc = _doc(args)
        if suite == "prop2":
            report = suites.verify_prop2(_finite_paving(doc, args.paving), args.samples, seed)
        elif suite == "remark1":
            report = suites.verify_remark1(doc.get("partial_capacities", args.delta)[1])
        elif suite == "remark5":
            report = suites.verify_remark5(doc.get("set_functions", args.set_function))
        else:
            report = insertion.verify_theorem45(_pair(doc, args), args.samples, seed)
    payload = {"suite": report.name, "ok": report.ok, "checks": dict(report.checks)}
    if report.seed is not None:
        payload["seed"] = report.seed
    lines = [f"{'pass' if v else 'FAIL'}  {k}" for k, v in report.checks.items()]
    lines.append(f"suite {report.name}: {'ok' if report.ok else 'failed'}")
    return Result(payload, lines, _predicate(report.ok))


def cmd_enumerate(args) -> Result:
    if args.count_only:
        count = count_zero_one(args.n)
        return Result({"n": args.n, "count": count}, [str(count)])
    families = [[encode_subset(s) for s in sorted(c.family, key=canonical_key)] for c in enumerate_zero_one(args.n)]
    lines = ["{" + ", ".join(format_subset(s) for s in sorted(c.family, key=canonical_key)) + "}" for c in enumerate_zero_one(args.n)]
    return Result({"n": args.n, "count": len(families), "families": families}, lines)


def cmd_canonical(args) -> Result:
    doc = _doc(args)
    text = emit_instance(doc)
    return Result({"instance": text}, [text.rstrip("\n")])


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="paveset", description="Integrals and measurability for monotone set functions on paved sets.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def add(name: str, handler, help_text: str, instance: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text, description=help_text)
        if instance:
            p.add_argument("-i", "--instance", help="instance JSON file")
        p.add_argument("--json", action="store_true", help="emit the machine-readable report")
        p.set_defaults(handler=handler)
        return p

    p = add("integrate", cmd_integrate, "layer-cake integral of a function")
    p.add_argument("-f", "--function")
    p.add_argument("-a", "--capacity")
    p.add_argument("-s", "--staircase", help="integrate a staircase instead of a function")
    p.add_argument("-c", "--filter", help="filter capacity on ℕ")
    p.add_argument("--over", help="restrict to a subset, e.g. '0,2'")

    for name, handler, text in (
        ("measurable", cmd_measurable, "level-set measurability report"),
        ("oracle", cmd_oracle, "brute-force check over all {0,1} capacities"),
        ("witness", cmd_witness, "capacities agreeing on E with different integrals"),
    ):
        p = add(name, handler, text)
        p.add_argument("-f", "--function", required=True)
        p.add_argument("-E", "--paving", required=True)

    p = add("approx", cmd_approx, "staircase approximation from below")
    p.add_argument("-f", "--function", required=True)
    p.add_argument("-E", "--paving", required=True)
    p.add_argument("--depth", type=int, required=True)

    p = add("extend", cmd_extend, "inner or outer extension of a partial capacity")
    p.add_argument("-d", "--delta", required=True)
    side = p.add_mutually_exclusive_group(required=True)
    side.add_argument("--inner", action="store_true")
    side.add_argument("--outer", action="store_true")

    p = add("modular", cmd_modular, "modularity of a partial capacity")
    p.add_argument("-d", "--delta", required=True)
    p.add_argument("--mode", choices=("eq", "le", "ge"), default="eq")

    p = add("caratheodory", cmd_caratheodory, "Carathéodory algebra of a set function")
    p.add_argument("-m", "--set-function", required=True)

    p = add("atoms", cmd_atoms, "atoms of a finite algebra")
    p.add_argument("-E", "--paving", required=True)

    p = add("t3-partition", cmd_t3_partition, "partition into cells of small oscillation")
    p.add_argument("-f", "--function", required=True)
    p.add_argument("-E", "-A", "--paving", required=True)
    p.add_argument("--a", required=True, help="positive rational, e.g. 1/2")

    p = add("nat-check", cmd_nat_check, "measurability of an ℕ function")
    p.add_argument("-f", "--function", required=True)
    p.add_argument("--paving", dest="nat_paving", required=True, help="finite_sets | cofinite_plus_empty | finite_or_cofinite")

    p = add("semicompact", cmd_semicompact, "semi-compactness of an ℕ paving", instance=False)
    p.add_argument("--paving", dest="nat_paving", required=True)

    p = add("property-n", cmd_property_n, "property (N) for a pair of pavings")
    p.add_argument("-K", required=True)
    p.add_argument("-U", required=True)

    p = add("insert", cmd_insert, "insert f with k ≤ f ≤ u measurable for both pavings")
    p.add_argument("-k", "--lower", required=True)
    p.add_argument("-u", "--upper", required=True)
    p.add_argument("-K", required=True)
    p.add_argument("-U", required=True)
    p.add_argument("--max-depth", type=int)

    p = add("urysohn", cmd_urysohn, "insert between two indicators")
    p.add_argument("--k0", required=True, help="subset in K, e.g. '0' or '' for ∅")
    p.add_argument("--u0", required=True)
    p.add_argument("-K", required=True)
    p.add_argument("-U", required=True)
    p.add_argument("--max-depth", type=int)

    p = add("verify", cmd_verify, "run a seeded verification suite")
    p.add_argument("--suite", choices=("prop2", "remark1", "remark5", "theorem2", "theorem45"), required=True)
    p.add_argument("-E", "--paving")
    p.add_argument("-d", "--delta")
    p.add_argument("-m", "--set-function")
    p.add_argument("-K")
    p.add_argument("-U")
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, help="defaults to $PAVESET_SEED, then a fixed seed")

    p = add("enumerate-monotone", cmd_enumerate, "list all {0,1}-valued capacities", instance=False)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count-only", action="store_true")

    add("canonical", cmd_canonical, "re-emit an instance in canonical form")
    return parser


def _emit(result: Result, args, command: str) -> None:
    if getattr(args, "json", False):
        if command == "canonical":
            sys.stdout.write(result.payload["instance"])
            return
        payload = {"schema_version": SCHEMA_VERSION, "command": command, **result.payload}
        sys.stdout.write(dumps(payload))
    else:
        for line in result.lines:
            print(line)


def _error(kind: str, exc: Exception, as_json: bool, invariant: str | None = None) -> None:
    if as_json:
        payload = {"schema_version": SCHEMA_VERSION, "error": kind, "message": str(exc)}
        if invariant:
            payload["invariant"] = invariant
        pair = getattr(exc, "details", {}).get("pair")
        if pair is not None:
            payload["pair"] = [encode_subset(a) for a in pair]
        sys.stdout.write(dumps(payload))
    print(f"error: {exc}", file=sys.stderr)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    as_json = "--json" in argv
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "command", None):
            raise UsageError("a subcommand is required")
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        _error("usage", exc, as_json)
        return EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        result = args.handler(args)
    except UsageError as exc:
        _error("usage", exc, as_json)
        return EXIT_USAGE
    except (ParseError, ValidationError, PavesetError) as exc:
        _error("validation", exc, as_json, exc.invariant)
        return EXIT_INVALID
    except OSError as exc:
        _error("validation", exc, as_json, "Unreadable")
        return EXIT_INVALID
    _emit(result, args, args.command)
    return result.code


if __name__ == "__main__":
    raise SystemExit(main())
