"""Command-line front end: ``heaplab check|lattice|rep|weights|classify|verify``.

Exit codes: 0 when the requested checks hold, 1 when one fails (or a cap or
hypothesis refuses the computation), 2 on unreadable or malformed input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .classify import AlgebraKind, build_representation, classify_poset, run_harness
from .errors import CapacityError, HeaplabError, InputError, RefusedError
from .io import load_instance, split_from_json, split_to_json
from .periodic import LegPoset, PeriodicHeap, ball
from .properties import BASIC_PROPERTIES, check_property
from .splits import enumerate_splits
from .weights import format_value, mu_prime_weights, mu_weights

__all__ = ["main", "build_parser"]


def _emit(obj, out=None):
    text = json.dumps(obj, indent=2, default=str)
    print(text, file=out or sys.stdout)


def _is_infinite(P):
    return isinstance(P, (PeriodicHeap, LegPoset))


def _seed_split(P, text):
    if text:
        return split_from_json(P, json.loads(text))
    if isinstance(P, PeriodicHeap):
        return P.level_split(0)
    raise InputError("this input needs --split to choose a seed split")


def cmd_check(args):
    P = load_instance(args.input)
    props = list(args.properties)
    if args.all or not props:
        props = list(BASIC_PROPERTIES) + [f"Mx{args.k}GA", f"Mn{args.k}LA"]
    if isinstance(P, LegPoset):
        raise InputError("property checks take a finite poset or a periodic heap")
    reports = [check_property(P, p, k=None if p[2:3].isdigit() else args.k, window=args.window)
               for p in props]
    if args.format == "text":
        for r in reports:
            line = f"{r.property}: {'holds' if r.holds else 'fails'}"
            if not r.holds:
                line += f"  witness {json.dumps(r.to_json()['witness'])}"
            print(line)
    else:
        _emit([r.to_json() for r in reports])
    return 0 if all(r.holds for r in reports) else 1


def cmd_lattice(args):
    P = load_instance(args.input)
    if _is_infinite(P):
        raise InputError("an infinite poset has no finite split lattice; use 'weights --ball'")
    L = enumerate_splits(P, args.cap)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(L.to_dot())
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(L.to_json(), fh, indent=1)
            fh.write("\n")
    print(f"{len(L)} splits")
    return 0


def cmd_rep(args):
    P = load_instance(args.input)
    kind = AlgebraKind.parse(args.algebra)
    if _is_infinite(P):
        seed = _seed_split(P, args.split)
        rep = build_representation(P, kind, seed=seed, radius=args.ball)
    else:
        rep = build_representation(P, kind, enumerate_splits(P, args.cap))
    if args.format == "json":
        _emit(rep.to_json())
        return 0 if rep.holds else 1
    print(f"algebra {kind.value} on {rep.scope}")
    bad = rep.failures()
    print(f"relations: {len(rep.relations) - len(bad)} of {len(rep.relations)} hold")
    for r in bad:
        print(f"  {r.relation} {','.join(r.colors)} fails; defect {json.dumps(r.to_json()['witness'])}")
    for fam, ok in rep.square_nilpotent.items():
        print(f"{fam}-square nilpotent: {'yes' if ok else 'no'}")
    if rep.minuscule is not None:
        label = {"b_plus_derived": "upper P-minuscule", "b_minus_derived": "lower P-minuscule"}
        name = label.get(kind.value, "eigenvalues in {-1,0,1}")
        print(f"{name}: {'yes' if rep.minuscule.holds else 'no'}")
        if not rep.minuscule.holds:
            print(f"  witness {json.dumps(rep.minuscule.witness, default=str)}")
    if rep.eigenvalues is not None:
        print("eigenvalues: {" + ", ".join(format_value(v) for v in sorted(rep.eigenvalues)) + "}")
    for n in rep.notes:
        print(f"note: {n}")
    if rep.holds:
        print("holds on interior" if _is_infinite(P) else "holds")
    else:
        print("fails")
    return 0 if rep.holds else 1


def cmd_weights(args):
    P = load_instance(args.input)
    eta = mu_prime_weights(P) if args.weight == "mu-prime" else mu_weights(P)
    rows = []
    if _is_infinite(P):
        seed = _seed_split(P, args.split)
        for s in sorted(ball(P, seed, args.ball), key=repr):
            for a in P.graph.colors:
                rows.append({"color": a, "split": split_to_json(P, s),
                             "value": format_value(eta.value(a, s))})
    else:
        L = enumerate_splits(P, args.cap)
        rows = eta.to_rows(L)
    _emit(rows)
    return 0


def cmd_classify(args):
    P = load_instance(args.input)
    if isinstance(P, LegPoset):
        raise InputError("classification takes a finite poset or a periodic heap")
    _emit(classify_poset(P, window=args.window).to_json())
    return 0


def cmd_verify(args):
    try:
        summary = run_harness(args.max_elements, args.max_colors, args.mode, args.seed,
                              args.count, jobs=args.jobs)
    except HeaplabError as exc:
        raise InputError(str(exc)) from None
    _emit(summary)
    bad = (summary["disagreements"] or summary["duality_failures"]
           or summary["nilpotency_guard_exceptions"])
    return 1 if bad else 0


def build_parser():
    p = argparse.ArgumentParser(prog="heaplab", description=__doc__.splitlines()[0])
    p.add_argument("--cap", type=int, default=None,
                   help="split cap for lattice enumeration (default $HEAPLAB_SPLIT_CAP or 1000000)")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="check coloring properties")
    c.add_argument("input")
    c.add_argument("properties", nargs="*", help="e.g. EC NA Mx1GA")
    c.add_argument("--all", action="store_true", help="check all eight properties")
    c.add_argument("--k", type=int, default=1, help="census bound for MxkGA / MnkLA")
    c.add_argument("--window", type=int, default=3, help="heap window in periods")
    c.add_argument("--format", choices=("json", "text"), default="json")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("lattice", help="enumerate the split lattice")
    c.add_argument("input")
    c.add_argument("--dot", help="write the colored Hasse diagram as DOT")
    c.add_argument("--json", help="write the lattice as JSON")
    c.set_defaults(func=cmd_lattice)

    c = sub.add_parser("rep", help="build a representation and verify its relations")
    c.add_argument("input")
    c.add_argument("--algebra", default="g-prime",
                   choices=("g-prime", "b-plus", "b-minus", "n-plus", "n-minus"))
    c.add_argument("--ball", type=int, default=4, help="ball radius for infinite posets")
    c.add_argument("--split", help="seed split as JSON (infinite posets)")
    c.add_argument("--format", choices=("json", "text"), default="text")
    c.set_defaults(func=cmd_rep)

    c = sub.add_parser("weights", help="tabulate the census weight function")
    c.add_argument("input")
    c.add_argument("--weight", choices=("mu", "mu-prime"), default="mu")
    c.add_argument("--ball", type=int, default=2, help="ball radius for infinite posets")
    c.add_argument("--split", help="seed split as JSON (infinite posets)")
    c.set_defaults(func=cmd_weights)

    c = sub.add_parser("classify", help="decide d-complete and minuscule")
    c.add_argument("input")
    c.add_argument("--window", type=int, default=3)
    c.set_defaults(func=cmd_classify)

    c = sub.add_parser("verify", help="run the two-sided equivalence harness")
    c.add_argument("--max-elements", type=int, default=4)
    c.add_argument("--max-colors", type=int, default=2)
    c.add_argument("--mode", choices=("exhaustive", "random"), default="exhaustive")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--count", type=int, default=1000, help="instances in random mode")
    c.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    c.set_defaults(func=cmd_verify)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"heaplab: input error: {exc}", file=sys.stderr)
        return 2
    except (CapacityError, RefusedError) as exc:
        print(f"heaplab: {exc}", file=sys.stderr)
        return 1
    except HeaplabError as exc:
        print(f"heaplab: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
