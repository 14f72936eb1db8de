"""Command-line entry point: ``nilquot <subcommand> ...``.

Exit status: 0 success, 1 other errors, 2 parse errors, 3 budget or cap
exceeded, 70 internal inconsistency.  ``--json`` prints one JSON document
with sorted keys.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import replace
from typing import Sequence

from . import basic, hydra, lcs, magnus
from .errors import (BudgetExceededError, CapExceededError, InternalInconsistencyError,
                     NilquotError, ParseError)
from .fixtures import fixture_description, fixture_names, fixture_text, load_fixture
from .nq import Budget, NilpotentPresentation, nilpotent_quotient
from .presentation import Presentation, load_presentation, parse_relator
from .words import Alphabet, hall_witt, parse_word

EXIT_OK, EXIT_ERROR, EXIT_PARSE, EXIT_BUDGET, EXIT_INTERNAL = 0, 1, 2, 3, 70


class UsageError(ParseError):
    pass


# -- argument helpers ----------------------------------------------------------

def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {n}")
    return n


def _class_list(text: str) -> list[int]:
    try:
        out = [_positive(s.strip()) for s in text.split(",") if s.strip()]
    except argparse.ArgumentTypeError:
        raise argparse.ArgumentTypeError(f"bad class list: {text!r}") from None
    if not out:
        raise argparse.ArgumentTypeError("empty class list")
    return out


def _alphabet_arg(text: str) -> Alphabet:
    """``"2"`` means ``x1, x2``; otherwise comma-separated names."""
    text = text.strip()
    if text.isdigit():
        q = int(text)
        if q < 1:
            raise UsageError("need at least one generator")
        return Alphabet(f"x{i}" for i in range(1, q + 1))
    names = [s.strip() for s in text.split(",") if s.strip()]
    try:
        return Alphabet(names)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _add_pres_args(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("presentation (choose one)")
    g.add_argument("--pres", help="presentation file")
    g.add_argument("--fixture", help="name of a shipped presentation")
    g.add_argument("--gens", help="inline generators, e.g. 'a,t'")
    g.add_argument("--rel", action="append", default=[], help="inline relator (repeatable)")


def _add_budget_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-class", type=_positive, help="class budget (env NILQUOT_MAX_CLASS)")
    p.add_argument("--max-gens", type=_positive, help="pc generator budget (env NILQUOT_MAX_GENS)")
    p.add_argument("--max-bits", type=_positive, help="integer size budget (env NILQUOT_MAX_BITS)")


def _budget(args) -> Budget:
    b = Budget.from_env()
    for field in ("max_class", "max_gens", "max_bits"):
        v = getattr(args, field, None)
        if v is not None:
            b = replace(b, **{field: v})
    if min(b.max_class, b.max_gens, b.max_bits) < 1:
        raise UsageError("budgets must be positive")
    return b


def _presentation(args) -> Presentation:
    chosen = [x for x in (args.pres, args.fixture, args.gens) if x]
    if len(chosen) != 1:
        raise UsageError("give exactly one of --pres, --fixture, --gens")
    if args.rel and not args.gens:
        raise UsageError("--rel needs --gens")
    if args.pres:
        try:
            return load_presentation(args.pres)
        except OSError as exc:
            raise UsageError(f"cannot read {args.pres}: {exc.strerror}") from None
    if args.fixture:
        try:
            return load_fixture(args.fixture)
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
    alphabet = _alphabet_arg(args.gens)
    return Presentation(alphabet, [parse_relator(r, alphabet) for r in args.rel])


def _order_value(o):
    return "infinite" if o is lcs.INFINITE else o


# -- subcommands ---------------------------------------------------------------

def _nq_report(np: NilpotentPresentation) -> dict:
    gens = [{"index": g + 1, "label": np.generator_label(g), "weight": np.weights[g],
             "relative_order": np.orders[g] or "infinite"} for g in range(np.ngens)]
    powers = [{"generator": g + 1, "exponent": np.orders[g],
               "value": [[h + 1, x] for h, x in np.powers[g]]}
              for g in range(np.ngens) if np.orders[g]]
    return {
        "class": np.nilpotency_class,
        "ngens": np.ngens,
        "generators": gens,
        "powers": powers,
        "factors": [_factor_dict(f) for f in lcs.factor_table(np)],
    }


def _factor_dict(f: lcs.AbelianFactorStructure) -> dict:
    return {"weight": f.weight, "free_rank": f.free_rank, "torsion": list(f.torsion),
            "pc_gens": f.pc_gens}


def cmd_nq(args):
    np = nilpotent_quotient(_presentation(args), args.class_, _budget(args))
    report = _nq_report(np)
    lines = [f"class {np.nilpotency_class} quotient: {np.ngens} pc generators"]
    for g in report["generators"]:
        lines.append(f"  a{g['index']:<4} weight {g['weight']:<3} order {g['relative_order']!s:<9} {g['label']}")
    for f in lcs.factor_table(np):
        lines.append(f"  L{f.weight} = {f}")
    return report, "\n".join(lines)


def cmd_order(args):
    pres = _presentation(args)
    w = pres.word(args.word)
    np = nilpotent_quotient(pres, args.class_, _budget(args))
    order = lcs.element_order(np, w)
    image = list(np.image(w))
    report = {"class": args.class_, "word": str(w), "image": image, "order": _order_value(order)}
    return report, f"order of {args.word} in class {args.class_} quotient: {_order_value(order)}"


def cmd_lcs(args):
    np = nilpotent_quotient(_presentation(args), args.class_, _budget(args))
    table = lcs.factor_table(np)
    report = {"class": args.class_, "factors": [_factor_dict(f) for f in table]}
    return report, "\n".join(f"L{f.weight}: {f}" for f in table)


def cmd_probe(args):
    pres = _presentation(args)
    rep = lcs.torsion_probe(pres, pres.word(args.word), args.classes, _budget(args))
    lines = [f"class {c}: order {_order_value(o)}" for c, o in rep.orders]
    lines += [f"class {c}: error {e}" for c, e in rep.errors]
    lines.append(f"power of 2 at every sampled class: {'yes' if rep.power_of_two else 'no'}")
    return rep.to_dict(), "\n".join(lines)


def cmd_verify(args):
    pres = _presentation(args)
    ok = lcs.verify_identity(pres, args.class_, pres.word(args.lhs), pres.word(args.rhs), _budget(args))
    report = {"class": args.class_, "lhs": args.lhs, "rhs": args.rhs, "holds": ok}
    return report, f"{'holds' if ok else 'fails'} in the class {args.class_} quotient"


def cmd_labute(args):
    if args.pres or args.fixture or args.gens:
        alphabet = _presentation(args).alphabet
    else:
        alphabet = Alphabet(("a", "t"))
    w = parse_word(args.word, alphabet)
    r = magnus.labute_hypothesis(w, args.cap)
    report = {"word": args.word, "weight": r.weight, "primitive": r.primitive, "gcd": r.gcd}
    return report, f"weight {r.weight}, gcd {r.gcd}, primitive: {'yes' if r.primitive else 'no'}"


def cmd_basic(args):
    alphabet = _alphabet_arg(args.gens)
    seq = basic.basic_sequence(alphabet, args.max_weight)
    items = [{"index": b.index, "weight": b.weight, "label": b.label(alphabet)} for b in seq]
    counts = {}
    for b in seq:
        counts[b.weight] = counts.get(b.weight, 0) + 1
    report = {"gens": list(alphabet.names), "max_weight": args.max_weight, "count": len(seq),
              "counts_by_weight": {str(k): v for k, v in sorted(counts.items())},
              "commutators": items}
    text = "\n".join(f"{b['index']:>5}  w{b['weight']}  {b['label']}" for b in items)
    return report, text


def cmd_witt(args):
    q = len(_alphabet_arg(args.gens))
    n = basic.witt_number(q, args.n)
    return {"gens": q, "n": args.n, "witt_number": n}, str(n)


def cmd_hydra_nf(args):
    w = parse_word(args.word, hydra.AT)
    nf = hydra.hydra_normal_form(args.k, w)
    report = nf.to_dict()
    report["trivial"] = nf.is_identity()
    return report, str(nf)


def cmd_hydra_rewrite(args):
    if args.k < 2:
        raise UsageError("--k must be at least 2")
    w = hydra.rewrite_in_c(args.k, args.l)
    report = {"k": args.k, "l": args.l, "word": str(w), "letters": [[g + 1, s] for g, s in w.letters]}
    return report, str(w)


def cmd_hall_witt(args):
    if args.pres or args.fixture or args.gens:
        pres = _presentation(args)
    else:
        pres = Presentation(Alphabet(("a", "t")))
    alphabet = pres.alphabet
    triples = []
    if args.A or args.B or args.C:
        if not (args.A and args.B and args.C):
            raise UsageError("give all of --A, --B, --C")
        triples.append(tuple(parse_word(x, alphabet) for x in (args.A, args.B, args.C)))
    rng = random.Random(args.seed)
    for _ in range(args.random):
        triples.append(tuple(_random_word(rng, alphabet, args.max_len) for _ in range(3)))
    if not triples:
        raise UsageError("give --A/--B/--C or --random N")
    free_ok = all(hall_witt(*t).is_identity() for t in triples)
    report = {"triples": len(triples), "free_reduction_empty": free_ok}
    text = f"{len(triples)} triple(s): free reduction {'empty' if free_ok else 'NOT empty'}"
    if args.class_:
        np = nilpotent_quotient(pres, args.class_, _budget(args))
        q_ok = all(not any(np.image(hall_witt(*t))) for t in triples)
        report.update({"class": args.class_, "trivial_in_quotient": q_ok})
        text += f"; trivial in class {args.class_} quotient: {'yes' if q_ok else 'no'}"
    return report, text


def _random_word(rng: random.Random, alphabet: Alphabet, max_len: int):
    from .words import Word
    n = rng.randint(0, max_len)
    return Word(alphabet, [(rng.randrange(len(alphabet)), rng.choice((1, -1))) for _ in range(n)])


def cmd_fixtures(args):
    if args.show:
        try:
            text = fixture_text(args.show)
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
        return {"name": args.show, "text": text}, text.rstrip("\n")
    names = fixture_names()
    report = {"fixtures": [{"name": n, "description": fixture_description(n)} for n in names]}
    return report, "\n".join(f"{n:<20} {fixture_description(n)}" for n in names)


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nilquot", description="Nilpotent quotients and lower central series.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, func, help, pres=False, cls=False, budget=False):
        p = sub.add_parser(name, help=help, description=help)
        p.set_defaults(func=func)
        p.add_argument("--json", action="store_true", help="print a JSON document")
        if pres:
            _add_pres_args(p)
        if cls:
            p.add_argument("--class", dest="class_", type=_positive, required=True, help="nilpotency class")
        if budget:
            _add_budget_args(p)
        return p

    add("nq", cmd_nq, "compute the class-c nilpotent quotient", True, True, True)
    p = add("order", cmd_order, "order of a word in the class-c quotient", True, True, True)
    p.add_argument("--word", required=True)
    add("lcs", cmd_lcs, "lower central factors of the class-c quotient", True, True, True)
    p = add("probe", cmd_probe, "orders of a word across several classes", True, False, True)
    p.add_argument("--word", required=True)
    p.add_argument("--classes", type=_class_list, required=True, help="e.g. 5,6,7")
    p = add("verify", cmd_verify, "check lhs = rhs in the class-c quotient", True, True, True)
    p.add_argument("--lhs", required=True)
    p.add_argument("--rhs", required=True)
    p = add("labute", cmd_labute, "leading Lie element of a word and its gcd", True)
    p.add_argument("--word", required=True)
    p.add_argument("--cap", type=_positive, default=12, help="Magnus degree cap (default 12)")
    p = add("basic", cmd_basic, "list basic commutators")
    p.add_argument("--gens", required=True, help="number of generators or names")
    p.add_argument("--max-weight", type=_positive, required=True)
    p = add("witt", cmd_witt, "rank of a free Lie ring layer")
    p.add_argument("--gens", required=True, help="number of generators or names")
    p.add_argument("--n", type=_positive, required=True)
    p = add("hydra-nf", cmd_hydra_nf, "normal form h t^n in the hydra group G(k)")
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--word", required=True)
    p = add("hydra-rewrite", cmd_hydra_rewrite, "first-family relator in the c-generators")
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--l", type=_positive, required=True)
    p = add("hall-witt-check", cmd_hall_witt, "check the Hall-Witt identity", True, False, True)
    p.add_argument("--A")
    p.add_argument("--B")
    p.add_argument("--C")
    p.add_argument("--random", type=int, default=0, help="number of random triples")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-len", type=int, default=6)
    p.add_argument("--class", dest="class_", type=_positive, help="also check in this quotient")
    p = add("fixtures", cmd_fixtures, "list shipped presentations")
    p.add_argument("--show", metavar="NAME", help="print one presentation")
    return parser


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        report, text = args.func(args)
    except ParseError as exc:
        return _fail(err, EXIT_PARSE, "parse error", exc)
    except (BudgetExceededError, CapExceededError) as exc:
        return _fail(err, EXIT_BUDGET, "budget exceeded", exc)
    except InternalInconsistencyError as exc:
        return _fail(err, EXIT_INTERNAL, "internal error", exc)
    except (NilquotError, ValueError) as exc:
        return _fail(err, EXIT_ERROR, "error", exc)
    if args.json:
        out.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    else:
        out.write(text + "\n")
    return EXIT_OK


def _fail(err, code: int, kind: str, exc: Exception) -> int:
    err.write(f"nilquot: {kind}: {exc}\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
