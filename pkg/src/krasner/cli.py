"""Command line front end.

Exit codes: 0 valid / holds / no violations, 1 refuted / invalid /
violations found, 2 input, precondition or budget errors.
"""
import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import ideals as I
from . import theorems as T
from .analytic import (
    FAILS_ON_SAMPLE,
    AnalyticStructure,
    classify_sampled,
    classify_witness,
    parse_structure,
)
from .classify import CLASSES, FAILS, is_strongly_phi_delta_S_primary
from .constructions import direct_product, localize
from .core import KrasnerError, validate
from .docio import dump_structure, load_structure

FORMAT_VERSION = 1
EXIT_OK, EXIT_REFUTED, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# argument helpers


def resolve_structure(text):
    """A file path, an analytic id such as ``modular(5,25,4,3)``, or the
    name of a bundled corpus member such as ``hyper3`` or ``Z4``."""
    a = parse_structure(text)
    if a is not None:
        return a
    p = Path(text)
    if p.exists():
        return load_structure(p)
    from . import corpus

    for h in corpus.base_members() + corpus.corpus():
        if h.name == text:
            return h
    raise UsageError(f"{text!r} is neither a file nor a known structure")


def names_list(text):
    t = text.strip()
    if t.startswith("{") and t.endswith("}"):
        t = t[1:-1]
    return [x.strip() for x in t.split(",") if x.strip()]


def finite_subset(h, text, what):
    try:
        return h.subset(names_list(text))
    except (KeyError, ValueError) as e:
        raise UsageError(f"bad {what} {text!r}: {e}") from None


def _emit(args, doc):
    text = json.dumps(doc, indent=1, sort_keys=True, ensure_ascii=False) + "\n"
    if args.report:
        Path(args.report).write_text(text, encoding="utf-8")
    if args.json:
        sys.stdout.write(text)


def _say(args, line=""):
    if not args.json:
        print(line)


def _need_finite(h, cmd):
    if isinstance(h, AnalyticStructure):
        raise UsageError(f"{cmd} needs a finite structure, not {h.id}")
    return h


# ---------------------------------------------------------------------------
# commands


def cmd_validate(args):
    h = _need_finite(resolve_structure(args.structure[0]), "validate")
    rep = validate(h)
    _say(args, f"{h.name}: {h.size} elements, ({h.m},{h.n})")
    _say(args, str(rep))
    _emit(args, {
        "format_version": FORMAT_VERSION, "command": "validate", "structure": h.name, "valid": rep.ok,
        "violations": [{"axiom": v.axiom, "witness": [str(x) for x in v.witness], "detail": v.detail}
                       for v in rep.violations],
    })
    return EXIT_OK if rep.ok else EXIT_REFUTED


def _valid(h):
    rep = validate(h)
    if not rep.ok:
        raise UsageError(f"{h.name} is not a Krasner hyperring: {rep.violations[0]}")
    return h


def cmd_ideals(args):
    h = _valid(_need_finite(resolve_structure(args.structure[0]), "ideals"))
    rows = []
    for P in I.enumerate_hyperideals(h):
        m = P.mask
        rows.append({
            "ideal": h.names_of(m),
            "proper": m != h.full,
            "prime": m != h.full and I.is_prime(h, m),
            "maximal": m != h.full and I.is_maximal(h, m),
            "radical": h.names_of(I.radical_mask(h, m)),
        })
    rows.sort(key=lambda r: (len(r["ideal"]), r["ideal"]))
    _say(args, f"{h.name}: {len(rows)} hyperideals")
    for r in rows:
        tags = [t for t in ("prime", "maximal") if r[t]]
        _say(args, f"  {{{', '.join(r['ideal'])}}}  rad = {{{', '.join(r['radical'])}}}  {' '.join(tags)}".rstrip())
    _emit(args, {"format_version": FORMAT_VERSION, "command": "ideals", "structure": h.name, "ideals": rows})
    return EXIT_OK


def cmd_radical(args):
    h = _valid(_need_finite(resolve_structure(args.structure[0]), "radical"))
    P = finite_subset(h, args.ideal, "ideal")
    chk = I.is_hyperideal(h, P)
    if not chk:
        raise UsageError(f"{h.fmt(P)} is not a hyperideal ({chk.clause})")
    by_primes = I.radical_by_primes(h, P).mask
    by_powers = I.radical_by_powers(h, P).mask
    _say(args, f"rad({h.fmt(P)}) = {h.fmt(by_primes)}")
    if by_primes != by_powers:
        _say(args, f"warning: the power characterization gives {h.fmt(by_powers)}")
    _emit(args, {
        "format_version": FORMAT_VERSION, "command": "radical", "structure": h.name, "ideal": h.names_of(P),
        "radical": h.names_of(by_primes), "radical_by_powers": h.names_of(by_powers),
    })
    return EXIT_OK if by_primes == by_powers else EXIT_REFUTED


def _classify_finite(args, h):
    _valid(h)
    P = finite_subset(h, args.ideal, "ideal")
    if not I.is_hyperideal(h, P):
        raise UsageError(f"{h.fmt(P)} is not a hyperideal")
    S = finite_subset(h, args.mulset, "multiplicative set") if args.mulset else 1 << h.one
    s = h.index(args.s) if args.s else None
    kind = args.cls
    if args.strong:
        c = is_strongly_phi_delta_S_primary(h, P, args.phi, args.delta, S, s)
    elif kind == "phi-delta-S":
        c = CLASSES[kind](h, P, args.phi, args.delta, S, s)
    elif kind in ("delta-S",):
        c = CLASSES[kind](h, P, args.delta, S, s)
    elif kind in ("S", "weakly-S"):
        c = CLASSES[kind](h, P, S, s)
    elif kind == "phi-S":
        c = CLASSES[kind](h, P, args.phi, S, s)
    elif kind == "delta":
        c = CLASSES[kind](h, P, args.delta)
    else:
        c = CLASSES[kind](h, P, args.phi, args.delta)
    doc = {
        "format_version": FORMAT_VERSION, "command": "classify", "structure": h.name, "ideal": h.names_of(P),
        "class": "strongly-phi-delta-S" if args.strong else kind, "phi": args.phi, "delta": args.delta,
        "mulset": h.names_of(S), "verdict": c.verdict,
        "witness_s": None if c.witness_s is None else h.names[c.witness_s],
    }
    _say(args, f"{c.kind}: {h.fmt(P)} with phi={args.phi}, delta={args.delta}, S={h.fmt(S)}: {c.verdict}")
    if c.verdict == FAILS:
        r = c.refutation
        if args.strong:
            tup = [h.names_of(Q) for Q in r.tuple]
            _say(args, f"  refuted with s = {h.names[r.s]} by hyperideals {', '.join(h.fmt(Q) for Q in r.tuple)}")
        else:
            tup = [h.names[x] for x in r.tuple]
            _say(args, f"  refuted with s = {h.names[r.s]} by ({', '.join(tup)})")
            _say(args, f"  {r.detail}")
        doc["refutation"] = {"s": h.names[r.s], "tuple": tup, "detail": r.detail}
    elif c.witness_s is not None:
        _say(args, f"  associated to s = {h.names[c.witness_s]}")
    _emit(args, doc)
    return EXIT_REFUTED if c.verdict == FAILS else EXIT_OK


def _classify_analytic(args, a):
    if args.strong or args.cls != "phi-delta-S":
        raise UsageError("analytic structures only support the phi-delta-S class in witness or sampled mode")
    P = a.ideal(args.ideal)
    if not a.is_proper(P):
        raise UsageError(f"{P} is not proper")
    S = a.mulset(args.mulset or "1")
    s = a.element(args.s) if args.s else None
    doc = {
        "format_version": FORMAT_VERSION, "command": "classify", "structure": a.id, "ideal": str(P),
        "phi": args.phi, "delta": args.delta, "mulset": str(S) if not isinstance(S, frozenset) else sorted(map(str, S)),
    }
    allow = args.allow_overlap
    if args.witness:
        u = tuple(a.element(x) for x in names_list(args.witness))
        checks = classify_witness(a, P, args.phi, args.delta, S, u, s, require_disjoint=not allow)
        bad = [w for w in checks if w.refutes]
        doc["mode"] = "witness"
        doc["witness"] = [str(x) for x in u]
        doc["refutes"] = bool(bad)
        w = bad[0] if bad else checks[0]
        doc["s"] = str(w.s)
        doc["check"] = w.describe()
        verdict = FAILS if bad and len(bad) == len(checks) else "not-refuted"
        doc["verdict"] = verdict
        _say(args, f"{a.id}: P = {P}, phi={args.phi}, delta={args.delta}, S = {doc['mulset']}")
        _say(args, f"witness ({', '.join(map(str, u))}) with s = {w.s}: {'refutes' if w.refutes else 'does not refute'}")
        _say(args, w.describe())
        _emit(args, doc)
        return EXIT_REFUTED if verdict == FAILS else EXIT_OK
    step = Fraction(args.grid_step) if args.grid_step else Fraction(1, 20)
    if a.id != "unit-interval-max":
        raise UsageError(f"sampled mode is only available on unit-interval-max; give --witness for {a.id}")
    c = classify_sampled(a, P, args.phi, args.delta, S, step, require_disjoint=not allow)
    doc.update({"mode": "sampled", "grid_step": str(step), "verdict": c.verdict,
                "witness_s": None if c.witness_s is None else str(c.witness_s)})
    _say(args, f"{a.id}: P = {P}, phi={args.phi}, delta={args.delta}, S = {doc['mulset']}, step {step}: {c.verdict}")
    if c.refutation is not None:
        r = c.refutation
        doc["refutation"] = {"s": str(r.s), "tuple": [str(x) for x in r.tuple]}
        _say(args, r.detail)
    _emit(args, doc)
    return EXIT_REFUTED if c.verdict in (FAILS, FAILS_ON_SAMPLE) else EXIT_OK


def cmd_classify(args):
    if not args.ideal:
        raise UsageError("classify needs --ideal")
    st = resolve_structure(args.structure[0])
    if isinstance(st, AnalyticStructure):
        return _classify_analytic(args, st)
    if args.witness:
        raise UsageError("--witness is only for analytic structures")
    return _classify_finite(args, st)


def _write_structure(args, h, cmd):
    text = dump_structure(h)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        _say(args, f"{cmd}: wrote {h.name} ({h.size} elements) to {args.out}")
    else:
        sys.stdout.write(text)


def cmd_product(args):
    if len(args.structure) != 2:
        raise UsageError("product takes --structure twice")
    a, b = (_valid(_need_finite(resolve_structure(x), "product")) for x in args.structure)
    p = direct_product(a, b)
    _write_structure(args, p, "product")
    return EXIT_OK


def cmd_localize(args):
    h = _valid(_need_finite(resolve_structure(args.structure[0]), "localize"))
    if not args.mulset:
        raise UsageError("localize needs --mulset")
    S = finite_subset(h, args.mulset, "multiplicative set")
    if not I.is_multiplicative(h, S):
        raise UsageError(f"{h.fmt(S)} is not multiplicative")
    F = localize(h, S)
    _write_structure(args, F.ring, "localize")
    return EXIT_OK


def cmd_theorems(args):
    budget = T.Budget(max_mulset_size=args.max_mulset_size, max_instances=args.max_instances)
    if args.structure:
        structures = [_valid(_need_finite(resolve_structure(x), "theorems")) for x in args.structure]
    else:
        structures = T.default_structures(args.corpus_max_size)
    only = None
    if args.only:
        only = [x.strip().upper() for x in args.only.split(",") if x.strip()]
        bad = [x for x in only if x not in T.THEOREMS]
        if bad:
            raise UsageError(f"unknown theorem ids: {', '.join(bad)}")
    reports = T.run_all(structures, budget, only)
    witness = T.witness_checks() if not args.structure else []
    timing = not args.no_timing
    uncovered = T.coverage(reports)
    doc = {
        "format_version": FORMAT_VERSION,
        "command": "theorems",
        "structures": sorted(h.name for h in structures),
        "budget": {"max_mulset_size": budget.max_mulset_size, "max_instances": budget.max_instances},
        "reports": [r.to_dict(timing) for r in sorted(reports, key=lambda r: r.id)],
        "uncovered": uncovered,
        "witness_checks": witness,
    }
    nviol = sum(r.violation_count for r in reports)
    partial = any(r.partial for r in reports)
    _say(args, f"{'id':4} {'total':>8} {'hyp met':>8} {'viol':>5}  statement")
    for r in reports:
        flag = " (partial)" if r.partial else ""
        _say(args, f"{r.id:4} {r.total:8d} {r.hypothesis_met:8d} {r.violation_count:5d}  {r.statement}{flag}")
        for v in r.violations[:3]:
            _say(args, f"     violation: {json.dumps(v['instance'], sort_keys=True)} {v['detail']}")
    if uncovered:
        _say(args, f"no hypothesis-met instance: {', '.join(uncovered)}")
    for w in witness:
        _say(args, f"witness {w['structure']} {w['ideal']} ({', '.join(w['tuple'])}): refutes {w['refutes']}")
    _emit(args, doc)
    if partial:
        print("budget exhausted: the report is partial", file=sys.stderr)
        return EXIT_ERROR
    bad_witness = any(w["refutes"] != w["expected"] or w["agrees_with_tables"] is False for w in witness)
    return EXIT_REFUTED if nviol or bad_witness else EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser():
    p = argparse.ArgumentParser(prog="krasner", description="Finite Krasner (m,n)-hyperrings and their hyperideals.")
    p.add_argument("--version", action="version", version="krasner 0.1.0")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--structure", action="append", default=[], metavar="FILE",
                        help="structure document, analytic id or corpus member name")
        sp.add_argument("--json", action="store_true", help="print the machine report instead of the summary")
        sp.add_argument("--report", metavar="FILE", help="write the machine report to FILE")
        return sp

    common(sub.add_parser("validate", help="check the hyperring axioms")).set_defaults(fn=cmd_validate)
    common(sub.add_parser("ideals", help="enumerate hyperideals")).set_defaults(fn=cmd_ideals)
    sp = common(sub.add_parser("radical", help="radical of a hyperideal"))
    sp.add_argument("--ideal", required=True, metavar="NAMES")
    sp.set_defaults(fn=cmd_radical)

    sp = common(sub.add_parser("classify", help="decide a hyperideal class"))
    sp.add_argument("--ideal", metavar="NAMES")
    sp.add_argument("--phi", default="phi0")
    sp.add_argument("--delta", default="delta0")
    sp.add_argument("--mulset", metavar="NAMES")
    sp.add_argument("--s", metavar="NAME", help="fix the associated element instead of searching S")
    sp.add_argument("--class", dest="cls", default="phi-delta-S", choices=sorted(CLASSES))
    sp.add_argument("--strong", action="store_true", help="the strongly variant (finite structures only)")
    sp.add_argument("--witness", metavar="TUPLE", help="analytic structures: replay this tuple")
    sp.add_argument("--grid-step", metavar="Q", help="analytic structures: sample grid step (default 1/20)")
    sp.add_argument("--allow-overlap", action="store_true",
                    help="analytic structures: do not require the ideal to avoid S")
    sp.set_defaults(fn=cmd_classify)

    sp = common(sub.add_parser("product", help="direct product of two structures"))
    sp.add_argument("--out", metavar="FILE")
    sp.set_defaults(fn=cmd_product)
    sp = common(sub.add_parser("localize", help="hyperring of fractions"))
    sp.add_argument("--mulset", metavar="NAMES")
    sp.add_argument("--out", metavar="FILE")
    sp.set_defaults(fn=cmd_localize)

    sp = common(sub.add_parser("theorems", help="run the theorem harness"))
    sp.add_argument("--corpus", dest="corpus_max_size", type=int, default=6, metavar="N",
                    help="sweep the bundled corpus up to N elements (default 6)")
    sp.add_argument("--only", metavar="IDS", help="comma-separated theorem ids")
    sp.add_argument("--max-mulset-size", type=int, default=4)
    sp.add_argument("--max-instances", type=int, default=None)
    sp.add_argument("--no-timing", action="store_true", help="omit wall times for byte-identical reports")
    sp.set_defaults(fn=cmd_theorems)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (UsageError, KrasnerError, ValueError, KeyError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        print(f"krasner {args.command}: error: {msg}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
