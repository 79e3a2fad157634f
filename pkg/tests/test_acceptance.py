"""Acceptance criteria 1-8. Each test prints (and records for the terminal
summary) one line ``criterion N: PASS|FAIL ...`` with its pinned limits."""
import time
from itertools import combinations_with_replacement

from conftest import ACCEPTANCE_LINES, mutate
from krasner import cli
from krasner import ideals as I
from krasner import theorems as T
from krasner.analytic import SAMPLED, UnitIntervalMax, check_witness, classify_sampled
from krasner.classify import FAILS, VACUOUS, is_phi_delta_S_primary
from krasner.constructions import check_homomorphism, direct_product, localize, union_of_colons
from krasner.core import validate
from krasner.corpus import base_members, corpus, hyper3
from krasner.maps import standard_deltas, standard_phis

# pinned limits (seconds)
LIMIT_VALIDATE_EACH = 1.0
LIMIT_RADICAL_TOTAL = 5.0
LIMIT_SWEEP = 60.0
LIMIT_MODULAR = 1.0
LIMIT_INTERVAL = 10.0
LIMIT_TRIVIAL = 60.0
LIMIT_PRODUCT = 60.0
LIMIT_LOCALIZE = 60.0
GRID_STEP = "1/20"


def report(n, ok, detail):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def test_criterion_1_validator():
    worst = 0.0
    accepted = []
    for h in corpus():
        t0 = time.perf_counter()
        rep = validate(h)
        worst = max(worst, time.perf_counter() - t0)
        accepted.append(rep.ok)
    base = hyper3()
    mutants = {
        "unique inverse": mutate(base, f={("1", "u"): ["0", "1"]}, name="broken-inverse"),
        "distributivity": mutate(base, g={("u", "u"): "u"}, name="broken-distributivity"),
        "scalar identity": mutate(base, g={("1", "u"): "0"}, name="broken-identity"),
    }
    named = []
    for axiom, h in mutants.items():
        t0 = time.perf_counter()
        rep = validate(h)
        worst = max(worst, time.perf_counter() - t0)
        hit = [v for v in rep.violations if v.axiom == axiom]
        named.append(bool(hit) and all(len(v.witness) > 0 for v in hit))
    ok = all(accepted) and all(named) and worst < LIMIT_VALIDATE_EACH
    report(1, ok, f"{sum(accepted)}/{len(accepted)} corpus structures accepted; "
                  f"{sum(named)}/3 mutations rejected with the named axiom; slowest {worst:.3f}s < {LIMIT_VALIDATE_EACH}s")


def test_criterion_2_radicals():
    t0 = time.perf_counter()
    checked = mismatches = 0
    for h in corpus(max_size=8):
        for P in I._enumerate_masks(h, I.DEFAULT_ENUM_CAP):
            checked += 1
            if I.radical_by_primes(h, P).mask != I.radical_by_powers(h, P).mask:
                mismatches += 1
    dt = time.perf_counter() - t0
    report(2, mismatches == 0 and dt < LIMIT_RADICAL_TOTAL,
           f"{checked} hyperideals, {mismatches} mismatches, {dt:.2f}s < {LIMIT_RADICAL_TOTAL}s")


def test_criterion_3_theorem_sweep():
    t0 = time.perf_counter()
    reports = T.run_all(T.default_structures(6), T.Budget(max_mulset_size=4))
    witness = T.witness_checks()
    dt = time.perf_counter() - t0
    bad = {r.id: r.violation_count for r in reports if r.violation_count}
    uncovered = T.coverage(reports)
    wit_ok = all(w["refutes"] == w["expected"] and w["agrees_with_tables"] is not False for w in witness)
    ok = not bad and not uncovered and wit_ok and dt < LIMIT_SWEEP and not any(r.partial for r in reports)
    report(3, ok, f"violations {bad or 'none'}; no hypothesis-met instance: {uncovered or 'none'}; "
                  f"witness checks {'ok' if wit_ok else 'mismatch'}; {dt:.1f}s < {LIMIT_SWEEP}s")


def test_criterion_4_modular_witness(capsys):
    t0 = time.perf_counter()
    code = cli.main([
        "classify", "--structure", "modular(5,25,4,3)", "--ideal", "5^5", "--phi", "pow:5",
        "--delta", "delta0", "--mulset", "1", "--witness", "5,5,5,5,5^1",
    ])
    dt = time.perf_counter() - t0
    out = capsys.readouterr().out
    from krasner.analytic import Modular

    a = Modular(5, 25, 4, 3)
    P = a.ideal("5^5")
    w = check_witness(a, P, "pow:5", "delta0", 1, (5, 5, 5, 5, 5))
    exact = w.product == 5**5 and w.product in P and w.product not in a.phi("pow:5", P)
    slots_false = all(not x and not y for x, y in w.slots)
    ok = code == 1 and "(5, 5, 5, 5, 5)" in out and w.refutes and exact and slots_false and dt < LIMIT_MODULAR
    report(4, ok, f"exit {code}; 5^5 in P minus phi(P): {exact}; all consequents false: {slots_false}; "
                  f"{dt:.3f}s < {LIMIT_MODULAR}s")


def test_criterion_5_unit_interval():
    t0 = time.perf_counter()
    a = UnitIntervalMax()
    P = a.ideal("0.5")
    w = check_witness(a, P, "phiW", "delta0", a.one, tuple(a.element(x) for x in ("0.6", "0.7", "0.8")))
    fixed_refutes = w.refutes
    Tset = a.mulset("(0,1/10]")
    sampled = classify_sampled(a, P, "phiW", "delta0", Tset, GRID_STEP, require_disjoint=False)
    dt = time.perf_counter() - t0
    ok = fixed_refutes and sampled.verdict == SAMPLED and dt < LIMIT_INTERVAL
    report(5, ok, f"fixed witness (0.6, 0.7, 0.8) refutes: {fixed_refutes} "
                  f"(slot 2: 0.6*0.8 = 12/25 lies in P = delta0(P)); "
                  f"T = (0, 1/10] at step {GRID_STEP}: {sampled.verdict}; {dt:.2f}s < {LIMIT_INTERVAL}s")


def test_criterion_6_trivial_classifiers():
    t0 = time.perf_counter()
    n = bad = 0
    for h in corpus():
        phis, deltas = standard_phis(h), standard_deltas()
        for S in I.enumerate_multiplicative_sets(h, 4):
            for P in I.proper_ideals(h):
                if P & S:
                    continue
                for d in deltas:
                    n += 1
                    if is_phi_delta_S_primary(h, P, "phi1", d, S).verdict != VACUOUS:
                        bad += 1
                for p in phis:
                    n += 1
                    if is_phi_delta_S_primary(h, P, p, "deltaK", S).verdict == FAILS:
                        bad += 1
    dt = time.perf_counter() - t0
    report(6, bad == 0 and dt < LIMIT_TRIVIAL, f"{n} classifications, {bad} exceptions, {dt:.1f}s < {LIMIT_TRIVIAL}s")


def test_criterion_7_product_lattice():
    t0 = time.perf_counter()
    small = [h for h in base_members() if h.size <= 5]
    pairs = bad = 0
    for a, b in combinations_with_replacement(small, 2):
        if (a.m, a.n) != (b.m, b.n):
            continue
        p = direct_product(a, b)
        La, Lb = I._enumerate_masks(a, 64), I._enumerate_masks(b, 64)
        Lp = set(I._enumerate_masks(p, 64))
        want = {p.combine(A, B) for A in La for B in Lb}
        pairs += 1
        if Lp != want or len(Lp) != len(La) * len(Lb):
            bad += 1
    dt = time.perf_counter() - t0
    report(7, bad == 0 and dt < LIMIT_PRODUCT, f"{pairs} products, {bad} non-factorwise lattices, {dt:.1f}s < {LIMIT_PRODUCT}s")


def test_criterion_8_localization():
    t0 = time.perf_counter()
    iso_bad = verdicts = verdict_bad = 0
    structures = corpus(max_size=9)
    for h in structures:
        F = localize(h, 1 << h.one)
        c = F.canonical_map()
        if not (c.is_surjective and F.ring.size == h.size and check_homomorphism(c).ok):
            iso_bad += 1
            continue
        R = F.ring
        for S in I.enumerate_multiplicative_sets(h, 4):
            cS = c.image_mask(S)
            for P in I.proper_ideals(h):
                if P & S:
                    continue
                cP = c.image_mask(P)
                for p in standard_phis(h):
                    for d in standard_deltas():
                        verdicts += 1
                        v1 = is_phi_delta_S_primary(h, P, p, d, S).verdict
                        v2 = is_phi_delta_S_primary(R, cP, p, d, cS).verdict
                        verdict_bad += v1 != v2
    contractions = contraction_bad = 0
    for h in corpus():
        for S in I.enumerate_multiplicative_sets(h, 3):
            F = localize(h, S)
            for P in I._enumerate_masks(h, 64):
                contractions += 1
                if F.contract_ideal(F.extend_ideal(P)) != union_of_colons(h, P, S):
                    contraction_bad += 1
    dt = time.perf_counter() - t0
    ok = iso_bad == 0 and verdict_bad == 0 and contraction_bad == 0 and dt < LIMIT_LOCALIZE
    report(8, ok, f"{len(structures)} isomorphisms ({iso_bad} bad); {verdicts} transported verdicts ({verdict_bad} changed); "
                  f"{contractions} contractions ({contraction_bad} differ); {dt:.1f}s < {LIMIT_LOCALIZE}s")

