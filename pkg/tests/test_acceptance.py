"""Exit criteria. Each test records one PASS/FAIL line shown in the pytest summary."""

import random
import time
import warnings
from itertools import combinations
from pathlib import Path

import pytest

from conftest import ACCEPTANCE_LINES, TRIANGLE, TRIPLE
from hketools import (
    Graph,
    SetSystem,
    equivalence_audit,
    exercise_identities,
    generate_hke,
    hke_partition,
    independence,
    ke_check,
    matching_number,
    omega_is_hke,
    verify_characterization,
)
from hketools.cli import main
from hketools.errors import TheoremViolation
from hketools.formats import parse_graph, parse_setsystem, random_setsystem, render_graph, render_setsystem
from hketools.graph import all_pairs
from hketools.hke import NONPOSITIVE_ALPHA, ORACLES
from hketools.sets import subfamilies_by_size

HERE = Path(__file__).parent


def record(n, title, ok, detail):
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {n}. {title}: {detail}")
    print(ACCEPTANCE_LINES[-1])


def test_c1_oracle_equivalence():
    rng = random.Random(20161)
    t0 = time.perf_counter()
    disagreements = holds = 0
    for _ in range(10_000):
        m = rng.randint(1, 8)
        n = rng.randint(1, 12)
        density = rng.choice([0.2, 0.5, 0.8])
        F = random_setsystem(m, n, density, seed=rng.getrandbits(32))
        outcomes = {name: oracle(F).holds for name, oracle in ORACLES.items()}
        if len(set(outcomes.values())) != 1:
            disagreements += 1
        holds += outcomes["partition"]
    elapsed = time.perf_counter() - t0
    ok = disagreements == 0 and elapsed < 30
    record(1, "oracle equivalence", ok,
           f"10000 systems, {holds} HKE, {disagreements} disagreements, {elapsed:.1f}s (limit 30s)")
    assert ok


def test_c2_generator_soundness():
    rng = random.Random(7)
    failures = checked = 0
    for i in range(1000):
        m = rng.randint(1, 6)
        F = generate_hke(m, rng.randint(1, 3), seed=i)
        if not equivalence_audit(F).holds:
            failures += 1
        for sub in subfamilies_by_size(F.m):
            checked += 1
            if not equivalence_audit(F.restrict(sub)).holds:
                failures += 1
    ok = failures == 0
    record(2, "generator soundness + heredity", ok,
           f"1000 families, {checked} subfamilies audited, {failures} failures")
    assert ok


def test_c3_fixture_exactness():
    triple = SetSystem.from_sets(TRIPLE)
    t = equivalence_audit(triple)
    triangle = SetSystem.from_sets(TRIANGLE)
    k = equivalence_audit(triangle)
    pairs_pass = all(equivalence_audit(triangle.restrict(s)).holds for s in subfamilies_by_size(3) if s.bit_count() == 2)
    empty = SetSystem.from_sets([[]], ground=["1"])
    e = equivalence_audit(empty)
    empty_ok = not e.holds and all(v.witness.kind == NONPOSITIVE_ALPHA for v in e.verdicts.values())
    ok = t.holds and t.alpha == 4 and not k.holds and pairs_pass and empty_ok
    record(3, "fixture exactness", ok,
           f"triple alpha={t.alpha}; triangle holds={k.holds} (pairs pass={pairs_pass}); "
           f"{{empty}} alpha-positivity failure={empty_ok}")
    assert ok


def test_c4_decomposition_identity():
    rng = random.Random(44)
    failures = checks = 0
    for _ in range(1000):
        F = random_setsystem(rng.randint(1, 6), rng.randint(1, 10), rng.choice([0.2, 0.5, 0.8]),
                             seed=rng.getrandbits(32))
        sets = F.as_sets()
        for k in range(1, F.m + 1):
            for gamma in combinations(range(F.m), k):
                join = frozenset().union(*(sets[j] for j in gamma))
                for d in gamma:
                    checks += 1
                    others = [j for j in gamma if j != d]
                    pieces = []
                    for r in range(1, len(others) + 1):
                        for g1 in combinations(others, r):
                            g2 = [j for j in gamma if j not in g1]
                            meet = frozenset.intersection(*(sets[j] for j in g1))
                            pieces.append(meet - frozenset().union(*(sets[j] for j in g2)))
                    merged = frozenset().union(*pieces)
                    disjoint = len(merged) == sum(len(p) for p in pieces)
                    if not disjoint or merged != join - sets[d]:
                        failures += 1
    ok = failures == 0
    record(4, "decomposition identity", ok, f"1000 systems, {checks} (subfamily, member) checks, {failures} failures")
    assert ok


def census_graphs(max_n=6):
    for n in range(1, max_n + 1):
        for mask in range(1 << len(all_pairs(n))):
            yield Graph.from_edge_mask(n, mask)


def random_graphs(count=2000, max_n=8, seed=5):
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(1, max_n)
        p = rng.uniform(0.1, 0.9)
        mask = 0
        for b in range(n * (n - 1) // 2):
            if rng.random() < p:
                mask |= 1 << b
        yield Graph.from_edge_mask(n, mask)


@pytest.fixture(scope="module")
def census():
    t0 = time.perf_counter()
    rows = []
    for G in census_graphs():
        omega = independence(G)
        mu, _ = matching_number(G)
        rows.append((G, omega, omega.alpha + mu == G.n))
    return rows, time.perf_counter() - t0


def test_c5_omega_is_hke_for_ke_graphs(census):
    rows, build = census
    t0 = time.perf_counter()
    ke = bad = 0
    extra = [(G, independence(G)) for G in random_graphs()]
    extra = [(G, om, om.alpha + matching_number(G)[0] == G.n) for G, om in extra]
    for G, omega, is_ke in rows + extra:
        if is_ke:
            ke += 1
            if not omega_is_hke(G, omega).holds:
                bad += 1
    elapsed = build + time.perf_counter() - t0
    ok = bad == 0 and elapsed < 300
    record(5, "graph census: KE => Omega is HKE", ok,
           f"{len(rows)} census + 2000 random graphs, {ke} KE, {bad} counterexamples, {elapsed:.1f}s (limit 300s)")
    assert ok


def test_c6_certificate_iff_ke(census):
    rows, _ = census
    violations = ke = 0
    omega_whole = 0
    for G, omega, is_ke in rows:
        try:
            r = verify_characterization(G, search_cap=12, omega=omega)
        except TheoremViolation:
            violations += 1
            continue
        if r.is_ke != is_ke or (r.certificate is not None) != is_ke:
            violations += 1
        ke += r.is_ke
        omega_whole += r.is_ke and r.omega_certifies
    ok = violations == 0
    record(6, "KE <=> certificate exists", ok,
           f"{len(rows)} graphs, {ke} KE with certificate, {len(rows) - ke} non-KE exhaustively refuted, "
           f"{violations} violations (Omega itself certifies on {omega_whole}/{ke} KE graphs)")
    assert ok


def test_c7_ke_subfamily_is_hke(census):
    rows, _ = census
    bad = tested = 0
    for G, omega, _ in rows:
        fam = omega.family
        if fam.m > 8:
            continue
        for sub in subfamilies_by_size(fam.m):
            F = fam.restrict(sub)
            if ke_check(F):
                tested += 1
                if not hke_partition(F).holds:
                    bad += 1
    ok = bad == 0
    record(7, "KE families of maximum independent sets are HKE", ok,
           f"{tested} KE subfamilies checked, {bad} counterexamples")
    assert ok


def test_c8_exercise_identities():
    bad = 0
    for seed in range(500):
        rep = exercise_identities(generate_hke(4, 2, seed=seed))
        if not rep.holds:
            bad += 1
    ok = bad == 0
    record(8, "exercise identities", ok, f"500 four-member HKE families, {bad} failures")
    assert ok


def test_c9_determinism_and_round_trip(capsys):
    fixtures = HERE / "fixtures"
    cases = [
        ("verify_p4.json", ["graph", "verify", str(fixtures / "p4.txt")]),
        ("verify_k3.json", ["graph", "verify", str(fixtures / "k3.txt")]),
        ("verify_k2.json", ["graph", "verify", str(fixtures / "k2.txt")]),
        ("check_triple.json", ["hke", "check", str(fixtures / "triple.txt")]),
    ]
    stable = 0
    for golden, argv in cases:
        outs = []
        for _ in range(2):
            main(argv + ["--json", "--no-timing"])
            outs.append(capsys.readouterr().out)
        stable += outs[0] == outs[1] == (HERE / "golden" / golden).read_text()

    trips = 0
    rng = random.Random(9)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for _ in range(300):
            F = random_setsystem(rng.randint(1, 6), rng.randint(0, 10), 0.5, seed=rng.getrandbits(32))
            trips += parse_setsystem(render_setsystem(F)) == F
    for G in random_graphs(300, 8, seed=10):
        trips += parse_graph(render_graph(G)) == G
    ok = stable == len(cases) and trips == 600
    record(9, "determinism and round-trip", ok, f"{stable}/4 golden reports byte-stable, {trips}/600 round-trips")
    assert ok
