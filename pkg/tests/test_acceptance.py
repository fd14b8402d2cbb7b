"""Acceptance criteria 1-10, each run at its stated tolerance and time limit.

Every test records one PASS/FAIL line; the lines are printed in the
terminal summary under "acceptance criteria".
"""
import contextlib
import itertools
import json
import random
import time
from fractions import Fraction

import numpy as np
import pytest

from srgfam import caps, cli, dioph, euclid, family, involution, linearize
from srgfam.graphcore import SrgParams, neighborhood_matching, verify_srg, write_graph

RESULTS = {}
PARAMS = {1: (9, 4, 1, 2), 2: (81, 20, 1, 6), 4: (729, 112, 1, 20)}


@contextlib.contextmanager
def criterion(record, number, title, limit):
    state = {"ok": False, "note": ""}
    t0 = time.perf_counter()
    try:
        yield state
    finally:
        dt = time.perf_counter() - t0
        ok = state["ok"] and dt < limit
        RESULTS[number] = ok
        extra = f"; {state['note']}" if state["note"] else ""
        line = f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {title} ({dt:.1f}s, limit {limit:g}s{extra})"
        record.append(line)
        print(line)
    assert dt < limit, f"criterion {number} exceeded {limit}s"


def norm(v):
    v = tuple(x % 3 for x in v)
    lead = next(x for x in v if x)
    return tuple((lead * x) % 3 for x in v)


def brute_extension_points(K):
    """Ambient points outside K that lie on no secant of K (plain tuple arithmetic)."""
    d = K.d
    ambient = {norm(v) for v in itertools.product(range(3), repeat=d) if any(v)}
    blocked = set()
    for a, b in itertools.combinations(K.points, 2):
        blocked.add(norm([x + y for x, y in zip(a, b)]))
        blocked.add(norm([x - y for x, y in zip(a, b)]))
    return len(ambient), sorted(ambient - blocked - set(K.points))


def brute_hyperplane_sizes(K):
    ambient = {norm(v) for v in itertools.product(range(3), repeat=K.d) if any(v)}
    return {sum(1 for p in K.points if sum(x * y for x, y in zip(a, p)) % 3 == 0) for a in ambient}


def test_criterion_01_construction(acceptance_record):
    with criterion(acceptance_record, 1, "construction and verify_srg with A^2 identity", 30) as st:
        graphs = {1: family.build_l33(), 2: family.build_brouwer_haemers(),
                  4: family.build_games(caps.reference_cap())}
        reps = {n: verify_srg(G, SrgParams(*PARAMS[n])) for n, G in graphs.items()}
        # the integer identity independently in numpy
        ident = []
        for n, G in graphs.items():
            v, k, lam, mu = PARAMS[n]
            A = G.matrix.astype(np.int64)
            ident.append(bool((A @ A + (mu - lam) * A + (mu - k) * np.eye(v, dtype=np.int64) == mu).all()))
        st["ok"] = all(r.passed and r.details["matrix_identity"] for r in reps.values()) and all(ident)
    assert st["ok"]


def test_criterion_02_matching(acceptance_record, l33, bh, games):
    with criterion(acceptance_record, 2, "perfect matching in every neighbourhood", 5) as st:
        ok = True
        for G in (l33, bh, games):
            for v in range(G.v):
                m = neighborhood_matching(G, v)
                ok &= 2 * len(m.pairs) == G.degree(v) and all(G.adjacent(a, b) for a, b in m.pairs)
        st["ok"] = ok
    assert st["ok"]


def test_criterion_03_involutions(acceptance_record, l33, bh, games):
    with criterion(acceptance_record, 3, "sigma at all 819 vertices; involution identities", 300) as st:
        ok = True
        for G in (l33, bh, games):
            S = involution.all_sigmas(G)
            if G.v <= 81:
                r2 = involution.verify_lemma2(G, S, mode="exhaustive")
                r3 = involution.verify_lemma3(G, S, mode="exhaustive")
            else:
                r2 = involution.verify_lemma2(G, S, mode="sampled", samples=10**5, seed=0)
                r3 = involution.verify_lemma3(G, S, mode="sampled", samples=10**5, seed=0)
                ok &= r2.details["pairs_tested"] >= 10**5 and r2.details["conjugations_tested"] >= 10**5
                ok &= r3.details["triples_tested"] >= 10**5
            ok &= r2.passed and r3.passed
            ok &= all(r2.details[f"violations_{i}"] == 0 for i in ("i", "ii", "iii", "iv", "v"))
            ok &= r3.details["violations"] == 0
        st["ok"] = ok
    assert st["ok"]


def test_criterion_04_linearization(acceptance_record, l33, bh, games, sig_l33, sig_bh, sig_games):
    with criterion(acceptance_record, 4, "coordinatize m = 2, 4, 6; sigma linear; shifts are automorphisms", 120) as st:
        ok = True
        dims = []
        for G, S in ((l33, sig_l33), (bh, sig_bh), (games, sig_games)):
            C = linearize.coordinatize(G, S, 0)
            dims.append(C.m)
            if G.v <= 81:
                r = linearize.check_sigma_linear(G, S, C, mode="exhaustive")
                ok &= r.details["pairs_tested"] == G.v ** 2
            else:
                r = linearize.check_sigma_linear(G, S, C, mode="sampled", samples=10**5, seed=0)
                ok &= r.details["pairs_tested"] >= 10**5
            ok &= r.passed and r.details["shifts_tested"] == G.v and r.details["non_automorphic_shifts"] == 0
        st["ok"] = ok and dims == [2, 4, 6]
        st["note"] = f"m = {dims}"
    assert st["ok"]


def test_criterion_05_gram(acceptance_record, l33, bh, games):
    with criterion(acceptance_record, 5, "Gram ranks, two-design identities, relation residuals", 120) as st:
        ranks = (euclid.gram_rank_of_neighborhood(bh, 2, 0), euclid.gram_rank_of_neighborhood(games, 4, 0))
        moments = {}
        ok = True
        for G, n in ((l33, 1), (bh, 2), (games, 4)):
            r = euclid.two_design_check(G, n)
            ok &= r.passed and r.details["sum_of_gram"] == 0
            moments[n] = r.details["second_moment"]
        ok &= moments == {1: Fraction(81, 4), 2: Fraction(6561, 20), 4: Fraction(531441, 112)}
        rng = random.Random(0)
        residuals = 0
        for G, n in ((bh, 2), (games, 4)):
            for _ in range(50):
                vinf = rng.randrange(G.v)
                u = rng.choice([x for x in range(G.v) if x != vinf and not G.adjacent(x, vinf)])
                ok &= euclid.relation_residual(G, n, vinf, u) == 0
                residuals += 1
        st["ok"] = ok and ranks == (20, 112) and residuals == 100
        st["note"] = f"ranks {ranks}"
    assert st["ok"]


def test_criterion_06_counting(acceptance_record, bh, games):
    with criterion(acceptance_record, 6, "intersection profiles, counting inequality, quadratic form determinant", 60) as st:
        ok = True
        rng = random.Random(1)
        for G, n, want in ((bh, 2, (1, 0, 36, 8)), (games, 4, (1, 0, 0, 0, 450, 72))):
            for _ in range(50):
                vinf = rng.randrange(G.v)
                u = rng.choice([x for x in range(G.v) if x != vinf and not G.adjacent(x, vinf)])
                prof = euclid.profile_measure(G, n, vinf, u)
                sol = euclid.profile_solve(n, prof.m[: n - 1])
                ok &= prof.m == want and prof.checks.passed and sol.top == tuple(prof.m[n - 1:])
        ok &= all(euclid.lemma1_check(n).passed for n in range(2, 9))
        for n in range(1, 101):
            q = euclid.quadform(n)
            ok &= q.det < 0 and q.det == euclid.quadform_closed_det(n)
        ok &= euclid.quadform(2).det == Fraction(-243, 125)
        st["ok"] = ok
    assert st["ok"]


def test_criterion_07_caps(acceptance_record, l33, bh, games, sig_l33, sig_bh, sig_games):
    with criterion(acceptance_record, 7, "extracted caps 2, 10, 56; maximal; two-valued hyperplane sections", 120) as st:
        ok = True
        sizes, ambient, profiles = [], [], []
        for G, S in ((l33, sig_l33), (bh, sig_bh), (games, sig_games)):
            K = caps.extract_cap(G, linearize.coordinatize(G, S, 0))
            sizes.append(len(K))
            ok &= caps.is_cap(K).passed
            if len(K) > 2:
                npts, ext = brute_extension_points(K)
                ambient.append(npts)
                ok &= ext == []
                sizes_h = brute_hyperplane_sizes(K)
                profiles.append(sorted(sizes_h))
                ok &= len(sizes_h) == 2 and len(caps.hyperplane_profile(K)) == 2
        st["ok"] = ok and sizes == [2, 10, 56] and ambient == [40, 364]
        st["note"] = f"sizes {sizes}, section sizes {profiles}"
    assert st["ok"]


def _pipeline(capsys, path, out_dir):
    code = cli.main(["pipeline", str(path), "--out-dir", str(out_dir)])
    lines = [json.loads(x) for x in capsys.readouterr().out.splitlines() if x.strip()]
    return code, lines


def test_criterion_08_pipeline(acceptance_record, games, tmp_path, capsys):
    with criterion(acceptance_record, 8, "pipeline on built and on scrambled Games graph", 600) as st:
        p = SrgParams(*PARAMS[4])
        built = tmp_path / "games.srg"
        write_graph(games, p, built)
        perm = np.random.default_rng(2024).permutation(729)
        scrambled = tmp_path / "scrambled.srg"
        write_graph(games.relabel(perm), p, scrambled)
        ok = True
        ref = caps.reference_cap()
        for path in (built, scrambled):
            out = tmp_path / (path.stem + "_out")
            code, lines = _pipeline(capsys, path, out)
            final = lines[-1]
            ok &= code == 0 and all(x["pass"] for x in lines)
            ok &= final["check"] == "games_isomorphism"
            g = np.array(json.loads((out / "witness.json").read_text()))
            K = caps.read_cap(out / "cap.txt")
            # independently confirm the witness maps the extracted cap onto the reference cap
            image = {norm(row) for row in (np.array(K.points) @ g.T) % 3}
            ok &= image == set(ref.points) and round(np.linalg.det(g)) % 3 != 0
        st["ok"] = ok
    assert st["ok"]


def test_criterion_09_dioph(acceptance_record):
    with criterion(acceptance_record, 9, "bounded Diophantine scan to 10^6", 5) as st:
        sols = dioph.scan(10**6)
        st["ok"] = {(s.n, s.m) for s in sols} == {(1, 1), (2, 2), (4, 3)} and len(sols) == 3
    assert st["ok"]


def test_criterion_10_substitutions(acceptance_record):
    # Nonexistence for all n and uniqueness of the 56-cap are cited results; the
    # criterion is met by their stated desk-scale substitutes actually passing.
    with criterion(acceptance_record, 10, "cited results replaced by criteria 9 and 8", 5) as st:
        st["ok"] = RESULTS.get(8, False) and RESULTS.get(9, False)
        st["note"] = "substitutes: bounded scan (9), equivalence witness (8)"
    assert st["ok"]
