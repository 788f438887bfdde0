"""Acceptance suite: one PASS/FAIL line per criterion.

Run alone with ``pytest tests/test_acceptance.py -s`` (or ``python3
tests/test_acceptance.py``) to see the verdicts; under plain ``pytest`` they
are printed with output capture disabled.
"""

import io as stdio
import math
import random
import statistics
import sys
import time
from pathlib import Path

import numpy as np
import pytest

from f1rep import io
from f1rep.cli import run
from f1rep.covering import (
    absolutely_indecomposable,
    count_covering,
    covering_components,
    is_covering_local,
    is_covering_surjectivity,
    is_covering_via_tau,
)
from f1rep.fixtures import ACYCLIC_TRIANGLE, TWO_LOOPS, fixture_a, fixture_b, fixture_c
from f1rep.generate import cyclic_lift, random_connected_winding, random_winding
from f1rep.hom import admissible_components, basis_matrices, hom_dimension
from f1rep.nice import (
    color_word,
    compose,
    distinguishes_vertices,
    extract_obstruction,
    obstruction_consequence_check,
    sample_nice_sequences,
    verify_obstruction,
)
from f1rep.oracle import (
    DEFAULT_FIELDS,
    basis_rank,
    hom_nullspace_dim,
    nilpotency_check,
    spectral_witness,
    verify_intertwiner,
)
from f1rep.tensor import tensor
from f1rep.winding import is_indecomposable

FIELDS = ("q", "fp:2", "fp:3", "fp:5")


@pytest.fixture
def verdict(capsys):
    """Print one PASS/FAIL line for a criterion, then fail the test if needed."""

    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
        assert ok, detail

    return emit


def timed(fn):
    start = time.perf_counter()
    result = fn()
    return result, time.perf_counter() - start


def random_pairs(count=240, seed=2024):
    """Seeded factor pairs over both bases, at most 12 vertices per factor."""
    rng = random.Random(seed)
    pairs = []
    for k in range(count):
        base = (TWO_LOOPS, ACYCLIC_TRIANGLE)[k % 2]
        cap = 12 // len(base.vertices)

        def factor():
            sizes = {x: rng.randint(0, cap) for x in base.vertices}
            return random_winding(base, sizes, rng.random(), rng.getrandbits(32))

        v = factor()
        w = v if rng.random() < 0.25 else factor()
        pairs.append((v, w))
    return pairs


def indecomposable_instances(seed=7):
    """Seeded indecomposable windings, including many that are not absolutely indecomposable."""
    rng = random.Random(seed)
    out = []
    for k in range(80):
        out.append(random_connected_winding(TWO_LOOPS, rng.randint(0, 24), rng.getrandbits(32)))
    for k in range(40):
        w = random_connected_winding(TWO_LOOPS, rng.randint(1, 8), rng.getrandbits(32))
        a = rng.choice(w.total.arrows).id
        lift = cyclic_lift(w, rng.randint(2, 3), {a: 1})
        if is_indecomposable(lift):
            out.append(lift)
    while len(out) < 160:
        base = (TWO_LOOPS, ACYCLIC_TRIANGLE)[len(out) % 2]
        w = random_winding(base, rng.randint(1, 4), 0.9, rng.getrandbits(32))
        if is_indecomposable(w):
            out.append(w)
    return out


def test_criterion_1_fixture_a(verdict):
    def check():
        v, w = fixture_a()
        t = tensor(v, w)
        shape = (t.n_vertices, t.n_arrows, t.ncomp) == (6, 1, 5)
        sets = {frozenset(t.component_pairs(r.component)) for r in admissible_components(v, w, t)}
        expected = {frozenset({("1", "2'")}), frozenset({("1", "1'"), ("2", "2'")})}
        dims = [hom_nullspace_dim(v, w, f) for f in FIELDS]
        return shape and sets == expected and hom_dimension(v, w) == 2 and dims == [2, 2, 2, 2]

    ok, elapsed = timed(check)
    verdict(1, ok and elapsed < 1, f"fixture A tensor, admissible sets, dimension 2 over {FIELDS} ({elapsed:.3f} s)")


def test_criterion_2_fixture_b(verdict):
    def check():
        b = fixture_b()
        t = tensor(b, b)
        reports = covering_components(b, b, t=t, cross_check=True)
        degrees = sorted(r.degree_pi1 for r in reports if r.is_covering)
        big = max(range(t.ncomp), key=lambda c: len(t.component_pairs(c)))
        return (
            t.n_vertices == 9
            and t.ncomp == 2
            and all(r.is_covering for r in reports)
            and degrees == [1, 2]
            and absolutely_indecomposable(b) is False
            and nilpotency_check(b) is False
            and len(t.component_pairs(big)) == 6
            and spectral_witness(t, big) == 2
        )

    ok, elapsed = timed(check)
    verdict(2, ok and elapsed < 1, f"fixture B square: 2 covering components, degrees 1 and 2 ({elapsed:.3f} s)")


def test_criterion_3_fixture_c(verdict):
    def check():
        c = fixture_c()
        t = tensor(c, c)
        o = extract_obstruction(c, search_length=2)
        cycle = compose(o.D, o.E)
        word_ok = color_word(c, o.D) == color_word(c, o.E) * o.s and o.s == 1
        cycle_ok = cycle.is_cycle and sorted(str(cycle).split()) == ["a", "b"]
        constant = {x: 0 for x in c.total.vertices}
        seqs = [[constant]] + sample_nice_sequences(c, 50, seed=3)
        seqs_ok = len(seqs) == 51 and all(
            obstruction_consequence_check(c, o, s) and not distinguishes_vertices(c, s) for s in seqs
        )
        return (
            count_covering(t) == 1
            and absolutely_indecomposable(c, cross_check=True) is True
            and hom_dimension(c, c) == 1
            and verify_obstruction(c, o)
            and word_ok
            and cycle_ok
            and seqs_ok
        )

    ok, elapsed = timed(check)
    verdict(3, ok and elapsed < 1, f"fixture C: one covering, obstruction E=b D=a s=1, 51 sequences ({elapsed:.3f} s)")


def test_criterion_4_field_independence(verdict):
    def check():
        bad = []
        pairs = random_pairs()
        for k, (v, w) in enumerate(pairs):
            d = hom_dimension(v, w)
            if any(hom_nullspace_dim(v, w, f) != d for f in FIELDS):
                bad.append(k)
        return len(pairs), bad

    (n, bad), elapsed = timed(check)
    assert set(FIELDS) == {f.name for f in DEFAULT_FIELDS}
    verdict(4, n >= 200 and not bad and elapsed < 60, f"{n} instances, {len(bad)} mismatches ({elapsed:.1f} s)")


def test_criterion_5_detector_agreement(verdict):
    checked = squares = 0
    bad = []
    for k, (v, w) in enumerate(random_pairs()):
        t = tensor(v, w)
        for c in range(t.ncomp):
            checked += 1
            if is_covering_local(t, c).is_covering != is_covering_via_tau(t, c):
                bad.append((k, c))
        if v.n_vertices and is_indecomposable(v):
            s = tensor(v, v)
            for c in range(s.ncomp):
                squares += 1
                local = is_covering_local(s, c).is_covering
                if not local == is_covering_via_tau(s, c) == is_covering_surjectivity(s, c):
                    bad.append((k, "square", c))
    verdict(5, not bad and squares > 0, f"{checked} components, {squares} square components, {len(bad)} disagreements")


def test_criterion_6_equivalent_conditions(verdict):
    def check():
        counts, bad = {True: 0, False: 0}, []
        instances = indecomposable_instances()
        for k, w in enumerate(instances):
            single = count_covering(tensor(w, w)) == 1
            counts[single] += 1
            if not single == nilpotency_check(w) == (extract_obstruction(w) is None):
                bad.append(k)
        return len(instances), counts, bad

    (n, counts, bad), elapsed = timed(check)
    ok = n >= 100 and not bad and elapsed < 120 and counts[True] and counts[False]
    detail = f"{n} instances ({counts[True]} with one covering, {counts[False]} with more), {len(bad)} violations ({elapsed:.1f} s)"
    verdict(6, ok, detail)


def test_criterion_7_intertwiners(verdict):
    elements, bad = 0, []
    instances = random_pairs() + [fixture_a(), (fixture_b(), fixture_b()), (fixture_c(), fixture_c())]
    for k, (v, w) in enumerate(instances):
        for el in basis_matrices(v, w):
            elements += 1
            if not verify_intertwiner(v, w, el.dense_blocks()):
                bad.append((k, el.component))
        if basis_rank(v, w) != hom_dimension(v, w):
            bad.append((k, "rank"))
    verdict(7, not bad, f"{elements} basis elements over {len(instances)} pairs, {len(bad)} failures")


def absindec_seconds(path: Path) -> float:
    out, err = stdio.StringIO(), stdio.StringIO()
    start = time.perf_counter()
    code = run(["absindec", str(path)], out, err)
    elapsed = time.perf_counter() - start
    assert code == 0, err.getvalue()
    return elapsed


@pytest.mark.slow
def test_criterion_8_complexity(verdict, tmp_path):
    sizes = (100, 200, 400, 800)
    medians = []
    for m in sizes:
        path = tmp_path / f"m{m}.json"
        io.dump(io.single("R", random_connected_winding(TWO_LOOPS, m, seed=m)), path)
        absindec_seconds(path)  # warm-up
        medians.append(statistics.median(absindec_seconds(path) for _ in range(5)))
    slope = np.polyfit([math.log(m) for m in sizes], [math.log(t) for t in medians], 1)[0]
    timings = ", ".join(f"{m}:{t * 1000:.1f}ms" for m, t in zip(sizes, medians))
    verdict(8, slope <= 2.3, f"log-log slope {slope:.2f} <= 2.3 ({timings})")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
