"""Acceptance criteria, one test per criterion.

Each test records a ``[PASS]``/``[FAIL] criterion N: ...`` line in RESULTS;
conftest prints them in the terminal summary.  Run this file directly for
the same lines without pytest.
"""

import itertools
import random
import time
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from enres import betti
from enres import complex as cx
from enres import groebner
from enres.cli import main as cli_main
from enres.constructions import (
    Instance,
    InstanceSpec,
    Verdict,
    regular_sequence_by_coprime_lt,
    transversal_by_support,
)
from enres.groebner import Ideal, buchberger, colon, ideal_equal, is_groebner_basis, transversal_oracle

RESULTS = []

KINDS = ("generic", "symmetric")


def pivots(n):
    return list(itertools.combinations(range(1, n + 1), 2))


def record(number, title, failures, extra=""):
    ok = not failures
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}"
    if extra:
        line += f" ({extra})"
    if failures:
        line += f"; failing: {failures[:5]}"
    RESULTS.append(line)
    print(line)
    assert ok, line


# 1 ----------------------------------------------------------------------

N4_ROWS = [[1, 6, 8, 3], [1, 7, 14, 11, 3], [1, 8, 12, 7, 2],
           [1, 9, 20, 19, 9, 2], [1, 10, 29, 39, 28, 11, 2]]
N5_LAST = [[1, 12, 25, 25, 14, 3], [1, 13, 37, 50, 39, 17, 3],
           [1, 14, 50, 87, 89, 56, 20, 3], [1, 15, 64, 137, 176, 145, 76, 23, 3]]
N5_CORRECTED = [[1, 10, 20, 15, 4], [1, 11, 30, 35, 19, 4]]


def _tsv_rows(text):
    body = [l for l in text.splitlines()[1:] if not l.startswith("#")]
    return [(l.split("\t")[0], [int(c) for c in l.split("\t")[1:] if c]) for l in body]


def test_criterion_1_golden_tables(capsys):
    t0 = time.perf_counter()
    failures = []
    assert cli_main(["table", "--n", "4", "--format", "tsv"]) == 0
    rows4 = _tsv_rows(capsys.readouterr().out)
    if [r for _, r in rows4] != N4_ROWS:
        failures.append(("n=4", rows4))
    assert cli_main(["table", "--n", "5", "--format", "tsv"]) == 0
    rows5 = _tsv_rows(capsys.readouterr().out)
    if [r for _, r in rows5[-4:]] != N5_LAST:
        failures.append(("n=5 last four", rows5[-4:]))
    if [r for _, r in rows5[:2]] != N5_CORRECTED:
        failures.append(("n=5 corrected", rows5[:2]))
    if [label for label, _ in rows5[:2]] != ["-2*", "-1*"] or any(l.endswith("*") for l, _ in rows5[2:]):
        failures.append(("n=5 erratum flags", [l for l, _ in rows5]))
    if {e.row for e in betti.table(5).errata} != {-2, -1}:
        failures.append("n=5 errata list")
    secs = time.perf_counter() - t0
    if secs >= 1.0:
        failures.append(f"runtime {secs:.2f}s")
    record(1, "golden Betti tables for n=4 and n=5", failures, f"{secs:.2f}s")


# 2 ----------------------------------------------------------------------

def test_criterion_2_pipeline_equivalence():
    t0 = time.perf_counter()
    failures = []
    for n in (3, 4):
        for kind in KINDS:
            for ij in ((1, 2), (2, 3)):
                inst = Instance(InstanceSpec(n, kind, ij))
                tag = (n, kind, ij)
                try:
                    en = cx.eagon_northcott(inst)
                    tens = cx.tensor_principal(en, inst.gi(ij[0]))
                    tau = cx.tau_chain_map(inst)
                    cone = cx.mapping_cone(tau)
                    M = cx.minimalize(cone)
                except cx.ComplexError as exc:
                    failures.append((tag, str(exc)))
                    continue
                for name, C in (("EN", en), ("tensor", tens), ("cone", cone), ("minimal", M)):
                    if not cx.verify_complex(C).ok:
                        failures.append((tag, f"{name} d^2 != 0"))
                if betti.from_complex(M) != betti.base_row(n):
                    failures.append((tag, M.ranks))
                h0 = Ideal.of(M.h0_generators(), inst.ring)
                if not ideal_equal(h0, inst.stage_ideal(0), inst.order_c):
                    failures.append((tag, "H0 ideal"))
    secs = time.perf_counter() - t0
    record(2, "EN -> tensor -> cone -> minimalize gives base_row, d^2=0, minimal, H0 ideal", failures,
           f"{secs:.1f}s")


# 3 ----------------------------------------------------------------------

def test_criterion_3_groebner_claims():
    failures = []
    checked = 0
    for n in range(2, 6):
        for kind in KINDS:
            for ij in pivots(n):
                inst = Instance(InstanceSpec(n, kind, ij))
                if not is_groebner_basis(inst.minors, inst.order_a):
                    failures.append((n, kind, ij, "minors", inst.order_a.name))
                for s in range(0, n - 1):
                    checked += 1
                    if not is_groebner_basis(inst.stage_generators(s), inst.order_c):
                        failures.append((n, kind, ij, f"stage {s}", inst.order_c.name))
    record(3, "all S-pairs reduce to 0 (minors under A; minors + g's under C), n <= 5", failures,
           f"{checked} stage sets")


# 4 ----------------------------------------------------------------------

def test_criterion_4_transversality():
    failures = []
    checked = 0
    for n in range(2, 5):
        for kind in KINDS:
            for ij in pivots(n):
                inst = Instance(InstanceSpec(n, kind, ij))
                cases = [(-1, inst.minors_ideal(), ij[0], inst.order_a)]
                cases += [(s, inst.stage_ideal(s), inst.g_sequence[s + 2], inst.order_c)
                          for s in range(0, n - 2)]
                for s, I, nxt, order in cases:
                    checked += 1
                    J = Ideal.of([inst.gi(nxt)], inst.ring)
                    verdict = transversal_by_support(I, J, order)
                    oracle = transversal_oracle(I, J, order)
                    if verdict is not Verdict.TRANSVERSAL or not oracle:
                        failures.append((n, kind, ij, s, str(verdict), oracle))
    record(4, "support criterion and intersect == product at every stage, n <= 4", failures,
           f"{checked} cases")


# 5 ----------------------------------------------------------------------

def test_criterion_5_colon():
    failures = []
    for n in range(2, 5):
        for kind in KINDS:
            for ij in pivots(n):
                inst = Instance(InstanceSpec(n, kind, ij))
                c = colon(inst.stage_ideal(-1), inst.gi(ij[1]), inst.order_c)
                if not ideal_equal(c, inst.row_ideal(), inst.order_c):
                    failures.append((n, kind, ij))
    record(5, "(I_2 + <g_i>) : g_j equals the row-i variable ideal, n <= 4", failures)


# 6 ----------------------------------------------------------------------

def test_criterion_6_regular_sequence():
    failures = []
    for n in range(3, 7):
        for kind in KINDS:
            for ij in pivots(n):
                inst = Instance(InstanceSpec(n, kind, ij))
                fam = inst.regular_sequence_family()
                if len(fam) != n - 1 or not regular_sequence_by_coprime_lt(fam, inst.order_b):
                    failures.append((n, kind, ij))
    record(6, "coprime leading terms of the f_k family under ORDER_B, n = 3..6", failures)


# 7 ----------------------------------------------------------------------

_PROPERTY_FAILURES = []


def _property(name, fn):
    try:
        fn()
    except Exception as exc:  # collected and reported in the criterion line
        _PROPERTY_FAILURES.append((name, f"{type(exc).__name__}: {exc}"[:200]))


@settings(max_examples=25, deadline=None)
@given(st.permutations(list(range(6))), st.sampled_from(KINDS))
def _gb_uniqueness(perm, kind):
    inst = Instance(InstanceSpec(3, kind, (1, 2)))
    gens = inst.stage_generators(1)
    ref = buchberger(gens, inst.order_c)
    assert buchberger([gens[p] for p in perm], inst.order_c) == ref


def _gb_uniqueness_explicit():
    inst = Instance(InstanceSpec(4, "generic", (2, 3)))
    gens = inst.stage_generators(0)
    ref = buchberger(gens, inst.order_a)
    rng = random.Random(5)
    seen = set()
    while len(seen) < 5:
        perm = tuple(rng.sample(range(len(gens)), len(gens)))
        if perm in seen:
            continue
        seen.add(perm)
        assert buchberger([gens[p] for p in perm], inst.order_a) == ref


@settings(max_examples=30, deadline=None)
@given(st.integers(3, 15))
def _rows_alternate(n):
    for row in betti.table(n).rows.values():
        assert row[0] == 1 and betti.alternating_sum(row) == 0


@settings(max_examples=30, deadline=None)
@given(st.integers(3, 15))
def _pascal(n):
    t = betti.table(n)
    for k in range(1, n - 1):
        prev = t.rows[k - 1]
        assert t.rows[k] == [1] + [prev[p - 1] + prev[p] for p in range(1, len(prev))] + [n - 2]


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 2 ** 32), st.sampled_from([(3, "generic"), (3, "symmetric"), (4, "generic")]))
def _scan_order(seed, case):
    n, kind = case
    cone = cx.mapping_cone(cx.tau_chain_map(InstanceSpec(n, kind, (2, 3))))
    assert cx.minimalize(cone, rng=random.Random(seed)).ranks == betti.base_row(n)


def _probe():
    for n in (3, 4):
        M = cx.minimalize(cx.mapping_cone(cx.tau_chain_map(InstanceSpec(n))))
        rep = cx.exactness_probe(M, trials=3, seed=n)
        assert rep.passed == 3, rep.to_dict()
        # negative control: drop one top-degree generator; d^2 = 0 survives, exactness does not
        L = M.length
        bases = [list(b) for b in M.bases]
        del bases[L][-1]
        d = dict(M.d)
        d[L] = cx._delete(M.d[L], rows=set(), cols={len(M.bases[L]) - 1})
        broken = cx.FreeComplex(M.ring, bases, d)
        bad = cx.exactness_probe(broken, trials=3, seed=n)
        assert bad.passed == 0, bad.to_dict()


def test_criterion_7_property_suites():
    _PROPERTY_FAILURES.clear()
    for name, fn in [("reduced GB uniqueness (hypothesis permutations)", _gb_uniqueness),
                     ("reduced GB uniqueness (5 explicit permutations)", _gb_uniqueness_explicit),
                     ("alternating sum 0", _rows_alternate),
                     ("Pascal convolution", _pascal),
                     ("minimalize scan-order independence", _scan_order),
                     ("exactness probe 3/3 and negative control", _probe)]:
        _property(name, fn)
    record(7, "property suites (GB uniqueness, Euler, Pascal, scan order, exactness probe)",
           _PROPERTY_FAILURES)


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider",
                          "-W", "ignore::pytest.PytestAssertRewriteWarning"]))
