"""Acceptance criteria: exact equalities at full corpus scale.

Each criterion prints one PASS/FAIL line with its wall-clock time, then
asserts both the identity outcomes and the time budget.  All comparisons
are exact (rational arithmetic, tolerance zero).
"""

import time

from flagtutte import (AuxPolynomial, Matroid, beta_polynomial,
                       brion_example_report, characteristic, check_beta_higgs,
                       check_direct_sum, check_duality, check_kchi_conjecture,
                       check_latticepoints, check_loop_coloop_divisibility,
                       check_lvt_delcont, check_lvt_special, flag,
                       flag_corpus, h_candidate_lv, h_polynomial, kt,
                       matroid_corpus, quotient_corpus, tutte,
                       verify_delcont, verify_kt22)

U = Matroid.uniform

X = AuxPolynomial.variable("x")
Y = AuxPolynomial.variable("y")
S = AuxPolynomial.variable("s")
Q = AuxPolynomial.variable("q")


def _announce(capsys, num, label, t0, ok):
    elapsed = time.perf_counter() - t0
    with capsys.disabled():
        print("\nACCEPTANCE %d %s: %s (%.1f s)"
              % (num, label, "PASS" if ok else "FAIL", elapsed))
    return elapsed


def test_acceptance_01_vertex_cone_example(capsys):
    t0 = time.perf_counter()
    report = brion_example_report()
    ok = report.passed and len(report.details) == 4
    elapsed = _announce(capsys, 1, "vertex-cone sum reproduction", t0, ok)
    assert ok, report.details
    assert elapsed < 1.0


def test_acceptance_02_kt_frozen_values(capsys):
    t0 = time.perf_counter()
    times = []
    checks = []
    for fm, expect in [
        (flag(U(1, 3), U(2, 3)),
         X ** 2 * Y ** 2 + X ** 2 * Y + X * Y ** 2 + X ** 2
         + 2 * X * Y + Y ** 2),
        (flag(U(0, 2), U(1, 2)), X * Y ** 2 + Y ** 2),
        (flag(U(1, 2), U(1, 2)), X * Y + X + Y),
        (flag(U(1, 2), U(2, 2)), X ** 2 * Y + X ** 2),
    ]:
        t1 = time.perf_counter()
        got = kt(fm)
        times.append(time.perf_counter() - t1)
        checks.append(got == expect)
    ok = all(checks)
    _announce(capsys, 2, "kt frozen values and slices", t0, ok)
    assert ok, checks
    assert all(t < 1.0 for t in times), times


def test_acceptance_03_kt_equals_tutte_on_corpus(capsys):
    t0 = time.perf_counter()
    mats = matroid_corpus()
    assert len(mats) >= 200
    failures = [m.key() for m in mats if kt(flag(m)) != tutte(m)]
    ok = not failures
    elapsed = _announce(
        capsys, 3, "kt equals tutte on %d matroids" % len(mats), t0, ok)
    assert ok, failures[:5]
    assert elapsed < 120.0


def test_acceptance_04_kt22_identity_on_corpus(capsys):
    t0 = time.perf_counter()
    pairs = quotient_corpus()
    failures = []
    for m1, m2 in pairs:
        report = verify_kt22(flag(m1, m2))
        if not report.passed:
            failures.append((m1.key(), m2.key()))
    spot = verify_kt22(flag(U(1, 3), U(2, 3)))
    spot_ok = (spot.data["kt_at_2_2"] == 48 and spot.data["pseudo_bases"] == 6)
    ok = not failures and spot_ok
    elapsed = _announce(
        capsys, 4, "pseudo-basis identity on %d quotients" % len(pairs),
        t0, ok)
    assert ok, failures[:5]
    assert elapsed < 300.0


def test_acceptance_05_delcont_on_corpus(capsys):
    t0 = time.perf_counter()
    mats = matroid_corpus()
    failures = []
    checked = 0
    for m in mats:
        bad = m.loops() | m.coloops()
        for e in range(1, m.n + 1):
            if e in bad:
                continue
            if not verify_delcont(m, e, ell=2).passed:
                failures.append((m.key(), e, 2))
            checked += 1
            if m.n <= 5:
                if not verify_delcont(m, e, ell=3).passed:
                    failures.append((m.key(), e, 3))
                checked += 1
    ok = not failures
    elapsed = _announce(
        capsys, 5, "deletion-contraction, %d instances" % checked, t0, ok)
    assert ok, failures[:5]
    assert elapsed < 600.0


def test_acceptance_06_lvt_suite_on_corpus(capsys):
    t0 = time.perf_counter()
    pairs = quotient_corpus()
    failures = []
    for m1, m2 in pairs:
        if not check_lvt_special(m1, m2).passed:
            failures.append(("special", m1.key(), m2.key()))
        if not check_lvt_delcont(m1, m2).passed:
            failures.append(("delcont", m1.key(), m2.key()))
    ok = not failures
    elapsed = _announce(
        capsys, 6, "three-variable suite on %d quotients" % len(pairs),
        t0, ok)
    assert ok, failures[:5]
    assert elapsed < 60.0


def test_acceptance_07_h_polynomial(capsys):
    t0 = time.perf_counter()
    eligible = [fm for fm in flag_corpus()
                if fm.n <= 5 and not fm.constituents[0].loops()
                and not fm.constituents[-1].coloops()]
    failures = []
    for fm in eligible:
        try:
            h_polynomial(fm)  # raises if the value leaves Q[uv]
        except Exception as exc:  # noqa: BLE001 - report below
            failures.append((fm.key(), repr(exc)))
    base_ok = h_polynomial(flag(U(1, 2))) == S
    _, in_uv = h_candidate_lv(flag(U(2, 4), U(3, 4)))
    control_ok = not in_uv  # the analogue must be detected off-diagonal
    ok = not failures and base_ok and control_ok and len(eligible) >= 50
    elapsed = _announce(
        capsys, 7, "h-polynomial on %d flags plus negative control"
        % len(eligible), t0, ok)
    assert ok, (failures[:5], base_ok, control_ok, len(eligible))
    assert elapsed < 120.0


def test_acceptance_08_beta_suite(capsys):
    t0 = time.perf_counter()
    pairs = [(m1, m2) for m1, m2 in quotient_corpus()
             if m1.rank_value < m2.rank_value]
    failures = []
    for m1, m2 in pairs:
        if not check_beta_higgs(m1, m2).passed:
            failures.append(("higgs", m1.key(), m2.key()))
        if m1.rank_value == 0:
            beta, _ = beta_polynomial(m1, m2)
            if beta != characteristic(m2):
                failures.append(("chi", m1.key(), m2.key()))
    beta, reduced = beta_polynomial(U(1, 3), U(2, 3))
    spot_ok = beta == 2 * Q - 2 and reduced == AuxPolynomial.constant(2)
    ok = not failures and spot_ok
    elapsed = _announce(
        capsys, 8, "beta suite on %d gapped quotients" % len(pairs), t0, ok)
    assert ok, failures[:5]
    assert elapsed < 60.0


def test_acceptance_09_first_properties(capsys):
    t0 = time.perf_counter()
    flags = flag_corpus()
    failures = []
    for fm in flags:
        if not check_duality(fm).passed:
            failures.append(("duality", fm.key()))
    for fm in flags:
        if not check_latticepoints(fm).passed:
            failures.append(("latticepoints", fm.key()))
    for fm in flags:
        if fm.constituents[0].loops() or fm.constituents[-1].coloops():
            if not check_loop_coloop_divisibility(fm).passed:
                failures.append(("divisibility", fm.key()))
    sum_pairs = [
        (flag(U(1, 2)), flag(U(1, 3))),
        (flag(U(1, 2), U(2, 2)), flag(U(1, 3), U(2, 3))),
        (flag(U(1, 2), U(1, 2)), flag(U(2, 3), U(2, 3))),
        (flag(Matroid.from_bases(3, [{1}, {3}])), flag(U(2, 4))),
    ]
    for a, b in sum_pairs:
        if not check_direct_sum(a, b).passed:
            failures.append(("direct-sum", a.key(), b.key()))
    ok = not failures
    elapsed = _announce(
        capsys, 9, "duality, lattice points, divisibility, direct sums "
        "on %d flags" % len(flags), t0, ok)
    assert ok, failures[:5]
    assert elapsed < 300.0


def test_acceptance_10_kchi_conjecture_monitor(capsys):
    t0 = time.perf_counter()
    mats = [m for m in matroid_corpus() if not m.loops()]
    divergences = []
    for m in mats:
        report = check_kchi_conjecture(m)
        assert "matches" in report.data and "value" in report.data
        if not report.data["matches"]:
            divergences.append((m.key(), report.data["value"]))
    _announce(capsys, 10,
              "conjecture observed on %d loopless matroids, %d divergences"
              % (len(mats), len(divergences)), t0, True)
    if divergences:
        with capsys.disabled():
            print("  CONJECTURE DIVERGENCES (reported, not failing):")
            for key, value in divergences[:10]:
                print("    %s -> %s" % (key, value.canonical_str()))
    # non-blocking by design: divergences are reported, never asserted
    assert len(mats) >= 100
