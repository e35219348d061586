"""Acceptance gate: one test per criterion, all checks exact."""

import random
import time
from fractions import Fraction
from math import factorial

import pytest

from ginlab.asymptotics import (
    CIType,
    asymptotic_multiplier_ideal_empirical,
    ci_asymptotic_multiplier_ideal,
    multiplier_ideal,
    predicted_polyhedron,
)
from ginlab.gin import gin_sequence, initial_ideal_of
from ginlab.groebner import buchberger, is_groebner, reduce, s_polynomial
from ginlab.poly import Field, Polynomial, RingSpec
from ginlab.polytope import complement_volume, contains_polyhedron, newton_polyhedron, scale, simplex_volume
from ginlab.staircase import (
    MonomialIdeal,
    contains_ideal,
    ek_betti,
    hilbert_function,
    is_strongly_stable,
    length_artinian,
    pure_powers,
)
from ginlab.verify import make_ci, verify_ci, verify_embedding_reduction

from oracles import multiplier_brute_2d

FP = Field(32003)
SEED = 0
F = Fraction


class Run:
    def __init__(self, t, n_max, replicate):
        start = time.perf_counter()
        self.t = t
        self.spec = make_ci(t, "generic", SEED, FP)
        self.report = verify_ci(self.spec, n_max, SEED, replicate=replicate)
        self.seq = gin_sequence(self.spec.generators, n_max, SEED)
        self.seconds = time.perf_counter() - start

    def entries(self):
        return sorted(self.seq.entries.items())


@pytest.fixture(scope="module")
def run23():
    return Run(CIType((2, 3)), 4, replicate=2)


@pytest.fixture(scope="module")
def run222():
    return Run(CIType((2, 2, 2)), 2, replicate=0)


@pytest.mark.criterion(1, "pure powers p1(n)=2n, p2(n)=3n+1 for generic (2,3), n<=4; Q replication n<=2; < 2 min")
def test_pure_power_exponents(run23):
    for n, (J, cert) in run23.entries():
        assert cert.accepted
        assert pure_powers(J) == (2 * n, 3 * n + 1)
    assert {n: s for n, (s, _) in run23.report.replication.items()} == {1: "pass", 2: "pass"}
    assert run23.seconds < 120


@pytest.mark.criterion(2, "lengths 6,18,36,60 for (2,3) and 8,32 for (2,2,2)")
def test_length_formula(run23, run222):
    assert [length_artinian(J) for _, (J, _) in run23.entries()] == [6, 18, 36, 60]
    assert [length_artinian(J) for _, (J, _) in run222.entries()] == [8, 32]


@pytest.mark.criterion(3, "p_1(n) <= ... <= p_r(n) in every entry")
def test_monotone_pure_powers(run23, run222):
    for run in (run23, run222):
        for _, (J, _) in run.entries():
            pp = pure_powers(J)[: run.t.r]
            assert None not in pp
            assert list(pp) == sorted(pp)


@pytest.mark.criterion(4, "strong stability of every gin; gin(I^i) gin(I^j) in gin(I^(i+j))")
def test_stability_and_graded_system(run23, run222):
    for run in (run23, run222):
        n_max = run.seq.n_max
        for _, (J, _) in run.entries():
            assert is_strongly_stable(J)
        expected = {(i, j) for i in range(1, n_max + 1) for j in range(i, n_max + 1) if i + j <= n_max}
        assert set(run.seq.containment) == expected
        for i, j in expected:
            assert contains_ideal(run.seq[i] * run.seq[j], run.seq[i + j])


@pytest.mark.criterion(5, "HF(R/gin(I^n), d) = HF(R/In(I^n), d) for d <= p_r(n)+2")
def test_hilbert_function_equality(run23, run222):
    for run in (run23, run222):
        r = run.t.r
        for n, (J, _) in run.entries():
            dmax = pure_powers(J)[r - 1] + 2
            identity = initial_ideal_of(run.spec.generators, n)
            assert hilbert_function(J, dmax) == hilbert_function(identity, dmax)


@pytest.mark.criterion(6, "type (2,3) in 4 variables: support in x1,x2 and equal to the 2-variable run")
def test_variable_support_and_reduction():
    out = verify_embedding_reduction(CIType((2, 3), 4), n_max=2, seed=SEED, field=FP)
    assert [row["n"] for row in out["entries"]] == [1, 2]
    for row in out["entries"]:
        assert row["support"] == "pass" and row["identical"] == "pass"
        assert all(g[2] == 0 and g[3] == 0 for g in row["generators"])
    assert out["overall"] == "pass"


@pytest.mark.criterion(7, "sum J_i/d_i >= n for every generator; scaled polytopes nested")
def test_limiting_polytope_containment(run23, run222):
    for run in (run23, run222):
        d = run.t.degrees
        scaled = {}
        for n, (J, _) in run.entries():
            for g in J.gens:
                assert sum(F(g[i], d[i]) for i in range(run.t.r)) >= n
            scaled[n] = scale(newton_polyhedron(J), F(1, n))
        for n in scaled:
            if n + 1 in scaled:
                assert contains_polyhedron(scaled[n], scaled[n + 1])


@pytest.mark.criterion(8, "r! length/n^r = 6(1+1/n) = 12, 9, 8, 15/2; predicted complement volume = 3")
def test_volume_convergence(run23):
    quotients = [F(factorial(2) * length_artinian(J), n ** 2) for n, (J, _) in run23.entries()]
    assert quotients == [F(12), F(9), F(8), F(15, 2)]
    assert quotients == [6 * (1 + F(1, n)) for n in range(1, 5)]
    assert [row.volume_quotient for row in run23.report.convergence.rows] == quotients
    vol = complement_volume(predicted_polyhedron(CIType((2, 3))))
    assert vol == F(2 * 3, factorial(2)) == simplex_volume([(2, 0), (0, 3)]) == 3


@pytest.mark.criterion(9, "type (2,2): J(c=1) stabilizes p=4 vs p=8 at (x1,x2); multiplier ideals vs lattice oracle on 25 ideals")
def test_multiplier_ideals():
    t = CIType((2, 2))
    spec = make_ci(t, "generic", SEED, FP)
    seq = gin_sequence(spec.generators, 8, SEED)
    res4, stable = asymptotic_multiplier_ideal_empirical(seq, 1, 4, 12)
    res8, _ = asymptotic_multiplier_ideal_empirical(seq, 1, 8, 12)
    assert stable is True
    assert res4.ideal == res8.ideal == MonomialIdeal([(1, 0), (0, 1)], 2)
    assert res4.complete and res8.complete
    assert ci_asymptotic_multiplier_ideal(t, 1).ideal == res4.ideal

    rng = random.Random(20240611)
    checked = 0
    for _ in range(25):
        gens = []
        for _ in range(rng.randint(1, 4)):
            deg = rng.randint(1, 6)
            a = rng.randint(0, deg)
            gens.append((a, deg - a))
        c = F(rng.randint(1, 12), 4)
        J = MonomialIdeal(gens, 2)
        # both sides enumerate the same degree range
        res = multiplier_ideal(J, c, 30)
        assert sorted(res.ideal.gens) == multiplier_brute_2d(J.gens, c, 30)
        checked += 1
    assert checked >= 20


@pytest.mark.criterion(10, "beta_{r-1, p_r(n)+r-1}(gin(I^n)) >= 1; EK table of (x^2, xy, y^3)")
def test_betti_inequality(run23, run222):
    for run in (run23, run222):
        r = run.t.r
        for _, (J, _) in run.entries():
            pr = pure_powers(J)[r - 1]
            assert ek_betti(J).get((r - 1, pr + r - 1), 0) >= 1
    table = ek_betti(MonomialIdeal([(2, 0), (1, 1), (0, 3)], 2))
    assert table == {(0, 2): 2, (0, 3): 1, (1, 3): 1, (1, 4): 1}


def _random_ideal(rng):
    m = rng.randint(2, 3)
    ring = RingSpec.standard(m)
    gens = []
    for _ in range(rng.randint(2, 4)):
        d = rng.randint(1, 3)
        exps = [e for e in _exponents(m, d)]
        terms = [(e, rng.randint(-5, 5)) for e in rng.sample(exps, min(len(exps), rng.randint(1, 4)))]
        f = Polynomial(ring, terms)
        if f:
            gens.append(f)
    return gens or [Polynomial.variable(ring, 0)]


def _exponents(m, d):
    if m == 1:
        return [(d,)]
    return [(a,) + rest for a in range(d, -1, -1) for rest in _exponents(m - 1, d - a)]


@pytest.mark.criterion(11, "10 random ideals: S-pairs reduce to 0; basis invariant under permutation/rescaling; < 1 min")
def test_groebner_soundness():
    rng = random.Random(11)
    start = time.perf_counter()
    for _ in range(10):
        gens = _random_ideal(rng)
        gb = list(buchberger(gens))
        for i in range(len(gb)):
            for j in range(i + 1, len(gb)):
                assert reduce(s_polynomial(gb[i], gb[j]), gb).is_zero()
        assert is_groebner(gb)
        for f in gens:
            assert reduce(f, gb).is_zero()
        shuffled = [f * F(rng.choice([-3, -1, 2, 5]), rng.choice([1, 7])) for f in gens]
        rng.shuffle(shuffled)
        assert list(buchberger(shuffled)) == gb
    assert time.perf_counter() - start < 60
