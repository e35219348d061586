from fractions import Fraction

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from ginlab.gin import (
    GinCertificate,
    GinError,
    derive_seed,
    gin,
    gin_sequence,
    initial_ideal_of,
    sample_change,
)
from ginlab.poly import Field, Polynomial, RingSpec, parse_polynomial
from ginlab.staircase import MonomialIdeal, hilbert_function, is_strongly_stable

from oracles import gin_two_variables

R2 = RingSpec(("x", "y"))
R3 = RingSpec.standard(3)


def P(text, ring=R2):
    return parse_polynomial(text, ring)


def test_gin_of_two_squares():
    J, cert = gin([P("x^2"), P("y^2")], seed=1)
    assert J.gens == ((2, 0), (1, 1), (0, 3))
    assert cert.accepted and len(cert.seeds_used) == 2


def test_gin_of_a_monomial_is_its_pushed_version():
    # gin(y^2) in two variables is (x^2)
    J, _ = gin([P("y^2")], seed=3)
    assert J.gens == ((2, 0),)


def test_gin_maximal_ideal_is_itself():
    gens = [parse_polynomial(v, R3) for v in ("x1", "x2", "x3")]
    J, _ = gin(gens, seed=0)
    assert J == MonomialIdeal.maximal(3)


def test_gin_is_reproducible():
    gens = [P("x^2 + 3*x*y"), P("y^3 - x^2*y")]
    assert gin(gens, seed=42) == gin(gens, seed=42)


def test_gin_prime_field():
    ring = RingSpec(("x", "y"), Field(32003))
    J, cert = gin([parse_polynomial("x^2", ring), parse_polynomial("y^2", ring)], seed=5)
    assert J.gens == ((2, 0), (1, 1), (0, 3))
    assert cert.field_used == "F32003"


def test_gin_rejects_bad_input():
    with pytest.raises(ValueError, match="homogeneous"):
        gin([P("x^2 + y")], seed=0)
    with pytest.raises(ValueError):
        gin([], seed=0)
    with pytest.raises(ValueError):
        gin([P("x")], seed=0, power=0)


def test_gin_fails_with_tiny_height():
    # height 0 gives only the zero matrix, which is never invertible
    with pytest.raises(GinError):
        gin([P("x^2")], seed=0, height=0)


def test_uncertified_when_samples_disagree():
    # over F_2 with height 1 the sampled changes are few; x*y has non-generic
    # images often enough that some seed produces a disagreement or instability
    ring = RingSpec(("x", "y"), Field(2))
    f = parse_polynomial("x*y", ring)
    outcomes = set()
    for s in range(30):
        try:
            gin([f], seed=s, height=1, rounds=1)
            outcomes.add("ok")
        except GinError as err:
            assert "differing generators" in str(err) or "not strongly stable" in str(err)
            outcomes.add("error")
    assert "error" in outcomes


def test_sample_change_is_invertible_and_deterministic():
    g1 = sample_change(R3, 17)
    g2 = sample_change(R3, 17)
    assert g1.entries == g2.entries
    assert all(abs(x) <= 1000 for row in g1.entries for x in row)


def test_derive_seed_stable():
    assert derive_seed(0, 1) == derive_seed(0, 1)
    assert derive_seed(0, 1) != derive_seed(0, 2)
    assert 0 <= derive_seed(123, "x") < 2 ** 63


def test_certificate_json_roundtrip():
    cert = GinCertificate((1, 2), True, True, "Q", 1000)
    assert GinCertificate.from_json(cert.to_json()) == cert


def test_gin_sequence_of_ci():
    seq = gin_sequence([P("x^2"), P("y^3")], 3, seed=0)
    assert seq.n_max == 3
    assert seq.is_graded_system()
    assert set(seq.containment) == {(1, 1), (1, 2)}
    for n in (1, 2, 3):
        assert is_strongly_stable(seq[n])


def test_initial_ideal_of_power_matches_direct_power():
    gens = [P("x^2 - y^2"), P("x*y")]
    direct = initial_ideal_of([g1 * g2 for g1 in gens for g2 in gens])
    assert initial_ideal_of(gens, power=2) == direct


forms2 = st.lists(
    st.tuples(st.integers(1, 3), st.lists(st.integers(-4, 4), min_size=4, max_size=4)),
    min_size=1, max_size=3,
)


def _build(spec):
    out = []
    for d, coeffs in spec:
        f = Polynomial(R2, [((d - i, i), c) for i, c in zip(range(d + 1), coeffs)])
        if f:
            out.append(f)
    return out


@settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(forms2, st.integers(0, 10 ** 6))
def test_gin_two_variables_matches_dimension_oracle(spec, seed):
    gens = _build(spec)
    if not gens:
        return
    J, cert = gin(gens, seed)
    d_max = max(J.max_degree(), max(g.degree() for g in gens)) + 1
    expected = gin_two_variables([{e: Fraction(c) for e, c in g.terms} for g in gens], d_max)
    assert sorted(J.gens) == expected


@settings(max_examples=15, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(forms2, st.integers(0, 10 ** 6))
def test_gin_preserves_hilbert_function(spec, seed):
    gens = [Polynomial(R3, [((d - i, i, 0), c) for i, c in zip(range(d + 1), cs)] + [((0, 0, d), 1)])
            for d, cs in spec]
    J, _ = gin(gens, seed)
    assert hilbert_function(J, 6) == hilbert_function(initial_ideal_of(gens), 6)
    assert is_strongly_stable(J)
