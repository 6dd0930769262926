import math
import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pelwedge.cyclofield import (
    CMType,
    RamifiedPrimeError,
    all_cm_types,
    check_spadesuit,
    cm_trace,
    cm_type,
    cyclo_field,
    cyclotomic_poly,
    frobenius_orbits,
    trace_LQ,
)
from pelwedge.hodge import HermitianModule
from pelwedge.instances import rand_element


def test_field_construction():
    F = cyclo_field(5)
    assert F.degree == 4
    assert F.units == (1, 2, 3, 4)
    with pytest.raises(ValueError):
        cyclo_field(6)  # 6 = 2 mod 4
    with pytest.raises(ValueError):
        cyclo_field(2)


def test_cyclotomic_polys():
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(5) == (1, 1, 1, 1, 1)
    assert cyclotomic_poly(8) == (1, 0, 0, 0, 1)
    assert cyclotomic_poly(12) == (1, 0, -1, 0, 1)


def test_conj_examples(F4, F5):
    i = F4.zeta
    assert i.conj() == -i
    assert F4.from_rational(3).conj() == F4.from_rational(3)
    z = F5.zeta
    assert z.conj() == F5.element([-1, -1, -1, -1])
    assert z.conj() == z ** 4


def test_trace_examples(F4, F5):
    assert trace_LQ(F4.one) == 2
    assert trace_LQ(F4.zeta) == 0
    assert trace_LQ(F5.zeta) == -1


@given(
    st.lists(st.integers(-20, 20), min_size=4, max_size=4),
    st.lists(st.integers(-20, 20), min_size=4, max_size=4),
)
def test_trace_is_additive_and_conjugation_invariant(a, b):
    F = cyclo_field(5)
    x = F.element(a)
    y = F.element(b)
    assert trace_LQ(x + y) == trace_LQ(x) + trace_LQ(y)
    assert trace_LQ(x.conj()) == trace_LQ(x)


def test_arithmetic_properties(F5):
    rng = random.Random(11)
    for _ in range(50):
        x = rand_element(F5, rng)
        y = rand_element(F5, rng)
        z = rand_element(F5, rng)
        assert (x + y) * z == x * z + y * z
        assert x * y == y * x
        assert x.conj().conj() == x
        assert (x * y).conj() == x.conj() * y.conj()


def test_inverse(F5, F8):
    rng = random.Random(3)
    for F in (F5, F8):
        for _ in range(20):
            x = rand_element(F, rng)
            if not x:
                continue
            assert x * x.inverse() == F.one
            assert x ** -2 == (x.inverse()) ** 2


def test_trace_matches_embedding_sum(F5):
    rng = random.Random(5)
    with mpmath.workprec(140):
        for _ in range(25):
            x = rand_element(F5, rng)
            numeric = mpmath.fsum(x.embed(k, 140) for k in F5.units)
            exact = trace_LQ(x)
            target = mpmath.mpf(exact.numerator) / exact.denominator
            assert abs(numeric - target) < mpmath.mpf(10) ** -20


def test_norm_nonnegative(F8):
    rng = random.Random(9)
    for _ in range(20):
        x = rand_element(F8, rng)
        norm = x * x.conj()
        for k in F8.units:
            value = norm.embed(k, 96)
            assert mpmath.im(value) < 1e-20
            assert mpmath.re(value) >= -1e-20


def test_cm_type_validation(F5):
    with pytest.raises(ValueError):
        cm_type(F5, [1, 4])  # conjugate pair
    with pytest.raises(ValueError):
        cm_type(F5, [1])  # too small
    t = cm_type(F5, [1, 2])
    assert t.conjugate().members == frozenset({3, 4})


def test_all_cm_types(F5, F8):
    for F in (F5, F8):
        types = all_cm_types(F)
        assert len(types) == 2 ** (F.degree // 2)
        assert len({t.members for t in types}) == len(types)


def test_cm_trace_examples(F4, F5):
    t = cm_trace(cm_type(F4, [1]), F4.zeta, 96)
    assert abs(t - mpmath.mpc(0, 1)) < 1e-25
    # x = 1 sums to phi(m)/2 for any CM type
    for F in (F4, F5):
        for phi in all_cm_types(F):
            assert abs(cm_trace(phi, F.one, 96) - F.degree // 2) < 1e-25
    with mpmath.workprec(110):
        expected = mpmath.expjpi(mpmath.mpf(2) / 5) + mpmath.expjpi(mpmath.mpf(4) / 5)
        assert abs(cm_trace(cm_type(F5, [1, 2]), F5.zeta, 96) - expected) < 1e-20


def test_cm_trace_conjugate_sum(F5):
    rng = random.Random(17)
    for phi in all_cm_types(F5):
        x = rand_element(F5, rng)
        total = cm_trace(phi, x, 128) + cm_trace(phi.conjugate(), x, 128)
        exact = trace_LQ(x)
        assert abs(total - mpmath.mpf(exact.numerator) / exact.denominator) < 1e-25


def test_frobenius_orbit_examples():
    assert frobenius_orbits(5, 11).orbits == ((1,), (2,), (3,), (4,))
    assert frobenius_orbits(5, 2).orbits == ((1, 2, 3, 4),)
    assert frobenius_orbits(4, 5).orbits == ((1,), (3,))
    with pytest.raises(RamifiedPrimeError):
        frobenius_orbits(4, 2)


@pytest.mark.parametrize("m,p", [(5, 2), (5, 3), (8, 3), (8, 5), (12, 5), (7, 2)])
def test_frobenius_orbit_structure(m, p):
    part = frobenius_orbits(m, p)
    elements = [k for orbit in part.orbits for k in orbit]
    assert sorted(elements) == sorted({k for k in range(1, m) if math.gcd(k, m) == 1})
    sizes = {len(o) for o in part.orbits}
    assert len(sizes) == 1  # all orbits share the order of p mod m
    for orbit in part.orbits:
        assert all((k * p) % m in orbit for k in orbit)


def _diag_module(F, entry, n):
    return HermitianModule(
        F, [[entry if a == b else F.zero for b in range(n)] for a in range(n)]
    )


def test_spadesuit_all_pass(F4):
    i = F4.zeta
    rep = check_spadesuit(
        cm_type(F4, [3]), cm_type(F4, [1]), 5, 3,
        _diag_module(F4, i, 1), _diag_module(F4, i, 2),
    )
    assert rep.all_hold
    assert rep.r == 1
    assert rep.pi == ((1,),)
    assert rep.pi_star == ((3,),)


def test_spadesuit_coprime_fail(F4):
    i = F4.zeta
    rep = check_spadesuit(
        cm_type(F4, [3]), cm_type(F4, [1]), 3, 3,
        _diag_module(F4, i, 1), _diag_module(F4, i, 2),
    )
    assert not rep.coprime_level
    assert rep.perfect_at_p


def test_spadesuit_orbit_fail(F5):
    d = F5.zeta - F5.zeta.conj()
    rep = check_spadesuit(
        cm_type(F5, [3, 4]), cm_type(F5, [1, 2]), 2, 3,
        _diag_module(F5, d, 1), _diag_module(F5, d, 2),
    )
    assert not rep.orbit_aligned
    assert rep.perfect_at_p and rep.coprime_level


def test_spadesuit_deterministic(F4):
    i = F4.zeta
    args = (cm_type(F4, [3]), cm_type(F4, [1]), 5, 3,
            _diag_module(F4, i, 1), _diag_module(F4, i, 2))
    assert check_spadesuit(*args) == check_spadesuit(*args)


def test_spadesuit_ramified_rejected(F4):
    i = F4.zeta
    with pytest.raises(RamifiedPrimeError):
        check_spadesuit(
            cm_type(F4, [3]), cm_type(F4, [1]), 2, 3,
            _diag_module(F4, i, 1), _diag_module(F4, i, 2),
        )
