from fractions import Fraction
from math import gcd

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weylbraid.cyclo import CycloError, context, galois_conjugate, kernel, rank, sign_of_real
from weylbraid.eigen import complex_eigenspace
from weylbraid.rootsys import build_datum, element_from_word

CONDUCTORS = [3, 4, 5, 7, 8, 12]
coeffs = st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=4), min_size=1, max_size=12)


def elem(n, cs):
    return context(n).from_coeffs(cs)


class TestArithmetic:
    def test_cube_roots_sum(self):
        z = context(3).zeta()
        assert z + z**2 == -1

    def test_i_squared(self):
        z = context(4).zeta()
        assert z * z == -1

    def test_self_quotient(self):
        c = context(5)
        x = 1 + c.zeta()
        assert x / x == c.one()

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            context(5).one() / context(5).zero()

    def test_context_mismatch(self):
        with pytest.raises(CycloError):
            context(3).zeta() * context(5).zeta()

    @pytest.mark.parametrize("n", CONDUCTORS)
    def test_degree(self, n):
        assert context(n).degree == sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)

    @given(st.sampled_from(CONDUCTORS), coeffs, coeffs, coeffs)
    @settings(max_examples=150, deadline=None)
    def test_field_axioms(self, n, a, b, c):
        x, y, z = elem(n, a), elem(n, b), elem(n, c)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert x + y == y + x
        if not x.is_zero():
            assert x * x.inverse() == context(n).one()

    @given(st.sampled_from(CONDUCTORS), coeffs, coeffs)
    @settings(max_examples=150, deadline=None)
    def test_conjugation_automorphism(self, n, a, b):
        x, y = elem(n, a), elem(n, b)
        assert (x * y).conj() == x.conj() * y.conj()
        assert (x + y).conj() == x.conj() + y.conj()
        assert x.conj().conj() == x
        assert (x + x.conj()).is_real()


class TestParse:
    @given(st.sampled_from(CONDUCTORS), coeffs)
    @settings(max_examples=100, deadline=None)
    def test_round_trip(self, n, a):
        x = elem(n, a)
        assert context(n).parse(x.to_string("z")) == x

    def test_literals(self):
        c = context(5)
        assert c.parse("1/2 - 3*z^2 + z") == c.rational(1) / 2 - 3 * c.zeta(2) + c.zeta()
        assert c.parse("z^5") == c.one()

    @pytest.mark.parametrize("bad", ["", "z**2", "*z", "y", "1+", "z^"])
    def test_malformed(self, bad):
        with pytest.raises(CycloError):
            context(5).parse(bad)


class TestSign:
    def test_zero(self):
        assert sign_of_real(context(7).zero()) == 0

    def test_cube_root_cosine(self):
        z = context(3).zeta()
        assert sign_of_real(z + z.inverse()) == -1

    def test_fifth_root_cosine(self):
        z = context(5).zeta()
        assert sign_of_real(z + z.inverse()) == 1

    def test_not_real(self):
        with pytest.raises(CycloError):
            sign_of_real(context(5).zeta())

    def test_tiny_difference(self):
        # 2cos(2pi/12) - sqrt(3) is exactly zero; nudge it by 1/10^30
        c = context(12)
        z = c.zeta()
        root3 = z + z.inverse()
        assert sign_of_real(root3 * root3 - 3) == 0
        eps = c.rational(1) / 10**30
        assert sign_of_real(root3 * root3 - 3 + eps) == 1
        assert sign_of_real(root3 * root3 - 3 - eps) == -1

    @given(st.sampled_from(CONDUCTORS), coeffs)
    @settings(max_examples=1000, deadline=None)
    def test_agrees_with_high_precision(self, n, a):
        x = elem(n, a)
        r = x + x.conj()
        with mpmath.workdps(200):
            v = mpmath.re(r.to_complex(200))
            want = 0 if r.is_zero() else (1 if v > 0 else -1)
        assert sign_of_real(r) == want


class TestKernel:
    def test_identity(self):
        c = context(3)
        assert kernel(c, [[1, 0], [0, 1]]) == []

    def test_zero(self):
        c = context(3)
        ker = kernel(c, [[0, 0], [0, 0]])
        assert len(ker) == 2
        assert [tuple(x == 1 for x in v) for v in ker] == [(True, False), (False, True)]

    def test_coxeter_eigenvector(self):
        d = build_datum("A", 2)
        w = element_from_word(d, [1, 2])
        c = context(3)
        z = c.zeta()
        m = [[c.rational(w.action[i][j]) - (z if i == j else 0) for j in range(2)] for i in range(2)]
        assert len(kernel(c, m)) == 1
        assert len(complex_eigenspace(w, Fraction(1, 3))) == 1

    @given(
        st.sampled_from([5, 8]),
        st.integers(1, 4),
        st.integers(1, 4),
        st.lists(st.lists(st.integers(-2, 2), min_size=3, max_size=3), min_size=16, max_size=16),
    )
    @settings(max_examples=60, deadline=None)
    def test_rank_nullity(self, n, rows, cols, raw):
        c = context(n)
        m = [[c.from_coeffs(raw[i * cols + j]) for j in range(cols)] for i in range(rows)]
        ker = kernel(c, m)
        for v in ker:
            for row in m:
                acc = c.zero()
                for a, x in zip(row, v):
                    acc = acc + a * x
                assert acc.is_zero()
        assert rank(c, m) + len(ker) == cols


class TestGalois:
    def test_power(self):
        c = context(5)
        assert galois_conjugate(c.zeta(), 2) == c.zeta(2)

    def test_rational_fixed(self):
        c = context(12)
        q = c.rational(7) / 3
        assert all(galois_conjugate(q, k) == q for k in (1, 5, 7, 11))

    def test_cosine_sign_flip(self):
        c = context(8)
        x = c.zeta() + c.zeta().inverse()
        assert galois_conjugate(x, 3) == -x

    def test_not_coprime(self):
        with pytest.raises(CycloError):
            galois_conjugate(context(8).zeta(), 2)

    @given(st.sampled_from([5, 7, 12]), coeffs, coeffs)
    @settings(max_examples=60, deadline=None)
    def test_is_homomorphism(self, n, a, b):
        x, y = elem(n, a), elem(n, b)
        for k in range(1, n):
            if gcd(k, n) == 1:
                assert galois_conjugate(x * y, k) == galois_conjugate(x, k) * galois_conjugate(y, k)
