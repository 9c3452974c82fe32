import pytest

from weylbraid.eigen import dim_fixed_space, l_good
from weylbraid.orbits import (
    OrbitError,
    OrbitParam,
    OrbitSetting,
    chi,
    codim,
    codim_standard,
    dual_partition,
    enumerate_orbits,
    group_dimension,
    lusztig_phi,
    lusztig_psi,
    orbit_from_json,
    orbit_to_json,
    psi_twisted_a_direct,
    validate_orbit,
)
from weylbraid.rootsys import (
    BCD,
    TwistedA,
    TypeA,
    class_representative,
    enumerate_classes,
    identify_class,
    partitions,
)


def ones(k):
    return (1,) * k


def settings_in_scope():
    out = [OrbitSetting("A", n, 0) for n in range(1, 6)]
    out += [OrbitSetting("A", n, 2, "D") for n in range(1, 6)]
    out += [OrbitSetting(l, n, 2) for l in "BC" for n in range(2, 5)]
    out += [OrbitSetting("D", n, 2, c) for n in (4, 5) for c in "GD"]
    out += [OrbitSetting(l, n, 0) for l in "BC" for n in range(2, 5)] + [OrbitSetting("D", 4, 0)]
    return out


def sid(s):
    return f"{s.name}-char{s.char}"


class TestSetting:
    @pytest.mark.parametrize(
        "args",
        [("E", 6, 0, "G"), ("B", 3, 2, "D"), ("D", 4, 0, "D"), ("A", 3, 3, "G"), ("A", 0, 0, "G"), ("C", 1, 2, "G"), ("A", 2, 0, "X")],
    )
    def test_rejected(self, args):
        with pytest.raises(OrbitError):
            OrbitSetting(*args)

    def test_group_dimension(self):
        assert [group_dimension(l, 3) for l in "ABCD"] == [15, 21, 21, 15]


class TestEnumerate:
    def test_a2(self):
        for char in (0, 2):
            assert [o.nu for o in enumerate_orbits(OrbitSetting("A", 2, char))] == [(1, 1, 1), (2, 1), (3,)]

    def test_c2_char2(self):
        got = set(enumerate_orbits(OrbitSetting("C", 2, 2)))
        want = {
            OrbitParam((4,), ((4, 1),)),
            OrbitParam((2, 2), ((2, 0),)),
            OrbitParam((2, 2), ((2, 1),)),
            OrbitParam((2, 1, 1), ((2, 1),)),
            OrbitParam(ones(4)),
        }
        assert got == want

    def test_twisted_a1(self):
        got = enumerate_orbits(OrbitSetting("A", 1, 2, "D"))
        assert got == [OrbitParam((1, 1), ((1, 0),)), OrbitParam((1, 1), ((1, 1),))]

    def test_d4_split(self):
        orbits = enumerate_orbits(OrbitSetting("D", 4, 2))
        split = [o for o in orbits if o.marker]
        assert {(o.nu, o.marker) for o in split} == {(nu, m) for nu in [(4, 4), (2, 2, 2, 2)] for m in ("I", "II")}
        assert all(o.eps_of(k) == 0 for o in split for k, _ in o.eps)

    def test_d_components_by_parity(self):
        for c, parity in (("G", 0), ("D", 1)):
            assert all(len(o.nu) % 2 == parity for o in enumerate_orbits(OrbitSetting("D", 5, 2, c)))

    def test_char0_bcd(self):
        assert {o.nu for o in enumerate_orbits(OrbitSetting("B", 2, 0))} == {(5,), (3, 1, 1), (2, 2, 1), ones(5)}
        # ten partitions, and the two very even ones split
        assert len(enumerate_orbits(OrbitSetting("D", 4, 0))) == 12

    def test_validate(self):
        s = OrbitSetting("C", 2, 2)
        validate_orbit(s, OrbitParam((2, 2), ((2, 0),)))
        with pytest.raises(OrbitError):
            validate_orbit(s, OrbitParam((3, 1)))
        with pytest.raises(OrbitError):
            validate_orbit(s, OrbitParam((2, 1, 1), ((2, 0),)))


class TestPhi:
    def test_type_a_identity_map(self):
        s = OrbitSetting("A", 2, 0)
        assert lusztig_phi(s, TypeA((3,))) == OrbitParam((3,))

    def test_c2_char2_doubling(self):
        assert lusztig_phi(OrbitSetting("C", 2, 2), BCD((1,), (1,))) == OrbitParam((2, 1, 1), ((2, 1),))

    def test_b2_char0_psi_correction(self):
        assert lusztig_phi(OrbitSetting("B", 2, 0), BCD((2,), ())) == OrbitParam((5,))

    @pytest.mark.parametrize("label,size", [("B", lambda n: 2 * n + 1), ("C", lambda n: 2 * n), ("D", lambda n: 2 * n)])
    def test_char0_images_have_the_right_size(self, label, size):
        for n in range(2, 6):
            s = OrbitSetting(label, n, 0)
            valid = set(enumerate_orbits(s))
            for cp in enumerate_classes(s.datum()):
                o = lusztig_phi(s, cp)
                assert sum(o.nu) == size(n) and o in valid

    def test_twisted_a_rule(self):
        s = OrbitSetting("A", 3, 2, "D")
        assert lusztig_phi(s, TwistedA((2, 2))) == OrbitParam(ones(4), ((1, 0),))
        assert lusztig_phi(s, TwistedA(ones(4))) == OrbitParam(ones(4), ((1, 1),))
        assert lusztig_phi(s, TwistedA((4,))) == OrbitParam((2, 2))

    def test_split_marker_passes_through(self):
        s = OrbitSetting("D", 4, 2)
        for m in ("I", "II"):
            assert lusztig_phi(s, BCD((), (2, 2), m)).marker == m

    def test_wrong_class(self):
        with pytest.raises(OrbitError):
            lusztig_phi(OrbitSetting("A", 2, 0), BCD((1,), (1,)))
        with pytest.raises(OrbitError):
            lusztig_phi(OrbitSetting("D", 4, 2), BCD((1,), (3,)))


class TestPsi:
    def test_type_a(self):
        s = OrbitSetting("A", 4, 0)
        for o in enumerate_orbits(s):
            assert lusztig_psi(s, o) == TypeA(o.nu)

    @pytest.mark.parametrize("n", range(1, 7))
    def test_twisted_a_all_ones_marked(self, n):
        s = OrbitSetting("A", n, 2, "D")
        assert lusztig_psi(s, OrbitParam(ones(n + 1), ((1, 1),))) == TwistedA(ones(n + 1))

    @pytest.mark.parametrize("n", [1, 3, 5])
    def test_twisted_a_all_ones_unmarked(self, n):
        s = OrbitSetting("A", n, 2, "D")
        cp = lusztig_psi(s, OrbitParam(ones(n + 1), ((1, 0),)))
        assert cp == TwistedA((2,) * ((n + 1) // 2))
        # this class contains delta itself
        assert identify_class(s.datum().identity(1)) == cp

    @pytest.mark.parametrize("n", range(1, 7))
    def test_twisted_a_direct_rules_agree(self, n):
        s = OrbitSetting("A", n, 2, "D")
        for o in enumerate_orbits(s):
            assert psi_twisted_a_direct(o) == lusztig_psi(s, o)

    @pytest.mark.parametrize("s", settings_in_scope(), ids=sid)
    def test_section_and_surjectivity(self, s):
        for o in enumerate_orbits(s):
            cp = lusztig_psi(s, o)
            assert lusztig_phi(s, cp) == o

    @pytest.mark.parametrize("s", settings_in_scope(), ids=sid)
    def test_codim_identity(self, s):
        d = s.datum()
        for o in enumerate_orbits(s):
            cp = lusztig_psi(s, o)
            assert codim(s, o) == l_good(d, cp) + dim_fixed_space(class_representative(d, cp))


class TestCodim:
    @pytest.mark.parametrize("n", range(1, 8))
    def test_regular_type_a(self, n):
        assert codim(OrbitSetting("A", n, 0), OrbitParam((n + 1,))) == n

    @pytest.mark.parametrize("n", range(1, 7))
    def test_twisted_a_boundary(self, n):
        s = OrbitSetting("A", n, 2, "D")
        assert codim(s, OrbitParam(ones(n + 1), ((1, 1),))) == n * (n + 1) // 2
        if (n + 1) % 2 == 0:
            assert codim(s, OrbitParam(ones(n + 1), ((1, 0),))) == (n + 1) * (n + 2) // 2

    @pytest.mark.parametrize("n", range(1, 8))
    def test_type_a_matches_dual_partition(self, n):
        for p in partitions(n + 1):
            assert codim(OrbitSetting("A", n, 0), OrbitParam(p)) == codim_standard("A", p)

    @pytest.mark.parametrize("n", range(2, 8))
    def test_char2_matches_char0_c(self, n):
        c2, c0 = OrbitSetting("C", n, 2), OrbitSetting("C", n, 0)
        for o in enumerate_orbits(c0):
            eps = tuple((k, 1) for k in sorted(set(o.nu)) if k % 2 == 0)
            assert codim(c2, OrbitParam(o.nu, eps)) == codim(c0, o)

    @pytest.mark.parametrize("n", range(2, 8))
    def test_char2_matches_char0_d(self, n):
        d2, d0 = OrbitSetting("D", n, 2), OrbitSetting("D", n, 0)
        valid = set(enumerate_orbits(d2))
        for o in enumerate_orbits(d0):
            eps = tuple((k, 0) for k in sorted(set(o.nu)) if k % 2 == 0)
            o2 = OrbitParam(o.nu, eps, o.marker)
            if o2 in valid:
                assert codim(d2, o2) == codim(d0, o)

    @pytest.mark.parametrize("label,n", [("B", 3), ("C", 4), ("D", 4), ("D", 5)])
    def test_trivial_orbit_has_full_codim(self, label, n):
        assert codim(OrbitSetting(label, n, 2), OrbitParam(ones(2 * n))) == group_dimension(label, n)

    def test_invalid(self):
        with pytest.raises(OrbitError):
            codim(OrbitSetting("C", 2, 2), OrbitParam((3, 1)))


class TestChi:
    @pytest.mark.parametrize("n", range(1, 7))
    def test_top_block_type_c(self, n):
        # t = n and the comparison runs against 2n, so chi = n
        assert chi(2 * n, n, "C", True) == n

    @pytest.mark.parametrize("label,sign", [("B", -1), ("C", -1), ("D", 1)])
    def test_odd_block_sum(self, label, sign):
        for n in range(3, 8):
            for nu1 in range(1, n + 1, 2):
                for m1 in range(2, 2 * n // nu1 + 1, 2):
                    assert m1 * chi(nu1, n, label, False) == m1 * (nu1 + sign) // 2

    def test_wrong_type(self):
        with pytest.raises(OrbitError):
            chi(2, 2, "A", False)


def test_dual_partition():
    assert dual_partition((3, 1)) == (2, 1, 1)
    assert dual_partition(()) == ()


def test_json_round_trip():
    for o in [OrbitParam((2, 2), ((2, 0),), "I"), OrbitParam((3,)), OrbitParam((1, 1), ((1, 1),))]:
        assert orbit_from_json(orbit_to_json(o)) == o
