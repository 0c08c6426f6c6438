"""Matrix factorizations: axioms, morphisms, homotopies, constructions."""

import random

import pytest

from mfkit.errors import (
    AxiomViolation,
    CommutationViolation,
    EndpointMismatch,
    HomotopyViolation,
    TowerMismatch,
)
from mfkit.mfcat import (
    coker_presentation,
    compose_morphisms,
    direct_sum,
    dual_mf,
    identity_morphism,
    mapping_cone,
    suspend,
    verify_homotopy,
    verify_mf,
    verify_morphism,
    zero_morphism,
)
from mfkit.tower import Level, RingMatrix, det

from .genutil import rand_derived_object, rand_nullhomotopic_morphism


def mat(tower, rows):
    return RingMatrix.from_strings(tower, Level.MID, rows)


class TestVerify:
    def test_uv_object(self, towers):
        t = towers["uv"]
        mf = verify_mf(mat(t, [["u"]]), mat(t, [["v"]]))
        assert mf.rank_f == mf.rank_g == 1

    def test_square_over_mid_quotient(self, towers):
        # phi = psi = [x] factors x^2 over k[x,y]/(y^2).
        t = towers["two_squares"]
        mf = verify_mf(mat(t, [["x"]]), mat(t, [["x"]]))
        assert mf.phi.entries[0][0] == t.ring.parse("x")

    def test_axiom_violation_located(self, towers):
        t = towers["uv"]
        with pytest.raises(AxiomViolation) as err:
            verify_mf(mat(t, [["u"]]), mat(t, [["u"]]))
        assert (err.value.row, err.value.col) == (0, 0)
        assert err.value.identity == "psi@phi"
        assert err.value.found == "u^2"

    def test_rank_zero_object(self, towers):
        t = towers["uv"]
        z = RingMatrix.zeros(t, Level.MID, 0, 0)
        mf = verify_mf(z, z)
        assert mf.rank_f == 0


class TestMorphisms:
    def test_identity_verifies(self, objects):
        for mf in objects.values():
            identity_morphism(mf)

    def test_w_scaled_identity(self, objects):
        a = objects["A"]
        t = a.tower
        th = verify_morphism(a, a, mat(t, [["u*v"]]), mat(t, [["u*v"]]))
        assert th.f.entries[0][0] == t.w

    def test_commutation_violation(self, objects):
        a = objects["A"]
        t = a.tower
        with pytest.raises(CommutationViolation):
            verify_morphism(a, a, mat(t, [["u"]]), mat(t, [["v"]]))

    def test_composition_is_componentwise(self, objects):
        rng = random.Random(31)
        a = objects["B"]
        th1, _, _ = rand_nullhomotopic_morphism(a, a, rng)
        th2, _, _ = rand_nullhomotopic_morphism(a, a, rng)
        comp = compose_morphisms(th2, th1)
        assert comp.f == th2.f @ th1.f
        assert comp.g == th2.g @ th1.g

    def test_composition_endpoint_check(self, objects):
        with pytest.raises((EndpointMismatch, TowerMismatch)):
            compose_morphisms(identity_morphism(objects["A"]), identity_morphism(objects["C"]))


class TestHomotopies:
    def test_trivial(self, objects):
        a = objects["A"]
        th = identity_morphism(a)
        z = RingMatrix.zeros(a.tower, Level.MID, 1, 1)
        verify_homotopy(th, th, z, z)

    def test_uv_nullhomotopy(self, objects):
        a = objects["A"]
        t = a.tower
        th = verify_morphism(a, a, mat(t, [["u*v"]]), mat(t, [["u*v"]]))
        verify_homotopy(th, zero_morphism(a, a), mat(t, [["v"]]), mat(t, [["0"]]))

    def test_bad_diagonal_rejected(self, objects):
        a = objects["A"]
        t = a.tower
        th = verify_morphism(a, a, mat(t, [["u*v"]]), mat(t, [["u*v"]]))
        with pytest.raises(HomotopyViolation):
            verify_homotopy(th, zero_morphism(a, a), mat(t, [["u"]]), mat(t, [["0"]]))

    def test_congruence_addition(self, objects):
        # Two homotopies compose additively to one for the outer pair.
        rng = random.Random(32)
        b = objects["B"]
        th1, s1, t1 = rand_nullhomotopic_morphism(b, b, rng)
        th2, s2, t2 = rand_nullhomotopic_morphism(b, b, rng)
        z = zero_morphism(b, b)
        # th1 ~ 0 via (s1,t1) and 0 ~ -th2 via (s2,t2) chain to
        # th1 ~ -th2 via the summed diagonals.
        verify_homotopy(th1, z - th2, s1 + s2, t1 + t2)
        verify_homotopy(th1 + th2, z, s1 + s2, t1 + t2)

    def test_congruence_composition(self, objects):
        rng = random.Random(33)
        b = objects["B"]
        th, s, t = rand_nullhomotopic_morphism(b, b, rng)
        rho, _, _ = rand_nullhomotopic_morphism(b, b, rng)
        z = zero_morphism(b, b)
        # Postcomposition maps the homotopy diagonals through rho.
        verify_homotopy(compose_morphisms(rho, th), z, rho.f @ s, rho.g @ t)
        # Precomposition composes the diagonals with rho on the right.
        verify_homotopy(compose_morphisms(th, rho), z, s @ rho.g, t @ rho.f)


class TestSuspension:
    def test_reads_off_definition(self, objects):
        a = objects["A"]
        s = suspend(a)
        assert s.phi == -a.psi
        assert s.psi == -a.phi

    def test_involution(self, objects):
        for mf in objects.values():
            assert suspend(suspend(mf)) == mf

    def test_two_by_two_suspension_verifies(self, objects):
        suspend(objects["B"])


class TestDirectSum:
    def test_sum_with_zero_object(self, objects):
        a = objects["A"]
        z = RingMatrix.zeros(a.tower, Level.MID, 0, 0)
        zero_obj = verify_mf(z, z)
        assert direct_sum(a, zero_obj) == a

    def test_one_by_one_pair(self, objects):
        a = objects["A"]
        t = a.tower
        summed = direct_sum(a, suspend(suspend(a)))
        assert summed.phi == mat(t, [["u", "0"], ["0", "u"]])

    def test_mixed_rank_sum_verifies(self, objects):
        a, b = objects["A"], objects["B"]
        with pytest.raises(TowerMismatch):
            direct_sum(a, b)
        both = direct_sum(b, suspend(b))
        assert both.rank_f == 4


class TestMappingCone:
    def test_cone_of_zero_is_block_sum(self, objects):
        a = objects["B"]
        cone, _, _ = mapping_cone(zero_morphism(a, a))
        assert cone == direct_sum(suspend(a), a)

    def test_cone_of_identity_matrices(self, objects):
        a = objects["A"]
        t = a.tower
        cone, inc, proj = mapping_cone(identity_morphism(a))
        assert cone.phi == mat(t, [["-v", "0"], ["1", "u"]])
        assert cone.psi == mat(t, [["-u", "0"], ["1", "v"]])

    def test_natural_maps_compose_to_zero(self, objects):
        rng = random.Random(34)
        for name in ("A", "B", "C"):
            a = objects[name]
            for _ in range(10):
                th, _, _ = rand_nullhomotopic_morphism(a, a, rng)
                cone, inc, proj = mapping_cone(th)
                comp = compose_morphisms(proj, inc)
                assert comp.f.is_zero() and comp.g.is_zero()


class TestDual:
    def test_one_by_one_swaps_maps(self, objects):
        a = objects["A"]
        d = dual_mf(a)
        assert d.phi == a.psi.transpose()
        assert d.psi == a.phi.transpose()

    def test_involution(self, objects):
        for mf in objects.values():
            assert dual_mf(dual_mf(mf)) == mf

    def test_two_by_two_transpose(self, objects):
        b = objects["B"]
        d = dual_mf(b)
        assert d.phi.entries[0][1] == b.psi.entries[1][0]


class TestCoker:
    def test_uv_presentation(self, objects):
        a = objects["A"]
        pres = coker_presentation(a)
        assert pres.presentation == a.psi.reduce_to(Level.QUOT)
        assert pres.presentation.entries[0][0] == a.tower.ring.parse("v")

    def test_square_presentation(self, objects):
        c = objects["C"]
        pres = coker_presentation(c)
        assert pres.presentation.entries[0][0] == c.tower.ring.parse("x")
        assert pres.det_product == c.tower.ring.parse("x^2")

    def test_rank_zero(self, objects):
        a = objects["A"]
        z = RingMatrix.zeros(a.tower, Level.MID, 0, 0)
        pres = coker_presentation(verify_mf(z, z))
        assert pres.presentation.nrows == 0
        assert pres.det_product == a.tower.ring.one()


class TestDeterminantInvariant:
    def test_product_is_power_of_w(self, objects):
        rng = random.Random(35)
        for name, base in objects.items():
            tower = base.tower
            for _ in range(10):
                obj = rand_derived_object(base, rng)
                product = tower.normal_form(det(obj.phi) * det(obj.psi), Level.MID)
                w_pow = tower.normal_form(tower.w**obj.rank_f, Level.MID)
                assert product in (w_pow, -w_pow)
                assert obj.rank_f == obj.rank_g
