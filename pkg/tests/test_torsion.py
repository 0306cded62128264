"""Torsion splits, alternating tensors, and the tensor-power verifiers."""

from __future__ import annotations

import random

import pytest

from torsionlab.errors import InputError, UnsupportedError
from torsionlab.fields import GF, QQ
from torsionlab.homology import pd
from torsionlab.modules import FPModule, annihilator, tensor_power
from torsionlab.randgen import random_module_with_planted_relation
from torsionlab.rings import Ideal, make_ring
from torsionlab.torsion import (
    alternating_tensor,
    check_relation_annihilates,
    explore_torsion_onset,
    koszul_syzygy_module,
    maximal_ideal_module,
    torsion_split,
    universal_koszul_module,
    verify_koszul_tensor_powers,
    verify_maximal_ideal_carrier,
    verify_presentation_torsion_bound,
)


def koszul_module(ring, texts):
    return koszul_syzygy_module(ring, [ring.poly(t) for t in texts])


class TestTorsionSplit:
    def test_free_module_is_torsion_free(self, QQxy):
        split = torsion_split(FPModule.free(QQxy, 2))
        assert split.is_torsion_free and not split.is_torsion

    def test_node_branch_is_torsion_free(self, node5):
        split = torsion_split(FPModule.cyclic(node5, [node5.poly("x")]))
        assert split.is_torsion_free

    def test_nilpotent_style_class_is_torsion(self, node5):
        # in R/(x^2) over the node, the class of x is killed by x + y
        m = FPModule.cyclic(node5, [node5.poly("x^2")])
        split = torsion_split(m)
        assert not split.is_torsion_free
        x_class = m.element([node5.poly("x")])
        assert not x_class.is_zero()
        assert m.element_is_zero(x_class.coords.scaled(node5.poly("x + y")))
        # and the class of x lies in the computed torsion submodule
        basis = node5.submodule_basis(
            list(m.relations) + list(split.inclusion_columns), m.ngens
        )
        assert basis.normal_form(x_class.coords).is_zero()

    def test_torsion_module_over_domain(self, QQxy):
        m = FPModule.cyclic(QQxy, [QQxy.poly("x")])
        split = torsion_split(m)
        assert split.is_torsion
        assert split.torsion.nu() == m.nu()

    def test_split_exactness(self, QQxy):
        m = FPModule.from_rows(
            QQxy,
            [[QQxy.poly("x"), QQxy.poly("0")], [QQxy.poly("0"), QQxy.poly("0")]],
            gen_degrees=(0, 0),
        )
        split = torsion_split(m)
        # torsion part: the R/(x) summand; torsion-free part: the free one
        assert split.torsion.nu() == 1
        assert split.torsion_free_part.nu() == 1
        # idempotence: the torsion-free part has no torsion left
        again = torsion_split(split.torsion_free_part)
        assert again.is_torsion_free

    def test_requires_reduced_flag(self):
        from torsionlab.syntax import parse_polynomial

        x2 = parse_polynomial("x^2", ("x", "y"), GF(5))
        ring = make_ring(GF(5), ("x", "y"), ideal=[x2])
        with pytest.raises(UnsupportedError):
            torsion_split(FPModule.free(ring, 1))


class TestAlternatingTensor:
    def test_single_element_identity(self, QQxy):
        m = koszul_module(QQxy, ["x", "y"])
        g = m.generator(0)
        tau = alternating_tensor(m, [g])
        assert tau.module is m.tensor_power(1)
        assert tau.coords == g.coords

    def test_two_elements_antisymmetrized(self, QQxy):
        m = koszul_module(QQxy, ["x", "y"])
        tau = alternating_tensor(m, [m.generator(0), m.generator(1)])
        coords = tau.coords
        # e1 (x) e2 - e2 (x) e1 has coordinates +1 at slot 1 and -1 at slot 2
        assert coords.component(1) == QQxy.one()
        assert coords.component(2) == -QQxy.one()
        assert coords.component(0).is_zero() and coords.component(3).is_zero()

    def test_repeated_element_vanishes(self, QQxy):
        m = koszul_module(QQxy, ["x", "y"])
        g = m.generator(0)
        tau = alternating_tensor(m, [g, g])
        assert tau.coords.is_zero()


class TestRelationCertificate:
    def test_single_element_relation(self, QQxy):
        m = FPModule.cyclic(QQxy, [QQxy.poly("x^2")])
        cert = check_relation_annihilates(
            m, [m.generator(0)], [QQxy.poly("x^2")]
        )
        assert cert.passed

    def test_koszul_standard_relation(self, QQxyz):
        m = koszul_module(QQxyz, ["x", "y", "z"])
        gens = [m.generator(i) for i in range(3)]
        seq = [QQxyz.poly(v) for v in ("x", "y", "z")]
        cert = check_relation_annihilates(m, gens, seq)
        assert cert.passed

    def test_false_relation_rejected(self, QQxy):
        m = FPModule.free(QQxy, 1)
        with pytest.raises(InputError):
            check_relation_annihilates(m, [m.generator(0)], [QQxy.poly("x")])

    @pytest.mark.parametrize("seed", range(8))
    def test_planted_relations(self, seed, QQxy):
        rng = random.Random(1234 + seed)
        module, planted = random_module_with_planted_relation(QQxy, rng)
        gens = [module.generator(i) for i in range(module.ngens)]
        cert = check_relation_annihilates(module, gens, planted)
        assert cert.passed


class TestKoszulSyzygyModule:
    def test_single_element(self, QQxy):
        m = koszul_module(QQxy, ["x"])
        assert m.nu() == 1
        assert annihilator(m) == Ideal(QQxy, [QQxy.poly("x")])

    def test_two_variables(self, QQxy):
        m = koszul_module(QQxy, ["x", "y"])
        assert m.nu() == 2
        assert pd(m) == 1

    def test_universal_module(self):
        ring, module = universal_koszul_module(3, GF(5))
        assert ring.nvars == 3
        assert module.nu() == 3
        assert len(module.relations) == 1

    def test_non_regular_sequence_rejected(self, node5):
        with pytest.raises(InputError):
            koszul_module(node5, ["x"])


class TestTheorem28:
    def test_rank_two_rational(self, QQxy):
        cert = verify_koszul_tensor_powers(
            QQxy, [QQxy.poly("x"), QQxy.poly("y")]
        )
        assert cert.passed, cert.failed_subclaims()

    def test_non_variable_regular_sequence(self, QQxy):
        cert = verify_koszul_tensor_powers(
            QQxy, [QQxy.poly("x^2"), QQxy.poly("y^3")]
        )
        assert cert.passed, cert.failed_subclaims()

    def test_torsion_part_values(self, QQxy):
        # freeze the d = 2 sub-structure: t((x)M^2) is cyclic with
        # annihilator (x, y)
        m = koszul_module(QQxy, ["x", "y"])
        square = tensor_power(m, 2)
        split = torsion_split(square)
        assert split.torsion.nu() == 1
        from torsionlab.modules import ModuleElement

        gen = ModuleElement(square, split.inclusion_columns[0])
        assert annihilator(square, gen) == Ideal(
            QQxy, [QQxy.poly("x"), QQxy.poly("y")]
        )


class TestTheorem210:
    def test_case1_rank_two_koszul(self, QQxy):
        m = koszul_module(QQxy, ["x", "y"])
        cert = verify_presentation_torsion_bound(m, FPModule.free(QQxy, 1), 1)
        assert cert.applicable
        assert cert.passed, cert.failed_subclaims()

    def test_case2_with_cyclic_second_factor(self, QQxy):
        m = koszul_module(QQxy, ["x", "y"])
        n = FPModule.cyclic(QQxy, [QQxy.poly("x")])
        cert = verify_presentation_torsion_bound(m, n, 2)
        assert cert.applicable
        assert cert.passed, cert.failed_subclaims()

    def test_case1_inapplicable_on_node_branch(self, node5):
        m = FPModule.cyclic(node5, [node5.poly("x")])
        n = FPModule.free(node5, 1)
        cert = verify_presentation_torsion_bound(m, n, 1)
        assert not cert.applicable
        assert "zerodivisor" in cert.inapplicable_reason

    def test_free_module_inapplicable(self, QQxy):
        cert = verify_presentation_torsion_bound(
            FPModule.free(QQxy, 1), FPModule.free(QQxy, 1), 1
        )
        assert not cert.applicable


class TestMaximalIdealCarrier:
    def test_free_module(self, QQxy):
        cert = verify_maximal_ideal_carrier(FPModule.free(QQxy, 2))
        assert cert.passed

    def test_hypersurface_quotient(self, QQxy):
        m = FPModule.cyclic(QQxy, [QQxy.poly("x")])
        cert = verify_maximal_ideal_carrier(m)
        assert cert.passed, cert.failed_subclaims()

    def test_node_branch_still_carries_torsion(self, node5):
        # the tensor powers of R/(x) stay torsion-free, but m (x) R/(x) does not
        m = FPModule.cyclic(node5, [node5.poly("x")])
        assert torsion_split(tensor_power(m, 2)).is_torsion_free
        cert = verify_maximal_ideal_carrier(m)
        assert cert.passed, cert.failed_subclaims()

    def test_maximal_ideal_module_shape(self, node5):
        m = maximal_ideal_module(node5)
        assert m.ngens == 2
        assert m.nu() == 2


class TestExploration:
    def test_report_shape(self, QQxy):
        report = explore_torsion_onset(QQxy, panel_size=3, seed=42, cap=3)
        assert report["claim"] == "question2.12"
        assert len(report["entries"]) == 3
        for entry in report["entries"]:
            if "least_power_with_torsion" in entry:
                assert entry["least_power_with_torsion"] in (1, 2, 3, "none<= 3")

    def test_needs_declared_domain(self, node5):
        with pytest.raises(InputError):
            explore_torsion_onset(node5, panel_size=1, seed=0)

    def test_deterministic_given_seed(self, QQxy):
        a = explore_torsion_onset(QQxy, panel_size=2, seed=9, cap=2)
        b = explore_torsion_onset(QQxy, panel_size=2, seed=9, cap=2)
        assert a == b

    def test_koszul_modules_hit_torsion_at_two(self, QQxy):
        # over the plane, rank-two syzygy modules stay torsion-free only
        # up to the first power
        for texts in (["x", "y"], ["x^2", "y^3"], ["x + y", "y^2"]):
            m = koszul_module(QQxy, texts)
            assert torsion_split(tensor_power(m, 1)).is_torsion_free
            assert not torsion_split(tensor_power(m, 2)).is_torsion_free

    def test_cubic_hypersurface_domain(self):
        from torsionlab.fields import QQ
        from torsionlab.syntax import parse_polynomial

        names = ("x", "y", "z")
        cubic = parse_polynomial("x^3 + y^3 + z^3", names, QQ)
        ring = make_ring(
            QQ,
            names,
            ideal=[cubic],
            minimal_primes=[[cubic]],
            reduced=True,
            complete_intersection=True,
        )
        report = explore_torsion_onset(ring, panel_size=3, seed=42, cap=4)
        assert len(report["entries"]) == 3
        assert report["note"].startswith("observational")
