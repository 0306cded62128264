"""Division, Buchberger, and syzygy behaviour on small hand-checked inputs."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from torsionlab.errors import DimensionError
from torsionlab.fields import GF, QQ
from torsionlab.groebner import groebner_basis, ideal_groebner_basis, syzygy_matrix
from torsionlab.poly import FreeElement, Polynomial, polynomial_to_element
from torsionlab.syntax import format_polynomial, parse_polynomial

XY = ("x", "y")


def qq_poly(text: str) -> Polynomial:
    return parse_polynomial(text, XY, QQ)


def f5_poly(text: str) -> Polynomial:
    return parse_polynomial(text, XY, GF(5))


def as_elems(*polys: Polynomial):
    return [polynomial_to_element(p) for p in polys]


class TestNormalForm:
    def test_multiple_reduces_to_zero(self):
        gb = ideal_groebner_basis([qq_poly("x")])
        assert gb.normal_form(polynomial_to_element(qq_poly("x^2"))).is_zero()

    def test_zero_is_fixed(self):
        gb = ideal_groebner_basis([qq_poly("x")])
        zero = polynomial_to_element(Polynomial.zero(QQ, 2))
        assert gb.normal_form(zero).is_zero()

    def test_hand_division(self):
        # x*y^2 + y^3 = y * (x*y + y^2), so it reduces to zero
        gb = ideal_groebner_basis([qq_poly("x^2"), qq_poly("x*y + y^2"), qq_poly("y^3")])
        f = polynomial_to_element(qq_poly("x*y^2 + y^3"))
        assert gb.normal_form(f).is_zero()

    def test_remainder_irreducible(self):
        gb = ideal_groebner_basis([qq_poly("x^2"), qq_poly("x*y + y^2"), qq_poly("y^3")])
        f = polynomial_to_element(qq_poly("x^3 + x + y"))
        r = gb.normal_form(f)
        lead_monos = {t[1] for t in gb.lead_terms()}
        for _, mono in r.terms:
            for lm in lead_monos:
                assert not all(a <= b for a, b in zip(lm, mono))

    def test_rank_mismatch_rejected(self):
        gb = ideal_groebner_basis([qq_poly("x")])
        bad = FreeElement.unit(QQ, 2, 3, 0)
        with pytest.raises(DimensionError):
            gb.normal_form(bad)

    def test_idempotent(self):
        gb = ideal_groebner_basis([qq_poly("x^2"), qq_poly("x*y + y^2")])
        f = polynomial_to_element(qq_poly("x^3 + x*y + 1"))
        once = gb.normal_form(f)
        assert gb.normal_form(once) == once

    def test_difference_in_submodule(self):
        gb = ideal_groebner_basis([qq_poly("x^2"), qq_poly("x*y + y^2")])
        f = polynomial_to_element(qq_poly("x^3 + y^2 + x"))
        r = gb.normal_form(f)
        assert gb.contains(f - r)


class TestGroebnerBasis:
    def test_already_reduced(self):
        gb = ideal_groebner_basis([qq_poly("x"), qq_poly("y")])
        polys = sorted(format_polynomial(g.component(0), XY) for g in gb)
        assert polys == ["x", "y"]

    def test_hand_buchberger(self):
        # the single S-polynomial of x^2 and x*y + y^2 reduces to y^3
        gb = ideal_groebner_basis([qq_poly("x^2"), qq_poly("x*y + y^2")])
        polys = sorted(format_polynomial(g.component(0), XY) for g in gb)
        assert polys == ["x*y + y^2", "x^2", "y^3"]

    def test_principal_ideal_f2(self):
        p = parse_polynomial("x*y", XY, GF(2))
        gb = ideal_groebner_basis([p])
        assert len(gb) == 1
        assert format_polynomial(gb.elements[0].component(0), XY) == "x*y"

    def test_idempotent_on_own_output(self):
        gb = ideal_groebner_basis([qq_poly("x^2"), qq_poly("x*y + y^2")])
        again = groebner_basis(list(gb.elements))
        assert [g.terms for g in again] == [g.terms for g in gb]

    def test_buchberger_criterion(self):
        # every S-element of a returned basis reduces to zero
        gb = ideal_groebner_basis(
            [qq_poly("x^2 - y"), qq_poly("x*y - 1"), qq_poly("x + y^2")]
        )
        elems = list(gb.elements)
        key = gb.order.term_key()
        for i in range(len(elems)):
            for j in range(i + 1, len(elems)):
                gi, gj = elems[i], elems[j]
                (pi, mi) = max(gi.terms, key=key)
                (pj, mj) = max(gj.terms, key=key)
                if pi != pj:
                    continue
                lcm = tuple(max(a, b) for a, b in zip(mi, mj))
                mono_i = Polynomial(QQ, 2, {tuple(l - a for l, a in zip(lcm, mi)): 1})
                mono_j = Polynomial(QQ, 2, {tuple(l - a for l, a in zip(lcm, mj)): 1})
                ci = gi.terms[(pi, mi)]
                cj = gj.terms[(pj, mj)]
                s = gi.scaled(mono_i * Fraction(1, 1) * QQ.inv(ci)) - gj.scaled(
                    mono_j * QQ.inv(cj)
                )
                assert gb.normal_form(s).is_zero()

    def test_module_spair_needed(self):
        # same-position coprime leads do not allow skipping module pairs:
        # (x, 1) and (y, 0) have the genuine syzygy remainder (0, y)
        f = FreeElement.from_components([qq_poly("x"), qq_poly("1")])
        g = FreeElement.from_components([qq_poly("y"), qq_poly("0")])
        gb = groebner_basis([f, g])
        target = FreeElement.from_components([qq_poly("0"), qq_poly("y")])
        assert gb.contains(target)


class TestSyzygies:
    def test_koszul_relation(self):
        cols = syzygy_matrix([[qq_poly("x"), qq_poly("y")]])
        assert len(cols) == 1
        col = cols[0]
        assert format_polynomial(col[0], XY) == "y"
        assert format_polynomial(col[1], XY) == "-x"

    def test_injective_map_has_no_syzygies(self):
        one = qq_poly("1")
        zero = qq_poly("0")
        cols = syzygy_matrix([[one, zero], [zero, one]])
        assert cols == []

    def test_zero_row_ignored(self):
        z = Polynomial.zero(GF(5), 2)
        rows = [[f5_poly("x"), f5_poly("y")], [z, z]]
        cols = syzygy_matrix(rows)
        assert len(cols) == 1
        assert format_polynomial(cols[0][0], XY) == "y"
        assert format_polynomial(cols[0][1], XY) == "4*x"

    def test_exactness(self):
        rows = [
            [f5_poly("x^2 + y"), f5_poly("x*y"), f5_poly("y^2")],
            [f5_poly("x"), f5_poly("y + 1"), f5_poly("0")],
        ]
        cols = syzygy_matrix(rows)
        assert cols, "this 2x3 matrix must have syzygies"
        for col in cols:
            for row in rows:
                acc = Polynomial.zero(GF(5), 2)
                for a, v in zip(row, col):
                    acc = acc + a * v
                assert acc.is_zero()


def random_poly(rng: random.Random, field, nvars: int, max_degree: int) -> Polynomial:
    terms = {}
    for _ in range(rng.randint(0, 4)):
        mono = tuple(rng.randint(0, max_degree) for _ in range(nvars))
        if sum(mono) > max_degree:
            continue
        terms[mono] = rng.randint(0, field.characteristic - 1)
    return Polynomial(field, nvars, terms)


def dense_kernel_oracle(rows, nvars: int, degree_bound: int, p: int):
    """Solve A*v = 0 by exact linear algebra over F_p, truncated in degree.

    Unknowns are the coefficients of each component of v on all monomials of
    degree <= degree_bound.  Independent of the Groebner machinery.
    """
    from itertools import product

    monos = [
        m
        for m in product(range(degree_bound + 1), repeat=nvars)
        if sum(m) <= degree_bound
    ]
    mono_index = {m: i for i, m in enumerate(monos)}
    ncols_matrix = len(rows[0])
    nunknowns = ncols_matrix * len(monos)
    equations = {}
    for ri, row in enumerate(rows):
        for ci, entry in enumerate(row):
            for em, ec in entry.terms.items():
                for mi, m in enumerate(monos):
                    target = tuple(a + b for a, b in zip(em, m))
                    eq_key = (ri, target)
                    vec = equations.setdefault(eq_key, [0] * nunknowns)
                    vec[ci * len(monos) + mi] = (
                        vec[ci * len(monos) + mi] + ec
                    ) % p
    matrix = list(equations.values())
    # Gaussian elimination over F_p for the nullspace
    pivots = {}
    rcount = 0
    for col in range(nunknowns):
        pivot_row = None
        for r in range(rcount, len(matrix)):
            if matrix[r][col] % p:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        matrix[rcount], matrix[pivot_row] = matrix[pivot_row], matrix[rcount]
        inv = pow(matrix[rcount][col], -1, p)
        matrix[rcount] = [(v * inv) % p for v in matrix[rcount]]
        for r in range(len(matrix)):
            if r != rcount and matrix[r][col] % p:
                factor = matrix[r][col]
                matrix[r] = [
                    (a - factor * b) % p for a, b in zip(matrix[r], matrix[rcount])
                ]
        pivots[col] = rcount
        rcount += 1
    free_cols = [c for c in range(nunknowns) if c not in pivots]
    basis = []
    for fc in free_cols:
        v = [0] * nunknowns
        v[fc] = 1
        for col, r in pivots.items():
            v[col] = (-matrix[r][fc]) % p
        basis.append(v)
    field = GF(p)
    out = []
    for v in basis:
        comps = []
        for ci in range(ncols_matrix):
            terms = {}
            for mi, m in enumerate(monos):
                c = v[ci * len(monos) + mi] % p
                if c:
                    terms[m] = c
            comps.append(Polynomial(field, nvars, terms))
        out.append(comps)
    return out


class TestDivisionProperties:
    """Division correctness on random prime-field ideals."""

    from hypothesis import given, settings
    from hypothesis import strategies as st

    small_polys = st.lists(
        st.dictionaries(
            st.tuples(st.integers(0, 2), st.integers(0, 2)),
            st.integers(1, 4),
            min_size=1,
            max_size=3,
        ),
        min_size=1,
        max_size=3,
    )

    @given(gens_terms=small_polys, f_terms=small_polys.map(lambda ls: ls[0]))
    @settings(max_examples=60, deadline=None)
    def test_remainder_difference_lies_in_submodule(self, gens_terms, f_terms):
        field = GF(5)
        gens = [Polynomial(field, 2, terms) for terms in gens_terms]
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            return
        f = Polynomial(field, 2, f_terms)
        gb = ideal_groebner_basis(gens)
        fe = polynomial_to_element(f)
        remainder = gb.normal_form(fe)
        assert gb.normal_form(remainder) == remainder  # idempotent
        assert gb.contains(fe - remainder)  # difference in the ideal


@pytest.mark.parametrize("seed", range(6))
def test_syzygies_match_linear_algebra_oracle(seed):
    rng = random.Random(9000 + seed)
    field = GF(5)
    rows = [
        [random_poly(rng, field, 2, 2) for _ in range(3)] for _ in range(2)
    ]
    if all(e.is_zero() for row in rows for e in row):
        rows[0][0] = f5_poly("x")
    cols = syzygy_matrix(rows)
    for col in cols:
        for row in rows:
            acc = Polynomial.zero(field, 2)
            for a, v in zip(row, col):
                acc = acc + a * v
            assert acc.is_zero()
    oracle = dense_kernel_oracle(rows, 2, 6, 5)
    syz_elems = [FreeElement.from_components(c, rank=3) for c in cols]
    if syz_elems:
        gb = groebner_basis(syz_elems)
        for vec in oracle:
            assert gb.contains(FreeElement.from_components(vec, rank=3))
    else:
        assert not oracle
