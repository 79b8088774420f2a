from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sheafloc import CartanElement, CRational, Weight, build_cpn, chamber_id, eval_class, eval_weight, is_regular
from sheafloc.errors import DimensionError, InvalidInputError, OnWallError, SingularEvaluationError
from sheafloc.weights import (
    ClassExpr,
    ClassTerm,
    as_fraction,
    canonical_order,
    chamber_label,
    count_chambers,
    enumerate_chambers,
    eval_class_exact,
    hyperplanes,
)

W = lambda *c: Weight(c)  # noqa: E731


class TestEvalWeight:
    def test_coordinate_projection(self):
        X = CartanElement((2, 5), (1, 0))
        assert eval_weight(W(1, 0), X) == CRational(2, 1)

    def test_zero_weight(self):
        assert eval_weight(W(0, 0, 0), CartanElement((3, -1, 7), (1, 2, 3))) == CRational(0, 0)

    def test_difference(self):
        assert eval_weight(W(1, -1), CartanElement.real((3, 1))) == CRational(2)

    def test_rank_mismatch(self):
        with pytest.raises(DimensionError):
            eval_weight(W(1, 0), CartanElement.real((1,)))

    def test_exact_rationals(self):
        X = CartanElement.real(("1/3", "2/7"))
        assert eval_weight(W(3, 7), X) == CRational(3)


class TestEvalClass:
    def test_exp_of_zero(self):
        expr = ClassExpr((ClassTerm(exponent=(1,)),))
        assert eval_class(expr, CartanElement.real((0,))) == 1

    def test_i_times_beta(self):
        expr = ClassExpr((ClassTerm(numerator=(W(1),), power_of_i=1),))
        assert eval_class(expr, CartanElement.real((2,))) == 2j

    def test_vanishing_denominator_names_weight(self):
        expr = ClassExpr((ClassTerm(denominator=(W(1),)),))
        with pytest.raises(SingularEvaluationError) as exc:
            eval_class(expr, CartanElement.real((0,)))
        assert exc.value.weight == W(1)

    def test_exact_path(self):
        expr = ClassExpr((ClassTerm(numerator=(W(1, 1),), denominator=(W(0, 3),), power_of_i=2),))
        assert eval_class_exact(expr, CartanElement.real((1, 2))) == CRational(Fraction(-1, 2))

    def test_exact_path_refuses_exponentials(self):
        with pytest.raises(InvalidInputError):
            eval_class_exact(ClassExpr((ClassTerm(exponent=(1,)),)), CartanElement.real((1,)))


class TestRegularity:
    def test_regular(self):
        assert is_regular([W(1), W(-1)], CartanElement.real((1,))).regular

    def test_both_violate_at_zero(self):
        r = is_regular([W(1), W(-1)], CartanElement.real((0,)))
        assert not r and set(r.violations) == {W(1), W(-1)}

    def test_cp2_wall(self):
        model = build_cpn(2)
        r = is_regular(model.delta, CartanElement.real((0, 1, 1)))
        assert not r.regular
        assert W(0, 1, -1) in r.violations
        assert all(not eval_weight(b, CartanElement.real((0, 1, 1))) for b in r.violations)

    def test_zero_weight_rejected(self):
        with pytest.raises(InvalidInputError):
            is_regular([W(0)], CartanElement.real((1,)))


class TestChambers:
    def test_positive(self):
        assert chamber_id([W(1), W(-1)], CartanElement.real((2,))) == (1, -1)

    def test_negative(self):
        assert chamber_id([W(1), W(-1)], CartanElement.real((-2,))) == (-1, 1)

    def test_imaginary_is_on_split_wall(self):
        with pytest.raises(OnWallError) as exc:
            chamber_id([W(1), W(-1)], CartanElement((0,), (1,)))
        assert W(1) in exc.value.weights

    def test_imaginary_is_fine_on_compact_slice(self):
        assert chamber_id([W(1), W(-1)], CartanElement((0,), (1,)), "compact") == (1, -1)

    def test_canonical_order_is_deterministic(self):
        ws = [W(0, 1), W(1, 0), W(-1, 0), W(1, -1)]
        assert canonical_order(ws) == canonical_order(reversed(ws))

    def test_hyperplanes_merge_opposite_weights(self):
        assert hyperplanes([W(1, -1), W(-1, 1), W(2, 0)]) == (W(1, 0), W(1, -1))

    def test_label(self):
        assert chamber_label([W(1), W(-1)], CartanElement.real((5,))) == "+"

    @pytest.mark.parametrize("n,expected", [(1, 2), (2, 6), (3, 24)])
    def test_braid_arrangement_count(self, n, expected):
        # hyperplanes a_i = a_j: one chamber per ordering
        model = build_cpn(n)
        assert count_chambers(hyperplanes(model.delta)) == expected
        chambers = enumerate_chambers(model.delta)
        assert len(chambers) == expected
        for ch in chambers:
            assert chamber_label(model.delta, ch.representative) == ch.label

    def test_enumeration_is_seeded(self):
        d = build_cpn(2).delta
        a = enumerate_chambers(d, seed=5)
        b = enumerate_chambers(d, seed=5)
        assert a == b

    def test_compact_representatives(self):
        for ch in enumerate_chambers(build_cpn(2).delta, "compact"):
            assert ch.representative.lies_on("compact")


class TestParsing:
    @pytest.mark.parametrize("x,f", [("3/7", Fraction(3, 7)), (4, Fraction(4)), ("0.25", Fraction(1, 4))])
    def test_as_fraction(self, x, f):
        assert as_fraction(x) == f

    @pytest.mark.parametrize("x", [True, "abc", float("nan"), None, "1/0"])
    def test_as_fraction_rejects(self, x):
        with pytest.raises(InvalidInputError):
            as_fraction(x)


# ---------------------------------------------------------------------------
# properties

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=12)
ints = st.integers(-9, 9)


def cartan(rank):
    return st.builds(
        lambda re, im: CartanElement(tuple(re), tuple(im)),
        st.lists(rationals, min_size=rank, max_size=rank),
        st.lists(rationals, min_size=rank, max_size=rank),
    )


def weights(rank):
    return st.lists(ints, min_size=rank, max_size=rank).map(lambda c: Weight(tuple(c)))


@given(weights(3), weights(3), cartan(3), rationals)
def test_eval_weight_is_bilinear(b1, b2, X, a):
    assert eval_weight(b1 + b2, X) == eval_weight(b1, X) + eval_weight(b2, X)
    assert eval_weight(b1, X.scale(a)) == CRational.of(a) * eval_weight(b1, X)


@given(st.lists(ints, min_size=3, max_size=3), st.fractions(min_value=Fraction(1, 100), max_value=100))
def test_chamber_id_scale_invariant(v, a):
    delta = build_cpn(2).delta
    X = CartanElement.real(v)
    if not is_regular(delta, X):
        return
    assert chamber_id(delta, X) == chamber_id(delta, X.scale(a))


@given(st.lists(rationals, min_size=3, max_size=3))
def test_projection_onto_hyperplane_is_singular(v):
    # 100 random X by default; every beta in the CP^2 arrangement
    delta = build_cpn(2).delta
    X = CartanElement.real(v)
    for beta in delta:
        b = [Fraction(c) for c in beta.coeffs]
        lam = sum(bi * xi for bi, xi in zip(b, X.re)) / sum(bi * bi for bi in b)
        P = CartanElement.real([xi - lam * bi for xi, bi in zip(X.re, b)])
        r = is_regular(delta, P)
        assert not r and beta in r.violations
