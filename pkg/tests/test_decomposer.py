import random
from fractions import Fraction
from math import prod

import pytest

from waring import decomposer
from waring.apolarpoints import count_formula, enumerate_points
from waring.decomposer import (
    DecompositionFailed,
    WaringDecomposition,
    assemble_system,
    decompose_monomial,
    expand_power,
    multinomial,
    solve_rational_system,
    t_schedule,
    verify_decomposition,
)
from waring.exactpoly import INCONSISTENT, parse_poly


def evaluate_sum(lambdas, points, x, d):
    """Evaluate sum lambda_i (p_i . x)^d directly, without any polynomial expansion."""
    return sum(lam * sum(c * v for c, v in zip(p, x)) ** d for lam, p in zip(lambdas, points))


def grouped_identity():
    """The 28-term identity for -725760 X^3 Y^3 Z^3, written out group by group."""
    terms = []

    def group(coef, u, v, w):
        # coef * [(uX - vY + wZ)^9 + (uX + vY - wZ)^9 - (uX - vY - wZ)^9 - (uX + vY + wZ)^9]
        terms.extend([(coef, (u, -v, w)), (coef, (u, v, -w)), (-coef, (u, -v, -w)), (-coef, (u, v, w))])

    group(252, 1, 1, 1)
    group(2, 1, 1, 2)
    group(2, 1, 2, 1)
    group(2, 2, 1, 1)
    group(-1, 1, 2, 2)
    group(-1, 2, 1, 2)
    group(-1, 2, 2, 1)
    return terms


class TestExpandPower:
    def test_binomial(self):
        assert expand_power((1, 1), 3) == parse_poly("x0^3 + 3*x0^2*x1 + 3*x0*x1^2 + x1^3")

    def test_signed_coefficient(self):
        p = expand_power((1, -1, 1), 9)
        # 9!/(3!3!3!) * (-1)^3
        assert p.coeff((3, 3, 3)) == -1680
        assert p.coeff((9, 0, 0)) == 1 and p.coeff((0, 9, 0)) == -1

    def test_rational_and_zero_coordinates(self):
        p = expand_power((Fraction(1, 2), 0, 3), 2)
        assert p == parse_poly("1/4*x0^2 + 3*x0*x2 + 9*x2^2", 3)

    def test_against_evaluation(self):
        rng = random.Random(11)
        for _ in range(20):
            lin = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(3)]
            d = rng.randint(1, 6)
            p = expand_power(lin, d)
            x = [Fraction(rng.randint(-5, 5)) for _ in range(3)]
            assert p.evaluate(x) == sum(c * v for c, v in zip(lin, x)) ** d

    def test_errors(self):
        with pytest.raises(ValueError):
            expand_power((1, 1), 0)
        with pytest.raises(ValueError):
            multinomial(3, (1, 1))


class TestAssemble:
    def test_shape_ternary_nonic(self, golden_points):
        sys = assemble_system((3, 3, 3), golden_points)
        assert sys.shape == (55, 28)
        assert sum(sys.rhs) == 1 and sys.rhs[sys.rows.index((3, 3, 3))] == 1

    def test_linear_case(self):
        sys = assemble_system((1, 1), [(1, 1), (-1, 1)])
        assert sys.shape == (3, 2)
        assert solve_rational_system(sys) == [Fraction(1, 4), Fraction(-1, 4)]

    def test_inconsistent(self):
        # a single power cannot produce x0*x1
        assert solve_rational_system(assemble_system((1, 1), [(1, 1)])) is INCONSISTENT

    def test_coordinate_mismatch(self):
        with pytest.raises(ValueError):
            assemble_system((1, 1), [(1, 1, 1)])


class TestGolden:
    def test_lambdas_in_order(self, golden_lambdas, golden_points):
        dec = decompose_monomial((3, 3, 3), 2)
        assert dec.verified and verify_decomposition(dec)
        assert dec.points == golden_points
        assert dec.lambdas == golden_lambdas
        assert dec.rank == 28 and dec.rank_exact
        assert dec.term_count == 28 == dec.bound

    def test_lambda_multiset(self):
        dec = decompose_monomial((3, 3, 3), 2)
        mags = sorted(abs(lam) for lam in dec.lambdas)
        assert mags == sorted([Fraction(1, 2880)] * 4 + [Fraction(1, 362880)] * 12 + [Fraction(1, 725760)] * 12)
        assert sum(1 for lam in dec.lambdas if lam > 0) == 14

    def test_grouped_identity_literal(self):
        terms = grouped_identity()
        scale = Fraction(-1, 725760)
        dec = WaringDecomposition((3, 3, 3), Fraction(2), [p for _, p in terms], [scale * c for c, _ in terms])
        assert verify_decomposition(dec)
        rng = random.Random(2)
        for _ in range(5):
            x = [Fraction(rng.randint(-7, 7), rng.randint(1, 4)) for _ in range(3)]
            assert evaluate_sum(dec.lambdas, dec.points, x, 9) == prod(v**3 for v in x)

    def test_solver_matches_grouped_identity(self):
        def signed(p, c):
            # (-L)^9 = -L^9: normalise so the first coordinate is positive
            return (tuple(p), c) if p[0] > 0 else (tuple(-v for v in p), -c)

        dec = decompose_monomial((3, 3, 3), 2)
        ours = dict(signed(p, lam * -725760) for lam, p in dec.terms)
        ref = dict(signed(tuple(Fraction(v) for v in p), c) for c, p in grouped_identity())
        assert ours == ref
        assert sorted(set(abs(v) for v in ours.values())) == [1, 2, 252]

    def test_perturbation_breaks_verification(self):
        dec = decompose_monomial((3, 3, 3), 2)
        dec.lambdas[5] += Fraction(1, 10**9)
        assert not verify_decomposition(dec)
        dec.lambdas[5] -= Fraction(1, 10**9)
        dec.points[0] = (Fraction(1), Fraction(1), Fraction(3))
        assert not verify_decomposition(dec)


class TestOtherMonomials:
    def test_xy(self):
        dec = decompose_monomial((1, 1), 2)
        assert dec.lambdas == [Fraction(1, 4), Fraction(-1, 4)]

    def test_all_ones(self):
        dec = decompose_monomial((1, 1, 1, 1), 3)
        assert dec.verified and dec.term_count == 8 == count_formula((1, 1, 1, 1))

    @pytest.mark.parametrize("a,t", [((5, 4, 3), 2), ((4, 4, 4), 2), ((3, 2), 3), ((2, 2, 1), Fraction(3, 2)), ((3, 1, 3), 2)])
    def test_verified_and_bounded(self, a, t):
        dec = decompose_monomial(a, t)
        assert dec.verified and dec.term_count <= count_formula(a)
        x = [Fraction(2), Fraction(-3, 2), Fraction(5, 7)][: len(a)]
        assert evaluate_sum(dec.lambdas, dec.points, x, sum(a)) == prod(v**e for v, e in zip(x, a))

    def test_point_scaling_is_a_gauge(self):
        dec = decompose_monomial((3, 3), 2)
        d = dec.degree
        scaled = WaringDecomposition(
            dec.a, dec.t,
            [tuple(c * (k + 2) for c in p) for k, p in enumerate(dec.points)],
            [lam / Fraction(k + 2) ** d for k, lam in enumerate(dec.lambdas)],
        )
        assert verify_decomposition(scaled)


class TestSerialisation:
    def test_round_trip(self):
        dec = decompose_monomial((3, 2, 1), 2)
        back = WaringDecomposition.from_json(dec.to_json())
        assert back.points == dec.points and back.lambdas == dec.lambdas and back.t == dec.t
        assert back.verified is False and verify_decomposition(back)

    def test_malformed(self):
        good = decompose_monomial((1, 1), 2).to_json()
        for broken in (
            {k: v for k, v in good.items() if k != "points"},
            {**good, "lambdas": good["lambdas"][:1]},
            {**good, "lambdas": ["x", "1"]},
            {**good, "degree": 7},
        ):
            with pytest.raises(ValueError):
                WaringDecomposition.from_json(broken)

    def test_prune(self):
        dec = WaringDecomposition((1, 1), Fraction(2), [(1, 1), (1, 0), (-1, 1)], [Fraction(1, 4), Fraction(0), Fraction(-1, 4)])
        assert dec.term_count == 2
        p = dec.pruned()
        assert len(p.points) == 2 and verify_decomposition(p)


class TestRetry:
    def test_schedule(self):
        it = t_schedule()
        head = [next(it) for _ in range(8)]
        assert head == [2, 3, 5, 7, Fraction(1, 2), Fraction(3, 2), Fraction(5, 2), Fraction(7, 2)]
        assert all(t != 0 and abs(t) != 1 for t in (next(it) for _ in range(200)))

    def test_retries_after_failure(self, monkeypatch):
        real = decomposer._attempt
        seen = []

        def flaky(a, t, progress):
            seen.append(t)
            return None if t == 2 else real(a, t, progress)

        monkeypatch.setattr(decomposer, "_attempt", flaky)
        dec = decompose_monomial((3, 3, 3))
        assert seen == [2, 3] and dec.t == 3 and dec.verified

    def test_failure_lists_attempts(self, monkeypatch):
        monkeypatch.setattr(decomposer, "_attempt", lambda a, t, progress: None)
        with pytest.raises(DecompositionFailed) as info:
            decompose_monomial((2, 2), t_hint=5, max_attempts=4)
        assert info.value.attempts == [5, 2, 3, 7]
        assert "5, 2, 3, 7" in str(info.value)

    @pytest.mark.parametrize("t", [0, 1, -1])
    def test_bad_hint(self, t):
        with pytest.raises(ValueError):
            decompose_monomial((3, 3), t)

    def test_progress_messages(self):
        msgs = []
        decompose_monomial((2, 1), 2, progress=msgs.append)
        assert any("solving" in m for m in msgs) and msgs[-1].endswith("verifying")


def test_unsorted_exponents():
    dec = decompose_monomial((1, 3, 2), 2)
    assert dec.a == (1, 3, 2) and dec.verified
    assert {len(p) for p in dec.points} == {3}
    assert enumerate_points((1, 3, 2), 2).distinct_count() == len(dec.points)


def test_lambda_denominators():
    # every golden lambda is +-1/(2880 k) with k in {1, 126, 252}
    dec = decompose_monomial((3, 3, 3), 2)
    assert {abs(1 / lam) / 2880 for lam in dec.lambdas} == {1, 126, 252}
