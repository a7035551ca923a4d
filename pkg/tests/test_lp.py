import random

from gmpy2 import mpq

from nspoly.lp import INFEASIBLE, LinearProgram, OPTIMAL, UNBOUNDED, lp_solve
from nspoly.rational import rat


def test_simple_maximize():
    # max x + y s.t. x + 2y <= 4, 3x + y <= 6 (as >= with negated rows)
    out = lp_solve(
        LinearProgram(
            objective=[1, 1],
            maximize=True,
            a_ge=[[-1, -2], [-3, -1]],
            b_ge=[-4, -6],
        )
    )
    assert out.optimal
    assert out.value == rat(14, 5)
    assert out.point == [rat(8, 5), rat(6, 5)]


def test_equality_constraints():
    out = lp_solve(
        LinearProgram(objective=[2, 3], a_eq=[[1, 1]], b_eq=[1])
    )
    assert out.optimal and out.value == 2 and out.point == [1, 0]


def test_infeasible():
    out = lp_solve(
        LinearProgram(objective=[1], a_eq=[[1], [1]], b_eq=[0, 1])
    )
    assert out.status == INFEASIBLE
    out = lp_solve(LinearProgram(objective=[1, 1], a_ge=[[-1, -1]], b_ge=[1]))
    assert out.status == INFEASIBLE


def test_unbounded():
    out = lp_solve(LinearProgram(objective=[1, 0], maximize=True, a_ge=[[1, 0]], b_ge=[0]))
    assert out.status == UNBOUNDED


def test_free_variables():
    # min x with x free, x >= -5
    out = lp_solve(
        LinearProgram(objective=[1], a_ge=[[1]], b_ge=[-5], free_vars=frozenset({0}))
    )
    assert out.optimal and out.value == -5 and out.point == [-5]


def test_redundant_equalities_tolerated():
    out = lp_solve(
        LinearProgram(
            objective=[1, 1],
            a_eq=[[1, 1], [2, 2], [1, 1]],
            b_eq=[1, 2, 1],
        )
    )
    assert out.optimal and out.value == 1


def test_degenerate_cycling_example():
    # Beale's classical cycling example for naive Dantzig pivoting
    out = lp_solve(
        LinearProgram(
            objective=[rat(-3, 4), 150, rat(-1, 50), 6],
            a_ge=[
                [rat(-1, 4), 60, rat(1, 25), -9],
                [rat(-1, 2), 90, rat(1, 50), -3],
                [0, 0, -1, 0],
            ],
            b_ge=[0, 0, -1],
        )
    )
    assert out.optimal and out.value == rat(-1, 20)


def test_exact_fractions_survive():
    out = lp_solve(
        LinearProgram(
            objective=[1, 1, 1],
            a_eq=[[rat(1, 3), rat(1, 7), rat(1, 11)]],
            b_eq=[rat(1, 13)],
        )
    )
    assert out.optimal
    assert out.value == rat(3, 13)  # cheapest unit cost is via the 1/3 column


def test_value_bound_early_exit_matches():
    lp = LinearProgram(
        objective=[1, 2, 3],
        a_eq=[[1, 1, 1]],
        b_eq=[1],
    )
    ref = lp_solve(lp)
    lp2 = LinearProgram(
        objective=[1, 2, 3], a_eq=[[1, 1, 1]], b_eq=[1], value_bound=ref.value
    )
    out = lp_solve(lp2)
    assert out.optimal and out.value == ref.value


def test_determinism_under_variable_permutation():
    rng = random.Random(12345)
    n, m = 8, 5
    a = [[rat(rng.randint(-4, 4)) for _ in range(n)] for _ in range(m)]
    x0 = [rat(rng.randint(0, 3)) for _ in range(n)]  # feasible by construction
    b = [sum(row[j] * x0[j] for j in range(n)) for row in a]
    # nonnegative costs keep the minimum bounded for any constraint draw
    c = [rat(rng.randint(0, 5)) for _ in range(n)]
    base = lp_solve(LinearProgram(objective=c, a_eq=a, b_eq=b))
    assert base.optimal
    for _ in range(5):
        perm = list(range(n))
        rng.shuffle(perm)
        out = lp_solve(
            LinearProgram(
                objective=[c[p] for p in perm],
                a_eq=[[row[p] for p in perm] for row in a],
                b_eq=b,
            )
        )
        assert out.optimal and out.value == base.value
        # repeat runs are byte-for-byte identical
        again = lp_solve(
            LinearProgram(
                objective=[c[p] for p in perm],
                a_eq=[[row[p] for p in perm] for row in a],
                b_eq=b,
            )
        )
        assert again.point == out.point
