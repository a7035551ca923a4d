from gmpy2 import mpq

import pytest

from nspoly.rational import (
    ONE,
    ZERO,
    dot,
    format_rational,
    independent_row_indices,
    nullspace_basis,
    parse_rational,
    primitive_integer_form,
    rank,
    rat,
    scaled_integer_rows,
    solve_linear,
)


def test_rat_and_formatting():
    assert rat(1, 2) == mpq(1, 2)
    assert format_rational(rat(3, 6)) == "1/2"
    assert format_rational(rat(4, 2)) == "2"
    assert format_rational(rat(-1, 3)) == "-1/3"
    assert format_rational(ZERO) == "0"


def test_parse_roundtrip():
    for q in [rat(0), rat(7), rat(-7), rat(22, 7), rat(-3, 8), rat(1, 1000000007)]:
        assert parse_rational(format_rational(q)) == q


def test_parse_rejects_garbage():
    for bad in ["", "1/", "/2", "a/b", "1/2/3"]:
        with pytest.raises((ValueError, ZeroDivisionError)):
            parse_rational(bad)


def test_dot():
    assert dot([rat(1, 2), rat(1, 3)], [2, 3]) == 2


def test_scaled_integer_rows():
    rows = scaled_integer_rows([[rat(1, 2), rat(1, 3)], [rat(2), rat(0)]])
    assert rows == [[3, 2], [2, 0]]


def test_rank():
    assert rank([[1, 2], [2, 4]]) == 1
    assert rank([[1, 0], [0, 1]]) == 2
    assert rank([[rat(1, 2), rat(1, 3)], [rat(1, 4), rat(1, 6)]]) == 1
    assert rank([]) == 0
    # 3x3 with one dependent row
    assert rank([[1, 1, 0], [0, 1, 1], [1, 2, 1]]) == 2


def test_independent_row_indices():
    rows = [[1, 1, 0], [2, 2, 0], [0, 1, 1], [1, 2, 1]]
    idx = independent_row_indices(rows)
    assert idx == [0, 2]


def test_solve_linear():
    x = solve_linear([[2, 1], [1, -1]], [rat(5), rat(1)])
    assert x == [rat(2), rat(1)]
    assert solve_linear([[1, 1], [1, 1]], [0, 1]) is None
    # underdetermined but consistent: any returned point must satisfy the system
    x = solve_linear([[1, 1]], [rat(3)])
    assert x is not None and x[0] + x[1] == 3


def test_nullspace_basis():
    basis = nullspace_basis([[1, 1, 0], [0, 1, 1]], 3)
    assert len(basis) == 1
    v = basis[0]
    assert v[0] + v[1] == 0 and v[1] + v[2] == 0 and any(v)
    assert nullspace_basis([[1, 0], [0, 1]], 2) == []


def test_primitive_integer_form():
    assert primitive_integer_form([rat(1, 2), rat(-1, 3)]) == (3, -2)
    assert primitive_integer_form([rat(-1, 2), rat(1, 3)]) == (3, -2)
    assert primitive_integer_form(
        [rat(-1, 2), rat(1, 3)], fix_sign=False
    ) == (-3, 2)
    assert primitive_integer_form([4, 6, -2]) == (2, 3, -1)
    with pytest.raises(ValueError):
        primitive_integer_form([0, 0])
