from fractions import Fraction
from itertools import permutations

from hypothesis import given, strategies as st

from k3chow.linalg_exact import RationalMatrix, SparseEchelon, nullspace, rank, rref, row_space_contains, solve

entry = st.fractions(min_value=-6, max_value=6, max_denominator=4)


@st.composite
def matrices(draw, max_rows=6, max_cols=6):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    return [[draw(entry) for _ in range(c)] for _ in range(r)]


def naive_rank(rows):
    """Textbook elimination with Fraction pivots."""
    m = [[Fraction(x) for x in r] for r in rows]
    rk, col = 0, 0
    ncols = len(m[0]) if m else 0
    while rk < len(m) and col < ncols:
        piv = next((i for i in range(rk, len(m)) if m[i][col]), None)
        if piv is None:
            col += 1
            continue
        m[rk], m[piv] = m[piv], m[rk]
        for i in range(rk + 1, len(m)):
            f = m[i][col] / m[rk][col]
            m[i] = [a - f * b for a, b in zip(m[i], m[rk])]
        rk += 1
        col += 1
    return rk


def leibniz_det(rows):
    n = len(rows)
    total = Fraction(0)
    for p in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if p[i] > p[j]:
                    sign = -sign
        term = Fraction(sign)
        for i in range(n):
            term *= rows[i][p[i]]
        total += term
    return total


def matvec(rows, v):
    return [sum(a * b for a, b in zip(r, v)) for r in rows]


@given(matrices())
def test_rank_matches_naive_elimination(rows):
    assert rank(RationalMatrix.from_rows(rows)) == naive_rank(rows)


@given(matrices())
def test_rank_plus_nullity(rows):
    m = RationalMatrix.from_rows(rows)
    ns = nullspace(m)
    assert rank(m) + len(ns) == m.cols
    for v in ns:
        assert all(x == 0 for x in matvec(rows, v))


@given(matrices())
def test_rank_of_transpose(rows):
    m = RationalMatrix.from_rows(rows)
    assert rank(m) == rank(m.transpose())


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(entry, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_full_rank_iff_nonzero_determinant(rows):
    assert (rank(RationalMatrix.from_rows(rows)) == len(rows)) == (leibniz_det(rows) != 0)


@given(matrices(), st.lists(entry, min_size=6, max_size=6))
def test_solve_consistent_systems(rows, x):
    x = x[: len(rows[0])]
    b = matvec(rows, x)
    sol = solve(RationalMatrix.from_rows(rows), b)
    assert sol is not None and matvec(rows, sol) == b


def test_solve_inconsistent():
    m = RationalMatrix.from_rows([[1, 1], [2, 2]])
    assert solve(m, [1, 3]) is None
    assert not row_space_contains(m.transpose(), [1, 3])


def test_rref_small():
    red, piv = rref(RationalMatrix.from_rows([[2, 4, 6], [1, 3, 5]]))
    assert piv == [0, 1]
    assert red.to_rows() == [[1, 0, -1], [0, 1, 2]]


@given(matrices())
def test_sparse_echelon_agrees_with_dense(rows):
    ech = SparseEchelon(len(rows[0]))
    for r in rows:
        ech.add({j: v for j, v in enumerate(r) if v})
    assert ech.rank == naive_rank(rows)
    assert len(ech.free_columns()) == len(rows[0]) - ech.rank


@given(matrices())
def test_sparse_normal_form_is_reduced(rows):
    ech = SparseEchelon(len(rows[0]))
    for r in rows:
        ech.add({j: v for j, v in enumerate(r) if v})
    for r in rows:
        # every stored row lies in the span, so its normal form vanishes
        assert ech.normal_form({j: v for j, v in enumerate(r) if v}) == {}
