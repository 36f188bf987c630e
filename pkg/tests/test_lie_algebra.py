import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chordinv.errors import MalformedInput, NotSemisimpleFamily, SingularMatrix
from chordinv.lie_algebra import (
    BasisChange,
    StructureConstants,
    build_classical,
    change_basis,
    classical_matrices,
    direct_sum,
    dump_algebra,
    load_algebra,
    random_invertible,
    validate_structure,
)
from chordinv.linalg_exact import RationalMatrix, det_exact

from conftest import algebra

CLASSICAL = [("sl", 2), ("sl", 3), ("sl", 4), ("so", 3), ("so", 4), ("so", 5), ("so", 6), ("sp", 2), ("sp", 4), ("sp", 6)]


def brackets_hold(sc, mats):
    """sum_k mu_ij^k X_k == [X_i, X_j] for every pair, with exact object arrays."""
    X = [np.array(M, dtype=object) for M in mats]
    zero = X[0] * 0
    for i in range(sc.n):
        for j in range(sc.n):
            lhs = sum((sc[i + 1, j + 1, k + 1] * X[k] for k in range(sc.n)), zero)
            if not (lhs == X[i].dot(X[j]) - X[j].dot(X[i])).all():
                return False
    return True


@pytest.mark.parametrize("fam,m", CLASSICAL)
def test_classical_dimensions_and_validity(fam, m):
    sc = build_classical(fam, m)
    expected = {"sl": m * m - 1, "so": m * (m - 1) // 2, "sp": m * (m + 1) // 2}[fam]
    assert sc.n == expected
    assert validate_structure(sc).empty


@pytest.mark.parametrize("fam,m", [("sl", 2), ("sl", 3), ("so", 4), ("so", 5), ("sp", 4)])
def test_classical_matches_matrix_commutators(fam, m):
    assert brackets_hold(build_classical(fam, m), classical_matrices(fam, m))


def test_family_errors():
    for fam, m in [("sl", 1), ("so", 2), ("sp", 3), ("sp", 0)]:
        with pytest.raises(NotSemisimpleFamily):
            build_classical(fam, m)
    with pytest.raises(MalformedInput):
        build_classical("e", 8)


def test_sl2_constants():
    sc = build_classical("sl", 2)
    # basis e, f, h: [e,f]=h, [h,e]=2e, [h,f]=-2f
    assert sc[1, 2, 3] == 1
    assert sc[3, 1, 1] == 2
    assert sc[3, 2, 2] == -2
    assert sc[2, 1, 3] == -1
    assert sc.nnz() == 6


def test_validation_reports_antisymmetry():
    rep = validate_structure({(1, 2, 1): 1, (2, 1, 1): 1}, n=2)
    assert rep.antisymmetry == [(1, 2, 1)]
    rep = validate_structure({(1, 2, 1): 1, (2, 1, 1): -1}, n=2)
    assert rep.empty


def test_validation_reports_jacobi():
    # [e1,e2]=e3, [e2,e3]=e1, [e3,e1]=e3 breaks Jacobi
    sc = StructureConstants(3, {(1, 2, 3): 1, (2, 3, 1): 1, (1, 3, 3): -1})
    rep = validate_structure(sc)
    assert rep.jacobi and not rep.antisymmetry


def test_structure_rejects_bad_entries():
    with pytest.raises(MalformedInput):
        StructureConstants(2, {(2, 1, 1): 1})
    with pytest.raises(MalformedInput):
        StructureConstants(2, {(1, 3, 1): 1})
    with pytest.raises(MalformedInput):
        StructureConstants.from_json({"n": 2, "mu": [[1, 2, 1, 1], [1, 2, 1, 2]]})
    with pytest.raises(MalformedInput):
        StructureConstants.from_json({"n": 2, "mu": [[1.0, 2, 1, 1]]})


def test_json_roundtrip(tmp_path):
    sc = build_classical("sp", 4)
    path = tmp_path / "sp4.json"
    path.write_text(dump_algebra(sc))
    again = load_algebra(path)
    assert again == sc
    assert json.loads(dump_algebra(sc)) == sc.to_json()


def test_direct_sum_blocks():
    a, b = algebra("sl2"), algebra("sl3")
    s = direct_sum(a, b)
    assert s.n == 11
    assert validate_structure(s).empty
    assert s[1, 2, 3] == a[1, 2, 3]
    assert all(s[i + 3, j + 3, k + 3] == b[i, j, k] for i in range(1, 9) for j in range(1, 9) for k in range(1, 9))
    for i in range(1, 4):
        for j in range(4, 12):
            assert all(s[i, j, k] == 0 for k in range(1, 12))


def test_basis_change_identity_and_scalar():
    sc = algebra("sl3")
    assert change_basis(sc, BasisChange(8, RationalMatrix.identity(8))) == sc
    # scaling every vector by c scales the constants by c
    c = Fraction(3, 2)
    scaled = change_basis(sc, BasisChange(8, RationalMatrix.identity(8).scale(c)))
    assert scaled.mu == {k: c * v for k, v in sc.mu.items()}


def test_basis_change_matches_matrix_realization():
    mats = classical_matrices("sl", 2)
    g = random_invertible(3, seed=5)
    new = change_basis(algebra("sl2"), g)
    T = g.T.tolist()
    Y = [sum((T[i][j] * np.array(mats[i], dtype=object) for i in range(3)), 0) for j in range(3)]
    assert brackets_hold(new, Y)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 10**6))
def test_basis_change_group_action(s1, s2):
    sc = algebra("sl2")
    g, h = random_invertible(3, s1), random_invertible(3, s2)
    assert change_basis(change_basis(sc, g), g.inverse()) == sc
    assert change_basis(sc, g.compose(h)) == change_basis(change_basis(sc, h), g)
    assert validate_structure(change_basis(sc, g)).empty


def test_random_invertible_deterministic():
    a, b = random_invertible(6, 11), random_invertible(6, 11)
    assert a.T == b.T
    assert det_exact(a.T) == 1
    assert random_invertible(6, 12).T != a.T


def test_singular_basis_change():
    with pytest.raises(SingularMatrix):
        BasisChange(2, RationalMatrix([[1, 2], [2, 4]]))
