import random

import pytest
import sympy
from sympy.matrices.normalforms import smith_normal_form

from countqm.groups import build_group
from countqm.snf import AbelianInvariants, AbelianQuotient, smith_decomposition, smith_invariants, table_relations


def sympy_factors(rel, ncols):
    """Independent oracle: sympy SNF of the relation matrix."""
    if not rel:
        return (0,) * ncols
    M = sympy.Matrix(rel)
    D = smith_normal_form(M, domain=sympy.ZZ)
    diag = [abs(int(D[i, i])) for i in range(min(D.shape))]
    diag += [0] * (ncols - len(diag))
    nz = sorted(d for d in diag if d)
    return tuple(nz + [0] * (ncols - len(nz)))


def test_diag_2_3_is_z6():
    inv = smith_invariants([[2, 0], [0, 3]], 2)
    assert inv.factors == (1, 6)
    assert str(inv) == "Z6"


def test_empty_relations_free():
    inv = smith_invariants([], 2)
    assert inv.factors == (0, 0)
    assert inv.rank == 2


def test_sl2z_lattice_is_z12():
    inv = smith_invariants([[6, 0], [0, 4], [3, -2]], 2)
    assert inv.factors == (1, 12)


def test_klein_hnn_lattice():
    assert smith_invariants([[2, 0, 0], [0, 2, 0], [1, -1, 0]], 3).factors == (1, 2, 0)


def test_group_table_abelianization():
    G = build_group("product:[cyclic:4,cyclic:6]")
    inv = smith_invariants(table_relations(G, 0, G.order), G.order)
    assert inv.nontrivial == (2, 12)


@pytest.mark.parametrize("seed", range(25))
def test_against_sympy(seed):
    rng = random.Random(seed)
    rows, cols = rng.randint(1, 5), rng.randint(1, 5)
    rel = [[rng.randint(-6, 6) for _ in range(cols)] for _ in range(rows)]
    ours = smith_invariants(rel, cols).factors
    assert ours == sympy_factors(rel, cols)


@pytest.mark.parametrize("seed", range(10))
def test_unimodular_invariance(seed):
    rng = random.Random(100 + seed)
    n = 3
    rel = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(3)]
    base = smith_invariants(rel, n)
    M = [row[:] for row in rel]
    for _ in range(6):
        i, j = rng.sample(range(n), 2)
        k = rng.randint(-3, 3)
        for row in M:  # column op
            row[i] += k * row[j]
        a, b = rng.sample(range(len(M)), 2)
        M[a] = [x + k * y for x, y in zip(M[a], M[b])]  # row op
    assert smith_invariants(M, n) == base


@pytest.mark.parametrize("seed", range(10))
def test_decomposition_v_is_unimodular(seed):
    rng = random.Random(seed)
    rel = [[rng.randint(-4, 4) for _ in range(3)] for _ in range(2)]
    diag, V = smith_decomposition(rel, 3)
    assert abs(sympy.Matrix(V).det()) == 1
    nz = [d for d in diag if d]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))


def test_quotient_membership():
    q = AbelianQuotient([[6, 0], [0, 4], [3, -2]], 2)
    assert q.is_trivial([3, -2])
    assert q.is_trivial([0, 0])
    assert not q.is_trivial([1, 0])
    assert q.is_trivial([12, 0])


def test_invariants_validation():
    with pytest.raises(ValueError):
        AbelianInvariants((2, 3))
    with pytest.raises(ValueError):
        AbelianInvariants((0, 2))
    assert AbelianInvariants((1, 1)).nontrivial == ()
    assert str(AbelianInvariants((1,))) == "0"
