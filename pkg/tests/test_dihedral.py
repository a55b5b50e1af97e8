import pytest
from hypothesis import given, strategies as st

from babyverma.exactalg import NotDivisible
from babyverma.rank2engine import build_group, coinvariant_basis, irrep, irreps
from babyverma.rank2engine.cyclo import mat_eq, mat_identity, mat_mul, rref
from babyverma.rank2engine.dihedral import Element, Poly


def h_hstar_matrix(data, g):
    """4x4 matrix of g on h + h* in the bases (X, Y) and (X*, Y*)."""
    F = data.field
    out = [[F.zero] * 4 for _ in range(4)]
    for col, (a, b, dual) in enumerate([(1, 0, False), (0, 1, False), (1, 0, True), (0, 1, True)]):
        img = Poly.monomial(F, a, b).act(g, data.m, dual=dual)
        for (x, y), v in img.terms.items():
            row = (0 if x else 1) + (2 if dual else 0)
            out[row][col] = v
    return out


@pytest.mark.parametrize("m, refl, classes", [(3, 3, 1), (4, 4, 2), (5, 5, 1), (6, 6, 2), (7, 7, 1)])
def test_reflection_counts(m, refl, classes):
    data = build_group(m)
    assert len(data.reflections) == refl
    assert len(data.classes) == classes
    assert len(data.elements) == 2 * m


def test_g2_classes_by_enumeration():
    data = build_group(6)
    m = 6
    refls = [g for g in data.elements if g.f]
    # conjugacy by brute force
    orbit = {}
    for s in refls:
        orbit[s] = frozenset(g.mul(s, m).mul(g.inverse(m), m) for g in data.elements)
    classes = set(orbit.values())
    assert len(classes) == 2 and sorted(len(c) for c in classes) == [3, 3]
    for s in data.reflections:
        for t in data.reflections:
            same = orbit[s.element] == orbit[t.element]
            assert same == (s.cls == t.cls)


@pytest.mark.parametrize("m", range(3, 9))
def test_conjugacy_class_sizes(m):
    data = build_group(m)
    assert sum(size for _, _, size in data.conjugacy_classes()) == 2 * m


@pytest.mark.parametrize("m", range(3, 9))
def test_reflections_fix_a_plane(m):
    data = build_group(m)
    F = data.field
    for s in data.reflections:
        g = h_hstar_matrix(data, s.element)
        diff = [[g[i][j] - (F.one if i == j else F.zero) for j in range(4)] for i in range(4)]
        rank = len(rref(diff, 4, F)[0])
        assert rank == 2  # fixed subspace has dimension 2
        # alpha_s spans the -1 eigenline on h, alpha_s^vee on h*
        alpha = Poly(F, {(1, 0): s.alpha[0], (0, 1): s.alpha[1]})
        assert alpha.act(s.element, m) == alpha * (-F.one)
        coroot = Poly(F, {(1, 0): s.alpha_vee[0], (0, 1): s.alpha_vee[1]})
        assert coroot.act(s.element, m, dual=True) == coroot * (-F.one)
        assert s.pairing() == F.from_rational(2)
        # alpha_s^vee vanishes on the fixed line of h, alpha_s on that of h*
        fixed = Poly(F, {(1, 0): F.one, (0, 1): F.zeta(-s.k)})
        assert fixed.act(s.element, m) == fixed
        assert s.alpha_vee[0] * F.one + s.alpha_vee[1] * F.zeta(-s.k) == F.zero
        fixed_dual = (F.one, F.zeta(s.k))
        assert s.alpha[0] * fixed_dual[0] + s.alpha[1] * fixed_dual[1] == F.zero


@pytest.mark.parametrize("m", range(3, 10))
def test_irreps(m):
    F = build_group(m).field
    reps = irreps(m)
    assert len(reps) == (4 if m % 2 == 0 else 2) + (m - 1) // 2
    assert sum(r.dim ** 2 for r in reps) == 2 * m
    for rep in reps:
        R = rep.matrix(Element(1, 0), F)
        S = rep.matrix(Element(0, 1), F)
        I = mat_identity(F, rep.dim)
        Rm = I
        for _ in range(m):
            Rm = mat_mul(Rm, R, F)
        assert mat_eq(Rm, I)
        assert mat_eq(mat_mul(S, S, F), I)
        assert mat_eq(mat_mul(mat_mul(S, R, F), S, F), rep.matrix(Element(m - 1, 0), F))


def test_irrep_lookup():
    assert irrep(6, "phi2").dim == 2
    with pytest.raises(KeyError):
        irrep(5, "eps+")


@pytest.mark.parametrize("m", range(3, 13))
def test_coinvariant_hilbert(m):
    cb = coinvariant_basis(m)
    assert cb.hilbert() == [1] + [2] * (m - 1) + [1]
    assert cb.dimension() == 2 * m
    assert cb.top_degree == m
    # ideal generators reduce to zero
    F = build_group(m).field
    assert cb.reduce(Poly.monomial(F, 1, 1)) == {}
    assert cb.reduce(Poly(F, {(m, 0): F.one, (0, m): F.one})) == {}


def test_coinvariant_m3():
    assert coinvariant_basis(3).hilbert() == [1, 2, 2, 1]


@given(st.integers(3, 8), st.integers(0, 4), st.integers(0, 4), st.integers(0, 5))
def test_linear_division(m, a, b, k):
    data = build_group(m)
    F = data.field
    s = data.reflections[k % m]
    p = Poly.monomial(F, a, b)
    diff = p - p.act(s.element, m)
    if diff.is_zero():
        return
    q = diff.div_linear(*s.alpha)
    alpha = Poly(F, {(1, 0): s.alpha[0], (0, 1): s.alpha[1]})
    assert q * alpha == diff


def test_division_failure():
    F = build_group(3).field
    with pytest.raises(NotDivisible):
        Poly.monomial(F, 2, 0).div_linear(F.one, F.one)
    with pytest.raises(NotDivisible):
        Poly.monomial(F, 0, 0).div_linear(F.one, F.zero)
