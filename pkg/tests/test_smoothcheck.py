import json
import os
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, strategies as st

from babyverma.exactalg import LaurentPoly
from babyverma.smoothcheck import (
    EXTRAPOLATION,
    INCONCLUSIVE,
    SINGULAR,
    CoxeterDatum,
    Irreducible,
    InvariantViolation,
    MissingData,
    SchemaError,
    bound_rhs,
    check_singular,
    coinv_hilbert,
    datum_from_dict,
    dihedral_datum,
    h3_datum,
    ingest_coxeter_datum,
    internal_datum,
    leading_coeff_test,
    sign_refinement,
    sign_series,
    symmetric_datum,
    window_bound,
)

H3_HILBERT = [1, 3, 5, 7, 9, 11, 12, 12, 12, 12, 11, 9, 7, 5, 3, 1]


def h3_molien():
    """Fake degrees of H3 = A5 x {+-1} from a floating point Molien sum.

    A5 acts by icosahedral rotations; class data are (size, rotation angle) and
    the five A5 characters. The reflection representation is the rotation
    representation twisted by the sign of the central element.
    """
    phi = (1 + 5**0.5) / 2
    classes = [(1, 0), (15, np.pi), (20, 2 * np.pi / 3), (12, 2 * np.pi / 5), (12, 4 * np.pi / 5)]
    chars = {
        "1": [1, 1, 1, 1, 1],
        "3": [3, -1, 0, phi, 1 - phi],
        "3bar": [3, -1, 0, 1 - phi, phi],
        "4": [4, 0, 1, -1, -1],
        "5": [5, 1, -1, 0, 0],
    }
    N = 32
    num = np.array([1.0])
    for d in (2, 6, 10):
        factor = np.zeros(d + 1)
        factor[0], factor[d] = 1, -1
        num = np.convolve(num, factor)

    def inv_det(eigs):
        s = np.zeros(N, complex)
        s[0] = 1
        for e in eigs:
            s = np.convolve(s, e ** np.arange(N))[:N]
        return s

    out = {}
    for name, ch in chars.items():
        for eps in (1, -1):
            total = np.zeros(N, complex)
            for (size, angle), x in zip(classes, ch):
                eig = np.array([1, np.exp(1j * angle), np.exp(-1j * angle)])
                total += size * x * inv_det(eig)
                total += size * x * eps * inv_det(-eig)
            f = np.convolve(total / 120, num)[:N].real
            out[(name, eps)] = LaurentPoly({k: int(round(v)) for k, v in enumerate(f) if round(v)})
    return out


def test_h3_data_matches_molien():
    molien = set(h3_molien().values())
    shipped = {irr.fake_degree for irr in h3_datum().irreducibles}
    assert shipped == molien


def test_h3_datum_invariants():
    d = h3_datum()
    assert len(d.irreducibles) == 10
    assert sum(irr.dim**2 for irr in d.irreducibles) == 120
    assert d.get("3_s").fake_degree == LaurentPoly({1: 1, 5: 1, 9: 1})


@pytest.mark.parametrize(
    "degrees, expected",
    [((2, 3), [1, 2, 2, 1]), ((2, 6, 10), H3_HILBERT), ((1,), [1])],
)
def test_coinv_hilbert(degrees, expected):
    h = coinv_hilbert(degrees)
    assert h.dense()[1] == expected


@given(st.lists(st.integers(1, 8), min_size=1, max_size=4))
def test_coinv_hilbert_properties(degrees):
    h = coinv_hilbert(degrees)
    assert h.is_palindromic()
    assert h.degree() == sum(d - 1 for d in degrees)
    prod = 1
    for d in degrees:
        prod *= d
    assert h(1) == prod


@pytest.mark.parametrize("m", [5, 6, 7])
def test_dihedral_bound(m):
    d = dihedral_datum(m)
    assert bound_rhs(d, "phi1") == 8
    assert sign_refinement(d, "phi1") == 8
    assert check_singular(d).verdict == SINGULAR


def test_h3_bound_and_refinement():
    d = h3_datum()
    assert bound_rhs(d, "3_s") == 120
    assert sign_series(d, "3_s") == LaurentPoly({6: 1, 10: 1, 14: 1})
    assert sign_refinement(d, "3_s") == 119
    rep = check_singular(d)
    assert rep.verdict == SINGULAR
    entry = rep.entry("3_s")
    assert entry.refinement_applied and entry.to_json()["refinement"] == EXTRAPOLATION


def test_b2_is_inconclusive():
    rep = check_singular(dihedral_datum(4))
    assert rep.verdict == INCONCLUSIVE
    assert {e.bound for e in rep.entries} == {8}


def test_window_arithmetic_for_f4_shape():
    # degrees of F4 with a 12-dimensional irreducible having b = 4, j = 20
    assert window_bound((2, 6, 8, 12), 12, 4, 20) == 1020


def f4_datum_path():
    env = os.environ.get("BABYVERMA_F4_DATUM")
    path = Path(env) if env else Path(__file__).parent / "data" / "F4.json"
    return path if path.exists() else None


@pytest.mark.skipif(f4_datum_path() is None, reason="no F4 datum file (set BABYVERMA_F4_DATUM)")
def test_f4_bound_from_file():
    d = ingest_coxeter_datum(f4_datum_path())
    twelve = [irr.label for irr in d.irreducibles if irr.dim == 12]
    assert twelve and bound_rhs(d, twelve[0]) == 1020


def test_sign_twist_rule_agrees_with_labels():
    for d in (h3_datum(), dihedral_datum(8), symmetric_datum(5)):
        for irr in d.irreducibles:
            assert d.get(irr.sign_twist).fake_degree == irr.fake_degree.reverse().shift(d.top_degree)
        stripped = CoxeterDatum(
            d.name, d.order, d.degrees, tuple(Irreducible(i.label, i.dim, i.fake_degree) for i in d.irreducibles)
        )
        assert check_singular(stripped).to_json() == check_singular(d).to_json()


def test_verdict_stable_under_relabelling():
    d = h3_datum()
    renamed = CoxeterDatum(
        d.name,
        d.order,
        d.degrees,
        tuple(reversed([Irreducible("x" + i.label, i.dim, i.fake_degree, "x" + i.sign_twist) for i in d.irreducibles])),
    )
    a, b = check_singular(d), check_singular(renamed)
    assert a.verdict == b.verdict
    assert sorted(e.refined for e in a.entries) == sorted(e.refined for e in b.entries)


@pytest.mark.parametrize("name", ["H3", "I2:5", "I2:12", "Sn:6"])
def test_bound_at_least_dim_squared(name):
    d = internal_datum(name)
    for irr in d.irreducibles:
        assert sign_refinement(d, irr.label) <= bound_rhs(d, irr.label)
        assert bound_rhs(d, irr.label) >= irr.dim**2


def test_leading_coefficients():
    assert leading_coeff_test(dihedral_datum(9)) == []
    for n in range(1, 9):
        assert leading_coeff_test(symmetric_datum(n)) == []
    # synthetic but consistent: degrees (2,2,2,2), h = (1+t)^4
    raw = {
        "name": "toy",
        "order": 16,
        "degrees": [2, 2, 2, 2],
        "irreducibles": [
            {"label": "a", "dim": 1, "fake_degree": {"0": "1"}},
            {"label": "b", "dim": 1, "fake_degree": {"4": "1"}},
            {"label": "c", "dim": 1, "fake_degree": {"2": "1"}},
            {"label": "d", "dim": 1, "fake_degree": {"2": "1"}},
            {"label": "e", "dim": 2, "fake_degree": {"1": "2"}},
            {"label": "f", "dim": 2, "fake_degree": {"2": "2"}},
            {"label": "g", "dim": 2, "fake_degree": {"3": "2"}},
        ],
    }
    toy = datum_from_dict(raw)
    assert leading_coeff_test(toy) == ["e", "f", "g"]
    assert check_singular(toy).verdict == SINGULAR


@pytest.mark.parametrize("n", range(1, 9))
def test_symmetric_groups_are_never_flagged(n):
    d = symmetric_datum(n)
    assert d.degrees == tuple(range(1, n + 1))
    assert check_singular(d).verdict == INCONCLUSIVE


def write(tmp_path, payload):
    p = tmp_path / "datum.json"
    p.write_text(json.dumps(payload) if not isinstance(payload, str) else payload)
    return p


def valid_raw():
    return json.loads(json.dumps({
        "name": "I2(5)",
        "order": 10,
        "degrees": [2, 5],
        "irreducibles": [
            {"label": "triv", "dim": 1, "fake_degree": {"0": "1"}},
            {"label": "sgn", "dim": 1, "fake_degree": {"5": "1"}},
            {"label": "phi1", "dim": 2, "fake_degree": {"1": "1", "4": "1"}},
            {"label": "phi2", "dim": 2, "fake_degree": {"2": "1", "3": "1"}},
        ],
    }))


def test_ingest_valid(tmp_path):
    d = ingest_coxeter_datum(write(tmp_path, valid_raw()))
    assert d.order == 10 and check_singular(d).verdict == SINGULAR


def test_ingest_bad_degree_product(tmp_path):
    raw = valid_raw()
    raw["degrees"] = [2, 6]
    with pytest.raises(InvariantViolation) as err:
        ingest_coxeter_datum(write(tmp_path, raw))
    assert err.value.check == "product of degrees"


def test_ingest_bad_dimension(tmp_path):
    raw = valid_raw()
    raw["irreducibles"][2]["fake_degree"] = {"1": "1"}
    with pytest.raises(InvariantViolation) as err:
        ingest_coxeter_datum(write(tmp_path, raw))
    assert err.value.check == "f(1) = dim"


@pytest.mark.parametrize(
    "mutate",
    [
        lambda r: r.pop("degrees"),
        lambda r: r.__setitem__("order", "ten"),
        lambda r: r["irreducibles"][0].pop("dim"),
        lambda r: r["irreducibles"][0].__setitem__("fake_degree", {"x": "1"}),
    ],
)
def test_ingest_schema_errors(tmp_path, mutate):
    raw = valid_raw()
    mutate(raw)
    with pytest.raises(SchemaError):
        ingest_coxeter_datum(write(tmp_path, raw))


def test_ingest_not_json(tmp_path):
    with pytest.raises(SchemaError):
        ingest_coxeter_datum(write(tmp_path, "{oops"))


def test_unknown_groups():
    with pytest.raises(MissingData):
        internal_datum("E8")
    with pytest.raises(MissingData):
        internal_datum("I2:40")
    with pytest.raises(MissingData):
        h3_datum().get("7_x")
