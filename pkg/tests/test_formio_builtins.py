import json
from fractions import Fraction

import pytest
from hypothesis import given

from stableforms import formio, scalar
from stableforms.builtins import FIXED, INDEXED, builtin_form, phi0, rho0, rho0_ambient, split_phi1, zeta_s
from stableforms.forms import PForm, form, shift
from stableforms.formio import FormFormatError
from stableforms.simplicial import ComplexError

from conftest import pforms


def test_phi0_transcription():
    assert phi0() == form(7, 3, [(1, (1, 2, 3)), (1, (1, 4, 5)), (1, (1, 6, 7)), (1, (2, 4, 6)),
                                 (-1, (2, 5, 7)), (-1, (3, 4, 7)), (-1, (3, 5, 6))])


def test_split_phi1_transcription():
    h = Fraction(1, 2)
    assert split_phi1() == form(7, 3, [(h, (1, 4, 7)), (h, (1, 5, 6)), (-h, (2, 3, 7)), (h, (2, 4, 6)),
                                       (-h, (3, 4, 5))])


def test_rho0_local_and_ambient():
    assert rho0_ambient() == form(7, 3, [(-1, (2, 3, 7)), (1, (2, 4, 6)), (-1, (3, 4, 5))])
    assert shift(rho0(), 1, 7) == rho0_ambient()


def test_zeta_s_lives_in_quadratic_field():
    z = zeta_s()
    assert z.n == 8 and z.p == 3 and len(z.terms) == 9
    assert z.field() == 3
    surds = {I: c for I, c in z.terms.items() if isinstance(c, scalar.Surd)}
    assert set(surds) == {(1, 4, 7), (1, 5, 6)}
    assert all(c * c == Fraction(3, 4) for c in surds.values())


def test_builtin_lookup():
    assert builtin_form("phi0") == phi0()
    assert builtin_form("varpi+", 3).p == 4
    with pytest.raises(KeyError):
        builtin_form("nope")
    with pytest.raises(ValueError):
        builtin_form("xi0")


@pytest.mark.parametrize("name", sorted(FIXED))
def test_fixed_builtins_roundtrip(name):
    f = builtin_form(name)
    assert formio.loads_form(formio.dumps_form(f)) == f


@pytest.mark.parametrize("name", sorted(INDEXED))
def test_indexed_builtins_roundtrip(name):
    f = builtin_form(name, 3)
    assert formio.loads_form(formio.dumps_form(f)) == f


@given(pforms(5, 2))
def test_roundtrip_random(f):
    assert formio.loads_form(formio.dumps_form(f)) == f


def test_unsorted_indices_are_sign_normalized():
    text = json.dumps({"n": 3, "p": 2, "terms": [{"idx": [2, 1], "coeff": "3/2"}, {"idx": [1, 1], "coeff": "5"}]})
    assert formio.loads_form(text) == form(3, 2, [(Fraction(-3, 2), (1, 2))])


def test_surd_coefficients_load():
    text = json.dumps({"n": 2, "p": 1, "field": {"sqrt": 12}, "terms": [{"idx": [1], "coeff": {"a": "1", "b": "1/2"}}]})
    f = formio.loads_form(text)
    assert f.field() == 3  # sqrt 12 = 2 sqrt 3
    assert f.terms[(1,)] == scalar.Surd(1, Fraction(1, 2), 3)


@pytest.mark.parametrize("text,fragment", [
    ('{"n": 3, "p": 2, "terms": [', "line 1"),
    ('{"p": 2, "terms": []}', "'n'/'p'"),
    ('{"n": 3, "p": 2, "terms": [{"idx": [1, 4], "coeff": "1"}]}', "term 0"),
    ('{"n": 3, "p": 2, "terms": [{"idx": [1, 2], "coeff": "0.5"}]}', "term 0"),
    ('{"n": 3, "p": 2, "terms": [{"idx": [1, 2]}]}', "term 0"),
    ('{"n": 3, "p": 2, "field": "R", "terms": []}', "unknown field"),
    ('{"n": 3, "p": 2, "field": {"sqrt": 4}, "terms": []}', "rational"),
])
def test_malformed_forms_report_context(text, fragment):
    with pytest.raises(FormFormatError) as exc:
        formio.loads_form(text, "bad.form")
    assert "bad.form" in str(exc.value) and fragment in str(exc.value)


def test_complex_file(tmp_path):
    p = tmp_path / "tri.json"
    p.write_text(json.dumps({"vertices": 3, "simplices": [[0, 1, 2]], "coords": [["0", "0"], ["1", "0"], ["0", "1"]]}))
    K = formio.load_complex(p)
    assert K.dim == 2 and K.coords[1] == [1, 0]
    p.write_text(json.dumps({"vertices": 2, "simplices": [[0, 1, 2]]}))
    with pytest.raises(ComplexError):
        formio.load_complex(p)
    p.write_text(json.dumps({"simplices": "oops"}))
    with pytest.raises(FormFormatError):
        formio.load_complex(p)
