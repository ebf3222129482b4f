"""JSON text format for forms and simplicial complexes."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from . import scalar
from .forms import PForm, _perm_sign


class FormFormatError(ValueError):
    pass


def form_to_obj(alpha: PForm) -> dict:
    d = alpha.field()
    return {
        "n": alpha.n,
        "p": alpha.p,
        "field": "Q" if d is None else {"sqrt": d},
        "terms": [{"idx": list(I), "coeff": scalar.to_json(c)} for I, c in alpha.terms.items()],
    }


def form_from_obj(obj: dict, source: str = "<form>") -> PForm:
    try:
        n, p = int(obj["n"]), int(obj["p"])
    except (KeyError, TypeError, ValueError) as exc:
        raise FormFormatError(f"{source}: missing or invalid 'n'/'p'") from exc
    fld = obj.get("field", "Q")
    if fld == "Q":
        d = None
    elif isinstance(fld, dict) and "sqrt" in fld:
        _, d = scalar.squarefree_part(int(fld["sqrt"]))
        if d == 1:
            raise FormFormatError(f"{source}: sqrt({fld['sqrt']}) is rational")
    else:
        raise FormFormatError(f"{source}: unknown field {fld!r}")
    terms = {}
    for k, t in enumerate(obj.get("terms", [])):
        try:
            idx = tuple(int(i) for i in t["idx"])
            c = scalar.from_json(t["coeff"], d)
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise FormFormatError(f"{source}: term {k} ({t!r}): {exc}") from exc
        if len(idx) != p or any(i < 1 or i > n for i in idx):
            raise FormFormatError(f"{source}: term {k} has bad index {list(idx)} for n={n}, p={p}")
        if len(set(idx)) != len(idx):
            continue
        key = tuple(sorted(idx))
        terms[key] = terms.get(key, Fraction(0)) + _perm_sign(idx) * c
    return PForm(n, p, terms)


def dumps_form(alpha: PForm) -> str:
    return json.dumps(form_to_obj(alpha), indent=1)


def loads_form(text: str, source: str = "<form>") -> PForm:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormFormatError(f"{source}: line {exc.lineno}: {exc.msg}") from exc
    return form_from_obj(obj, source)


def load_form(path) -> PForm:
    path = Path(path)
    return loads_form(path.read_text(), str(path))


def save_form(alpha: PForm, path) -> None:
    Path(path).write_text(dumps_form(alpha) + "\n")


def complex_from_obj(obj: dict, source: str = "<complex>"):
    from .simplicial import SimplicialComplex

    try:
        simplices = [tuple(int(v) for v in s) for s in obj["simplices"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise FormFormatError(f"{source}: bad 'simplices' list") from exc
    coords = obj.get("coords")
    if coords is not None:
        coords = [[scalar.parse(x) for x in row] for row in coords]
    return SimplicialComplex(simplices, coords=coords, vertex_count=obj.get("vertices"))


def load_complex(path):
    path = Path(path)
    try:
        obj = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise FormFormatError(f"{path}: line {exc.lineno}: {exc.msg}") from exc
    return complex_from_obj(obj, str(path))
