import json
from pathlib import Path

import pytest

from arcmodel.fields import PrimeField, RationalField
from arcmodel.formats import arc_from_doc, variety_from_doc
from arcmodel.geometry import Arc, Variety, select_minor
from arcmodel.model import build_model
from arcmodel.series import TruncSeries

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


@pytest.fixture
def qq():
    return RationalField()


@pytest.fixture
def f2():
    return PrimeField(2)


@pytest.fixture
def f3():
    return PrimeField(3)


@pytest.fixture
def f5():
    return PrimeField(5)


def corpus_entries():
    manifest = json.loads((CORPUS / "entries.json").read_text())
    return manifest["entries"]


def load_entry(name, field_override=None, precision_override=None):
    entry = next(e for e in corpus_entries() if e["name"] == name)
    vdoc = json.loads((CORPUS / entry["variety"]).read_text())
    adoc = json.loads((CORPUS / entry["arc"]).read_text())
    variety = variety_from_doc(vdoc, field_override)
    arc = arc_from_doc(adoc, variety, precision_override)
    return variety, arc


def monomial_arc(field, variety, powers, precision):
    """Arc with one monomial (or zero) component per variable; powers maps
    name -> exponent, None meaning the zero series."""
    comps = {}
    for v in variety.variables:
        k = powers.get(v)
        coeffs = [field.zero()] * precision
        if k is not None:
            coeffs[k] = field.one()
        comps[v] = TruncSeries(field, coeffs, precision)
    return Arc(comps, precision)


def build_entry_model(name, field_override=None, precision_override=None, e=1):
    variety, arc = load_entry(name, field_override, precision_override)
    sel = select_minor(variety, arc)
    return variety, arc, sel, build_model(variety, arc, sel, e)
