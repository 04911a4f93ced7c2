"""JSON file formats: varieties, arcs, test rings, models, solutions,
deformations and reports.

All emitted documents use explicitly ordered keys and exact scalar strings,
so identical inputs produce byte-identical output.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import InputError
from .fields import field_from_spec
from .geometry import Arc, Variety
from .lifting import Deformation, ModelSolution
from .model import FiniteModel, ModelDiagnostics
from .multipoly import PolyRing
from .series import TruncSeries, UniPoly
from .testrings import TestRing, make_test_ring


def _load_json(path) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError as exc:
        raise InputError(f"no such file: {path}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def dump_json(doc: dict, path=None) -> str:
    text = json.dumps(doc, indent=2) + "\n"
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text


def load_variety(path, field_override=None) -> Variety:
    """Variety file: {"field": {...}, "variables": [...],
    "equations": ["..."], "codim": r}."""
    doc = _load_json(path)
    return variety_from_doc(doc, field_override)


def variety_from_doc(doc: dict, field_override=None) -> Variety:
    for key in ("variables", "equations"):
        if key not in doc:
            raise InputError(f"variety file missing {key!r}")
    field = field_override or field_from_spec(doc.get("field", {"type": "rational"}))
    return Variety(field, doc["variables"], doc["equations"], doc.get("codim"))


def load_arc(path, variety: Variety, precision_override=None) -> Arc:
    """Arc file: {"t_precision": N, "components": {"x": "t", ...}}."""
    doc = _load_json(path)
    return arc_from_doc(doc, variety, precision_override)


def arc_from_doc(doc: dict, variety: Variety, precision_override=None) -> Arc:
    if "components" not in doc:
        raise InputError("arc file missing 'components'")
    precision = precision_override or doc.get("t_precision")
    if precision is None:
        raise InputError("arc file missing 't_precision'")
    precision = int(precision)
    t_ring = PolyRing(variety.field, ("t",))
    components = {}
    for name, text in doc["components"].items():
        if name not in variety.variables:
            raise InputError(f"arc component {name!r} is not an ambient variable")
        poly = t_ring.parse(text)
        coeffs = [variety.field.zero()] * precision
        for exp, c in poly.terms.items():
            if exp[0] < precision:
                coeffs[exp[0]] = c
            else:
                raise InputError(
                    f"component {name!r} has degree {exp[0]} >= precision {precision}"
                )
        components[name] = TruncSeries(variety.field, coeffs, precision)
    missing = set(variety.variables) - set(components)
    if missing:
        raise InputError(f"arc file missing components for {sorted(missing)}")
    return Arc(components, precision)


def load_test_ring(spec, field) -> TestRing:
    """Accept a spec dict, an inline JSON string, or a path to a JSON file."""
    if isinstance(spec, dict):
        return make_test_ring(field, spec)
    text = str(spec).strip()
    if text.startswith("{"):
        try:
            return make_test_ring(field, json.loads(text))
        except json.JSONDecodeError as exc:
            raise InputError(f"bad inline test ring spec: {exc}") from exc
    return make_test_ring(field, _load_json(text))


def series_to_text(ring, series) -> str:
    """Render a series/polynomial in t over a field or a test ring."""
    fmt = ring.format_element if hasattr(ring, "format_element") else ring.format_scalar
    parts = []
    coeffs = series.coeffs if isinstance(series, (TruncSeries, UniPoly)) else series
    for i, c in enumerate(coeffs):
        if ring.is_zero(c):
            continue
        cs = fmt(c)
        if "+" in cs or "-" in cs.lstrip("-"):
            cs = f"({cs})"
        if i == 0:
            parts.append(cs)
        elif cs == "1":
            parts.append("t" if i == 1 else f"t^{i}")
        else:
            parts.append(f"{cs}*t" if i == 1 else f"{cs}*t^{i}")
    return " + ".join(parts) if parts else "0"


def model_to_doc(
    model: FiniteModel, diagnostics: ModelDiagnostics | None = None
) -> dict:
    field = model.field
    nu, nq = model.counts()
    doc = {
        "field": field.spec(),
        "variety": {
            "variables": list(model.variety.variables),
            "equations": [str(eq) for eq in model.variety.equations],
            "codim": model.variety.codim,
        },
        "arc": {
            "t_precision": model.arc.precision,
            "components": {
                v: series_to_text(field, model.arc.component(v))
                for v in model.variety.variables
            },
        },
        "eliminated": list(model.eliminated),
        "kept": list(model.kept),
        "d": model.d,
        "e": model.e,
        "n": model.n,
        "r": model.r,
        "smooth_point": model.is_smooth_point,
        "unknowns": list(model.unknowns),
        "equations": [str(eq) for eq in model.equations],
        "base_point": {
            u: field.format_scalar(model.base_point[u]) for u in model.unknowns
        },
        "counts": {"vars": nu, "eqs": nq},
    }
    if diagnostics is not None:
        doc["tangent_dim"] = diagnostics.tangent_dim
        doc["jacobian_rank"] = diagnostics.jacobian_rank_at_base
        doc["bounds"] = (
            [diagnostics.dim_lower_bound, diagnostics.dim_upper_bound]
            if diagnostics.dim_lower_bound is not None
            else "n/a"
        )
    return doc


def load_model(path):
    """Rebuild a model from its file by re-running the construction."""
    from .geometry import MinorSelection, select_minor
    from .model import build_model

    doc = _load_json(path)
    for key in ("field", "variety", "arc", "eliminated", "e"):
        if key not in doc:
            raise InputError(f"model file missing {key!r}")
    field = field_from_spec(doc["field"])
    variety = variety_from_doc(dict(doc["variety"], field=doc["field"]))
    arc = arc_from_doc(doc["arc"], variety)
    if doc.get("smooth_point"):
        sel = MinorSelection(eliminated=tuple(doc["eliminated"]), d=0)
    else:
        sel = select_minor(variety, arc, forced=tuple(doc["eliminated"]))
        if sel.d != doc["d"]:
            raise InputError(
                f"model file is stale: stored d={doc['d']} but the minor has"
                f" order {sel.d}"
            )
    model = build_model(variety, arc, sel, int(doc["e"]))
    if list(model.unknowns) != list(doc.get("unknowns", model.unknowns)):
        raise InputError("model file is stale: unknown list mismatch")
    return model


def load_solution(path, model: FiniteModel):
    """Solution file: {"test_ring": {...}, "assignment": {unknown: "..."},
    "xi": {kept var: "poly in t"}} (xi optional)."""
    doc = _load_json(path)
    if "test_ring" not in doc or "assignment" not in doc:
        raise InputError("solution file needs 'test_ring' and 'assignment'")
    ring = make_test_ring(model.field, doc["test_ring"])
    assignment = {}
    for u in model.unknowns:
        if u not in doc["assignment"]:
            raise InputError(f"solution file missing unknown {u!r}")
        assignment[u] = ring.parse_element(str(doc["assignment"][u]))
    sol = ModelSolution(ring=ring, assignment=assignment)
    xi = None
    if "xi" in doc and doc["xi"] is not None:
        xi = {}
        ext = PolyRing(model.field, tuple(ring.generators) + ("t",))
        for v, text in doc["xi"].items():
            if v not in model.kept:
                raise InputError(f"xi names {v!r}, which is not a kept variable")
            xi[v] = _parse_t_poly_over_ring(ring, ext, str(text))
        for v in model.kept:
            xi.setdefault(v, UniPoly.zero(ring))
    return ring, sol, xi


def _parse_t_poly_over_ring(ring: TestRing, ext: PolyRing, text: str) -> UniPoly:
    poly = ext.parse(text)
    t_index = ext.variables.index("t")
    coeffs: dict = {}
    for exp, c in poly.terms.items():
        deg = exp[t_index]
        inner = exp[:t_index] + exp[t_index + 1 :]
        elem = coeffs.setdefault(deg, ring.zero())
        coeffs[deg] = elem + ring.monomial(inner, c)
    if not coeffs:
        return UniPoly.zero(ring)
    top = max(coeffs)
    return UniPoly(ring, [coeffs.get(i, ring.zero()) for i in range(top + 1)])


def deformation_to_doc(ring: TestRing, deformation: Deformation) -> dict:
    return {
        "test_ring": ring.spec(),
        "t_precision": deformation.precision,
        "components": {
            v: series_to_text(ring, deformation.components[v])
            for v in sorted(deformation.components)
        },
    }


def load_deformation(path, model: FiniteModel):
    doc = _load_json(path)
    for key in ("test_ring", "t_precision", "components"):
        if key not in doc:
            raise InputError(f"deformation file missing {key!r}")
    ring = make_test_ring(model.field, doc["test_ring"])
    precision = int(doc["t_precision"])
    ext = PolyRing(model.field, tuple(ring.generators) + ("t",))
    comps = {}
    for v in model.variety.variables:
        if v not in doc["components"]:
            raise InputError(f"deformation file missing component {v!r}")
        poly = _parse_t_poly_over_ring(ring, ext, str(doc["components"][v]))
        comps[v] = poly.to_series(precision)
    return ring, Deformation(components=comps, precision=precision)
