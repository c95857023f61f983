"""Reading input documents and writing canonical JSON."""

import json
from functools import lru_cache
from importlib import resources

import jsonschema

from .charts import Chart, ChartComplex, Gluing, build_w_complex
from .cones import Cone, Fan
from .errors import InputError, LinealityError
from .homs import MonoidHom
from .lattice import Lattice, LatticeHom
from .monoids import AffineMonoid, face_spanned_by
from .pans import Pan

SAFE_INT = 2 ** 53


@lru_cache(maxsize=None)
def input_schema():
    text = resources.files("logcone").joinpath("schema/input_document.schema.json").read_text()
    return json.loads(text)


def _json_path(parts):
    out = "$"
    for p in parts:
        out += f"[{p}]" if isinstance(p, int) else f".{p}"
    return out


def _int(x, path):
    if isinstance(x, bool):
        raise InputError(path, "expected an integer, got a boolean")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x)
        except ValueError:
            pass
    raise InputError(path, f"expected an integer, got {x!r}")


def _vector(v, path, rank=None):
    out = tuple(_int(x, f"{path}[{i}]") for i, x in enumerate(v))
    if rank is not None and len(out) != rank:
        raise InputError(path, f"expected a vector of length {rank}, got {len(out)}")
    return out


def _vectors(vs, path, rank=None):
    return [_vector(v, f"{path}[{i}]", rank) for i, v in enumerate(vs)]


class Document:
    """Named objects of an input document, built lazily and cached."""

    def __init__(self, raw):
        self.raw = raw
        self._built = {}

    @property
    def names(self):
        return list(self.raw["objects"])

    def type_of(self, name):
        return self.raw["objects"][name]["type"]

    def names_of_type(self, kind):
        return [n for n in self.names if self.type_of(n) == kind]

    def get(self, name, kind=None):
        if name not in self.raw["objects"]:
            raise InputError(f"$.objects.{name}", "no such object")
        if kind is not None and self.type_of(name) != kind:
            raise InputError(f"$.objects.{name}.type",
                             f"expected a {kind}, found a {self.type_of(name)}")
        if name not in self._built:
            self._built[name] = self._build(self.raw["objects"][name], f"$.objects.{name}")
        return self._built[name]

    # builders --------------------------------------------------------------

    def _build(self, d, path):
        kind = d["type"]
        try:
            return getattr(self, f"_build_{kind}")(d, path)
        except InputError:
            raise
        except (ValueError, LinealityError) as exc:
            raise InputError(path, str(exc)) from exc

    def _build_lattice(self, d, path):
        return Lattice(d["rank"])

    def _build_matrix(self, d, path):
        rows = [_vector(r, f"{path}.rows[{i}]") for i, r in enumerate(d["rows"])]
        ncols = d.get("source_rank", len(rows[0]) if rows else 0)
        for i, r in enumerate(rows):
            if len(r) != ncols:
                raise InputError(f"{path}.rows[{i}]", f"expected {ncols} entries")
        return LatticeHom(Lattice(ncols), Lattice(len(rows)), tuple(rows))

    def _build_cone(self, d, path):
        n = d["rank"]
        if "rays" in d:
            if "inequalities" in d or "equations" in d:
                raise InputError(path, "give either rays or inequalities, not both")
            return Cone.from_generators(n, _vectors(d["rays"], f"{path}.rays", n))
        return Cone.from_inequalities(n, _vectors(d.get("inequalities", []), f"{path}.inequalities", n),
                                      _vectors(d.get("equations", []), f"{path}.equations", n))

    def _cones(self, d, path):
        n = d["rank"]
        return [Cone.from_generators(n, _vectors(rs, f"{path}.cones[{i}]", n))
                for i, rs in enumerate(d["cones"])]

    def _build_fan(self, d, path):
        return Fan.from_cones(d["rank"], self._cones(d, path))

    def _build_pan(self, d, path):
        return Pan.from_cones(d["rank"], self._cones(d, path))

    def _build_monoid(self, d, path):
        n = d["rank"]
        return AffineMonoid.of(n, _vectors(d["generators"], f"{path}.generators", n))

    def _monoid_ref(self, ref, path):
        if isinstance(ref, str):
            return self.get(ref, "monoid")
        return self._build_monoid(ref, path)

    def _build_hom(self, d, path):
        src = self._monoid_ref(d["source"], f"{path}.source")
        tgt = self._monoid_ref(d["target"], f"{path}.target")
        rows = [_vector(r, f"{path}.matrix[{i}]", src.rank) for i, r in enumerate(d["matrix"])]
        if len(rows) != tgt.rank:
            raise InputError(f"{path}.matrix", f"expected {tgt.rank} rows, got {len(rows)}")
        return MonoidHom(src, tgt, LatticeHom(src.lattice, tgt.lattice, tuple(rows)))

    def _build_face(self, d, path):
        parent_name = d["of"]
        kind = self.type_of(parent_name) if parent_name in self.raw["objects"] else None
        if kind == "hom":
            parent = self.get(parent_name).target
        else:
            parent = self.get(parent_name, "monoid")
        pts = _vectors(d["rays"], f"{path}.rays", parent.rank)
        for i, p in enumerate(pts):
            if not parent.contains(p):
                raise InputError(f"{path}.rays[{i}]", "point is not in the monoid")
        return face_spanned_by(parent, pts)

    def _build_chart_complex(self, d, path):
        if "builtin" in d:
            return build_w_complex()[d["builtin"]]
        n = d.get("rank", 2)

        def chart(c, p):
            return Chart(c["name"],
                         AffineMonoid.of(n, _vectors(c["monomial"], f"{p}.monomial", n)),
                         AffineMonoid.of(n, _vectors(c["log"], f"{p}.log", n)))

        charts = tuple(chart(c, f"{path}.charts[{i}]") for i, c in enumerate(d.get("charts", [])))
        overlaps = tuple(chart(c, f"{path}.overlaps[{i}]") for i, c in enumerate(d.get("overlaps", [])))
        known = {c.name for c in charts + overlaps}
        gluings = []
        for i, g in enumerate(d.get("gluings", [])):
            p = f"{path}.gluings[{i}]"
            for key in ("left", "right", "overlap"):
                if g[key] not in known:
                    raise InputError(f"{p}.{key}", f"unknown chart {g[key]!r}")
            gluings.append(Gluing(g["left"], g["right"], g["overlap"],
                                  _vector(g["left_witness"], f"{p}.left_witness", n),
                                  _vector(g["right_witness"], f"{p}.right_witness", n)))
        return ChartComplex("input", charts, overlaps, tuple(gluings))


def parse_document(text):
    """Parse and schema-check a document; errors carry a JSON path."""
    if not text.strip():
        raise InputError("$", "empty document")
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError("$", f"invalid JSON: {exc.msg} at line {exc.lineno} column {exc.colno}") from exc
    validator = jsonschema.Draft202012Validator(input_schema())
    errors = sorted(validator.iter_errors(raw), key=lambda e: (len(e.absolute_path), list(map(str, e.absolute_path))))
    if errors:
        err = max(errors, key=lambda e: len(e.absolute_path))
        raise InputError(_json_path(err.absolute_path), err.message)
    doc = Document(raw)
    for name in doc.names:
        if doc.type_of(name) == "hom":
            for key in ("source", "target"):
                ref = raw["objects"][name][key]
                if isinstance(ref, str) and ref not in raw["objects"]:
                    raise InputError(f"$.objects.{name}.{key}", f"unknown object {ref!r}")
    return doc


def load_document(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError("$", f"cannot read {path}: {exc.strerror}") from exc
    return parse_document(text)


# ---------------------------------------------------------------------------
# output


def to_jsonable(x):
    """Convert library values to plain JSON data; large integers become strings."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return str(x) if abs(x) >= SAFE_INT else x
    if isinstance(x, float):
        return x
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    if isinstance(x, Cone):
        out = {"rank": x.lattice.rank, "rays": to_jsonable(x.rays)}
        if x.lineality:
            out["lineality"] = to_jsonable(x.lineality)
        return out
    if isinstance(x, Fan):
        return {"rank": x.lattice.rank, "maximal_cones": [to_jsonable(c) for c in x.maximal_cones],
                "n_cones": len(x.cones)}
    if isinstance(x, Pan):
        return {"rank": x.rank, "maximal_cones": [to_jsonable(c) for c in x.maximal_cones]}
    if isinstance(x, AffineMonoid):
        return {"rank": x.rank, "generators": to_jsonable(x.generators)}
    if isinstance(x, LatticeHom):
        return {"source_rank": x.source.rank, "target_rank": x.target.rank,
                "matrix": to_jsonable(x.matrix)}
    if hasattr(x, "generators") and hasattr(x, "cone"):  # MonoidFace
        return {"generators": to_jsonable(x.generators), "dim": x.dim}
    if hasattr(x, "to_dict"):
        return to_jsonable(x.to_dict())
    raise TypeError(f"cannot serialize {type(x).__name__}")


def dumps(data):
    return json.dumps(to_jsonable(data), sort_keys=True, indent=2, ensure_ascii=False) + "\n"
