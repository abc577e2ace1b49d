"""JSON cover-specification documents and the built-in examples.

A document looks like::

    {
      "group": {"type": "abelian", "invariants": [2, 3]},
      "quotient_genus": 0,
      "branch_orders": [2, 2, 3, 3, 3],
      "generating_vector": {"a": [], "b": [], "x": ["g", "g", "h", "h", "h"]},
      "transversal": ["1", "b", "d", "d d", "d b", "d d b"],
      "basis_order": [0, 1, 2, 3, 4, 5, 6, 7]
    }

Group elements are words in the group's generator names (``"g h^2"``);
transversal words use the orbifold generator names, which default to
``a, b, c, ...`` and may be set with ``generator_names``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .errors import AdaptedBasisError, InvalidCoverError, SizeLimitError
from .finite_group import FiniteGroup, from_abelian_invariants, from_permutations
from .orbifold import CoverSpec, GeneratingVector, OrbifoldSignature
from .words import Word

BUILTINS = {
    "example1": "Z6 acting freely, quotient genus 2 (genus 7)",
    "example2": "Z2 x Z2 with signature (0; 2, 2, 2, 2) (genus 1)",
    "example3": "Z2 x Z3 with signature (0; 2, 2, 3, 3, 3) (genus 4)",
}

_KNOWN = {
    "name",
    "description",
    "group",
    "quotient_genus",
    "branch_orders",
    "generating_vector",
    "generator_names",
    "transversal",
    "basis_order",
}


class DocumentError(AdaptedBasisError, ValueError):
    """A document that cannot be read or does not have the expected shape."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


@dataclass
class CoverDocument:
    """A parsed document: the validated cover plus the optional extras."""

    spec: CoverSpec
    raw: dict
    transversal: list[Word] | None = None
    basis_order: list | None = None

    def echo(self) -> dict:
        """Normalized document; parses back to an equivalent cover."""
        G = self.spec.group
        out = {}
        for key in ("name", "description"):
            if key in self.raw:
                out[key] = self.raw[key]
        out["group"] = self.raw["group"]
        out["quotient_genus"] = self.spec.signature.quotient_genus
        out["branch_orders"] = list(self.spec.signature.branch_orders)
        v = self.spec.vector
        out["generating_vector"] = {k: [G.name(q) for q in getattr(v, k)] for k in ("a", "b", "x")}
        out["generator_names"] = list(self.spec.alphabet.names)
        if self.transversal is not None:
            out["transversal"] = [str(w) for w in self.transversal]
        if self.basis_order is not None:
            out["basis_order"] = list(self.basis_order)
        return out


def build_group(desc) -> FiniteGroup:
    """``{"type": "abelian", "invariants": [...]}`` or
    ``{"type": "permutation", "degree": k, "generators": [[...], ...]}``,
    each with optional generator ``names``."""
    if not isinstance(desc, dict):
        raise DocumentError("group", "expected an object")
    names = desc.get("names")
    kind = desc.get("type")
    try:
        if kind == "abelian":
            return from_abelian_invariants(desc.get("invariants", []), names)
        if kind == "permutation":
            return from_permutations(desc.get("generators", []), names, desc.get("degree"))
    except SizeLimitError as exc:
        raise DocumentError("group", str(exc)) from exc
    except (ValueError, TypeError) as exc:
        raise DocumentError("group", str(exc)) from exc
    raise DocumentError("group.type", f"expected 'abelian' or 'permutation', got {kind!r}")


def _int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise DocumentError(where, f"expected an integer, got {value!r}")
    return value


def parse_document(data: dict) -> CoverDocument:
    """Turn decoded JSON into a validated cover.

    Shape problems raise :class:`DocumentError`; a well-formed document
    whose data fail the cover invariants raises
    :class:`~adaptedbasis.errors.InvalidCoverError`.
    """
    if not isinstance(data, dict):
        raise DocumentError("document", "expected a JSON object")
    unknown = sorted(set(data) - _KNOWN)
    if unknown:
        raise DocumentError("document", f"unknown fields {unknown}")
    for key in ("group", "quotient_genus", "branch_orders", "generating_vector"):
        if key not in data:
            raise DocumentError(key, "missing")
    G = build_group(data["group"])
    g0 = _int(data["quotient_genus"], "quotient_genus")
    orders = data["branch_orders"]
    if not isinstance(orders, list):
        raise DocumentError("branch_orders", "expected a list")
    orders = [_int(k, f"branch_orders[{j}]") for j, k in enumerate(orders)]
    try:
        signature = OrbifoldSignature(g0, tuple(orders))
    except InvalidCoverError as exc:
        raise DocumentError("branch_orders" if g0 >= 0 else "quotient_genus", str(exc)) from exc

    gv = data["generating_vector"]
    if not isinstance(gv, dict) or set(gv) - {"a", "b", "x"}:
        raise DocumentError("generating_vector", "expected an object with keys a, b, x")
    images = {}
    for key in ("a", "b", "x"):
        words = gv.get(key, [])
        if not isinstance(words, list):
            raise DocumentError(f"generating_vector.{key}", "expected a list of group words")
        out = []
        for i, w in enumerate(words):
            try:
                out.append(G.parse_element(str(w)))
            except (ValueError, AdaptedBasisError) as exc:
                raise DocumentError(f"generating_vector.{key}[{i}]", str(exc)) from exc
        images[key] = tuple(out)
    vector = GeneratingVector(images["a"], images["b"], images["x"])

    names = data.get("generator_names")
    try:
        spec = CoverSpec(G, signature, vector, names)
    except InvalidCoverError as exc:
        if exc.report is None:
            raise DocumentError("generator_names", str(exc)) from exc
        raise
    except ValueError as exc:
        raise DocumentError("generator_names", str(exc)) from exc

    transversal = None
    if "transversal" in data:
        if not isinstance(data["transversal"], list):
            raise DocumentError("transversal", "expected a list of words")
        transversal = []
        for i, w in enumerate(data["transversal"]):
            try:
                transversal.append(spec.alphabet.parse(str(w)))
            except ValueError as exc:
                raise DocumentError(f"transversal[{i}]", str(exc)) from exc
    basis_order = data.get("basis_order")
    if basis_order is not None and not isinstance(basis_order, list):
        raise DocumentError("basis_order", "expected a list")
    return CoverDocument(spec, data, transversal, basis_order)


def load_document(path) -> CoverDocument:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise DocumentError(str(path), exc.strerror or str(exc)) from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(str(path), f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return parse_document(data)


def builtin_text(name: str) -> str:
    if name not in BUILTINS:
        raise KeyError(name)
    return resources.files("adaptedbasis").joinpath("data", f"{name}.json").read_text()


def load_builtin(name: str) -> CoverDocument:
    return parse_document(json.loads(builtin_text(name)))
