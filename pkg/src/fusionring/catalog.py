"""Built-in verified data sets.

The catalog ships four kinds of entries as embedded JSON:

* character tables of small groups, loadable as CharacterTable objects and
  convertible to their character (fusion) rings,
* modular data (unnormalized S-matrix plus exact twists),
* an inventory of the finite groups with at most six conjugacy classes,
* classification rows: (name, FPdim, per-object dimensions) triples whose
  internal consistency (sum of squared dims = FPdim) is re-checked here.

Symbolic dimension values are stored as expression strings evaluated by
eval_dimension_expr; the grammar covers arithmetic, sqrt/csc/sec/sin/cos,
pi, quantum integers qint(n, m) and roots of unity zeta(n, k).
"""

from __future__ import annotations

import ast
import cmath
import json
import math
from dataclasses import dataclass
from importlib import resources

from .core import (CharacterTable, FusionRing, FusionRingError,
                   character_table_to_fusion_ring, table_from_json)
from .premodular import (ModularDatum, balancing_check, gauss_sums,
                         modular_datum_from_json, verlinde_fusion)
from . import spectral

__all__ = [
    "UnknownEntry",
    "CatalogEntry",
    "ClassificationRow",
    "quantum_integer",
    "eval_dimension_expr",
    "list_catalog",
    "load_entry",
    "entry_ring",
    "verify_catalog",
]


class UnknownEntry(FusionRingError):
    pass


def quantum_integer(n: int, m: int) -> float:
    """Quantum integer [n]_m = sin(n*pi/m)/sin(pi/m), the positive evaluation
    used for Frobenius-Perron dimensions."""
    n, m = int(n), int(m)
    if not (1 <= n < m):
        raise ValueError(f"quantum integer needs 1 <= n < m, got [{n}]_{m}")
    return math.sin(n * math.pi / m) / math.sin(math.pi / m)


_FUNCS = {
    "sqrt": cmath.sqrt,
    "sin": cmath.sin,
    "cos": cmath.cos,
    "csc": lambda x: 1.0 / cmath.sin(x),
    "sec": lambda x: 1.0 / cmath.cos(x),
    "qint": lambda n, m: complex(quantum_integer(int(n.real), int(m.real))),
    "zeta": lambda n, k: cmath.exp(2j * cmath.pi * int(k.real) / int(n.real)),
}

_NAMES = {"pi": complex(math.pi)}


def _eval_node(node) -> complex:
    if isinstance(node, ast.Expression):
        return _eval_node(node.body)
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
        return complex(node.value)
    if isinstance(node, ast.Name) and node.id in _NAMES:
        return _NAMES[node.id]
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.UAdd, ast.USub)):
        val = _eval_node(node.operand)
        return val if isinstance(node.op, ast.UAdd) else -val
    if isinstance(node, ast.BinOp):
        left, right = _eval_node(node.left), _eval_node(node.right)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            return left / right
        if isinstance(node.op, ast.Pow):
            return left ** right
        raise ValueError(f"unsupported operator {ast.dump(node.op)}")
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name):
        fn = _FUNCS.get(node.func.id)
        if fn is None or node.keywords:
            raise ValueError(f"unknown function {node.func.id!r}")
        return fn(*[_eval_node(a) for a in node.args])
    raise ValueError(f"unsupported expression node {ast.dump(node)}")


def eval_dimension_expr(text: str, tol: float = 1e-9) -> float:
    """Evaluate a dimension expression to a real number.

    Intermediate values may be complex (zeta terms); the result must be real
    within tol."""
    value = _eval_node(ast.parse(str(text), mode="eval"))
    if abs(value.imag) > tol * max(1.0, abs(value.real)):
        raise ValueError(f"expression {text!r} evaluates to non-real {value}")
    return value.real


@dataclass(frozen=True)
class ClassificationRow:
    """One row of the small-rank inventory: a named family with its total
    FPdim and the list of simple-object dimensions, both symbolic."""

    name: str
    family: str
    fpdim_expr: str
    dim_exprs: tuple
    center: str
    count: int
    count_unverified: bool = False

    @property
    def rank(self) -> int:
        return len(self.dim_exprs)

    def fpdim_total(self) -> float:
        return eval_dimension_expr(self.fpdim_expr)

    def fpdims(self) -> tuple:
        return tuple(eval_dimension_expr(e) for e in self.dim_exprs)

    def consistency_error(self) -> float:
        return abs(sum(d * d for d in self.fpdims()) - self.fpdim_total())

    def verify(self, tol: float = 1e-6) -> None:
        err = self.consistency_error()
        if err > tol:
            raise FusionRingError(
                f"row {self.family}/{self.name}: sum of squared dims misses "
                f"the stated FPdim by {err:.3g}")

    def to_json(self) -> dict:
        out = {
            "family": self.family,
            "name": self.name,
            "fpdim": self.fpdim_expr,
            "dims": list(self.dim_exprs),
            "center": self.center,
            "count": self.count,
        }
        if self.count_unverified:
            out["countUnverified"] = True
        return out


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    kind: str  # characterTable | modularDatum | classificationRow | groupList
    payload: object
    provenance: str


def _read(fname: str):
    with resources.files("fusionring.data").joinpath(fname).open() as fh:
        return json.load(fh)


_cache = None


def _entries() -> dict:
    global _cache
    if _cache is not None:
        return _cache
    entries = {}
    for name, data in _read("character_tables.json").items():
        table = table_from_json(data)
        prov = data.get("source", "standard character table")
        if data.get("alias"):
            prov += f" (also known as {data['alias']})"
        entries[name] = CatalogEntry(name, "characterTable", table, prov)
    for name, data in _read("modular_data.json").items():
        entries[name] = CatalogEntry(name, "modularDatum",
                                     modular_datum_from_json(data),
                                     "computed Drinfeld double data")
    groups = _read("groups_small.json")
    entries["groups<=6classes"] = CatalogEntry(
        "groups<=6classes", "groupList", tuple(groups),
        "inventory of finite groups with at most six conjugacy classes")
    for data in _read("classification_rows.json"):
        row = ClassificationRow(
            name=data["name"],
            family=data["family"],
            fpdim_expr=data["fpdim"],
            dim_exprs=tuple(data["dims"]),
            center=data.get("center", "Vec"),
            count=int(data["count"]),
            count_unverified=bool(data.get("countUnverified", False)),
        )
        key = f"{row.family}/{row.name}"
        if key in entries:
            raise FusionRingError(f"duplicate classification row {key}")
        entries[key] = CatalogEntry(
            key, "classificationRow", row,
            "small-rank premodular inventory row")
    _cache = entries
    return entries


def list_catalog() -> list:
    """Sorted names of all built-in entries."""
    return sorted(_entries())


def load_entry(name: str) -> CatalogEntry:
    entries = _entries()
    if name not in entries:
        raise UnknownEntry(f"no catalog entry named {name!r}")
    return entries[name]


def entry_ring(name: str) -> FusionRing:
    """Load a catalog entry as a fusion ring: character tables convert to
    their character rings, modular data through the Verlinde formula."""
    entry = load_entry(name)
    if entry.kind == "characterTable":
        return character_table_to_fusion_ring(entry.payload)
    if entry.kind == "modularDatum":
        ring, _ = verlinde_fusion(entry.payload)
        return ring
    raise FusionRingError(f"entry {name!r} of kind {entry.kind} is not ring-valued")


def _verify_entry(entry: CatalogEntry, tol: float) -> str:
    """Full validation for one entry; returns a short success note, raises
    on failure."""
    if entry.kind == "characterTable":
        table: CharacterTable = entry.payload
        table.validate()
        ring = character_table_to_fusion_ring(table)
        order = table.order
        for f in spectral.formal_codegrees(ring, tol):
            fi = int(round(f))
            if abs(f - fi) > tol or order % fi != 0:
                raise FusionRingError(
                    f"codegree {f} of {entry.name} does not divide |G| = {order}")
        return f"rank {ring.rank} character ring, codegrees divide {order}"
    if entry.kind == "modularDatum":
        m: ModularDatum = entry.payload
        m.validate()
        ring, info = verlinde_fusion(m)
        bad = balancing_check(ring, m, tol)
        if bad:
            raise FusionRingError(f"{entry.name}: {len(bad)} balancing violations")
        plus, minus = gauss_sums(m.dims, m.twist_values())
        if abs(plus * minus - m.global_dim) > tol * m.global_dim:
            raise FusionRingError(f"{entry.name}: Gauss sum product misses global dim")
        dims = spectral.fpdims(ring)
        if max(abs(dims - m.dims)) > 1e-6:
            raise FusionRingError(f"{entry.name}: FPdims disagree with S-matrix row 0")
        return (f"rank {ring.rank} Verlinde ring, global dim "
                f"{info['globalDim']:.6g}, balancing clean")
    if entry.kind == "classificationRow":
        row: ClassificationRow = entry.payload
        row.verify(tol)
        return f"dims consistent within {row.consistency_error():.2e}"
    if entry.kind == "groupList":
        for g in entry.payload:
            if g["order"] < 1 or not (1 <= g["numCentralInvolutive"] <= g["order"]):
                raise FusionRingError(f"implausible group record {g}")
        return f"{len(entry.payload)} group records"
    raise FusionRingError(f"unknown entry kind {entry.kind}")


def verify_catalog(tol: float = 1e-6) -> list:
    """Validate every entry. Returns a deterministic list of
    (name, ok, detail) triples; failures are reported, not raised."""
    out = []
    for name in list_catalog():
        entry = load_entry(name)
        try:
            detail = _verify_entry(entry, tol)
            out.append((name, True, detail))
        except Exception as exc:  # report content, not control flow
            out.append((name, False, f"{type(exc).__name__}: {exc}"))
    return out
