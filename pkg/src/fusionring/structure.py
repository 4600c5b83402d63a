"""Subring lattice and grading structure of a fusion ring."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .core import FusionRing, FusionRingError
from .exact import snap_int
from . import spectral

__all__ = [
    "SearchBudgetExceeded",
    "ClosureViolation",
    "InternalInconsistency",
    "SubringHandle",
    "GradingReport",
    "closure",
    "enumerate_subrings",
    "pointed_subring",
    "adjoint_subring",
    "integral_subring",
    "universal_grading",
]


class SearchBudgetExceeded(FusionRingError):
    pass


class ClosureViolation(FusionRingError):
    pass


class InternalInconsistency(FusionRingError):
    pass


@dataclass(frozen=True)
class SubringHandle:
    indices: tuple

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(sorted(int(i) for i in self.indices)))

    @property
    def rank(self) -> int:
        return len(self.indices)

    def verify(self, ring: FusionRing) -> None:
        idx = set(self.indices)
        if 0 not in idx:
            raise ClosureViolation("handle must contain the unit")
        for i in idx:
            if ring.dual[i] not in idx:
                raise ClosureViolation(f"dual of {i} escapes the handle")
        for i in idx:
            for j in idx:
                for k in np.nonzero(ring.tensor[i, j])[0]:
                    if int(k) not in idx:
                        raise ClosureViolation(
                            f"product {i}*{j} meets {int(k)} outside the handle")


def closure(ring: FusionRing, seed) -> SubringHandle:
    """Smallest fusion-closed, dual-closed subset containing the unit and
    the seed indices."""
    current = {0} | {int(i) for i in seed}
    current |= {ring.dual[i] for i in current}
    changed = True
    while changed:
        changed = False
        for i, j in itertools.product(sorted(current), repeat=2):
            for k in np.nonzero(ring.tensor[i, j])[0]:
                k = int(k)
                if k not in current:
                    current.add(k)
                    current.add(ring.dual[k])
                    changed = True
    return SubringHandle(tuple(current))


def enumerate_subrings(ring: FusionRing, max_count: int = 2 ** 16) -> list:
    """All fusion subrings, by closing generating subsets; sorted by rank
    then indices. Raises SearchBudgetExceeded past max_count closures."""
    found = {closure(ring, ())}
    budget = max_count
    frontier = list(found)
    while frontier:
        handle = frontier.pop()
        for g in range(1, ring.rank):
            if g in handle.indices:
                continue
            budget -= 1
            if budget < 0:
                raise SearchBudgetExceeded(f"more than {max_count} closure computations")
            bigger = closure(ring, handle.indices + (g,))
            if bigger not in found:
                found.add(bigger)
                frontier.append(bigger)
    out = sorted(found, key=lambda h: (h.rank, h.indices))
    for h in out:
        h.verify(ring)
    return out


def pointed_subring(ring: FusionRing) -> SubringHandle:
    """Subring of invertible basis elements (b_i b_{i*} = 1)."""
    inv = [i for i in range(ring.rank)
           if ring.tensor[i, ring.dual[i], 0] == 1
           and int(ring.tensor[i, ring.dual[i]].sum()) == 1]
    handle = SubringHandle(tuple(inv))
    handle.verify(ring)
    return handle


def adjoint_subring(ring: FusionRing) -> SubringHandle:
    """Fusion closure of the supports of all b_i b_{i*}."""
    seed = set()
    for i in range(ring.rank):
        seed |= {int(k) for k in np.nonzero(ring.tensor[i, ring.dual[i]])[0]}
    return closure(ring, seed)


def integral_subring(ring: FusionRing, tol: float = 1e-6) -> SubringHandle:
    """Maximal subring of basis elements with integer FPdim."""
    idx = [i for i in range(ring.rank)
           if snap_int(spectral.fpdim(ring, i), tol) is not None]
    handle = SubringHandle(tuple(idx))
    handle.verify(ring)  # closure is a theorem; treat failure as tolerance pathology
    return handle


@dataclass(frozen=True)
class GradingReport:
    group_table: np.ndarray
    component_of: tuple
    adjoint: SubringHandle

    @property
    def group_order(self) -> int:
        return self.group_table.shape[0]

    def to_json(self) -> dict:
        return {
            "groupTable": self.group_table.tolist(),
            "componentOf": list(self.component_of),
            "adjointIndices": list(self.adjoint.indices),
        }


def universal_grading(ring: FusionRing) -> GradingReport:
    """Universal grading: basis elements i, j are in the same component when
    b_j appears in a b_i for some a in the adjoint subring; the group law is
    induced by fusion."""
    n = ring.rank
    ad = adjoint_subring(ring)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    for a in ad.indices:
        for i in range(n):
            for j in np.nonzero(ring.tensor[a, i])[0]:
                union(i, int(j))
    reps = sorted({find(i) for i in range(n)})
    comp_index = {r: c for c, r in enumerate(reps)}
    component_of = tuple(comp_index[find(i)] for i in range(n))
    if component_of[0] != 0:
        raise InternalInconsistency("unit component is not component 0")
    if set(component_of[i] for i in ad.indices) != {0}:
        raise InternalInconsistency("adjoint subring is not the trivial component")
    g = len(reps)
    table = -np.ones((g, g), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            targets = {component_of[int(k)] for k in np.nonzero(ring.tensor[i, j])[0]}
            if not targets:
                continue
            if len(targets) != 1:
                raise InternalInconsistency(
                    f"product of components {component_of[i]}, {component_of[j]} "
                    f"is not homogeneous: {sorted(targets)}")
            ci, cj, ck = component_of[i], component_of[j], targets.pop()
            if table[ci, cj] not in (-1, ck):
                raise InternalInconsistency("component product is not well defined")
            table[ci, cj] = ck
    if (table < 0).any():
        raise InternalInconsistency("component product is not everywhere defined")
    # group axioms on the induced table
    for a in range(g):
        if table[0, a] != a or table[a, 0] != a:
            raise InternalInconsistency("grading identity fails")
        if 0 not in table[a]:
            raise InternalInconsistency(f"component {a} has no inverse")
    for a, b, c in itertools.product(range(g), repeat=3):
        if table[table[a, b], c] != table[a, table[b, c]]:
            raise InternalInconsistency("grading group is not associative")
    for i in range(n):
        inv = int(np.nonzero(table[component_of[i]] == 0)[0][0])
        if component_of[ring.dual[i]] != inv:
            raise InternalInconsistency("dual does not invert the grading")
    return GradingReport(table, component_of, ad)
