"""Braided-side arithmetic: Verlinde fusion, Gauss sums, balancing,
centralizer profiles, quadratic forms on finite abelian groups, and the
constraint table for braided near-integral categories."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .core import FusionRing, FusionRingError
from .exact import RootOfUnity, parse_scalar
from .nearintegral import dim_a_chi_minus

__all__ = [
    "NonIntegralFusion",
    "NegativeFusion",
    "GroupTooLarge",
    "ModularDatum",
    "QuadraticForm",
    "verlinde_fusion",
    "gauss_sums",
    "balancing_check",
    "centralizer_profile",
    "quadratic_forms",
    "form_classes",
    "form_nondegenerate",
    "braided_cases",
    "dim_a_chi_minus",
    "modular_datum_from_json",
    "modular_datum_to_json",
    "form_from_json",
    "form_to_json",
]

DEFAULT_TOL = 1e-9


class NonIntegralFusion(FusionRingError):
    pass


class NegativeFusion(FusionRingError):
    pass


class GroupTooLarge(FusionRingError):
    pass


@dataclass(frozen=True)
class ModularDatum:
    """Unnormalized S-matrix (S[0][0] = 1, row 0 = dims) and exact twists."""

    s: np.ndarray = field(repr=False)
    t: tuple

    def __post_init__(self):
        s = np.asarray(self.s, dtype=complex)
        if s.ndim != 2 or s.shape[0] != s.shape[1]:
            raise FusionRingError("S must be square")
        s.setflags(write=False)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "t", tuple(self.t))
        if len(self.t) != s.shape[0]:
            raise FusionRingError("T length must match S")
        if not all(isinstance(r, RootOfUnity) for r in self.t):
            raise FusionRingError("twists must be RootOfUnity values")

    @property
    def rank(self) -> int:
        return self.s.shape[0]

    @property
    def dims(self) -> np.ndarray:
        return self.s[0].real

    @property
    def global_dim(self) -> float:
        return float(np.sum(self.dims ** 2))

    def validate(self, tol: float = DEFAULT_TOL) -> None:
        if abs(self.s[0, 0] - 1) > tol:
            raise FusionRingError("S[0][0] must be 1 (unnormalized convention)")
        if np.abs(self.s[0].imag).max() > tol or (self.dims <= 0).any():
            raise FusionRingError("row 0 of S must be positive dims")
        asym = np.abs(self.s - self.s.T).max()
        if asym > tol * max(1.0, float(np.abs(self.s).max())):
            raise FusionRingError(f"S is not symmetric (max defect {asym})")

    def twist_values(self) -> np.ndarray:
        return np.array([r.value() for r in self.t])


def verlinde_fusion(m: ModularDatum, tol: float = DEFAULT_TOL, snap: float = 1e-6):
    """Fusion ring from an S-matrix by the Verlinde formula.

    Returns (ring, diagnostics). Duality comes from charge conjugation
    (normalized S squared), snapped to a permutation.
    """
    m.validate(tol)
    n = m.rank
    d = m.global_dim
    s = m.s / math.sqrt(d)
    tensor = np.einsum("it,jt,kt,t->ijk", s, s, s.conj(), 1.0 / s[0])
    max_err = 0.0
    out = np.zeros((n, n, n), dtype=np.int64)
    for i, j, k in itertools.product(range(n), repeat=3):
        v = tensor[i, j, k]
        r = round(v.real)
        err = abs(v - r)
        max_err = max(max_err, err)
        if err > snap:
            raise NonIntegralFusion(
                f"N[{i}][{j}][{k}] = {v} is not an integer (defect {err})")
        if r < 0:
            raise NegativeFusion(f"N[{i}][{j}][{k}] = {r} is negative")
        out[i, j, k] = r
    c = (s @ s).real
    dual = []
    for i in range(n):
        hits = [j for j in range(n) if abs(c[i, j] - 1) < 1e-6]
        if len(hits) != 1 or not np.allclose(np.abs(m.s[i] - m.s[hits[0]].conj()), 0, atol=1e-6):
            raise FusionRingError(f"charge conjugation row {i} does not snap to a permutation")
        dual.append(hits[0])
    labels = [f"X{i}" for i in range(n)]
    ring = FusionRing.validated(labels, out, dual)
    diagnostics = {
        "globalDim": d,
        "dims": [float(x) for x in m.dims],
        "maxSnapError": float(max_err),
    }
    return ring, diagnostics


def gauss_sums(dims, twists):
    """tau+- = sum_i dims[i]^2 theta_i^{+-1}."""
    dims = np.asarray(dims, dtype=float)
    theta = np.array([r.value() if isinstance(r, RootOfUnity) else complex(r)
                      for r in twists])
    if dims.shape[0] != theta.shape[0]:
        raise FusionRingError("dims and twists must have equal length")
    tau_plus = complex(np.sum(dims ** 2 * theta))
    tau_minus = complex(np.sum(dims ** 2 / theta))
    return tau_plus, tau_minus


def balancing_check(ring: FusionRing, m: ModularDatum, tol: float = 1e-6) -> list:
    """All (i, j) where S[i][j] != theta_i^-1 theta_j^-1 sum_k c_{ij}^k d_k theta_k."""
    n = ring.rank
    if m.rank != n:
        raise FusionRingError("ring rank must match the datum")
    d = m.dims
    theta = m.twist_values()
    rhs = np.einsum("ijk,k->ij", ring.tensor.astype(float), d * theta)
    rhs = rhs / theta[:, None] / theta[None, :]
    scale = max(1.0, float(np.abs(m.s).max()))
    out = []
    for i in range(n):
        for j in range(n):
            err = abs(m.s[i, j] - rhs[i, j])
            if err > tol * scale:
                out.append((i, j, float(err)))
    return out


def centralizer_profile(m: ModularDatum, tol: float = 1e-6):
    """Boolean matrix of |S[i][j] - d_i d_j| < tol (scaled), plus the rows
    that centralize everything (symmetric-center candidates)."""
    d = m.dims
    target = np.outer(d, d)
    mask = np.abs(m.s - target) < tol * np.maximum(1.0, target)
    candidates = tuple(int(i) for i in range(m.rank) if mask[i].all())
    return mask, candidates


# ---------------------------------------------------------------------------
# Quadratic forms on finite abelian groups


@dataclass(frozen=True)
class QuadraticForm:
    """q : G -> roots of unity with q(g) = q(-g) and bilinear associated
    bicharacter. G is a product of cyclic groups given by factor orders;
    elements are tuples."""

    factors: tuple
    values: dict = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(int(f) for f in self.factors))
        object.__setattr__(self, "values", dict(self.values))

    def elements(self):
        return itertools.product(*[range(f) for f in self.factors])

    def neg(self, g):
        return tuple((-x) % f for x, f in zip(g, self.factors))

    def add(self, g, h):
        return tuple((x + y) % f for x, y, f in zip(g, h, self.factors))

    def q(self, g) -> RootOfUnity:
        return self.values[tuple(x % f for x, f in zip(g, self.factors))]

    def b(self, g, h) -> RootOfUnity:
        """Associated bicharacter b(g,h) = q(g+h) q(g)^-1 q(h)^-1."""
        return self.q(self.add(g, h)) * self.q(g).inverse() * self.q(h).inverse()

    def verify(self, exhaustive: bool = True) -> None:
        zero = tuple(0 for _ in self.factors)
        if self.values[zero] != RootOfUnity.one():
            raise FusionRingError("q(0) must be 1")
        for g in self.elements():
            if self.q(g) != self.q(self.neg(g)):
                raise FusionRingError(f"q({g}) != q(-{g})")
        elems = list(self.elements())
        if exhaustive:
            triples = itertools.product(elems, elems, elems)
        else:
            gens = [tuple(1 if i == j else 0 for j in range(len(self.factors)))
                    for i in range(len(self.factors))]
            triples = itertools.product(gens, elems, elems)
        for g, gp, h in triples:
            if self.b(self.add(g, gp), h) != self.b(g, h) * self.b(gp, h):
                raise FusionRingError(f"b is not additive at {g}, {gp}, {h}")

    def key(self):
        return tuple(self.values[g] for g in sorted(self.elements()))


def form_nondegenerate(form: QuadraticForm) -> bool:
    """True iff g -> b(g, .) is injective."""
    rows = {}
    for g in form.elements():
        row = tuple(form.b(g, h) for h in sorted(form.elements()))
        if row in rows:
            return False
        rows[row] = g
    return True


def quadratic_forms(factors) -> list:
    """All quadratic forms on the abelian group with the given cyclic factor
    orders.

    On a generator of a factor of order n, q can take any n-th root value if
    n is odd and any 2n-th root value with the right parity structure if n is
    even; cross terms are bicharacter values of order dividing gcd of the two
    factor orders. Every candidate is verified globally.
    """
    factors = [int(f) for f in factors]
    k = len(factors)
    diag_choices = []
    for n in factors:
        if n % 2 == 1:
            diag_choices.append([RootOfUnity(a, n) for a in range(n)])
        else:
            diag_choices.append([RootOfUnity(a, 2 * n) for a in range(2 * n)])
    pair_idx = [(i, j) for i in range(k) for j in range(i + 1, k)]
    cross_choices = []
    for i, j in pair_idx:
        g = math.gcd(factors[i], factors[j])
        cross_choices.append([RootOfUnity(c, g) for c in range(g)])
    out = []
    for diag in itertools.product(*diag_choices):
        for cross in itertools.product(*cross_choices):
            values = {}
            for g in itertools.product(*[range(f) for f in factors]):
                acc = Fraction(0)
                for i, root in enumerate(diag):
                    acc += root.fraction * (g[i] * g[i])
                for (i, j), root in zip(pair_idx, cross):
                    acc += root.fraction * (g[i] * g[j])
                values[g] = RootOfUnity(acc.numerator, acc.denominator)
            form = QuadraticForm(tuple(factors), values)
            form.verify(exhaustive=len(values) <= 12)
            out.append(form)
    return out


def _automorphisms(factors):
    """Brute-force automorphisms of the abelian group, as maps on elements."""
    factors = [int(f) for f in factors]
    order = math.prod(factors)
    if order > 64:
        raise GroupTooLarge(f"|G| = {order} exceeds the brute-force bound 64")
    elements = list(itertools.product(*[range(f) for f in factors]))
    k = len(factors)

    def elt_order(g):
        return math.lcm(*[f // math.gcd(x, f) for x, f in zip(g, factors)]) if any(g) else 1

    autos = []
    candidates = [[g for g in elements if elt_order(g) == f] for f in factors]
    # images of generators must have the right order; then check bijectivity
    for images in itertools.product(*candidates):
        image_map = {}
        for x in elements:
            acc = [0] * k
            for i in range(k):
                for c in range(k):
                    acc[c] = (acc[c] + x[i] * images[i][c]) % factors[c]
            image_map[x] = tuple(acc)
        if len(set(image_map.values())) == len(elements):
            autos.append(image_map)
    return autos


def form_classes(factors) -> list:
    """Orbit representatives of quadraticForms under group automorphisms."""
    forms = quadratic_forms(factors)
    autos = _automorphisms(factors)
    seen = set()
    reps = []
    by_key = {f.key(): f for f in forms}
    for form in forms:
        if form.key() in seen:
            continue
        reps.append(form)
        for phi in autos:
            moved = {g: form.values[phi[g]] for g in form.values}
            seen.add(QuadraticForm(form.factors, moved).key())
    return reps


def braided_cases(big_n: int) -> list:
    """Constraint table for a braided categorification containing a
    near-integral ring with FPdim(S) = N: list of
    (kappa, dim, twist constraint, tag). Complete by scanning all kappa up
    to sqrt(4N/3) + 1."""
    if big_n < 1:
        raise ValueError("N must be positive")
    out = [(0, 2 * big_n, "theta_rho in {zeta(4,1), zeta(4,3)} or theta_rho**16 = 1",
            "kappa-zero")]
    for kappa in range(1, int(math.isqrt(4 * big_n // 3)) + 2):
        if 2 * kappa * kappa == big_n:
            out.append((kappa, 6 * kappa * kappa, "theta_rho in {zeta(3,1), zeta(3,2)}",
                        "case-2"))
        if 3 * kappa * kappa == 4 * big_n:
            out.append((kappa, 3 * kappa * kappa, "theta_rho = -1", "case-3"))
    return out


# ---------------------------------------------------------------------------
# JSON I/O


def modular_datum_from_json(data) -> ModularDatum:
    s = [[parse_scalar(e) for e in row] for row in data["S"]]
    t = [RootOfUnity(int(num), int(den)) for num, den in data["T"]]
    m = ModularDatum(np.array(s, dtype=complex), tuple(t))
    if "dims" in data and data["dims"] is not None:
        given = np.asarray([float(x) for x in data["dims"]])
        if not np.allclose(given, m.dims, atol=1e-6):
            raise FusionRingError("explicit dims disagree with row 0 of S")
    return m


def modular_datum_to_json(m: ModularDatum) -> dict:
    def enc(z: complex):
        if abs(z.imag) < 1e-12 and abs(z.real - round(z.real)) < 1e-12:
            return int(round(z.real))
        return [z.real, z.imag]
    return {
        "S": [[enc(z) for z in row] for row in m.s],
        "T": [[r.num, r.den] for r in m.t],
        "dims": [float(x) for x in m.dims],
    }


def form_from_json(data) -> QuadraticForm:
    factors = tuple(int(f) for f in data["factors"])
    values = {}
    for key, val in data["values"].items():
        g = tuple(int(x) for x in key.split(","))
        num, den = val
        values[g] = RootOfUnity(int(num), int(den))
    form = QuadraticForm(factors, values)
    form.verify(exhaustive=math.prod(factors) <= 12)
    return form


def form_to_json(form: QuadraticForm) -> dict:
    return {
        "factors": list(form.factors),
        "values": {",".join(str(x) for x in g): [r.num, r.den]
                   for g, r in sorted(form.values.items())},
    }
