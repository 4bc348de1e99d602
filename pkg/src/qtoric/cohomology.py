"""Rational cohomology ring of a quasitoric manifold, Chern classes and numbers.

The ring is ``Q[u_1..u_m]`` modulo the linear relations given by the rows of
the characteristic matrix and the Stanley-Reisner monomials of the minimal
non-faces.  The linear relations are used to eliminate ``u_1..u_n``; each
graded piece of the remaining quotient of ``Q[u_{n+1}..u_m]`` is computed by
exact row reduction with graded-lex pivots.

Polynomials are dicts from exponent tuples to Fractions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import QtoricError, TopDegreeNotRankOne, WrongDimension
from .quasitoric import OmniQT

MAX_FACETS = 14
MAX_DIM = 4


# polynomial helpers --------------------------------------------------------


def poly_add(a: dict, b: dict, scale=1) -> dict:
    out = dict(a)
    for mono, c in b.items():
        v = out.get(mono, 0) + scale * c
        if v:
            out[mono] = v
        else:
            out.pop(mono, None)
    return out


def poly_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for (ma, ca), (mb, cb) in itertools.product(a.items(), b.items()):
        mono = tuple(x + y for x, y in zip(ma, mb))
        v = out.get(mono, 0) + ca * cb
        if v:
            out[mono] = v
        else:
            out.pop(mono)
    return out


def poly_pow(a: dict, k: int, nvars: int) -> dict:
    out = {(0,) * nvars: Fraction(1)}
    for _ in range(k):
        out = poly_mul(out, a)
    return out


def monomials(nvars: int, degree: int) -> list:
    """Exponent tuples of the given degree, in decreasing lex order."""
    out = []
    for combo in itertools.combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return sorted(out, reverse=True)


def divides(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def format_monomial(exps: Sequence[int], names: Sequence[str]) -> str:
    parts = []
    for e, name in zip(exps, names):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) or "1"


# data types -----------------------------------------------------------------


@dataclass(frozen=True)
class RingPresentation:
    """Generators ``u_1..u_m`` in degree 2 with linear and monomial relations."""

    num_gens: int
    dim: int
    linear_relations: tuple  # rows of the characteristic matrix
    sr_nonfaces: tuple  # minimal non-faces, as sorted tuples of facet labels
    vertex_sets: tuple

    @property
    def top_degree(self) -> int:
        return self.dim

    def substitution(self) -> list:
        """Linear form in ``u_{n+1}..u_m`` for every generator ``u_i``."""
        n, k = self.dim, self.num_gens - self.dim
        forms = []
        for i in range(self.num_gens):
            if i < n:
                row = self.linear_relations[i]
                forms.append({_unit(k, j - n): Fraction(-row[j]) for j in range(n, self.num_gens) if row[j]})
            else:
                forms.append({_unit(k, i - n): Fraction(1)})
        return forms


@dataclass
class CohClass:
    """Homogeneous class given by a polynomial in ``u_1..u_m`` of half-degree ``degree``."""

    polynomial: dict
    degree: int

    def __mul__(self, other: "CohClass") -> "CohClass":
        return CohClass(poly_mul(self.polynomial, other.polynomial), self.degree + other.degree)


@dataclass
class GradedPiece:
    degree: int
    basis: list  # monomials in u_1..u_m (zero exponents on u_1..u_n)
    reducer: "_Echelon"
    standard: list  # basis as exponent tuples in the reduced variables

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coordinates(self, reduced_poly: dict) -> list:
        """Coordinates of a reduced-variable polynomial in this basis."""
        rem = self.reducer.reduce(reduced_poly)
        return [rem.get(mono, Fraction(0)) for mono in self.standard]


def _unit(k: int, i: int) -> tuple:
    e = [0] * k
    e[i] = 1
    return tuple(e)


def minimal_nonfaces(vertex_sets: Sequence[Sequence[int]], m: int, n: int) -> list:
    """Minimal subsets of ``[m]`` contained in no vertex set."""
    faces = set()
    for v in vertex_sets:
        for k in range(n + 1):
            faces.update(itertools.combinations(v, k))
    out = []
    for k in range(2, n + 2):
        for face in (f for f in faces if len(f) == k - 1):
            for e in range(face[-1] + 1 if face else 1, m + 1):
                cand = face + (e,)
                if cand in faces:
                    continue
                if all(sub in faces for sub in itertools.combinations(cand, k - 1)):
                    out.append(cand)
    return sorted(set(out), key=lambda s: (len(s), s))


def presentation(M: OmniQT) -> RingPresentation:
    if M.m > MAX_FACETS or M.n > MAX_DIM:
        raise QtoricError(f"ring engine limited to m <= {MAX_FACETS}, n <= {MAX_DIM}")
    nonfaces = minimal_nonfaces(M.vertex_sets, M.m, M.n)
    return RingPresentation(M.m, M.n, M.char, tuple(nonfaces), M.vertex_sets)


# exact row reduction ---------------------------------------------------------


class _Echelon:
    """Incremental echelon basis of a space of polynomials of one degree.

    ``rows[p]`` has leading (largest) monomial ``p`` with coefficient 1.
    Monomials divisible by one of ``monomial_gens`` are zero from the start.
    """

    def __init__(self, monomial_gens: Sequence[tuple] = ()):
        self.rows: dict = {}
        self.order: list = []  # pivots, decreasing
        self.monomial_gens = list(monomial_gens)

    def _kill(self, mono: tuple) -> bool:
        return any(divides(g, mono) for g in self.monomial_gens)

    def reduce(self, poly: dict) -> dict:
        v = {mono: Fraction(c) for mono, c in poly.items() if c and not self._kill(mono)}
        for p in self.order:
            c = v.get(p)
            if not c:
                continue
            for mono, coef in self.rows[p].items():
                val = v.get(mono, 0) - c * coef
                if val:
                    v[mono] = val
                else:
                    v.pop(mono, None)
        return v

    def add(self, poly: dict) -> bool:
        v = self.reduce(poly)
        if not v:
            return False
        lead = max(v)
        inv = 1 / v[lead]
        self.rows[lead] = {mono: c * inv for mono, c in v.items()}
        self.order.append(lead)
        self.order.sort(reverse=True)
        return True


def _split_generators(pres: RingPresentation):
    """SR generators in the reduced variables: pure monomials and the rest."""
    n, k = pres.dim, pres.num_gens - pres.dim
    forms = pres.substitution()
    pure, mixed = [], []
    for nonface in pres.sr_nonfaces:
        if all(i > n for i in nonface):
            e = [0] * k
            for i in nonface:
                e[i - n - 1] += 1
            pure.append(tuple(e))
        else:
            poly = {(0,) * k: Fraction(1)}
            for i in nonface:
                poly = poly_mul(poly, forms[i - 1])
            mixed.append((len(nonface), poly))
    return pure, mixed


@lru_cache(maxsize=256)
def _echelon(pres: RingPresentation, d: int) -> _Echelon:
    k = pres.num_gens - pres.dim
    pure, mixed = _split_generators(pres)
    ech = _Echelon([g for g in pure if sum(g) <= d])
    for deg, g in mixed:
        if deg > d:
            continue
        for t in monomials(k, d - deg):
            shifted = {tuple(a + b for a, b in zip(mono, t)): c for mono, c in g.items()}
            ech.add(shifted)
    return ech


def graded_basis(pres: RingPresentation, d: int) -> GradedPiece:
    """Monomial basis of ``H^{2d}`` and the reduction onto it."""
    if not 0 <= d <= pres.dim:
        raise WrongDimension(f"degree {d} outside 0..{pres.dim}")
    n, k = pres.dim, pres.num_gens - pres.dim
    ech = _echelon(pres, d)
    standard = [mono for mono in monomials(k, d) if not ech._kill(mono) and mono not in ech.rows]
    if d == pres.dim and len(standard) != 1:
        raise TopDegreeNotRankOne(f"top degree has dimension {len(standard)}")
    basis = [(0,) * n + mono for mono in standard]
    return GradedPiece(d, basis, ech, standard)


def substitute(pres: RingPresentation, poly: dict) -> dict:
    """Rewrite a polynomial in ``u_1..u_m`` in the variables ``u_{n+1}..u_m``."""
    k = pres.num_gens - pres.dim
    forms = pres.substitution()
    out: dict = {}
    for mono, c in poly.items():
        term = {(0,) * k: Fraction(c)}
        for i, e in enumerate(mono):
            for _ in range(e):
                term = poly_mul(term, forms[i])
        out = poly_add(out, term)
    return out


# evaluation ------------------------------------------------------------------


class Pairing:
    """The pairing of top-degree classes with the fundamental class.

    Normalized by the first vertex (lexicographically) whose monomial is
    nonzero in the top degree: that monomial pairs to the sign of the vertex.
    """

    def __init__(self, pres: RingPresentation, signs: dict):
        self.pres = pres
        self.top = graded_basis(pres, pres.dim)
        forms = pres.substitution()
        k = pres.num_gens - pres.dim
        for w in sorted(pres.vertex_sets):
            poly = {(0,) * k: Fraction(1)}
            for i in w:
                poly = poly_mul(poly, forms[i - 1])
            (coef,) = self.top.coordinates(poly)
            if coef:
                self.reference_vertex = w
                self.scale = Fraction(signs[w]) / coef
                break
        else:
            raise TopDegreeNotRankOne("every vertex monomial vanishes")

    def reduced(self, reduced_poly: dict) -> Fraction:
        (coef,) = self.top.coordinates(reduced_poly)
        return coef * self.scale

    def __call__(self, cls: CohClass) -> Fraction:
        if cls.degree != self.pres.dim:
            raise WrongDimension(f"class of degree {cls.degree}, need {self.pres.dim}")
        return self.reduced(substitute(self.pres, cls.polynomial))


def evaluate(pres: RingPresentation, M: OmniQT, cls: CohClass) -> Fraction:
    return Pairing(pres, M.sign_map)(cls)


def vertex_class(pres: RingPresentation, w: Iterable[int]) -> CohClass:
    e = [0] * pres.num_gens
    for i in w:
        e[i - 1] += 1
    return CohClass({tuple(e): Fraction(1)}, len(e) and sum(e))


def vertex_pairings(M: OmniQT) -> dict:
    """Pairing of every vertex monomial; equals the vertex signs for consistent data."""
    pres = presentation(M)
    pairing = Pairing(pres, M.sign_map)
    return {w: pairing(vertex_class(pres, w)) for w in M.vertex_sets}


# Chern classes ------------------------------------------------------------------


def chern_class(pres: RingPresentation, i: int) -> CohClass:
    """Elementary symmetric polynomial ``e_i(u_1..u_m)``."""
    m = pres.num_gens
    poly = {}
    for combo in itertools.combinations(range(m), i):
        e = [0] * m
        for j in combo:
            e[j] = 1
        poly[tuple(e)] = Fraction(1)
    return CohClass(poly, i)


def _reduced_chern_classes(pres: RingPresentation) -> list:
    """``c_0..c_n`` of ``prod (1 + u_i)``, in the reduced variables."""
    n, k = pres.dim, pres.num_gens - pres.dim
    zero = (0,) * k
    graded = [{zero: Fraction(1)}] + [{} for _ in range(n)]
    for form in pres.substitution():
        for d in range(n, 0, -1):
            graded[d] = poly_add(graded[d], poly_mul(graded[d - 1], form))
    return graded


def partitions(n: int, largest: int | None = None) -> list:
    """Partitions of n as non-increasing tuples, in reverse lex order."""
    largest = n if largest is None else largest
    if n == 0:
        return [()]
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return out


def partition_label(part: Sequence[int]) -> str:
    counts: dict = {}
    for p in part:
        counts[p] = counts.get(p, 0) + 1
    return "".join(f"c{p}" + (f"^{e}" if e > 1 else "") for p, e in sorted(counts.items()))


def chern_numbers(M: OmniQT) -> dict:
    """Every characteristic number ``<c_w, mu>`` indexed by partitions of n.

    The entry for ``(n,)`` is checked against the sum of the vertex signs.
    """
    pres = presentation(M)
    pairing = Pairing(pres, M.sign_map)
    cs = _reduced_chern_classes(pres)
    k = pres.num_gens - pres.dim
    out = {}
    for part in partitions(M.n):
        poly = {(0,) * k: Fraction(1)}
        for p in part:
            poly = poly_mul(poly, cs[p])
        value = pairing.reduced(poly)
        if value.denominator != 1:
            raise QtoricError(f"non-integral characteristic number {value} for {part}")
        out[part] = int(value)
    return out


def todd_n2(M: OmniQT) -> Fraction:
    if M.n != 2:
        raise WrongDimension("Todd genus is only provided for n = 2")
    c = chern_numbers(M)
    return Fraction(c[(1, 1)] + c[(2,)], 12)


# (c1^2, c2) of CP^2 and CP^1 x CP^1
_CP2 = (9, 3)
_CP1_SQUARED = (8, 4)


def class_in_basis_n2(numbers: dict) -> dict:
    """Coordinates of a 4-dimensional class in the basis [CP^2], [CP^1]^2."""
    c11, c2 = numbers[(1, 1)], numbers[(2,)]
    det = _CP2[0] * _CP1_SQUARED[1] - _CP1_SQUARED[0] * _CP2[1]
    a = Fraction(c11 * _CP1_SQUARED[1] - _CP1_SQUARED[0] * c2, det)
    b = Fraction(_CP2[0] * c2 - c11 * _CP2[1], det)
    return {"CP2": a, "CP1xCP1": b}


def toric_obstruction(M: OmniQT) -> dict:
    """Obstructions to ``M`` (or its cobordism class) being a smooth projective toric variety.

    Negative vertices rule out ``M`` itself; for n = 2 a Todd genus other
    than 1 rules out the whole class.
    """
    report = {"q_minus": M.q_minus, "todd": None, "manifold_obstructed": M.q_minus > 0}
    if M.n == 2:
        td = todd_n2(M)
        report["todd"] = td
        report["class_obstructed"] = td != 1
    else:
        report["class_obstructed"] = None
    report["verdict"] = (
        "obstructed" if report["manifold_obstructed"] or report["class_obstructed"] else "no obstruction found"
    )
    return report


# ideal membership (used to compare presentations) --------------------------------


def homogeneous_ideal_contains(generators: Sequence[dict], f: dict) -> bool:
    """Whether homogeneous ``f`` lies in the ideal generated by homogeneous polynomials."""
    if not f:
        return True
    nvars = len(next(iter(f)))
    d = sum(next(iter(f)))
    ech = _Echelon()
    for g in generators:
        if not g:
            continue
        deg = sum(next(iter(g)))
        if deg > d:
            continue
        for t in monomials(nvars, d - deg):
            ech.add({tuple(a + b for a, b in zip(mono, t)): c for mono, c in g.items()})
    return not ech.reduce(f)


def relation_generators(pres: RingPresentation) -> list:
    """SR generators rewritten in the reduced variables (degree >= 2)."""
    pure, mixed = _split_generators(pres)
    return [{g: Fraction(1)} for g in pure] + [poly for _, poly in mixed]
