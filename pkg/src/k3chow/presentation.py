"""Graded quotient rings computed degree by degree with exact linear algebra.

Monomial generators are handled combinatorially: monomials they divide are
dropped from the column set, which keeps the linear systems small.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .linalg_exact import RationalMatrix, SparseEchelon, nullspace, rank
from .ring_core import GradedPoly, RingSignature, monomial_basis


class PresentationError(ValueError):
    pass


def order_key(order: str, perm: Sequence[int] | None = None):
    """Sort key for monomials of equal degree; larger keys come first.

    ``perm`` lists signature indices from the most to the least significant
    variable; the default is signature order.
    """
    if perm is None:
        pick = lambda e: e
    else:
        pick = lambda e: tuple(e[i] for i in perm)
    if order == "glex":
        return lambda e: tuple(pick(e))
    if order == "grevlex":
        return lambda e: tuple(-x for x in reversed(pick(e)))
    raise PresentationError(f"unknown monomial order {order!r}")


@dataclass(frozen=True)
class GradedIdeal:
    sig: RingSignature
    generators: tuple

    def __post_init__(self):
        for g in self.generators:
            if g.sig != self.sig:
                raise PresentationError("generator lives in a different ring")
            if not g.is_homogeneous():
                raise PresentationError(f"generator is not homogeneous: {g}")


class _Degree:
    __slots__ = ("columns", "index", "echelon")

    def __init__(self, columns, echelon):
        self.columns = columns
        self.index = {m: i for i, m in enumerate(columns)}
        self.echelon = echelon


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


class QuotientPresentation:
    def __init__(self, ideal: GradedIdeal | None = None, *, sig: RingSignature | None = None,
                 generators: Sequence[GradedPoly] = (), order: str = "grevlex",
                 var_order: Sequence[str] | None = None):
        if ideal is None:
            ideal = GradedIdeal(sig, tuple(g for g in generators if g))
        self.ideal = ideal
        self.sig = ideal.sig
        self.order = order
        self.var_order = tuple(var_order) if var_order else self.sig.names
        self._key = order_key(order, [self.sig.index(n) for n in self.var_order])
        self.monomial_gens = []
        self.poly_gens = []
        for g in ideal.generators:
            if not g:
                continue
            if len(g.terms) == 1:
                (e,) = g.terms
                self.monomial_gens.append(e)
            else:
                self.poly_gens.append((g.degree(), g))
        self._cache: dict = {}

    # ------------------------------------------------------------------
    def _in_monomial_ideal(self, e) -> bool:
        return any(_divides(m, e) for m in self.monomial_gens)

    def columns(self, d: int) -> list:
        mons = [e for e in monomial_basis(self.sig, d) if not self._in_monomial_ideal(e)]
        mons.sort(key=self._key, reverse=True)
        return mons

    def degree_data(self, d: int) -> _Degree:
        if d in self._cache:
            return self._cache[d]
        cols = self.columns(d)
        data = _Degree(cols, SparseEchelon(len(cols)))
        ech = data.echelon
        idx = data.index
        for gd, g in self.poly_gens:
            if ech.full():
                break
            if gd > d:
                continue
            for m in monomial_basis(self.sig, d - gd):
                if self._in_monomial_ideal(m):
                    continue
                row = {}
                for e, c in g.terms.items():
                    prod = tuple(a + b for a, b in zip(e, m))
                    j = idx.get(prod)
                    if j is not None:
                        row[j] = row.get(j, 0) + c
                ech.add(row)
                if ech.full():
                    break
        self._cache[d] = data
        return data

    # ------------------------------------------------------------------
    def dim(self, d: int) -> int:
        if d < 0:
            return 0
        data = self.degree_data(d)
        return len(data.columns) - data.echelon.rank

    def ideal_dim(self, d: int) -> int:
        return len(monomial_basis(self.sig, d)) - self.dim(d)

    def hilbert_function(self, d_max: int) -> list:
        return [self.dim(d) for d in range(d_max + 1)]

    def basis(self, d: int) -> list:
        """Standard monomials of degree d (exponent tuples), in column order."""
        data = self.degree_data(d)
        return [data.columns[c] for c in data.echelon.free_columns()]

    def basis_polys(self, d: int) -> list:
        return [GradedPoly(self.sig, {e: 1}) for e in self.basis(d)]

    def normal_form(self, x: GradedPoly) -> GradedPoly:
        if x.sig != self.sig:
            raise PresentationError("element lives in a different ring")
        out = self.sig.zero()
        for d, comp in x.components().items():
            data = self.degree_data(d)
            row = {}
            for e, c in comp.terms.items():
                j = data.index.get(e)
                if j is not None:
                    row[j] = c
            nf = data.echelon.normal_form(row)
            out = out + GradedPoly(self.sig, {data.columns[j]: c for j, c in nf.items()})
        return out

    def coordinates(self, x: GradedPoly, d: int) -> list:
        nf = self.normal_form(x.homogeneous(d) if x else x)
        return [nf.coeff(e) for e in self.basis(d)]

    def is_zero(self, x: GradedPoly) -> bool:
        return not self.normal_form(x)

    def socle_degree(self, d_max: int) -> int:
        top = -1
        for d in range(d_max + 1):
            if self.dim(d):
                top = d
        return top

    def pairing_matrix(self, k: int, d_top: int) -> RationalMatrix:
        """Rows: degree-k standard monomials; columns: degree-(d_top-k) ones."""
        socle = self.basis(d_top)
        if len(socle) != 1:
            raise PresentationError(f"degree {d_top} has dimension {len(socle)}, expected 1")
        (s,) = socle
        left = self.basis_polys(k)
        right = self.basis_polys(d_top - k)
        entries = []
        for a in left:
            for b in right:
                entries.append(self.normal_form(a * b).coeff(s))
        return RationalMatrix(len(left), len(right), entries)

    def pairing_rank(self, k: int, d_top: int) -> int:
        return rank(self.pairing_matrix(k, d_top))

    def pairing_kernel(self, k: int, d_top: int) -> list:
        """Degree-k classes pairing to zero with everything of degree d_top - k."""
        m = self.pairing_matrix(d_top - k, d_top)
        basis = self.basis(k)
        out = []
        for v in nullspace(m):
            out.append(GradedPoly(self.sig, {e: c for e, c in zip(basis, v)}))
        return out


def hilbert_series_of_ideal(q: QuotientPresentation, d_max: int) -> list:
    return [q.ideal_dim(d) for d in range(d_max + 1)]
