"""
Closure Invariants

Exact integer Laurent polynomials, the Alexander polynomial from a Seifert
matrix and independently from the reduced Burau representation, the signature,
the pairwise linking matrix and sublink extraction. No floating point is used:
determinants run fraction-free over ZZ[t] through sympy's DomainMatrix and the
signature diagonalizes over the rationals.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

import sympy
from sympy import ZZ, Rational
from sympy.polys.matrices import DomainMatrix

from .band_words import (
    ArtinLetter,
    ArtinWord,
    BandWord,
    artin_expand,
    closure_summary,
)
from .errors import NotCoprimePermutation, UnknownComponent, ZeroPolynomial
from .fence import SeifertMatrix

T = sympy.Symbol("t")


@lru_cache(maxsize=1)
def _ring():
    return ZZ[T]


@dataclass(frozen=True)
class LaurentPoly:
    """Integer Laurent polynomial in t; terms sorted by exponent, no zero coefficients."""
    terms: tuple[tuple[int, int], ...] = ()

    @classmethod
    def from_dict(cls, coefficients: dict[int, int]) -> "LaurentPoly":
        return cls(tuple(sorted((e, c) for e, c in coefficients.items() if c)))

    @classmethod
    def from_coefficients(cls, coefficients: Iterable[int], lowest: int = 0) -> "LaurentPoly":
        """Build from a dense coefficient list starting at exponent `lowest`."""
        return cls.from_dict({lowest + i: c for i, c in enumerate(coefficients)})

    @classmethod
    def monomial(cls, coefficient: int = 1, exponent: int = 0) -> "LaurentPoly":
        return cls.from_dict({exponent: coefficient})

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls.monomial(1, 0)

    @classmethod
    def t(cls) -> "LaurentPoly":
        return cls.monomial(1, 1)

    @property
    def coefficients(self) -> dict[int, int]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def min_exponent(self) -> int:
        return self.terms[0][0]

    @property
    def max_exponent(self) -> int:
        return self.terms[-1][0]

    def span(self) -> int:
        return self.max_exponent - self.min_exponent if self.terms else 0

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.monomial(other, 0)
        return NotImplemented

    def __add__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        result = self.coefficients
        for e, c in other.terms:
            result[e] = result.get(e, 0) + c
        return LaurentPoly.from_dict(result)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        result: dict[int, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                result[e1 + e2] = result.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly.from_dict(result)

    __rmul__ = __mul__

    def __pow__(self, power: int) -> "LaurentPoly":
        if power < 0:
            raise ValueError("negative powers are only defined for monomials; use shift()")
        result = LaurentPoly.one()
        for _ in range(power):
            result = result * self
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by t^k."""
        return LaurentPoly(tuple((e + k, c) for e, c in self.terms))

    def invert_variable(self) -> "LaurentPoly":
        """Substitute t -> t^-1."""
        return LaurentPoly.from_dict({-e: c for e, c in self.terms})

    def evaluate(self, value) -> Rational:
        """Exact value at a rational point."""
        point = Rational(value)
        return sum((c * point ** e for e, c in self.terms), Rational(0))

    def to_expr(self, shift: int = 0) -> sympy.Expr:
        return sum((c * T ** (e + shift) for e, c in self.terms), sympy.Integer(0))

    @classmethod
    def from_expr(cls, expr, shift: int = 0) -> "LaurentPoly":
        """Read a polynomial expression in t, then multiply by t^shift."""
        poly = sympy.Poly(sympy.expand(expr), T)
        return cls.from_dict({monom[0] + shift: int(c) for monom, c in poly.terms()})

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient; raises ArithmeticError when a remainder is left."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return LaurentPoly.zero()
        num = sympy.Poly(self.to_expr(-self.min_exponent), T, domain=ZZ)
        den = sympy.Poly(other.to_expr(-other.min_exponent), T, domain=ZZ)
        quotient, remainder = num.div(den)
        if not remainder.is_zero or not all(c.is_integer for c in quotient.coeffs()):
            raise ArithmeticError(f"{self.render()} is not divisible by {other.render()}")
        return LaurentPoly.from_expr(quotient.as_expr(), self.min_exponent - other.min_exponent)

    def render(self) -> str:
        """Human form, e.g. '1 - 3t + t^2'."""
        if not self.terms:
            return "0"
        parts = []
        for index, (e, c) in enumerate(self.terms):
            magnitude = abs(c)
            if e == 0:
                body = str(magnitude)
            else:
                power = "t" if e == 1 else f"t^{e}"
                body = power if magnitude == 1 else f"{magnitude}{power}"
            if index == 0:
                parts.append(f"-{body}" if c < 0 else body)
            else:
                parts.append(f"- {body}" if c < 0 else f"+ {body}")
        return " ".join(parts)

    def to_json(self) -> dict[str, int]:
        return {str(e): c for e, c in self.terms}

    def __str__(self) -> str:
        return self.render()


LaurentMatrix = tuple[tuple[LaurentPoly, ...], ...]


@dataclass(frozen=True)
class LinkingMatrix:
    """Pairwise linking numbers of the closure components (symmetric, zero diagonal)."""
    entries: tuple[tuple[int, ...], ...]

    @property
    def components(self) -> int:
        return len(self.entries)

    def as_lists(self) -> list[list[int]]:
        return [list(row) for row in self.entries]


# ============================================================================
# Polynomials
# ============================================================================

def normalize(p: LaurentPoly) -> LaurentPoly:
    """Multiply by +-t^k so the lowest exponent is 0 with a positive coefficient."""
    if p.is_zero():
        raise ZeroPolynomial("the zero polynomial has no unit normalization")
    shifted = p.shift(-p.min_exponent)
    return -shifted if shifted.terms[0][1] < 0 else shifted


def normalize_or_zero(p: LaurentPoly) -> LaurentPoly:
    return p if p.is_zero() else normalize(p)


def laurent_det(rows) -> LaurentPoly:
    """Determinant of a square matrix of Laurent polynomials (fraction-free over ZZ[t])."""
    size = len(rows)
    if size == 0:
        return LaurentPoly.one()
    lowest = min((entry.min_exponent for row in rows for entry in row if not entry.is_zero()), default=0)
    shift = max(0, -lowest)
    ring = _ring()
    elements = [[ring.from_sympy(entry.to_expr(shift)) for entry in row] for row in rows]
    det = DomainMatrix(elements, (size, size), ring).det()
    return LaurentPoly.from_expr(ring.to_sympy(det), -shift * size)


def alexander_from_seifert(matrix: SeifertMatrix) -> LaurentPoly:
    """normalize(det(V - t V^T)); the zero polynomial is returned as is."""
    V = matrix.entries
    size = len(V)
    t = LaurentPoly.t()
    rows = [
        [LaurentPoly.monomial(V[a][b]) - t * V[b][a] for b in range(size)]
        for a in range(size)
    ]
    return normalize_or_zero(laurent_det(rows))


# ============================================================================
# Reduced Burau representation
# ============================================================================

def _identity(size: int) -> list[list[LaurentPoly]]:
    return [[LaurentPoly.one() if r == c else LaurentPoly.zero() for c in range(size)] for r in range(size)]


def burau_generator(strands: int, letter: ArtinLetter) -> list[list[LaurentPoly]]:
    """Reduced Burau image of s_i^{+-1}; s_1 in B_2 is [-t]."""
    size = strands - 1
    i = letter.generator
    M = _identity(size)
    if letter.sign == 1:
        M[i - 1][i - 1] = LaurentPoly.monomial(-1, 1)
        if i >= 2:
            M[i - 2][i - 1] = LaurentPoly.t()
        if i < size:
            M[i][i - 1] = LaurentPoly.one()
    else:
        M[i - 1][i - 1] = LaurentPoly.monomial(-1, -1)
        if i >= 2:
            M[i - 2][i - 1] = LaurentPoly.one()
        if i < size:
            M[i][i - 1] = LaurentPoly.monomial(1, -1)
    return M


def _matmul(A, B):
    size = len(A)
    return [
        [sum((A[r][k] * B[k][c] for k in range(size)), LaurentPoly.zero()) for c in range(size)]
        for r in range(size)
    ]


def burau_reduced(word: ArtinWord) -> LaurentMatrix:
    """Product of the reduced Burau images of the letters, in word order."""
    M = _identity(word.strands - 1)
    for letter in word.letters:
        M = _matmul(M, burau_generator(word.strands, letter))
    return tuple(tuple(row) for row in M)


def alexander_from_burau(word: ArtinWord) -> LaurentPoly:
    """Alexander polynomial of the closure: det(B - I) * (1 - t)/(1 - t^n)."""
    B = burau_reduced(word)
    size = len(B)
    shifted = [
        [B[r][c] - (1 if r == c else 0) for c in range(size)]
        for r in range(size)
    ]
    numerator = laurent_det(shifted)
    # (1 - t^n)/(1 - t) = 1 + t + ... + t^(n-1)
    divisor = LaurentPoly.from_coefficients([1] * word.strands)
    try:
        quotient = numerator.exact_div(divisor)
    except ArithmeticError as e:
        raise NotCoprimePermutation(str(e)) from e
    return normalize_or_zero(quotient)


def alexander_cross_check(word: BandWord, bridging_exponent: int = 0) -> tuple[bool, LaurentPoly, LaurentPoly]:
    """Compare the Seifert and Burau routes for a connected word.

    Returns (agree, seifert_side, burau_side). The Burau side is multiplied by
    (1 - t)^bridging_exponent before normalizing.
    """
    from .fence import seifert_form

    seifert_side = alexander_from_seifert(seifert_form(word))
    burau = alexander_from_burau(artin_expand(word))
    burau_side = normalize_or_zero(burau * (LaurentPoly.one() - LaurentPoly.t()) ** bridging_exponent)
    return seifert_side == burau_side, seifert_side, burau_side


# ============================================================================
# Forms and linking
# ============================================================================

def _congruence_diagonal(rows: list[list[Rational]]) -> list[Rational]:
    """Diagonal of a congruent diagonal form of a symmetric rational matrix."""
    A = [list(row) for row in rows]
    n = len(A)
    diagonal = []
    for k in range(n):
        if A[k][k] == 0:
            pivot = next((j for j in range(k + 1, n) if A[j][j] != 0), None)
            if pivot is not None:
                A[k], A[pivot] = A[pivot], A[k]
                for row in A:
                    row[k], row[pivot] = row[pivot], row[k]
            else:
                partner = next((j for j in range(k + 1, n) if A[k][j] != 0), None)
                if partner is not None:
                    for c in range(n):
                        A[k][c] += A[partner][c]
                    for row in A:
                        row[k] += row[partner]
        pivot_value = A[k][k]
        diagonal.append(pivot_value)
        if pivot_value == 0:
            continue
        for i in range(k + 1, n):
            factor = A[i][k] / pivot_value
            if factor == 0:
                continue
            for c in range(n):
                A[i][c] -= factor * A[k][c]
            for row in A:
                row[i] -= factor * row[k]
    return diagonal


def signature(matrix: SeifertMatrix) -> int:
    """Signature of V + V^T."""
    V = matrix.entries
    size = len(V)
    symmetric = [[Rational(V[a][b] + V[b][a]) for b in range(size)] for a in range(size)]
    diagonal = _congruence_diagonal(symmetric)
    return sum(1 for d in diagonal if d > 0) - sum(1 for d in diagonal if d < 0)


def link_determinant(matrix: SeifertMatrix) -> int:
    """|det(V + V^T)|, which equals |Delta(-1)|."""
    V = matrix.entries
    size = len(V)
    if size == 0:
        return 1
    rows = [[ZZ(V[a][b] + V[b][a]) for b in range(size)] for a in range(size)]
    return abs(int(DomainMatrix(rows, (size, size), ZZ).det()))


def linking_matrix(word: BandWord) -> LinkingMatrix:
    """Half the signed crossings between each pair of closure components."""
    summary = closure_summary(word)
    m = summary.components
    label = summary.labels
    counts = [[0] * m for _ in range(m)]
    occupant = list(range(word.strands + 1))
    for letter in artin_expand(word).letters:
        g = letter.generator
        a, b = label[occupant[g] - 1] - 1, label[occupant[g + 1] - 1] - 1
        if a != b:
            counts[a][b] += letter.sign
            counts[b][a] += letter.sign
        occupant[g], occupant[g + 1] = occupant[g + 1], occupant[g]
    for row in counts:
        for value in row:
            if value % 2:
                raise ArithmeticError(f"odd inter-component crossing sum {value}")
    return LinkingMatrix(tuple(tuple(value // 2 for value in row) for row in counts))


def extract_component(word: BandWord, component: int) -> ArtinWord:
    """Artin word of one closure component, other strands and their crossings deleted."""
    summary = closure_summary(word)
    if not 1 <= component <= summary.components:
        raise UnknownComponent(f"component {component} outside 1..{summary.components}")
    keep = {s for s in range(1, word.strands + 1) if summary.labels[s - 1] == component}
    occupant = list(range(word.strands + 1))
    letters = []
    for letter in artin_expand(word).letters:
        g = letter.generator
        if occupant[g] in keep and occupant[g + 1] in keep:
            rank = sum(1 for position in range(1, g + 1) if occupant[position] in keep)
            letters.append(ArtinLetter(rank, letter.sign))
        occupant[g], occupant[g + 1] = occupant[g + 1], occupant[g]
    return ArtinWord(len(keep), tuple(letters))


def component_alexander(word: BandWord, component: int) -> LaurentPoly:
    """Normalized Alexander polynomial of one closure component (Burau route)."""
    return alexander_from_burau(extract_component(word, component))
