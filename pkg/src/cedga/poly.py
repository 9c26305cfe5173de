"""Free noncommutative polynomials with prime-field coefficients.

A word is a tuple of generator names; the empty tuple is the unit word.
Polynomials are kept in canonical form at all times: coefficients reduced
into ``[1, p)`` and zero terms dropped, so equality is plain term-by-term
comparison.  Instances are treated as immutable; all operations return new
polynomials.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from .field import check_characteristic, require_same_field

Word = tuple[str, ...]

UNIT_WORD: Word = ()


class NcPoly:
    """Finite formal sum of words with coefficients in F_p."""

    __slots__ = ("p", "terms")

    def __init__(self, p: int, terms: Mapping[Word, int] | None = None):
        check_characteristic(p)
        canonical: dict[Word, int] = {}
        if terms:
            for word, coeff in terms.items():
                c = coeff % p
                if c:
                    canonical[tuple(word)] = c
        self.p = p
        self.terms = canonical

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, p: int) -> "NcPoly":
        return cls(p)

    @classmethod
    def unit(cls, p: int) -> "NcPoly":
        return cls(p, {UNIT_WORD: 1})

    @classmethod
    def generator(cls, p: int, name: str) -> "NcPoly":
        return cls(p, {(name,): 1})

    @classmethod
    def monomial(cls, p: int, word: Iterable[str], coeff: int = 1) -> "NcPoly":
        return cls(p, {tuple(word): coeff})

    @classmethod
    def from_pairs(cls, p: int, pairs: Iterable[tuple[int, Iterable[str]]]) -> "NcPoly":
        """Sum of ``coeff * word`` contributions; repeated words accumulate."""
        check_characteristic(p)
        acc: dict[Word, int] = {}
        for coeff, word in pairs:
            key = tuple(word)
            acc[key] = (acc.get(key, 0) + coeff) % p
        return cls(p, acc)

    # -- queries ------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, word: Iterable[str]) -> int:
        return self.terms.get(tuple(word), 0)

    def words(self) -> list[Word]:
        return sorted(self.terms, key=lambda w: (len(w), w))

    def letters(self) -> set[str]:
        out: set[str] = set()
        for word in self.terms:
            out.update(word)
        return out

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other: "NcPoly") -> "NcPoly":
        if not isinstance(other, NcPoly):
            return NotImplemented
        require_same_field(self.p, other.p)
        acc = dict(self.terms)
        for word, coeff in other.terms.items():
            acc[word] = (acc.get(word, 0) + coeff) % self.p
        return NcPoly(self.p, acc)

    def __sub__(self, other: "NcPoly") -> "NcPoly":
        if not isinstance(other, NcPoly):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "NcPoly":
        return NcPoly(self.p, {w: -c for w, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return NcPoly(self.p, {w: c * other for w, c in self.terms.items()})
        if not isinstance(other, NcPoly):
            return NotImplemented
        require_same_field(self.p, other.p)
        acc: dict[Word, int] = {}
        p = self.p
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                key = w1 + w2
                acc[key] = (acc.get(key, 0) + c1 * c2) % p
        return NcPoly(self.p, acc)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __eq__(self, other) -> bool:
        return isinstance(other, NcPoly) and self.p == other.p and self.terms == other.terms

    __hash__ = None  # mutable dict inside; compare by value only

    def __repr__(self) -> str:
        return f"NcPoly({self.p}, {format_poly(self)!r})"


def format_poly(poly: NcPoly) -> str:
    """Canonical text rendering: terms ordered by (length, word), spaces
    between letters, coefficient prefixed only when it is not the implicit 1,
    and a bare integer for multiples of the unit word."""
    if poly.is_zero:
        return "0"
    chunks = []
    for word in poly.words():
        coeff = poly.terms[word]
        if not word:
            chunks.append(str(coeff))
        elif coeff == 1:
            chunks.append(" ".join(word))
        else:
            chunks.append(f"{coeff} " + " ".join(word))
    return " + ".join(chunks)
