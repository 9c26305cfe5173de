"""Augmentations: unital multiplicative scalar assignments on generators.

An augmentation stores only its nonzero values; every unlisted generator is
implicitly sent to 0 and the empty word always evaluates to 1.  Enumeration
is a depth-first search over the degree-0 generators with incremental
constraint evaluation, pruning a branch as soon as a fully determined
constraint fails.
"""

from __future__ import annotations

from typing import Mapping

from .dga import Dga, ValidationReport
from .field import check_characteristic, require_same_field
from .poly import NcPoly, format_poly


class EnumerationBoundError(ValueError):
    """The degree-0 generator count exceeds the configured search bound."""


class Augmentation:
    """Finitely supported scalar assignment, extended multiplicatively."""

    __slots__ = ("p", "values")

    def __init__(self, p: int, values: Mapping[str, int] | None = None):
        check_characteristic(p)
        self.p = p
        self.values: dict[str, int] = {}
        for name, value in (values or {}).items():
            v = value % p
            if v:
                self.values[name] = v

    @classmethod
    def trivial(cls, p: int) -> "Augmentation":
        return cls(p)

    def value(self, name: str) -> int:
        return self.values.get(name, 0)

    def evaluate(self, q: NcPoly) -> int:
        """Sum over terms of coeff * product of letter values; the empty word
        contributes its coefficient."""
        require_same_field(self.p, q.p)
        total = 0
        for word, coeff in q.terms.items():
            prod = coeff
            for letter in word:
                v = self.values.get(letter, 0)
                if not v:
                    prod = 0
                    break
                prod = prod * v % self.p
            total += prod
        return total % self.p

    def __eq__(self, other) -> bool:
        return (isinstance(other, Augmentation)
                and self.p == other.p and self.values == other.values)

    __hash__ = None

    def __repr__(self) -> str:
        inside = ", ".join(f"{n}={v}" for n, v in sorted(self.values.items()))
        return f"Augmentation(p={self.p}, {{{inside}}})"


def evaluate(e: Augmentation, q: NcPoly) -> int:
    return e.evaluate(q)


def check_augmentation(dga: Dga, e: Augmentation) -> ValidationReport:
    """List every generator g with e(d(g)) != 0; support violations (nonzero
    value on a generator of nonzero degree, or on an undeclared name) are
    reported distinctly."""
    report = ValidationReport()
    require_same_field(dga.p, e.p)
    for name, value in sorted(e.values.items()):
        if name not in dga.generators:
            report.add("augmentation.support", name,
                       f"value {value} on undeclared generator")
        elif dga.generators[name].degree != 0:
            report.add("augmentation.support", name,
                       f"value {value} on generator of degree "
                       f"{dga.generators[name].degree}")
    for name, poly in sorted(dga.nonzero_differentials().items()):
        residual = e.evaluate(poly)
        if residual:
            report.add("augmentation.residual", name,
                       f"e(d({name})) = {residual} with d({name}) = {format_poly(poly)}")
    return report


def _constraints_by_depth(dga: Dga, names: list[str]):
    """Reduce every differential to a constraint over the degree-0 variables.

    Words containing a nonzero-degree letter evaluate to 0 identically and
    are dropped.  Returns (by_depth, infeasible) where by_depth[d] holds the
    constraints whose last variable (in the fixed ordering) is d.
    """
    index = {name: i for i, name in enumerate(names)}
    degree_zero = set(names)
    by_depth: dict[int, list[tuple[int, list[tuple[int, tuple[int, ...]]]]]] = {}
    for gname, poly in dga.nonzero_differentials().items():
        constant = 0
        terms: list[tuple[int, tuple[int, ...]]] = []
        for word, coeff in poly.terms.items():
            if all(letter in degree_zero for letter in word):
                if word:
                    terms.append((coeff, tuple(index[l] for l in word)))
                else:
                    constant += coeff
        constant %= dga.p
        if not terms:
            if constant:
                return None, True  # constraint 0 = constant is unsatisfiable
            continue
        ready = max(max(idxs) for _, idxs in terms)
        by_depth.setdefault(ready, []).append((constant, terms))
    return by_depth, False


def enumerate_augmentations(dga: Dga, max_degree_zero: int = 24) -> list[Augmentation]:
    """All augmentations of a validated Dga, in lexicographic order by sorted
    generator name then value.  Refuses to run when the degree-0 generator
    count exceeds ``max_degree_zero``."""
    names = sorted(dga.degree_zero_names())
    if len(names) > max_degree_zero:
        raise EnumerationBoundError(
            f"{len(names)} degree-0 generators exceed the bound {max_degree_zero}")
    by_depth, infeasible = _constraints_by_depth(dga, names)
    if infeasible:
        return []
    p = dga.p
    n = len(names)
    values = [0] * n
    found: list[Augmentation] = []

    def walk(depth: int) -> None:
        if depth == n:
            found.append(Augmentation(p, {names[i]: values[i] for i in range(n)}))
            return
        ready = by_depth.get(depth, ())
        for v in range(p):
            values[depth] = v
            satisfied = True
            for constant, terms in ready:
                total = constant
                for coeff, idxs in terms:
                    prod = coeff
                    for i in idxs:
                        vi = values[i]
                        if not vi:
                            prod = 0
                            break
                        prod = prod * vi % p
                    total += prod
                if total % p:
                    satisfied = False
                    break
            if satisfied:
                walk(depth + 1)

    walk(0)
    return found
