"""Disk and strip count tables, bounding cochains, and the bridge between
cochains on double points and augmentations of the chord algebra.

Counts are input data.  Tables apply two admissibility filters at load time:
the rigidity degree identity and the strict energy inequality.  Entries that
fail a filter are kept on the table's ``rejected`` list with a reason instead
of aborting the load.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .augment import Augmentation
from .dga import Dga, Generator, GeneratorKind, ValidationReport
from .field import check_characteristic, require_same_field
from .poly import NcPoly


class SupportError(ValueError):
    """A cochain or augmentation is supported outside its allowed domain."""


@dataclass(frozen=True)
class RejectedEntry:
    entry: str
    reason: str


def _entry_text(output: str, inputs: tuple[str, ...]) -> str:
    return f"({output}; {', '.join(inputs) if inputs else ''})"


class DiskCountTable:
    """Rigid-disk counts: (output double point, ordered input word) -> count.

    Every named generator must be a declared positive-action double point.
    Entries violating the degree identity deg(out) - sum deg(in) = 2 - #in
    or the energy inequality a(out) > sum a(in) are rejected at load.
    """

    __slots__ = ("p", "double_points", "counts", "rejected")

    def __init__(self, p: int, double_points: dict[str, Generator],
                 counts: dict[tuple[str, tuple[str, ...]], int],
                 rejected: tuple[RejectedEntry, ...] = ()):
        self.p = p
        self.double_points = double_points
        self.counts = counts
        self.rejected = rejected

    @classmethod
    def build(cls, p: int, double_points: Iterable[Generator],
              entries: Iterable[tuple[str, Iterable[str], int]]) -> "DiskCountTable":
        check_characteristic(p)
        points: dict[str, Generator] = {}
        for gen in double_points:
            if gen.kind is not GeneratorKind.DOUBLE_POINT_POS:
                raise ValueError(f"{gen.name!r} must be a positive double point, got {gen.kind}")
            if gen.name in points:
                raise ValueError(f"duplicate double point {gen.name!r}")
            points[gen.name] = gen
        counts: dict[tuple[str, tuple[str, ...]], int] = {}
        rejected: list[RejectedEntry] = []
        for output, inputs, coeff in entries:
            word = tuple(inputs)
            for name in (output,) + word:
                if name not in points:
                    raise ValueError(f"count entry references undeclared double point {name!r}")
            coeff %= p
            if not coeff:
                continue
            out = points[output]
            in_degree = sum(points[n].degree for n in word)
            if out.degree - in_degree != 2 - len(word):
                rejected.append(RejectedEntry(
                    _entry_text(output, word),
                    f"degree {out.degree} - {in_degree} != 2 - {len(word)}"))
                continue
            in_action = sum((points[n].action for n in word), out.action * 0)
            if out.action <= in_action:
                rejected.append(RejectedEntry(
                    _entry_text(output, word),
                    f"action {out.action} not above input total {in_action}"))
                continue
            key = (output, word)
            counts[key] = (counts.get(key, 0) + coeff) % p
            if not counts[key]:
                del counts[key]
        return cls(p, points, counts, tuple(rejected))

    def degree_one_names(self) -> list[str]:
        return sorted(n for n, g in self.double_points.items() if g.degree == 1)

    def outputs(self) -> list[str]:
        return sorted({out for out, _ in self.counts})

    def __repr__(self) -> str:
        return (f"DiskCountTable(p={self.p}, points={len(self.double_points)}, "
                f"entries={len(self.counts)}, rejected={len(self.rejected)})")


class BoundingCochain:
    """Finitely supported coefficients on positive-action double points."""

    __slots__ = ("p", "coefficients")

    def __init__(self, p: int, coefficients: Mapping[str, int] | None = None):
        check_characteristic(p)
        self.p = p
        self.coefficients: dict[str, int] = {}
        for name, value in (coefficients or {}).items():
            v = value % p
            if v:
                self.coefficients[name] = v

    @classmethod
    def trivial(cls, p: int) -> "BoundingCochain":
        return cls(p)

    def coefficient(self, name: str) -> int:
        return self.coefficients.get(name, 0)

    def __eq__(self, other) -> bool:
        return (isinstance(other, BoundingCochain)
                and self.p == other.p and self.coefficients == other.coefficients)

    __hash__ = None

    def __repr__(self) -> str:
        inside = ", ".join(f"{n}={v}" for n, v in sorted(self.coefficients.items()))
        return f"BoundingCochain(p={self.p}, {{{inside}}})"


def _check_cochain_support(table: DiskCountTable, b: BoundingCochain) -> None:
    require_same_field(table.p, b.p)
    allowed = set(table.degree_one_names())
    for name in sorted(b.coefficients):
        if name not in allowed:
            raise SupportError(
                f"cochain supported on {name!r}, which is not a degree-1 double point")


def derive_ce(table: DiskCountTable) -> Dga:
    """Chord algebra read off a disk-count table: one chord per double point
    with degree 1 - deg and the same (positive) action, differential given by
    the stored counts with inputs kept in written order."""
    gens = [Generator(name, 1 - g.degree, g.action, GeneratorKind.REEB_CHORD)
            for name, g in table.double_points.items()]
    diff: dict[str, NcPoly] = {}
    pending: dict[str, list[tuple[int, tuple[str, ...]]]] = {}
    for (output, word), coeff in table.counts.items():
        pending.setdefault(output, []).append((coeff, word))
    for output, pairs in pending.items():
        diff[output] = NcPoly.from_pairs(table.p, pairs)
    return Dga(table.p, gens, diff, d_degree=1)


def _weighted_series(table: DiskCountTable, weights: Mapping[str, int],
                     output: str) -> int:
    """The finite series sum over entries at one output of
    count * product of input weights (missing weight = 0)."""
    total = 0
    p = table.p
    for (out, word), coeff in table.counts.items():
        if out != output:
            continue
        prod = coeff
        for name in word:
            v = weights.get(name, 0)
            if not v:
                prod = 0
                break
            prod = prod * v % p
        total += prod
    return total % p


def mc_residual(table: DiskCountTable, b: BoundingCochain) -> dict[str, int]:
    """Obstruction series evaluated at every degree-2 output present in the
    table; b solves the deformation equation iff the residual is identically
    zero.  Outputs absent from the table are implicitly unobstructed."""
    _check_cochain_support(table, b)
    out: dict[str, int] = {}
    for output in table.outputs():
        if table.double_points[output].degree == 2:
            out[output] = _weighted_series(table, b.coefficients, output)
    return out


def eps_from_b(b: BoundingCochain) -> Augmentation:
    """Coefficientwise transcription onto the corresponding chords."""
    return Augmentation(b.p, dict(b.coefficients))


def b_from_eps(table: DiskCountTable, e: Augmentation) -> BoundingCochain:
    """Inverse transcription; rejects augmentations supported on chords whose
    underlying double point does not have degree 1 (those chords have nonzero
    degree in the chord algebra)."""
    require_same_field(table.p, e.p)
    allowed = set(table.degree_one_names())
    for name in sorted(e.values):
        if name not in allowed:
            raise SupportError(
                f"augmentation value on {name!r}, which is not a degree-0 chord "
                "of this table")
    return BoundingCochain(table.p, dict(e.values))


def verify_mc_aug_identity(table: DiskCountTable, b: BoundingCochain) -> bool:
    """Formal identity behind the bridge: at every output in the table, the
    weighted obstruction series equals the transcribed augmentation applied
    to the derived differential.  Holds for every table and cochain; the two
    sides are computed along independent code paths."""
    _check_cochain_support(table, b)
    ce = derive_ce(table)
    eps = eps_from_b(b)
    for output in table.outputs():
        lhs = _weighted_series(table, b.coefficients, output)
        rhs = eps.evaluate(ce.differential_of(output))
        if lhs != rhs:
            return False
    return True


class StripCountTable:
    """Decorated-strip counts for a pair of Lagrangians: entries are
    (output chord, input chord, bottom word, top word) -> count, filtered by
    the per-strip degree identity
    deg(out) - deg(in) - sum deg(marked) = 1 - #marked."""

    __slots__ = ("p", "chords", "dp_bottom", "dp_top", "counts", "rejected")

    def __init__(self, p, chords, dp_bottom, dp_top, counts, rejected=()):
        self.p = p
        self.chords = chords
        self.dp_bottom = dp_bottom
        self.dp_top = dp_top
        self.counts = counts
        self.rejected = tuple(rejected)

    @classmethod
    def build(cls, p: int, chords: Iterable[Generator],
              dp_bottom: Iterable[Generator], dp_top: Iterable[Generator],
              entries: Iterable[tuple[str, str, Iterable[str], Iterable[str], int]]
              ) -> "StripCountTable":
        check_characteristic(p)
        chord_map: dict[str, Generator] = {}
        for gen in chords:
            if gen.kind is not GeneratorKind.MIXED_CHORD:
                raise ValueError(f"chord {gen.name!r} must have the mixed kind")
            if gen.name in chord_map:
                raise ValueError(f"duplicate chord {gen.name!r}")
            chord_map[gen.name] = gen
        bottom: dict[str, Generator] = {}
        top: dict[str, Generator] = {}
        for side, gens in (("bottom", dp_bottom), ("top", dp_top)):
            target = bottom if side == "bottom" else top
            for gen in gens:
                if gen.kind is not GeneratorKind.DOUBLE_POINT_POS:
                    raise ValueError(f"{gen.name!r} must be a positive double point")
                if gen.name in chord_map or gen.name in target:
                    raise ValueError(f"duplicate generator {gen.name!r}")
                target[gen.name] = gen
        counts: dict[tuple[str, str, tuple[str, ...], tuple[str, ...]], int] = {}
        rejected: list[RejectedEntry] = []
        for c_out, c_in, b_word, t_word, coeff in entries:
            bw, tw = tuple(b_word), tuple(t_word)
            for name in (c_out, c_in):
                if name not in chord_map:
                    raise ValueError(f"strip entry references undeclared chord {name!r}")
            for name in bw:
                if name not in bottom:
                    raise ValueError(f"strip entry references {name!r}, not a bottom double point")
            for name in tw:
                if name not in top:
                    raise ValueError(f"strip entry references {name!r}, not a top double point")
            coeff %= p
            if not coeff:
                continue
            marked = [bottom[n] for n in bw] + [top[n] for n in tw]
            lhs = (chord_map[c_out].degree - chord_map[c_in].degree
                   - sum(g.degree for g in marked))
            if lhs != 1 - len(marked):
                rejected.append(RejectedEntry(
                    f"({c_out} <- {c_in}; bottom {list(bw)}, top {list(tw)})",
                    f"degree balance {lhs} != 1 - {len(marked)}"))
                continue
            key = (c_out, c_in, bw, tw)
            counts[key] = (counts.get(key, 0) + coeff) % p
            if not counts[key]:
                del counts[key]
        return cls(p, chord_map, bottom, top, counts, tuple(rejected))

    def __repr__(self) -> str:
        return (f"StripCountTable(p={self.p}, chords={len(self.chords)}, "
                f"entries={len(self.counts)}, rejected={len(self.rejected)})")


class ChordMap:
    """Linear endomorphism of the chord module, stored as a sparse matrix
    keyed by (output chord, input chord)."""

    __slots__ = ("p", "chords", "entries")

    def __init__(self, p: int, chords: Iterable[str],
                 entries: Mapping[tuple[str, str], int] | None = None):
        check_characteristic(p)
        self.p = p
        self.chords = tuple(chords)
        self.entries: dict[tuple[str, str], int] = {}
        for key, value in (entries or {}).items():
            v = value % p
            if v:
                self.entries[key] = v

    @property
    def is_zero(self) -> bool:
        return not self.entries

    def entry(self, out: str, inp: str) -> int:
        return self.entries.get((out, inp), 0)

    def compose(self, other: "ChordMap") -> "ChordMap":
        require_same_field(self.p, other.p)
        acc: dict[tuple[str, str], int] = {}
        by_input: dict[str, list[tuple[str, int]]] = {}
        for (out, mid), c in self.entries.items():
            by_input.setdefault(mid, []).append((out, c))
        for (mid, inp), c2 in other.entries.items():
            for out, c1 in by_input.get(mid, ()):
                key = (out, inp)
                acc[key] = (acc.get(key, 0) + c1 * c2) % self.p
        return ChordMap(self.p, self.chords, acc)

    def nonzero_entries(self) -> list[tuple[str, str, int]]:
        return sorted((out, inp, c) for (out, inp), c in self.entries.items())

    def __eq__(self, other) -> bool:
        return (isinstance(other, ChordMap) and self.p == other.p
                and self.entries == other.entries)

    __hash__ = None

    def __repr__(self) -> str:
        return f"ChordMap(p={self.p}, entries={self.nonzero_entries()!r})"


def deformed_differential(table: StripCountTable, b0: BoundingCochain,
                          b1: BoundingCochain) -> ChordMap:
    """Differential twisted by a cochain on each Lagrangian: the (out, in)
    entry is the sum over stored decorated strips of
    count * product of bottom weights * product of top weights."""
    require_same_field(table.p, b0.p)
    require_same_field(table.p, b1.p)
    for name in sorted(b0.coefficients):
        if name not in table.dp_bottom:
            raise SupportError(f"bottom cochain supported on {name!r}, "
                               "not a bottom double point")
    for name in sorted(b1.coefficients):
        if name not in table.dp_top:
            raise SupportError(f"top cochain supported on {name!r}, "
                               "not a top double point")
    p = table.p
    acc: dict[tuple[str, str], int] = {}
    for (c_out, c_in, bw, tw), coeff in table.counts.items():
        weight = coeff
        for name in bw:
            v = b0.coefficient(name)
            if not v:
                weight = 0
                break
            weight = weight * v % p
        if weight:
            for name in tw:
                v = b1.coefficient(name)
                if not v:
                    weight = 0
                    break
                weight = weight * v % p
        if weight:
            key = (c_out, c_in)
            acc[key] = (acc.get(key, 0) + weight) % p
    return ChordMap(p, sorted(table.chords), acc)


def check_squared_zero(table: StripCountTable, b0: BoundingCochain,
                       b1: BoundingCochain) -> ValidationReport:
    """Diagnostic: does the twisted differential square to zero?  This is a
    consequence of geometric consistency, not an invariant of arbitrary
    user-supplied tables."""
    report = ValidationReport()
    m = deformed_differential(table, b0, b1)
    square = m.compose(m)
    for out, inp, coeff in square.nonzero_entries():
        report.add("squared", f"({out}, {inp})",
                   f"square of the twisted differential has entry {coeff}")
    return report
