"""Combinatorial models of disk trees and broken strip trajectories.

Configurations carry only degrees, actions, and incidence.  Edges joining
disk components are constant: the two endpoints of a matched edge carry the
same generator.  "Rigid" is purely the per-component degree identity
(2 - n for a disk with n inputs, 1 - n for a strip with n marked points).
The ledgers verify the telescoping identities obtained by summing the
per-component identities; the verdicts derive, never assume, the forced
single-component conclusions; and the exhaustive searches look for
counterexamples inside stated bounds.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, asdict
from fractions import Fraction

from .dga import Generator, GeneratorKind


class ConfigError(ValueError):
    """Malformed configuration: bad incidence, mismatched generators, or a
    component that is not rigid where rigidity is required."""


class BoundsTooLargeError(ValueError):
    def __init__(self, estimate: int, limit: int):
        super().__init__(f"estimated {estimate} configurations exceed the limit {limit}")
        self.estimate = estimate
        self.limit = limit


# -- disk trees ---------------------------------------------------------------


@dataclass(frozen=True)
class DiskComponent:
    """One disk: an output generator and an ordered tuple of inputs."""

    output: Generator
    inputs: tuple[Generator, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "inputs", tuple(self.inputs))

    def energy(self) -> Fraction:
        return self.output.action - sum((g.action for g in self.inputs), Fraction(0))

    def is_rigid(self) -> bool:
        return (self.output.degree - sum(g.degree for g in self.inputs)
                == 2 - len(self.inputs))


@dataclass(frozen=True)
class PearlyTreeConfig:
    """Rooted tree of disks.  An edge (src, dst, slot) plugs the output of
    disk ``src`` into input slot ``slot`` of disk ``dst``; matched ends carry
    the same generator.  With no disks at all the configuration is a single
    constant edge at ``edge_generator``."""

    disks: tuple[DiskComponent, ...] = ()
    edges: tuple[tuple[int, int, int], ...] = ()
    edge_generator: Generator | None = None

    def __post_init__(self):
        object.__setattr__(self, "disks", tuple(self.disks))
        object.__setattr__(self, "edges", tuple(self.edges))
        m = len(self.disks)
        if m == 0:
            if self.edges:
                raise ConfigError("edges given without disks")
            if self.edge_generator is None:
                raise ConfigError("a diskless tree needs its edge generator")
            return
        if len(self.edges) != m - 1:
            raise ConfigError(f"{m} disks require {m - 1} edges, got {len(self.edges)}")
        sources = set()
        slots = set()
        for src, dst, slot in self.edges:
            if not (0 <= src < m and 0 <= dst < m) or src == dst:
                raise ConfigError(f"edge ({src}, {dst}, {slot}) out of range")
            if not 0 <= slot < len(self.disks[dst].inputs):
                raise ConfigError(f"edge into disk {dst} uses missing slot {slot}")
            if src in sources:
                raise ConfigError(f"disk {src} output matched twice")
            if (dst, slot) in slots:
                raise ConfigError(f"input slot ({dst}, {slot}) matched twice")
            sources.add(src)
            slots.add((dst, slot))
            if self.disks[src].output != self.disks[dst].inputs[slot]:
                raise ConfigError(
                    f"edge ({src}, {dst}, {slot}) joins distinct generators "
                    f"{self.disks[src].output.name!r} and "
                    f"{self.disks[dst].inputs[slot].name!r}")
        roots = [i for i in range(m) if i not in sources]
        if len(roots) != 1:
            raise ConfigError(f"expected a single root, found {roots}")
        children: dict[int, list[int]] = {}
        for src, dst, _ in self.edges:
            children.setdefault(dst, []).append(src)
        seen = {roots[0]}
        queue = [roots[0]]
        while queue:
            node = queue.pop()
            for child in children.get(node, ()):
                if child not in seen:
                    seen.add(child)
                    queue.append(child)
        if len(seen) != m:
            raise ConfigError("tree incidence is not connected")
        object.__setattr__(self, "_root", roots[0])
        object.__setattr__(self, "_children", children)

    @property
    def disk_count(self) -> int:
        return len(self.disks)

    def root_output(self) -> Generator:
        if not self.disks:
            return self.edge_generator
        return self.disks[self._root].output

    def external_inputs(self) -> list[Generator]:
        if not self.disks:
            return [self.edge_generator]
        matched = {(dst, slot) for _, dst, slot in self.edges}
        out = []
        for i, disk in enumerate(self.disks):
            for s, gen in enumerate(disk.inputs):
                if (i, s) not in matched:
                    out.append(gen)
        return out

    def all_generators(self) -> list[Generator]:
        if not self.disks:
            return [self.edge_generator]
        out = []
        for disk in self.disks:
            out.append(disk.output)
            out.extend(disk.inputs)
        return out


@dataclass(frozen=True)
class TreeLedger:
    m: int
    k: int
    lhs: int
    rhs: int
    telescoped: bool


def tree_ledger(tree: PearlyTreeConfig) -> TreeLedger:
    """Degree ledger: lhs = deg(root) - sum deg(external inputs) against
    rhs = m + 1 - k.  An exact combinatorial identity whenever every disk is
    rigid and matched edges agree (the internal generators cancel)."""
    for i, disk in enumerate(tree.disks):
        if not disk.is_rigid():
            raise ConfigError(f"disk {i} is not rigid")
    externals = tree.external_inputs()
    lhs = tree.root_output().degree - sum(g.degree for g in externals)
    m, k = tree.disk_count, len(externals)
    rhs = m + 1 - k
    return TreeLedger(m, k, lhs, rhs, lhs == rhs)


@dataclass(frozen=True)
class TreeVerdict:
    hypotheses_ok: bool
    hypothesis_violations: tuple[str, ...]
    positivity_propagates: bool | None = None
    output_action_positive: bool | None = None
    ledger: TreeLedger | None = None
    global_constraint_applied: bool = True
    global_constraint_satisfied: bool | None = None
    forced_disk_count: int | None = None
    single_disk: bool | None = None


def tree_verdict(tree: PearlyTreeConfig, require_global_constraint: bool = True
                 ) -> TreeVerdict:
    """Run the degeneration argument on one configuration.

    Hypotheses: positive-action double-point external inputs, every disk
    rigid and nonconstant with strictly positive energy, at least one disk.
    Conclusions are derived: positivity propagates leaf-to-root through the
    strict energy inequalities, and under the global degree constraint
    (lhs = 2 - k) the ledger forces a single disk component.
    """
    violations: list[str] = []
    for gen in tree.external_inputs():
        if gen.kind is not GeneratorKind.DOUBLE_POINT_POS or gen.action <= 0:
            violations.append(
                f"external input {gen.name!r} is not a positive-action double point")
    if tree.disk_count == 0:
        violations.append("no disk components (single constant edge)")
    for i, disk in enumerate(tree.disks):
        if not disk.is_rigid():
            violations.append(f"disk {i} is not rigid")
        if disk.energy() <= 0:
            violations.append(f"disk {i} has nonpositive energy {disk.energy()}")
    if violations:
        return TreeVerdict(False, tuple(violations),
                           global_constraint_applied=require_global_constraint)

    # leaf-to-root sweep: every disk whose inputs are all positive has
    # positive output by the strict energy inequality
    order: list[int] = []
    stack = [tree._root]
    while stack:
        node = stack.pop()
        order.append(node)
        stack.extend(tree._children.get(node, ()))
    positive = True
    for node in reversed(order):
        disk = tree.disks[node]
        if any(g.action <= 0 for g in disk.inputs) or disk.output.action <= 0:
            positive = False
    ledger = tree_ledger(tree)
    satisfied = None
    forced = None
    single = None
    if require_global_constraint:
        satisfied = ledger.lhs == 2 - ledger.k
        if satisfied:
            forced = ledger.lhs - 1 + ledger.k  # = m by the ledger identity
            single = forced == 1 and ledger.m == forced
    return TreeVerdict(True, (), positive, tree.root_output().action > 0,
                       ledger, require_global_constraint, satisfied, forced, single)


# -- broken trajectories ------------------------------------------------------


@dataclass(frozen=True)
class StripComponent:
    """One strip: input and output chords plus ordered boundary marked
    generators on the bottom and top sides."""

    output_chord: Generator
    input_chord: Generator
    bottom_marked: tuple[Generator, ...] = ()
    top_marked: tuple[Generator, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "bottom_marked", tuple(self.bottom_marked))
        object.__setattr__(self, "top_marked", tuple(self.top_marked))

    def marked(self) -> tuple[Generator, ...]:
        return self.bottom_marked + self.top_marked

    def is_rigid(self) -> bool:
        marked = self.marked()
        return (self.output_chord.degree - self.input_chord.degree
                - sum(g.degree for g in marked) == 1 - len(marked))


@dataclass(frozen=True)
class BrokenTrajectoryConfig:
    """A chain of strips with matching break chords, optionally decorated by
    single disks attached at marked points: (strip index, position, disk),
    with the disk output equal to the marked generator."""

    strips: tuple[StripComponent, ...]
    bottom_disks: tuple[tuple[int, int, DiskComponent], ...] = ()
    top_disks: tuple[tuple[int, int, DiskComponent], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "strips", tuple(self.strips))
        object.__setattr__(self, "bottom_disks", tuple(self.bottom_disks))
        object.__setattr__(self, "top_disks", tuple(self.top_disks))
        if not self.strips:
            raise ConfigError("a trajectory needs at least one strip")
        for nu in range(len(self.strips) - 1):
            left, right = self.strips[nu], self.strips[nu + 1]
            if left.output_chord != right.input_chord:
                raise ConfigError(
                    f"break mismatch between strips {nu} and {nu + 1}: "
                    f"{left.output_chord.name!r} vs {right.input_chord.name!r}")
        for side, attachments in (("bottom", self.bottom_disks),
                                  ("top", self.top_disks)):
            used = set()
            for strip_idx, pos, disk in attachments:
                if not 0 <= strip_idx < len(self.strips):
                    raise ConfigError(f"attachment on missing strip {strip_idx}")
                marked = (self.strips[strip_idx].bottom_marked if side == "bottom"
                          else self.strips[strip_idx].top_marked)
                if not 0 <= pos < len(marked):
                    raise ConfigError(
                        f"attachment at missing {side} position {pos} of strip {strip_idx}")
                if (strip_idx, pos) in used:
                    raise ConfigError(
                        f"{side} position {pos} of strip {strip_idx} attached twice")
                used.add((strip_idx, pos))
                if disk.output != marked[pos]:
                    raise ConfigError(
                        f"disk output {disk.output.name!r} does not match marked "
                        f"generator {marked[pos].name!r}")

    @property
    def strip_count(self) -> int:
        return len(self.strips)

    def input_chord(self) -> Generator:
        return self.strips[0].input_chord

    def output_chord(self) -> Generator:
        return self.strips[-1].output_chord

    def _externals(self, side: str) -> list[Generator]:
        attachments = {(s, p): d for s, p, d in
                       (self.bottom_disks if side == "bottom" else self.top_disks)}
        out: list[Generator] = []
        for idx, strip in enumerate(self.strips):
            marked = strip.bottom_marked if side == "bottom" else strip.top_marked
            for pos, gen in enumerate(marked):
                disk = attachments.get((idx, pos))
                if disk is None:
                    out.append(gen)
                else:
                    out.extend(disk.inputs)
        return out

    def bottom_inputs(self) -> list[Generator]:
        return self._externals("bottom")

    def top_inputs(self) -> list[Generator]:
        return self._externals("top")


@dataclass(frozen=True)
class TrajectoryLedger:
    M: int
    K: int
    m0: int
    m1: int
    k: int
    l: int
    lhs: int
    rhs: int
    telescoped: bool


def trajectory_ledger(traj: BrokenTrajectoryConfig) -> TrajectoryLedger:
    """Degree ledger for a broken trajectory: lhs = deg(out) - deg(in) -
    sum of external degrees against rhs = M - k - l with M the total
    component count.  Exact whenever every component is rigid and the
    matching rules hold."""
    for nu, strip in enumerate(traj.strips):
        if not strip.is_rigid():
            raise ConfigError(f"strip {nu} is not rigid")
    for _, _, disk in traj.bottom_disks + traj.top_disks:
        if not disk.is_rigid():
            raise ConfigError(f"attached disk at {disk.output.name!r} is not rigid")
    bottom = traj.bottom_inputs()
    top = traj.top_inputs()
    K = traj.strip_count
    m0, m1 = len(traj.bottom_disks), len(traj.top_disks)
    M = K + m0 + m1
    k, l = len(bottom), len(top)
    lhs = (traj.output_chord().degree - traj.input_chord().degree
           - sum(g.degree for g in bottom) - sum(g.degree for g in top))
    rhs = M - k - l
    return TrajectoryLedger(M, K, m0, m1, k, l, lhs, rhs, lhs == rhs)


@dataclass(frozen=True)
class TrajectoryVerdict:
    hypotheses_ok: bool
    hypothesis_violations: tuple[str, ...]
    ledger: TrajectoryLedger | None = None
    global_constraint_satisfied: bool | None = None
    forced_component_count: int | None = None
    unbroken: bool | None = None
    no_attached_disks: bool | None = None


def trajectory_verdict(traj: BrokenTrajectoryConfig) -> TrajectoryVerdict:
    """Under the global rigid degree constraint (lhs = 1 - k - l) the ledger
    forces M = 1, hence a single strip and no attached disks; both
    conclusions are derived from the arithmetic, never assumed."""
    violations: list[str] = []
    for gen in traj.bottom_inputs() + traj.top_inputs():
        if gen.kind is not GeneratorKind.DOUBLE_POINT_POS or gen.action <= 0:
            violations.append(
                f"external generator {gen.name!r} is not a positive-action double point")
    for nu, strip in enumerate(traj.strips):
        if not strip.is_rigid():
            violations.append(f"strip {nu} is not rigid")
    for _, _, disk in traj.bottom_disks + traj.top_disks:
        if not disk.is_rigid():
            violations.append(f"attached disk at {disk.output.name!r} is not rigid")
    if violations:
        return TrajectoryVerdict(False, tuple(violations))
    ledger = trajectory_ledger(traj)
    satisfied = ledger.lhs == 1 - ledger.k - ledger.l
    forced = None
    unbroken = None
    bare = None
    if satisfied:
        forced = ledger.lhs + ledger.k + ledger.l  # = M by the ledger identity
        unbroken = forced == 1 and ledger.K == 1
        bare = ledger.m0 == 0 and ledger.m1 == 0
    return TrajectoryVerdict(True, (), ledger, satisfied, forced, unbroken, bare)


# -- exhaustive searches ------------------------------------------------------


@dataclass(frozen=True)
class TreeSearchBounds:
    max_disks: int = 4
    max_inputs_per_disk: int = 3
    degree_range: tuple[int, int] = (-3, 4)
    max_configs: int = 50_000_000
    materialize_stride: int = 20_000


@dataclass(frozen=True)
class TrajectorySearchBounds:
    max_strips: int = 3
    max_marked_per_strip: int = 2
    max_total_marked: int = 3
    max_attached_disks: int = 2
    max_inputs_per_disk: int = 2
    degree_range: tuple[int, int] = (-3, 4)
    max_configs: int = 50_000_000
    materialize_stride: int = 20_000


@dataclass
class CounterexampleReport:
    mode: str
    bounds: dict
    estimated_configs: int
    enumerated: int = 0
    telescope_failures: int = 0
    materialized: int = 0
    counterexamples: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples and self.telescope_failures == 0


def _distribute(total: int, count: int, lo: int, hi: int) -> list[int]:
    """Concrete values in [lo, hi] summing to a feasible total."""
    vals = [lo] * count
    rem = total - lo * count
    idx = 0
    while rem > 0:
        step = min(hi - lo, rem)
        vals[idx] += step
        rem -= step
        idx += 1
    return vals


def _tree_structures(max_disks: int, max_inputs: int):
    """All rooted-tree shapes with external slot counts.  Disk 0 is the
    root; parents precede children, which enumerates every shape up to the
    relabeling the degree assignment already quantifies over."""
    for m in range(1, max_disks + 1):
        for parents in itertools.product(*[range(i) for i in range(1, m)]):
            child_counts = [0] * m
            for parent in parents:
                child_counts[parent] += 1
            if any(c > max_inputs for c in child_counts):
                continue
            extras_ranges = [range(max_inputs - c + 1) for c in child_counts]
            for extras in itertools.product(*extras_ranges):
                yield m, parents, tuple(child_counts), extras


def _estimate_trees(bounds: TreeSearchBounds) -> int:
    lo, hi = bounds.degree_range
    span = hi - lo
    total = 0
    for _, _, _, extras in _tree_structures(bounds.max_disks,
                                            bounds.max_inputs_per_disk):
        prod = 1
        for e in extras:
            prod *= span * e + 1
        total += prod
    return total


def _materialize_tree(m, parents, child_counts, extras, sums, out_degs, lo, hi
                      ) -> PearlyTreeConfig:
    children: dict[int, list[int]] = {}
    for child in range(1, m):
        children.setdefault(parents[child - 1], []).append(child)
    ext_degs = {i: _distribute(sums[i], extras[i], lo, hi) for i in range(m)}

    outputs: dict[int, Generator] = {}
    disks: list[DiskComponent] = []
    edges: list[tuple[int, int, int]] = []
    ext_gens: dict[int, list[Generator]] = {}
    for i in range(m - 1, -1, -1):
        ext_gens[i] = [
            Generator(f"x{i}_{s}", d, Fraction(1), GeneratorKind.DOUBLE_POINT_POS)
            for s, d in enumerate(ext_degs[i])]
        action = sum((outputs[c].action for c in children.get(i, ())), Fraction(0))
        action += sum((g.action for g in ext_gens[i]), Fraction(0)) + 1
        outputs[i] = Generator(f"v{i}", out_degs[i], action,
                               GeneratorKind.DOUBLE_POINT_POS)
    for i in range(m):
        inputs = [outputs[c] for c in children.get(i, ())] + ext_gens[i]
        disks.append(DiskComponent(outputs[i], tuple(inputs)))
        for slot, c in enumerate(children.get(i, ())):
            edges.append((c, i, slot))
    return PearlyTreeConfig(tuple(disks), tuple(edges))


def _search_trees(bounds: TreeSearchBounds) -> CounterexampleReport:
    lo, hi = bounds.degree_range
    estimate = _estimate_trees(bounds)
    if estimate > bounds.max_configs:
        raise BoundsTooLargeError(estimate, bounds.max_configs)
    report = CounterexampleReport("trees", asdict(bounds), estimate)
    for m, parents, child_counts, extras in _tree_structures(
            bounds.max_disks, bounds.max_inputs_per_disk):
        children: dict[int, list[int]] = {}
        for child in range(1, m):
            children.setdefault(parents[child - 1], []).append(child)
        sum_ranges = [range(lo * e, hi * e + 1) for e in extras]
        k = sum(extras)
        for sums in itertools.product(*sum_ranges):
            report.enumerated += 1
            out_degs = [0] * m
            in_range = True
            for i in range(m - 1, -1, -1):
                n_i = child_counts[i] + extras[i]
                out_degs[i] = (2 - n_i + sums[i]
                               + sum(out_degs[c] for c in children.get(i, ())))
                if not lo <= out_degs[i] <= hi:
                    in_range = False
                    break
            if not in_range:
                continue
            lhs = out_degs[0] - sum(sums)
            rhs = m + 1 - k
            if lhs != rhs:
                report.telescope_failures += 1
            if lhs == 2 - k and m >= 2:
                tree = _materialize_tree(m, parents, child_counts, extras,
                                         sums, out_degs, lo, hi)
                report.counterexamples.append({
                    "disks": m, "externals": k, "lhs": lhs,
                    "ledger": asdict(tree_ledger(tree))})
            elif report.enumerated % bounds.materialize_stride == 0:
                tree = _materialize_tree(m, parents, child_counts, extras,
                                         sums, out_degs, lo, hi)
                report.materialized += 1
                if not tree_ledger(tree).telescoped:
                    report.telescope_failures += 1
    return report


def _traj_structures(bounds: TrajectorySearchBounds):
    per_strip = [(nb, nt)
                 for nb in range(bounds.max_marked_per_strip + 1)
                 for nt in range(bounds.max_marked_per_strip + 1 - nb)]
    for K in range(1, bounds.max_strips + 1):
        for marks in itertools.product(per_strip, repeat=K):
            if sum(nb + nt for nb, nt in marks) > bounds.max_total_marked:
                continue
            points = [(s, side, pos)
                      for s, (nb, nt) in enumerate(marks)
                      for side, n in (("bottom", nb), ("top", nt))
                      for pos in range(n)]
            max_attach = min(bounds.max_attached_disks, len(points))
            for a_count in range(max_attach + 1):
                for attached in itertools.combinations(points, a_count):
                    for disk_inputs in itertools.product(
                            range(bounds.max_inputs_per_disk + 1), repeat=a_count):
                        yield K, marks, attached, disk_inputs


def _estimate_trajectories(bounds: TrajectorySearchBounds) -> int:
    lo, hi = bounds.degree_range
    span = hi - lo
    total = 0
    for K, marks, attached, disk_inputs in _traj_structures(bounds):
        attach_set = set(attached)
        prod = span + 1  # input chord degree
        for s, (nb, nt) in enumerate(marks):
            for side, n in (("bottom", nb), ("top", nt)):
                if n:
                    bare = sum(1 for pos in range(n)
                               if (s, side, pos) not in attach_set)
                    prod *= span * bare + 1
        for n in disk_inputs:
            d_lo, d_hi = 2 - n + lo * n, 2 - n + hi * n
            prod *= min(hi, d_hi) - max(lo, d_lo) + 1
        total += prod
    return total


def _materialize_trajectory(K, marks, attached, disk_inputs, c_in_deg,
                            bare_groups, bare_sums, disk_outs, lo, hi
                            ) -> BrokenTrajectoryConfig:
    """bare_groups pairs each bare-sum value with its (strip, side, count)."""
    attach_list = list(zip(attached, disk_inputs, disk_outs))
    bare_points: dict[tuple[int, str], list[int]] = {}
    for (s, side, bare), total in zip(bare_groups, bare_sums):
        if bare:
            bare_points[(s, side)] = _distribute(total, bare, lo, hi)
    disks_at: dict[tuple[int, str, int], DiskComponent] = {}
    for (point, n, out_deg) in attach_list:
        s_deg = out_deg - 2 + n
        in_degs = _distribute(s_deg, n, lo, hi)
        inputs = tuple(Generator(f"di{point[0]}_{point[2]}_{t}", d, Fraction(1),
                                 GeneratorKind.DOUBLE_POINT_POS)
                       for t, d in enumerate(in_degs))
        out_action = sum((g.action for g in inputs), Fraction(0)) + 1
        output = Generator(f"do{point[0]}_{point[1]}_{point[2]}", out_deg,
                           out_action, GeneratorKind.DOUBLE_POINT_POS)
        disks_at[point] = DiskComponent(output, inputs)

    strips = []
    chord_deg = c_in_deg
    prev_chord = Generator("q0", chord_deg, Fraction(1), GeneratorKind.MIXED_CHORD)
    bottom_attach = []
    top_attach = []
    for s, (nb, nt) in enumerate(marks):
        sides: dict[str, list[Generator]] = {}
        for side, n in (("bottom", nb), ("top", nt)):
            gens = []
            bare_vals = list(bare_points.get((s, side), ()))
            for pos in range(n):
                point = (s, side, pos)
                if point in disks_at:
                    gens.append(disks_at[point].output)
                    target = bottom_attach if side == "bottom" else top_attach
                    target.append((s, pos, disks_at[point]))
                else:
                    gens.append(Generator(f"m{s}_{side}_{pos}", bare_vals.pop(0),
                                          Fraction(1), GeneratorKind.DOUBLE_POINT_POS))
            sides[side] = gens
        marked_total = sum(g.degree for g in sides["bottom"] + sides["top"])
        chord_deg = chord_deg + 1 - (nb + nt) + marked_total
        next_chord = Generator(f"q{s + 1}", chord_deg, Fraction(1),
                               GeneratorKind.MIXED_CHORD)
        strips.append(StripComponent(next_chord, prev_chord,
                                     tuple(sides["bottom"]), tuple(sides["top"])))
        prev_chord = next_chord
    return BrokenTrajectoryConfig(tuple(strips), tuple(bottom_attach),
                                  tuple(top_attach))


def _search_trajectories(bounds: TrajectorySearchBounds) -> CounterexampleReport:
    lo, hi = bounds.degree_range
    estimate = _estimate_trajectories(bounds)
    if estimate > bounds.max_configs:
        raise BoundsTooLargeError(estimate, bounds.max_configs)
    report = CounterexampleReport("trajectories", asdict(bounds), estimate)
    for K, marks, attached, disk_inputs in _traj_structures(bounds):
        attach_set = set(attached)
        bare_ranges = []
        for s, (nb, nt) in enumerate(marks):
            for side, n in (("bottom", nb), ("top", nt)):
                bare = sum(1 for pos in range(n) if (s, side, pos) not in attach_set)
                if n:
                    bare_ranges.append((s, side, bare, range(lo * bare, hi * bare + 1)))
        bare_groups = [(s, side, bare) for (s, side, bare, _r) in bare_ranges]
        disk_ranges = []
        for n in disk_inputs:
            d_lo, d_hi = 2 - n + lo * n, 2 - n + hi * n
            disk_ranges.append(range(max(lo, d_lo), min(hi, d_hi) + 1))
        marked_counts = [nb + nt for nb, nt in marks]
        total_marked = sum(marked_counts)
        a_count = len(attached)
        M = K + a_count
        k_plus_l = (total_marked - a_count) + sum(disk_inputs)
        for c_in_deg in range(lo, hi + 1):
            for bare_sums in itertools.product(*[r for (_, _, _, r) in bare_ranges]):
                for disk_outs in itertools.product(*disk_ranges):
                    report.enumerated += 1
                    # chord chain degrees, strip by strip
                    per_strip_sum = {}
                    idx = 0
                    for (s, side, bare, _r) in bare_ranges:
                        per_strip_sum[s] = per_strip_sum.get(s, 0) + bare_sums[idx]
                        idx += 1
                    for (point, out_deg) in zip(attached, disk_outs):
                        per_strip_sum[point[0]] = per_strip_sum.get(point[0], 0) + out_deg
                    chord = c_in_deg
                    in_range = True
                    for s in range(K):
                        chord = chord + 1 - marked_counts[s] + per_strip_sum.get(s, 0)
                        if not lo <= chord <= hi:
                            in_range = False
                            break
                    if not in_range:
                        continue
                    ext_sum = (sum(bare_sums)
                               + sum(out - 2 + n for out, n in zip(disk_outs, disk_inputs)))
                    lhs = chord - c_in_deg - ext_sum
                    rhs = M - k_plus_l
                    if lhs != rhs:
                        report.telescope_failures += 1
                    if lhs == 1 - k_plus_l and M >= 2:
                        traj = _materialize_trajectory(
                            K, marks, attached, disk_inputs, c_in_deg,
                            bare_groups, bare_sums, disk_outs, lo, hi)
                        report.counterexamples.append({
                            "strips": K, "attached": a_count,
                            "ledger": asdict(trajectory_ledger(traj))})
                    elif report.enumerated % bounds.materialize_stride == 0:
                        traj = _materialize_trajectory(
                            K, marks, attached, disk_inputs, c_in_deg,
                            bare_groups, bare_sums, disk_outs, lo, hi)
                        report.materialized += 1
                        if not trajectory_ledger(traj).telescoped:
                            report.telescope_failures += 1
    return report


def exhaustive_search(bounds) -> CounterexampleReport:
    """Enumerate every configuration inside the bounds and report any that
    satisfies all hypotheses with two or more components.

    Degree assignments are enumerated through per-group sums: every checked
    quantity (per-component rigidity, derived degrees, the ledgers, the
    global constraint) depends on external degrees only through those sums,
    and each sum value in range is realizable, so the reduction is complete
    for the counterexample question.  A sampled stride of configurations is
    additionally materialized and pushed through the full ledger objects.
    """
    if isinstance(bounds, TreeSearchBounds):
        return _search_trees(bounds)
    if isinstance(bounds, TrajectorySearchBounds):
        return _search_trajectories(bounds)
    raise TypeError(f"unsupported bounds {bounds!r}")
