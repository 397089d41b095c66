"""Symmetry-reduced colouring problems.

Under a coordinate-permutation group, edges in one orbit must share a
colour, so each edge orbit becomes one variable and every coplanar quad
becomes a constraint "these variables must not all be equal" on the set of
orbits its 6 edges hit (1 <= nu <= 6 distinct variables).

Constraint sets are deduplicated and then normalised to a fixpoint with
three reduction rules:

  R1  a constraint on a single variable is unsatisfiable (the edge would
      need both colours): the problem is infeasible;
  R2  two 2-variable constraints {a,b} and {b,c} both say "differs from b",
      forcing a = c: merge the variables and rewrite everything;
  R3  a constraint implies any superset constraint: drop the superset.

One normalisation round is: dedupe, scan R1, apply all R2 merges available
from the current 2-variable constraints, rewrite through the merges, then
one R3 sweep.  Rounds repeat until nothing changes.  Rewriting can shrink
constraints, so later rounds may find new rule applications.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import cube
from .colourings import Colouring
from .groups import GroupSpec, OrbitMap, edge_orbits

# accumulated distinct constraint rows above this raise MemoryBudgetError
DEFAULT_MAX_ROWS = 64_000_000


class MemoryBudgetError(MemoryError):
    """Constraint system would exceed the configured memory budget."""


@dataclass
class MergeEvent:
    """One R2 merge: kept and absorbed variable (orbit ids) and the pivot
    variable of the two pair constraints that forced it."""

    kept: int
    absorbed: int
    pivot: int


@dataclass
class QuotientProblem:
    """Reduced constraint system over edge-orbit variables."""

    n: int
    group_name: str
    variable_count: int
    con_vars: np.ndarray  # int32, concatenated sorted variable ids
    con_off: np.ndarray  # int64, length n_constraints+1
    con_nu: np.ndarray  # int8, constraint sizes
    profile: tuple[int, int, int, int, int, int]  # counts by nu=1..6
    raw_profile: tuple[int, int, int, int, int, int]  # before normalisation
    infeasible: bool
    edge_to_var: np.ndarray  # int32, length n_E
    orbit_count: int  # raw edge-orbit count before merging
    merges: list[MergeEvent] = field(default_factory=list)

    @property
    def n_constraints(self) -> int:
        return len(self.con_nu)

    def constraint(self, i: int) -> tuple[int, ...]:
        return tuple(int(x) for x in self.con_vars[self.con_off[i] : self.con_off[i + 1]])

    def iter_constraints(self):
        for i in range(self.n_constraints):
            yield self.constraint(i)

    def dumps(self, limit: int | None = None) -> str:
        head = (
            f"n={self.n} group={self.group_name} vars={self.variable_count}"
            f" infeasible={1 if self.infeasible else 0}"
        )
        count = self.n_constraints if limit is None else min(limit, self.n_constraints)
        lines = [head]
        for i in range(count):
            lines.append(" ".join(str(v) for v in self.constraint(i)))
        return "\n".join(lines) + "\n"

    def dump(self, path) -> None:
        with open(path, "w") as fh:
            fh.write(
                f"n={self.n} group={self.group_name} vars={self.variable_count}"
                f" infeasible={1 if self.infeasible else 0}\n"
            )
            off = self.con_off
            for i in range(self.n_constraints):
                fh.write(" ".join(str(v) for v in self.con_vars[off[i] : off[i + 1]]))
                fh.write("\n")


class _UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, x: int) -> int:
        p = self.parent
        root = x
        while p[root] != root:
            root = p[root]
        while p[x] != root:
            p[x], x = root, p[x]
        return root

    def union(self, a: int, b: int) -> bool:
        """Merge, keeping the smaller id as representative."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


def _profile_of(constraints) -> tuple[int, int, int, int, int, int]:
    counts = [0] * 6
    for c in constraints:
        counts[len(c) - 1] += 1
    return tuple(counts)


def normalize_constraints(
    constraints, n_orbits: int
) -> tuple[set[tuple[int, ...]], _UnionFind, list[MergeEvent], bool]:
    """Run R1/R2/R3 to fixpoint on variable-set constraints.

    Input constraints are iterables of orbit ids (duplicates tolerated).
    Returns the final constraint set (over merge representatives), the
    union-find of merges, the merge ledger, and the infeasibility flag.
    """
    cons = {tuple(sorted(set(c))) for c in constraints}
    uf = _UnionFind(n_orbits)
    merges: list[MergeEvent] = []
    infeasible = False
    changed = True
    while changed:
        changed = False
        cons = {tuple(sorted({uf.find(x) for x in c})) for c in cons}
        if any(len(c) == 1 for c in cons):
            infeasible = True
        # R2: group pair constraints by variable, merge all partners
        partners: dict[int, list[int]] = defaultdict(list)
        for c in cons:
            if len(c) == 2:
                partners[c[0]].append(c[1])
                partners[c[1]].append(c[0])
        merged_any = False
        for pivot, others in sorted(partners.items()):
            first = others[0]
            for other in others[1:]:
                if uf.union(first, other):
                    merges.append(
                        MergeEvent(uf.find(first), max(first, other), pivot)
                    )
                    merged_any = True
        if merged_any:
            cons = {tuple(sorted({uf.find(x) for x in c})) for c in cons}
            if any(len(c) == 1 for c in cons):
                infeasible = True
            changed = True
        # R3: drop supersets of any strictly smaller constraint
        kept: set[tuple[int, ...]] = set()
        sizes_present: set[int] = set()
        for c in sorted(cons, key=lambda t: (len(t), t)):
            subsumed = False
            for k in sorted(sizes_present):
                if k >= len(c):
                    break
                for sub in combinations(c, k):
                    if sub in kept:
                        subsumed = True
                        break
                if subsumed:
                    break
            if not subsumed:
                kept.add(c)
                sizes_present.add(len(c))
        if len(kept) != len(cons):
            changed = True
        cons = kept
    return cons, uf, merges, infeasible


def _stream_constraint_rows(
    n: int,
    orbit_lut: np.ndarray,
    batch_cap: int,
    max_rows: int,
    skip_unique: bool,
) -> np.ndarray:
    """All distinct sorted 6-column orbit-id rows over the quad stream."""
    pending: list[np.ndarray] = []
    pending_rows = 0
    uniq: np.ndarray | None = None

    def reduce_pending():
        nonlocal uniq, pending, pending_rows
        arrs = ([uniq] if uniq is not None else []) + pending
        combined = np.concatenate(arrs) if len(arrs) > 1 else arrs[0]
        uniq = combined if skip_unique else np.unique(combined, axis=0)
        if len(uniq) > max_rows:
            raise MemoryBudgetError(
                f"constraint accumulation for n={n} exceeded {max_rows} distinct"
                f" rows ({len(uniq)}); raise the max_rows budget to proceed"
            )
        pending = []
        pending_rows = 0

    for p, q, r, s in cube.iter_quad_vertex_batches(n, batch_cap=batch_cap):
        rows = orbit_lut[cube.quad_edge_columns(p, q, r, s)]
        rows.sort(axis=1)
        pending.append(rows)
        pending_rows += len(rows)
        if pending_rows >= 2 * batch_cap:
            reduce_pending()
    if pending or uniq is None:
        if not pending:
            return np.empty((0, 6), dtype=np.int32)
        reduce_pending()
    return uniq


def build_quotient(
    n: int,
    group: GroupSpec,
    *,
    batch_cap: int = 1 << 22,
    max_rows: int = DEFAULT_MAX_ROWS,
    orbit_map: OrbitMap | None = None,
) -> QuotientProblem:
    """Build and normalise the symmetry-reduced problem for one group.

    Streams all coplanar quads in bounded-memory batches; raises
    MemoryBudgetError (with the offending counts) rather than exhausting
    memory when the constraint system itself is too large to hold.
    """
    if group.degree != n:
        raise ValueError(f"group degree {group.degree} != n={n}")
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    om = orbit_map if orbit_map is not None else edge_orbits(n, group)
    identity = group.is_identity_group()
    if identity:
        est = cube.quad_count(n)
        if est > max_rows:
            raise MemoryBudgetError(
                f"identity problem at n={n} has {est} constraints, over the"
                f" {max_rows}-row budget; use the closed-form profile instead"
            )
    # distinct raw rows (sorted, multiplicities still distinguish rows);
    # identity rows are provably distinct, so uniqueness passes are skipped
    rows = _stream_constraint_rows(n, om.orbit_of_edge, batch_cap, max_rows, identity)

    if identity:
        m = len(rows)
        con_vars = rows.reshape(-1)
        con_off = np.arange(0, 6 * m + 1, 6, dtype=np.int64)
        con_nu = np.full(m, 6, dtype=np.int8)
        profile = (0, 0, 0, 0, 0, m)
        return QuotientProblem(
            n=n,
            group_name=group.name,
            variable_count=om.n_orbits,
            con_vars=con_vars,
            con_off=con_off,
            con_nu=con_nu,
            profile=profile,
            raw_profile=profile,
            infeasible=False,
            edge_to_var=om.orbit_of_edge,
            orbit_count=om.n_orbits,
        )

    # collapse multiplicity-variant rows to variable sets
    raw_sets: set[tuple[int, ...]] = set()
    for row in rows.tolist():
        prev = -1
        out = []
        for x in row:
            if x != prev:
                out.append(x)
                prev = x
        raw_sets.add(tuple(out))
    del rows
    raw_profile = _profile_of(raw_sets)

    cons, uf, merges, infeasible = normalize_constraints(raw_sets, om.n_orbits)

    # dense variable ids: merge classes ranked by their minimum orbit id
    # (orbit ids are already ordered by minimum edge id)
    find_arr = np.fromiter(
        (uf.find(o) for o in range(om.n_orbits)), dtype=np.int64, count=om.n_orbits
    )
    reps = np.unique(find_arr)
    rank = np.full(om.n_orbits, -1, dtype=np.int64)
    rank[reps] = np.arange(len(reps))
    var_of_orbit = rank[find_arr]
    edge_to_var = var_of_orbit[om.orbit_of_edge].astype(np.int32)

    final = sorted(
        (tuple(sorted(int(var_of_orbit[x]) for x in c)) for c in cons),
        key=lambda t: (len(t), t),
    )
    con_nu = np.fromiter((len(c) for c in final), dtype=np.int8, count=len(final))
    con_off = np.zeros(len(final) + 1, dtype=np.int64)
    np.cumsum(con_nu, out=con_off[1:])
    con_vars = np.fromiter(
        (v for c in final for v in c), dtype=np.int32, count=int(con_off[-1])
    )
    return QuotientProblem(
        n=n,
        group_name=group.name,
        variable_count=len(reps),
        con_vars=con_vars,
        con_off=con_off,
        con_nu=con_nu,
        profile=_profile_of(final),
        raw_profile=raw_profile,
        infeasible=infeasible,
        edge_to_var=edge_to_var,
        orbit_count=om.n_orbits,
        merges=merges,
    )


def expand_assignment(qp: QuotientProblem, assignment: np.ndarray) -> Colouring:
    """Full edge colouring from a per-variable assignment.

    The result is invariant under the quotient's group by construction:
    edges in one orbit read the same variable.
    """
    if qp.infeasible:
        raise ValueError("cannot expand an assignment of an infeasible problem")
    assignment = np.asarray(assignment, dtype=np.uint8)
    if assignment.shape != (qp.variable_count,):
        raise ValueError(
            f"assignment length {assignment.shape} != variable count"
            f" {qp.variable_count}"
        )
    if assignment.max(initial=0) > 1:
        raise ValueError("assignment entries must be 0 or 1")
    return Colouring(qp.n, assignment[qp.edge_to_var])


def assignment_satisfies(qp: QuotientProblem, assignment: np.ndarray) -> bool:
    """True iff no constraint has all its variables equal."""
    assignment = np.asarray(assignment, dtype=np.uint8)
    vals = assignment[qp.con_vars]
    sums = np.add.reduceat(vals.astype(np.int64), qp.con_off[:-1])
    nu = qp.con_nu.astype(np.int64)
    violated = (sums == 0) | (sums == nu)
    return not bool(violated.any())


def violated_constraints(qp: QuotientProblem, assignment: np.ndarray) -> np.ndarray:
    """Indices of violated constraints under the assignment."""
    assignment = np.asarray(assignment, dtype=np.uint8)
    vals = assignment[qp.con_vars]
    sums = np.add.reduceat(vals.astype(np.int64), qp.con_off[:-1])
    nu = qp.con_nu.astype(np.int64)
    return np.nonzero((sums == 0) | (sums == nu))[0]
