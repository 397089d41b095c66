"""Difficulty estimates: fraction of colouring bits consumed by constraints.

Each violation-free constraint on nu variables admits (2^nu - 2)/2^nu of
the assignments to those variables, so under an independence assumption it
consumes -log2((2^nu - 2)/2^nu) bits of freedom.  The headline number n_F
is the consumed bits divided by the number of free variables, as a
percentage; a constraint on one variable admits nothing and renders the
problem infeasible (n_F infinite).

For the unreduced problem all constraints have nu = 6 and the count is the
closed-form quad count, giving n_F = -(n_K/n_E) * log2(31/32).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal

from .cube import count_row
from .quotient import QuotientProblem

PROFILE_NU = tuple(range(1, 7))


def bits_per_constraint(nu: int) -> float:
    """-log2((2^nu - 2) / 2^nu); infinite for nu = 1."""
    if not 1 <= nu <= 6:
        raise ValueError(f"constraint size out of range 1..6: {nu}")
    if nu == 1:
        return math.inf
    return -math.log2((2**nu - 2) / 2**nu)


def format_percent(value: float) -> str:
    """Three decimal places, round half-up, no % sign ('inf' when infinite)."""
    if math.isinf(value):
        return "inf"
    return str(Decimal(repr(value)).quantize(Decimal("0.001"), rounding=ROUND_HALF_UP))


@dataclass
class DifficultyRow:
    """One difficulty-table row: free variables, constraint profile, n_F."""

    label: str
    n: int
    variables: int
    profile: tuple[int, int, int, int, int, int]  # counts by nu = 1..6
    nf_percent: float
    n_quads: int | None = None  # closed-form quad count, naive rows only

    @property
    def infeasible(self) -> bool:
        return math.isinf(self.nf_percent)

    def machine_line(self) -> str:
        prof = ",".join(str(c) for c in self.profile)
        return (
            f"{self.label} {self.n} {self.variables} {prof}"
            f" {format_percent(self.nf_percent)}"
        )


def profile_nf(profile, variables: int) -> float:
    """Percentage of constrained bits for a nu=1..6 profile."""
    if variables <= 0:
        raise ValueError("variable count must be positive")
    if profile[0] > 0:
        return math.inf
    bits = sum(
        count * bits_per_constraint(nu)
        for nu, count in zip(PROFILE_NU, profile)
        if count
    )
    return 100.0 * bits / variables


def naive_row(n: int) -> DifficultyRow:
    """Unreduced-problem estimate from the closed-form edge and quad counts."""
    row = count_row(n)
    profile = (0, 0, 0, 0, 0, row.n_quads)
    return DifficultyRow(
        label="I",
        n=n,
        variables=row.n_edges,
        profile=profile,
        nf_percent=profile_nf(profile, row.n_edges),
        n_quads=row.n_quads,
    )


def quotient_nf(qp: QuotientProblem) -> DifficultyRow:
    """Difficulty row of a normalised quotient problem (inf if infeasible)."""
    nf = math.inf if qp.infeasible else profile_nf(qp.profile, qp.variable_count)
    return DifficultyRow(
        label=qp.group_name,
        n=qp.n,
        variables=qp.variable_count,
        profile=qp.profile,
        nf_percent=nf,
    )


def exact_fraction(n: int, solution_count: int) -> float:
    """Constrained-bits percentage from an exhaustive solution count."""
    if solution_count < 1:
        raise ValueError("solution count must be >= 1")
    ne = count_row(n).n_edges
    return -100.0 / ne * (math.log2(solution_count) - ne)


def render_formula_table(n_values) -> str:
    """Aligned n / n_E / n_K / n_F table from the closed formulas."""
    rows = [naive_row(n) for n in n_values]
    head = f"{'n':>3} {'n_E':>12} {'n_K':>13} {'n_F':>10}"
    lines = [head, "-" * len(head)]
    for r in rows:
        lines.append(
            f"{r.n:>3} {r.variables:>12} {r.n_quads:>13}"
            f" {format_percent(r.nf_percent):>9}%"
        )
    return "\n".join(lines)


def render_group_table(rows) -> str:
    """Aligned group / n / variables / profile(nu=2..6, or 1..6) / n_F table."""
    head = f"{'group':>14} {'n':>3} {'vars':>10} {'profile nu=1..6':>42} {'n_F':>10}"
    lines = [head, "-" * len(head)]
    for r in rows:
        prof = ", ".join(str(c) for c in r.profile)
        lines.append(
            f"{r.label:>14} {r.n:>3} {r.variables:>10} {prof:>42}"
            f" {format_percent(r.nf_percent):>9}%"
        )
    return "\n".join(lines)
