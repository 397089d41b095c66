"""Stochastic flip search over (quotiented) colouring problems.

One search step picks a variable uniformly at random, counts the violated
constraints on it (n_B) and the satisfied constraints that one flip would
violate (n_G), and flips with probability

    policy a:  P = min(n_B / (10 + 100*n_G), 1)
    policy b:  P = min(n_B / (10 + 100*max(5*n_G - n_B, 0)), 1)

starting from the all-same colouring.  Flipped variables go into a small
blacklist (a uniformly random slot is overwritten per flip) and
blacklisted variables are skipped at pick time.

The cutoff schedule orders constraints by a static difficulty score
x(C) = max over C's variables of the total number of constraints on that
variable.  Constraints with x <= kappa are ignored (excluded from violation
counts and from n_B/n_G); kappa starts at the maximum x, so everything is
ignored, and drops to the next smaller distinct x whenever all un-ignored
constraints are satisfied.  If 2,000,000 flips pass without a kappa
reduction, the search runs 2,000,000 flips with kappa = 0 (nothing ignored)
and then restarts the schedule from the top, keeping the colouring.

Randomness is a PCG32 generator (64-bit LCG state with the standard
xorshift-rotate output, Melissa O'Neill's constants), seeded from a single
integer.  Uniform picks use mask-rejection, so there is no modulo bias and
runs are bit-reproducible across platforms.  Draw order per step: one or
more 32-bit draws for the pick (rejection), one draw for the flip decision
whenever n_B > 0, and one draw for the blacklist slot after a flip.
"""

from __future__ import annotations

import logging
import os
import threading
import time
from dataclasses import dataclass, field, replace

import numpy as np
from numba import njit

from .quotient import QuotientProblem, violated_constraints

logger = logging.getLogger(__name__)

STATUS_PROGRESS = 0
STATUS_SOLVED = 1
STATUS_FLIP_LIMIT = 2
STATUS_CANCELLED = 3

# scalar state slots shared between host and kernel
_S_FLIPS = 0
_S_PICKS = 1
_S_VIOL_ACT = 2
_S_VIOL_TOT = 3
_S_BEST = 4
_S_KIDX = 5
_S_MODE = 6  # 0 normal, 1 zero-kappa recovery
_S_FSK = 7  # flips since last kappa reduction
_S_REC_END = 8
_S_KTRACE = 9
_S_FTRACE = 10
_S_SIZE = 11

_POLICY_CODES = {"a": 0, "b": 1, "walk": 2}
_PCG_MULT = 6364136223846793005
_PCG_DEFAULT_SEQ = 0xDA3E39CB94B95BDB
_MASK64 = (1 << 64) - 1


class InfeasibleProblemError(ValueError):
    """The quotient problem carries a single-variable constraint."""


def flip_probability(n_b: int, n_g: int, policy: str) -> float:
    """The flip probability for given counts; 0 when nothing is violated."""
    if n_b == 0:
        return 0.0
    if policy == "a":
        denom = 10 + 100 * n_g
    elif policy == "b":
        denom = 10 + 100 * max(5 * n_g - n_b, 0)
    else:
        raise ValueError(f"unknown policy {policy!r}")
    return min(n_b / denom, 1.0)


def rng_init(seed: int, seq: int = _PCG_DEFAULT_SEQ) -> np.ndarray:
    """PCG32 state (state, increment) for a seed, per the reference setup."""
    inc = ((seq << 1) | 1) & _MASK64
    state = (inc + seed) & _MASK64
    state = (state * _PCG_MULT + inc) & _MASK64
    return np.array([state, inc], dtype=np.uint64)


def derive_seed(base: int, index: int) -> int:
    """Decorrelated per-attempt seed (splitmix64 of base + index)."""
    z = (base + index * 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


@njit(cache=True, inline="always")
def _pcg32(rng):
    state = rng[0]
    rng[0] = state * np.uint64(6364136223846793005) + rng[1]
    xorshifted = np.uint32(((state >> np.uint64(18)) ^ state) >> np.uint64(27))
    rot = np.uint32(state >> np.uint64(59))
    return np.uint32(
        (xorshifted >> rot) | (xorshifted << (np.uint32(32 - rot) & np.uint32(31)))
    )


@njit(cache=True, inline="always")
def _rand_below(rng, bound):
    # mask rejection: unbiased uniform in [0, bound)
    if bound <= 1:
        return 0
    m = np.uint32(bound - 1)
    m |= m >> np.uint32(1)
    m |= m >> np.uint32(2)
    m |= m >> np.uint32(4)
    m |= m >> np.uint32(8)
    m |= m >> np.uint32(16)
    while True:
        r = _pcg32(rng) & m
        if r < np.uint32(bound):
            return np.int64(r)


@njit(cache=True, inline="always")
def _next_double(rng):
    return np.float64(_pcg32(rng)) * 2.3283064365386963e-10  # 2**-32


@njit(cache=True)
def _init_counts(colour, ones, con_nu, inc_cons, inc_off):
    ones[:] = 0
    for v in range(colour.shape[0]):
        if colour[v] == 1:
            for k in range(inc_off[v], inc_off[v + 1]):
                ones[inc_cons[k]] += 1
    viol = 0
    for c in range(ones.shape[0]):
        if ones[c] == 0 or ones[c] == con_nu[c]:
            viol += 1
    return viol


@njit(cache=True)
def _rebuild_nb(n_b, ones, con_nu, con_vars, con_off, active, count_inactive):
    """n_B per variable from scratch: violated (active) constraints on it."""
    n_b[:] = 0
    for c in range(con_nu.shape[0]):
        if active[c] == 0 and not count_inactive:
            continue
        if ones[c] == 0 or ones[c] == con_nu[c]:
            for k in range(con_off[c], con_off[c + 1]):
                n_b[con_vars[k]] += 1


@njit(cache=True)
def _apply_kappa(
    active, x_arr, kappa, ones, con_nu, n_b, con_vars, con_off, count_inactive
):
    viol_act = 0
    for c in range(active.shape[0]):
        if x_arr[c] > kappa:
            active[c] = 1
            if ones[c] == 0 or ones[c] == con_nu[c]:
                viol_act += 1
        else:
            active[c] = 0
    if not count_inactive:
        _rebuild_nb(n_b, ones, con_nu, con_vars, con_off, active, count_inactive)
    return viol_act


@njit(cache=True, inline="always")
def _count_ng(v, colour, ones, active, con_nu, inc_cons, inc_off, count_inactive):
    """Satisfied constraints on v that one flip of v would violate."""
    n_g = 0
    cv = colour[v]
    for k in range(inc_off[v], inc_off[v + 1]):
        c = inc_cons[k]
        if active[c] == 0 and not count_inactive:
            continue
        o = ones[c]
        nu = con_nu[c]
        if o == 0 or o == nu:
            continue
        if cv == 1:
            if o == 1:
                n_g += 1
        elif o == nu - 1:
            n_g += 1
    return n_g


@njit(cache=True)
def _kernel_nb_ng(v, colour, ones, active, con_nu, inc_cons, inc_off):
    """Host-callable n_B/n_G scan over the incidence list (active only)."""
    n_b = 0
    cv = colour[v]
    for k in range(inc_off[v], inc_off[v + 1]):
        c = inc_cons[k]
        if active[c] == 0:
            continue
        o = ones[c]
        if o == 0 or o == con_nu[c]:
            n_b += 1
    n_g = _count_ng(v, colour, ones, active, con_nu, inc_cons, inc_off, False)
    return n_b, n_g


@njit(cache=True, nogil=True)
def _run_chunk(
    colour,
    best_colour,
    ones,
    active,
    n_b_arr,
    con_nu,
    con_vars,
    con_off,
    inc_cons,
    inc_off,
    x_arr,
    kappa_steps,
    blacklist,
    rng,
    sstate,
    ktrace_flip,
    ktrace_val,
    ftrace,
    policy_code,
    cutoff_on,
    count_inactive,
    recovery_budget,
    max_flips,
    chunk_end,
    cancel,
):
    nvars = inc_off.shape[0] - 1
    bl_size = blacklist.shape[0]
    last_step = kappa_steps.shape[0] - 1
    # pick mask hoisted out of the loop (same mask _rand_below would build)
    pick_mask = np.uint32(nvars - 1)
    pick_mask |= pick_mask >> np.uint32(1)
    pick_mask |= pick_mask >> np.uint32(2)
    pick_mask |= pick_mask >> np.uint32(4)
    pick_mask |= pick_mask >> np.uint32(8)
    pick_mask |= pick_mask >> np.uint32(16)
    nvars32 = np.uint32(nvars)
    # hot scalars live in locals; written back once on exit
    flips = sstate[_S_FLIPS]
    picks = sstate[_S_PICKS]
    viol_act = sstate[_S_VIOL_ACT]
    viol_tot = sstate[_S_VIOL_TOT]
    best = sstate[_S_BEST]
    kidx = sstate[_S_KIDX]
    mode = sstate[_S_MODE]
    fsk = sstate[_S_FSK]
    rec_end = sstate[_S_REC_END]
    ktrace_n = sstate[_S_KTRACE]
    ftrace_n = sstate[_S_FTRACE]
    status = -1
    while status < 0:
        if cancel[0] != 0:
            status = STATUS_CANCELLED
            break
        if viol_act == 0:
            if kidx >= last_step:
                status = STATUS_SOLVED
                break
            kidx += 1
            kappa = kappa_steps[kidx]
            viol_act = _apply_kappa(
                active, x_arr, kappa, ones, con_nu, n_b_arr, con_vars, con_off,
                count_inactive,
            )
            if ktrace_n < ktrace_flip.shape[0]:
                ktrace_flip[ktrace_n] = flips
                ktrace_val[ktrace_n] = kappa
            ktrace_n += 1
            fsk = 0
            continue
        if max_flips > 0 and flips >= max_flips:
            status = STATUS_FLIP_LIMIT
            break
        if flips >= chunk_end:
            status = STATUS_PROGRESS
            break
        if cutoff_on:
            if mode == 0 and fsk >= recovery_budget:
                # stuck: run the recovery budget with nothing ignored
                mode = 1
                rec_end = flips + recovery_budget
                kidx = last_step
                kappa = kappa_steps[last_step]
                viol_act = _apply_kappa(
                    active, x_arr, kappa, ones, con_nu, n_b_arr, con_vars,
                    con_off, count_inactive,
                )
                if ktrace_n < ktrace_flip.shape[0]:
                    ktrace_flip[ktrace_n] = flips
                    ktrace_val[ktrace_n] = kappa
                ktrace_n += 1
                continue
            if mode == 1 and flips >= rec_end:
                # recovery over: restart the schedule from the maximum x
                mode = 0
                kidx = 0
                kappa = kappa_steps[0]
                viol_act = _apply_kappa(
                    active, x_arr, kappa, ones, con_nu, n_b_arr, con_vars,
                    con_off, count_inactive,
                )
                if ktrace_n < ktrace_flip.shape[0]:
                    ktrace_flip[ktrace_n] = flips
                    ktrace_val[ktrace_n] = kappa
                ktrace_n += 1
                fsk = 0
                continue
        while True:
            r = _pcg32(rng) & pick_mask
            if r < nvars32:
                break
        v = np.int64(r)
        picks += 1
        if bl_size > 0:
            listed = False
            for s in range(bl_size):
                if blacklist[s] == v:
                    listed = True
                    break
            if listed:
                continue
        if policy_code != 2:
            n_b = n_b_arr[v]
            if n_b == 0:
                continue
            # P <= n_B/10 whatever n_G is, so the flip draw can reject most
            # picks before the n_G incidence scan; the draw sequence and the
            # accept decision are unchanged
            u = _next_double(rng)
            if u * 10.0 >= n_b:
                continue
            n_g = _count_ng(
                v, colour, ones, active, con_nu, inc_cons, inc_off, count_inactive
            )
            if policy_code == 1:
                extra = 5 * n_g - n_b
                if extra < 0:
                    extra = 0
                denom = 10.0 + 100.0 * extra
            else:
                denom = 10.0 + 100.0 * n_g
            if u >= n_b / denom:
                continue
        if ftrace_n < ftrace.shape[0]:
            ftrace[ftrace_n, 0] = v
            for s in range(min(bl_size, ftrace.shape[1] - 1)):
                ftrace[ftrace_n, 1 + s] = blacklist[s]
        ftrace_n += 1
        newc = 1 - colour[v]
        colour[v] = newc
        delta = 1 if newc == 1 else -1
        for k in range(inc_off[v], inc_off[v + 1]):
            c = inc_cons[k]
            o = ones[c]
            no = o + delta
            ones[c] = no
            nu = con_nu[c]
            was = o == 0 or o == nu
            now = no == 0 or no == nu
            if was == now:
                continue
            d = 1 if now else -1
            viol_tot += d
            if active[c] == 1:
                viol_act += d
                if not count_inactive:
                    for kk in range(con_off[c], con_off[c + 1]):
                        n_b_arr[con_vars[kk]] += d
            if count_inactive:
                for kk in range(con_off[c], con_off[c + 1]):
                    n_b_arr[con_vars[kk]] += d
        flips += 1
        if cutoff_on and mode == 0:
            fsk += 1
        if bl_size > 0:
            blacklist[_rand_below(rng, bl_size)] = v
        if viol_tot < best:
            best = viol_tot
            best_colour[:] = colour
    sstate[_S_FLIPS] = flips
    sstate[_S_PICKS] = picks
    sstate[_S_VIOL_ACT] = viol_act
    sstate[_S_VIOL_TOT] = viol_tot
    sstate[_S_BEST] = best
    sstate[_S_KIDX] = kidx
    sstate[_S_MODE] = mode
    sstate[_S_FSK] = fsk
    sstate[_S_REC_END] = rec_end
    sstate[_S_KTRACE] = ktrace_n
    sstate[_S_FTRACE] = ftrace_n
    return status


@dataclass
class SolveConfig:
    policy: str = "b"
    seed: int | None = None
    max_flips: int = 0  # 0 = unlimited
    blacklist_size: int = 3
    cutoff: bool = True
    recovery_budget: int = 2_000_000
    log_interval: int = 1_000_000
    max_seconds: float | None = None
    count_ignored: bool = False  # include ignored constraints in n_B/n_G
    flip_trace_cap: int = 0
    kappa_trace_cap: int = 65536
    start: np.ndarray | None = None


@dataclass
class SolverStats:
    solved: bool
    flips: int
    picks: int
    best_violated: int
    final_violated: int
    seed: int
    policy: str
    n: int
    group_name: str
    wall_time: float
    kappa_trace: list[tuple[int, int]]
    kappa_events: int
    status: int
    attempt: int = 0

    def stats_line(self) -> str:
        """Machine-readable summary; deliberately excludes wall time."""
        result = {
            STATUS_SOLVED: "solved",
            STATUS_FLIP_LIMIT: "timeout",
            STATUS_CANCELLED: "cancelled",
        }.get(self.status, "running")
        return (
            f"result={result} n={self.n} group={self.group_name}"
            f" policy={self.policy} seed={self.seed} flips={self.flips}"
            f" picks={self.picks} best={self.best_violated}"
            f" violated={self.final_violated} kappa_events={self.kappa_events}"
        )


@dataclass
class SolveResult:
    solved: bool
    assignment: np.ndarray  # solution if solved, else best-so-far
    stats: SolverStats
    flip_trace: np.ndarray | None = None


class SearchState:
    """All solver arrays for one attempt; host-side handle for the kernel."""

    def __init__(self, problem: QuotientProblem, config: SolveConfig, seed: int):
        if problem.infeasible:
            raise InfeasibleProblemError(
                f"{problem.group_name}@{problem.n} admits no symmetric solution"
            )
        self.problem = problem
        self.config = config
        self.seed = seed
        nvars = problem.variable_count
        m = problem.n_constraints
        con_vars = problem.con_vars
        self.con_nu = problem.con_nu.astype(np.int8, copy=False)
        # incidence CSR: constraints per variable (ids ascending per variable)
        con_id_flat = np.repeat(
            np.arange(m, dtype=np.int32), self.con_nu.astype(np.int64)
        )
        order = np.argsort(con_vars, kind="stable")
        self.inc_cons = np.ascontiguousarray(con_id_flat[order])
        counts = np.bincount(con_vars, minlength=nvars)
        self.inc_off = np.zeros(nvars + 1, dtype=np.int64)
        np.cumsum(counts, out=self.inc_off[1:])
        del con_id_flat, order, counts
        if config.cutoff and m > 0:
            deg = np.diff(self.inc_off)
            self.x = np.maximum.reduceat(
                deg[con_vars], problem.con_off[:-1]
            ).astype(np.int64)
            distinct = np.unique(self.x)[::-1]
            self.kappa_steps = np.concatenate(
                [distinct, np.zeros(1, dtype=np.int64)]
            ).astype(np.int64)
        else:
            self.x = np.ones(m, dtype=np.int64)
            self.kappa_steps = np.zeros(1, dtype=np.int64)
        if config.start is not None:
            self.colour = np.asarray(config.start, dtype=np.uint8).copy()
            if self.colour.shape != (nvars,):
                raise ValueError("start assignment has the wrong length")
        else:
            self.colour = np.zeros(nvars, dtype=np.uint8)
        self.best_colour = self.colour.copy()
        self.ones = np.zeros(m, dtype=np.int8)
        self.active = np.zeros(m, dtype=np.uint8)
        self.n_b = np.zeros(nvars, dtype=np.int32)
        self.con_vars = np.ascontiguousarray(con_vars, dtype=np.int32)
        self.con_off = np.ascontiguousarray(problem.con_off, dtype=np.int64)
        self.blacklist = np.full(max(config.blacklist_size, 0), -1, dtype=np.int32)
        self.rng = rng_init(seed)
        self.sstate = np.zeros(_S_SIZE, dtype=np.int64)
        viol = _init_counts(
            self.colour, self.ones, self.con_nu, self.inc_cons, self.inc_off
        )
        self.sstate[_S_VIOL_TOT] = viol
        self.sstate[_S_BEST] = viol
        self.sstate[_S_VIOL_ACT] = _apply_kappa(
            self.active,
            self.x,
            self.kappa_steps[0],
            self.ones,
            self.con_nu,
            self.n_b,
            self.con_vars,
            self.con_off,
            config.count_ignored,
        )
        if config.count_ignored:
            _rebuild_nb(
                self.n_b, self.ones, self.con_nu, self.con_vars, self.con_off,
                self.active, True,
            )
        cap = max(config.kappa_trace_cap, 4)
        self.ktrace_flip = np.zeros(cap, dtype=np.int64)
        self.ktrace_val = np.zeros(cap, dtype=np.int64)
        self.ftrace = np.full(
            (config.flip_trace_cap, 1 + max(config.blacklist_size, 0)),
            -2,
            dtype=np.int64,
        )

    # -- debug/verification helpers ------------------------------------

    def scratch_ones(self) -> np.ndarray:
        vals = self.colour[self.problem.con_vars].astype(np.int64)
        return np.add.reduceat(vals, self.problem.con_off[:-1]).astype(np.int64)

    def scratch_violated_total(self) -> int:
        ones = self.scratch_ones()
        nu = self.con_nu.astype(np.int64)
        return int(((ones == 0) | (ones == nu)).sum())

    def scratch_violated_active(self) -> int:
        ones = self.scratch_ones()
        nu = self.con_nu.astype(np.int64)
        mask = (ones == 0) | (ones == nu)
        return int((mask & (self.active == 1)).sum())

    def scratch_nb_array(self) -> np.ndarray:
        """All n_B values recomputed from the assignment alone."""
        ones = self.scratch_ones()
        nu = self.con_nu.astype(np.int64)
        mask = (ones == 0) | (ones == nu)
        if not self.config.count_ignored:
            mask &= self.active == 1
        out = np.zeros(self.problem.variable_count, dtype=np.int64)
        hit = np.repeat(mask, np.diff(self.con_off))
        np.add.at(out, self.problem.con_vars[hit], 1)
        return out

    def kernel_nb_ng(self, v: int) -> tuple[int, int]:
        return _kernel_nb_ng(
            v,
            self.colour,
            self.ones,
            self.active,
            self.con_nu,
            self.inc_cons,
            self.inc_off,
        )

    def scratch_nb_ng(self, v: int) -> tuple[int, int]:
        """Definition-level oracle: simulate the flip constraint by constraint."""
        p = self.problem
        n_b = 0
        n_g = 0
        for k in range(self.inc_off[v], self.inc_off[v + 1]):
            c = int(self.inc_cons[k])
            if not self.active[c]:
                continue
            vals = [int(self.colour[x]) for x in p.constraint(c)]
            if len(set(vals)) == 1:
                n_b += 1
                continue
            flipped = [
                1 - val if x == v else val
                for x, val in zip(p.constraint(c), vals)
            ]
            if len(set(flipped)) == 1:
                n_g += 1
        return n_b, n_g

    def run(self, chunk_end: int, cancel: np.ndarray) -> int:
        cfg = self.config
        return _run_chunk(
            self.colour,
            self.best_colour,
            self.ones,
            self.active,
            self.n_b,
            self.con_nu,
            self.con_vars,
            self.con_off,
            self.inc_cons,
            self.inc_off,
            self.x,
            self.kappa_steps,
            self.blacklist,
            self.rng,
            self.sstate,
            self.ktrace_flip,
            self.ktrace_val,
            self.ftrace,
            _POLICY_CODES[cfg.policy],
            cfg.cutoff,
            cfg.count_ignored,
            cfg.recovery_budget,
            cfg.max_flips,
            chunk_end,
            cancel,
        )

    def make_stats(self, status: int, wall_time: float, attempt: int = 0) -> SolverStats:
        s = self.sstate
        events = int(s[_S_KTRACE])
        recorded = min(events, len(self.ktrace_flip))
        trace = [
            (int(self.ktrace_flip[i]), int(self.ktrace_val[i]))
            for i in range(recorded)
        ]
        return SolverStats(
            solved=status == STATUS_SOLVED,
            flips=int(s[_S_FLIPS]),
            picks=int(s[_S_PICKS]),
            best_violated=int(s[_S_BEST]),
            final_violated=int(s[_S_VIOL_TOT]),
            seed=self.seed,
            policy=self.config.policy,
            n=self.problem.n,
            group_name=self.problem.group_name,
            wall_time=wall_time,
            kappa_trace=trace,
            kappa_events=events,
            status=status,
            attempt=attempt,
        )


def resolve_seed(seed: int | None) -> int:
    if seed is not None:
        return int(seed) & _MASK64
    return int.from_bytes(os.urandom(8), "little")


def solve(
    problem: QuotientProblem,
    config: SolveConfig | None = None,
    cancel: np.ndarray | None = None,
    attempt: int = 0,
) -> SolveResult:
    """Run one seeded attempt to completion, flip budget, or cancellation."""
    config = config or SolveConfig()
    seed = resolve_seed(config.seed)
    state = SearchState(problem, config, seed)
    if cancel is None:
        cancel = np.zeros(1, dtype=np.int64)
    start = time.time()
    deadline = start + config.max_seconds if config.max_seconds else None
    interval = max(config.log_interval, 1)
    while True:
        chunk_end = int(state.sstate[_S_FLIPS]) + interval
        status = state.run(chunk_end, cancel)
        s = state.sstate
        kappa = int(state.kappa_steps[min(s[_S_KIDX], len(state.kappa_steps) - 1)])
        if status != STATUS_PROGRESS:
            break
        logger.info(
            "flips=%d violated=%d best=%d kappa=%d",
            s[_S_FLIPS],
            s[_S_VIOL_ACT],
            s[_S_BEST],
            kappa,
        )
        if deadline is not None and time.time() >= deadline:
            status = STATUS_FLIP_LIMIT
            break
    wall = time.time() - start
    stats = state.make_stats(status, wall, attempt)
    if status == STATUS_SOLVED:
        leftover = violated_constraints(problem, state.colour)
        if len(leftover):  # pragma: no cover - incremental state is fuzz-tested
            raise AssertionError(
                f"kernel reported a solution but {len(leftover)} constraints"
                " fail from-scratch evaluation"
            )
        assignment = state.colour.copy()
    else:
        assignment = state.best_colour.copy()
    trace = None
    if config.flip_trace_cap:
        recorded = min(int(state.sstate[_S_FTRACE]), config.flip_trace_cap)
        trace = state.ftrace[:recorded].copy()
    return SolveResult(
        solved=status == STATUS_SOLVED,
        assignment=assignment,
        stats=stats,
        flip_trace=trace,
    )


def solve_basic(
    problem: QuotientProblem,
    policy: str = "a",
    seed: int | None = None,
    max_flips: int = 0,
    blacklist_size: int = 0,
    **kwargs,
) -> SolveResult:
    """The plain algorithm: no cutoff schedule, policy a by default."""
    config = SolveConfig(
        policy=policy,
        seed=seed,
        max_flips=max_flips,
        blacklist_size=blacklist_size,
        cutoff=False,
        **kwargs,
    )
    return solve(problem, config)


def solve_cutoff(
    problem: QuotientProblem,
    policy: str = "b",
    seed: int | None = None,
    config: SolveConfig | None = None,
    **kwargs,
) -> SolveResult:
    """The scheduled algorithm: cutoff on, policy b and blacklist by default."""
    if config is None:
        config = SolveConfig(policy=policy, seed=seed, cutoff=True, **kwargs)
    else:
        config = replace(config, policy=policy, seed=seed, cutoff=True)
    return solve(problem, config)


def run_attempts(
    problem: QuotientProblem,
    config: SolveConfig,
    attempt_count: int,
    seeds: list[int] | None = None,
) -> tuple[SolveResult | None, list[SolverStats]]:
    """Independent seeded attempts in parallel; first solution wins.

    A win signals cooperative cancellation to the other attempts.  Returns
    (winning result or None, stats for every attempt in attempt order).
    """
    if attempt_count < 1:
        raise ValueError("attempt_count must be >= 1")
    if seeds is None:
        base = resolve_seed(config.seed)
        seeds = [derive_seed(base, i) for i in range(attempt_count)]
    if len(seeds) != attempt_count or len(set(seeds)) != attempt_count:
        raise ValueError("need one distinct seed per attempt")
    if attempt_count == 1:
        result = solve(problem, replace(config, seed=seeds[0]), attempt=0)
        return (result if result.solved else None), [result.stats]
    cancel = np.zeros(1, dtype=np.int64)
    results: list[SolveResult | None] = [None] * attempt_count
    # warm the kernel before spawning threads: numba compilation is not
    # re-entrant across fresh signatures
    _ = solve(problem, replace(config, seed=seeds[0], max_flips=1))

    def work(i: int):
        res = solve(problem, replace(config, seed=seeds[i]), cancel=cancel, attempt=i)
        results[i] = res
        if res.solved:
            cancel[0] = 1

    threads = [threading.Thread(target=work, args=(i,)) for i in range(attempt_count)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    stats = [r.stats for r in results if r is not None]
    winners = [r for r in results if r is not None and r.solved]
    winner = winners[0] if winners else None
    return winner, stats
