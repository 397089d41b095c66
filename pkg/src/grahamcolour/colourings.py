"""Full edge colourings: verification, symmetry checks, file I/O, and the
exhaustive solution counter for small dimensions.

File format (bit-exact, checksummed):

    graham-colouring v1
    n=<n>
    symmetry=<group name or I>
    comment=<free text>          (optional)
    <ceil(n_E/4) lowercase hex digits>
    crc32=<8 hex digits>

Edge k occupies bit (k mod 4) of hex digit floor(k/4), bit 0 least
significant; the crc32 is over the ASCII body digits.  Assignment files for
quotient problems use the same container with magic "graham-assignment v1"
and a vars= header instead of the implied edge count.
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass, field

import numpy as np
from numba import njit

from . import cube

_HEX = "0123456789abcdef"


class ColouringFormatError(ValueError):
    """Malformed colouring/assignment file; names the offending line."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


@dataclass
class Colouring:
    """One colour bit per edge, in canonical edge-id order."""

    n: int
    bits: np.ndarray  # uint8, length n_E

    def __post_init__(self):
        self.bits = np.asarray(self.bits, dtype=np.uint8)
        expect = cube.edge_count(self.n)
        if self.bits.shape != (expect,):
            raise ValueError(
                f"colouring for n={self.n} needs {expect} bits,"
                f" got shape {self.bits.shape}"
            )

    @classmethod
    def all_same(cls, n: int, colour: int = 0) -> "Colouring":
        return cls(n, np.full(cube.edge_count(n), colour, dtype=np.uint8))


@dataclass
class VerificationReport:
    valid: bool
    violation_count: int
    sample: list[tuple[int, int, int, int]] = field(default_factory=list)

    def render(self, limit: int = 20) -> str:
        if self.valid:
            return "VALID"
        lines = [f"INVALID {self.violation_count}"]
        for verts in self.sample[:limit]:
            lines.append(" ".join(format(v, "x") for v in verts))
        return "\n".join(lines)


def verify(colouring: Colouring, sample_limit: int = 20) -> VerificationReport:
    """Scan every coplanar quad for monochromatic violations.

    Streams quads in deterministic enumeration order; the sample holds the
    first sample_limit violated quads as sorted vertex 4-tuples.
    """
    bits = colouring.bits
    n = colouring.n
    total = 0
    sample: list[tuple[int, int, int, int]] = []
    for p, q, r, s in cube.iter_quad_vertex_batches(n):
        cols = bits[cube.quad_edge_columns(p, q, r, s)]
        sums = cols.sum(axis=1, dtype=np.int8)
        mono = (sums == 0) | (sums == 6)
        hits = int(mono.sum())
        if hits:
            if len(sample) < sample_limit:
                idx = np.nonzero(mono)[0][: sample_limit - len(sample)]
                verts = np.stack([p[idx], q[idx], r[idx], s[idx]], axis=1)
                verts.sort(axis=1)
                sample.extend(tuple(int(x) for x in row) for row in verts)
            total += hits
    return VerificationReport(valid=total == 0, violation_count=total, sample=sample)


def is_symmetric(colouring: Colouring, group) -> bool:
    """True iff every generator maps the colouring to itself."""
    from .groups import edge_map  # deferred: groups imports cube only

    if group.degree != colouring.n:
        raise ValueError(f"group degree {group.degree} != n={colouring.n}")
    for g in group.generators:
        gm = edge_map(g, colouring.n)
        if not np.array_equal(colouring.bits[gm], colouring.bits):
            return False
    return True


@njit(cache=True)
def _gray_walk_count(inc_cons, inc_off, ones, n_quads, n_bits):
    """Count violation-free assignments over the full reflected-Gray walk.

    Starts from all-zero (`ones` must be zeroed).  Flipping one edge per
    step keeps the running violated-quad count exact with O(quads-on-edge)
    work.  Returns (solution count, final violated count).
    """
    violated = n_quads  # all-zero assignment: every quad monochromatic
    count = 0
    if violated == 0:
        count += 1
    colour = np.zeros(n_bits, dtype=np.uint8)
    steps = np.uint64(1) << np.uint64(n_bits)
    t = np.uint64(1)
    while t < steps:
        # flipped bit index = count of trailing zeros of t
        e = 0
        while ((t >> np.uint64(e)) & np.uint64(1)) == np.uint64(0):
            e += 1
        newc = 1 - colour[e]
        colour[e] = newc
        delta = 1 if newc == 1 else -1
        for k in range(inc_off[e], inc_off[e + 1]):
            q = inc_cons[k]
            o = ones[q]
            no = o + delta
            ones[q] = no
            was = o == 0 or o == 6
            now = no == 0 or no == 6
            if was and not now:
                violated -= 1
            elif now and not was:
                violated += 1
        if violated == 0:
            count += 1
        t += np.uint64(1)
    return count, violated


def _edge_quad_incidence(n: int) -> tuple[np.ndarray, np.ndarray, int]:
    """CSR of quad ids per edge for small n."""
    quads = list(cube.enumerate_planar_quads(n))
    ne = cube.edge_count(n)
    counts = np.zeros(ne, dtype=np.int64)
    for qd in quads:
        for e in qd.edges:
            counts[e] += 1
    off = np.zeros(ne + 1, dtype=np.int64)
    np.cumsum(counts, out=off[1:])
    cons = np.zeros(off[-1], dtype=np.int32)
    cursor = off[:-1].copy()
    for qid, qd in enumerate(quads):
        for e in qd.edges:
            cons[cursor[e]] = qid
            cursor[e] += 1
    return cons, off, len(quads)


def count_solutions(n: int) -> int:
    """Exact number of violation-free colourings, for n <= 3 only.

    Gray-code walk over all 2^(n_E) assignments with incremental violation
    updates; n = 3 is 2^28 steps.
    """
    if n not in (0, 1, 2, 3):
        raise ValueError(
            f"exhaustive counting is only feasible for n <= 3, got n={n}"
        )
    ne = cube.edge_count(n)
    if n < 2:
        return 1 << ne  # no quads, every colouring works
    inc_cons, inc_off, n_quads = _edge_quad_incidence(n)
    ones = np.zeros(n_quads, dtype=np.int8)
    count, final_violated = _gray_walk_count(inc_cons, inc_off, ones, n_quads, ne)
    return int(count)


def count_solutions_direct(n: int) -> int:
    """Independent brute-force oracle: test each colouring from scratch."""
    if n > 2:
        raise ValueError("direct enumeration is for n <= 2 only")
    ne = cube.edge_count(n)
    quads = list(cube.enumerate_planar_quads(n))
    count = 0
    for word in range(1 << ne):
        ok = True
        for qd in quads:
            s = sum((word >> e) & 1 for e in qd.edges)
            if s == 0 or s == 6:
                ok = False
                break
        if ok:
            count += 1
    return count


def _bits_to_hex(bits: np.ndarray) -> str:
    pad = (-len(bits)) % 4
    padded = np.concatenate([bits, np.zeros(pad, dtype=np.uint8)])
    digits = padded.reshape(-1, 4) @ np.array([1, 2, 4, 8], dtype=np.uint8)
    return "".join(_HEX[d] for d in digits)


def _hex_to_bits(body: str, nbits: int, line_no: int) -> np.ndarray:
    try:
        digits = np.array([_HEX.index(ch) for ch in body], dtype=np.uint8)
    except ValueError:
        bad = next(ch for ch in body if ch not in _HEX)
        raise ColouringFormatError(line_no, f"bad hex digit {bad!r} in body")
    bits = np.zeros(len(body) * 4, dtype=np.uint8)
    for b in range(4):
        bits[b::4] = (digits >> b) & 1
    if bits[nbits:].any():
        raise ColouringFormatError(line_no, "padding bits past the edge count are set")
    return bits[:nbits]


def write_colouring(
    colouring: Colouring, path, symmetry: str = "I", comment: str | None = None
) -> None:
    body = _bits_to_hex(colouring.bits)
    crc = zlib.crc32(body.encode("ascii")) & 0xFFFFFFFF
    lines = [
        "graham-colouring v1",
        f"n={colouring.n}",
        f"symmetry={symmetry}",
    ]
    if comment is not None:
        lines.append(f"comment={comment}")
    lines.append(body)
    lines.append(f"crc32={crc:08x}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_colouring(path) -> tuple[Colouring, str]:
    """Read a colouring file; returns (colouring, symmetry name)."""
    n, _, bits, symmetry = _read_bit_file(path, "graham-colouring v1", "n")
    expect = cube.edge_count(n)
    if len(bits) != expect:
        raise ColouringFormatError(0, f"expected {expect} bits, got {len(bits)}")
    return Colouring(n, bits), symmetry


def write_assignment(
    bits: np.ndarray, n: int, group_name: str, path, comment: str | None = None
) -> None:
    """Quotient-variable assignment in the shared container format."""
    bits = np.asarray(bits, dtype=np.uint8)
    body = _bits_to_hex(bits)
    crc = zlib.crc32(body.encode("ascii")) & 0xFFFFFFFF
    lines = [
        "graham-assignment v1",
        f"n={n}",
        f"symmetry={group_name}",
        f"vars={len(bits)}",
    ]
    if comment is not None:
        lines.append(f"comment={comment}")
    lines.append(body)
    lines.append(f"crc32={crc:08x}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_assignment(path) -> tuple[np.ndarray, int, str]:
    """Returns (assignment bits, n, group name)."""
    n, nvars, bits, symmetry = _read_bit_file(path, "graham-assignment v1", "vars")
    if nvars is None:
        raise ColouringFormatError(0, "assignment file is missing a vars= line")
    if len(bits) != nvars:
        raise ColouringFormatError(0, f"expected {nvars} bits, got {len(bits)}")
    return bits, n, symmetry


def _read_bit_file(path, magic: str, kind: str):
    with open(path) as fh:
        lines = fh.read().splitlines()
    if not lines or lines[0] != magic:
        raise ColouringFormatError(1, f"expected magic {magic!r}")
    if len(lines) < 2 or not lines[1].startswith("n="):
        raise ColouringFormatError(2, "expected n=<dimension>")
    try:
        n = int(lines[1][2:])
    except ValueError:
        raise ColouringFormatError(2, f"bad dimension {lines[1][2:]!r}")
    idx = 2
    symmetry = "I"
    nvars = None
    while idx < len(lines) and "=" in lines[idx]:
        key, _, value = lines[idx].partition("=")
        if key == "symmetry":
            symmetry = value
        elif key == "vars":
            try:
                nvars = int(value)
            except ValueError:
                raise ColouringFormatError(idx + 1, f"bad vars count {value!r}")
        elif key == "comment":
            pass
        elif key == "crc32":
            break
        else:
            break
        idx += 1
    body_parts = []
    crc_line = None
    body_start = idx + 1
    while idx < len(lines):
        if lines[idx].startswith("crc32="):
            crc_line = idx
            break
        body_parts.append(lines[idx])
        idx += 1
    if crc_line is None:
        raise ColouringFormatError(len(lines), "missing crc32 line")
    body = "".join(body_parts)
    if kind == "n":
        nbits = cube.edge_count(n)
    else:
        nbits = nvars if nvars is not None else 0
    expect_digits = (nbits + 3) // 4
    if len(body) != expect_digits:
        raise ColouringFormatError(
            body_start, f"body has {len(body)} hex digits, expected {expect_digits}"
        )
    stated = lines[crc_line][6:]
    actual = zlib.crc32(body.encode("ascii")) & 0xFFFFFFFF
    if stated != f"{actual:08x}":
        raise ColouringFormatError(
            crc_line + 1, f"checksum mismatch: stated {stated}, computed {actual:08x}"
        )
    bits = _hex_to_bits(body, nbits, body_start)
    return n, nvars, bits, symmetry
