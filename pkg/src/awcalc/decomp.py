"""Min-max decomposition of factor degrees into s' pairwise-coprime groups."""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import BadArity, NotEnoughFactors, TooLarge
from .qcore import HomPoly

__all__ = [
    "DegreeMultiset",
    "Decomposition",
    "StageRow",
    "StageTrace",
    "greedy_decompose",
    "bound",
    "brute_force_minmax",
    "polynomial_decompose",
    "format_table",
    "BRUTE_FORCE_LIMIT",
]

BRUTE_FORCE_LIMIT = 12


@dataclass(frozen=True)
class DegreeMultiset:
    """Degrees d_1 >= ... >= d_s >= 1."""

    degrees: tuple

    def __post_init__(self):
        ds = tuple(sorted((int(d) for d in self.degrees), reverse=True))
        if not ds:
            raise ValueError("need at least one degree")
        if ds[-1] < 1:
            raise ValueError("degrees must be positive")
        object.__setattr__(self, "degrees", ds)

    @classmethod
    def of(cls, degrees: Iterable[int]) -> "DegreeMultiset":
        return cls(tuple(degrees))

    @property
    def d(self) -> int:
        return sum(self.degrees)

    @property
    def s(self) -> int:
        return len(self.degrees)


@dataclass(frozen=True)
class Decomposition:
    """bins[j] holds 1-based indices into the sorted degree list."""

    bins: tuple
    bin_degrees: tuple

    @property
    def max_degree(self) -> int:
        return max(self.bin_degrees)

    def to_json(self):
        return {"bins": [list(b) for b in self.bins], "bin_degrees": list(self.bin_degrees)}

    @classmethod
    def from_json(cls, data) -> "Decomposition":
        return cls(tuple(tuple(b) for b in data["bins"]), tuple(data["bin_degrees"]))


@dataclass(frozen=True)
class StageRow:
    k: int
    total: int  # d^(k)
    count: int  # s^(k)
    i_max: int
    i_min: int

    def as_tuple(self):
        return (self.total, self.count, self.i_max, self.i_min)


@dataclass(frozen=True)
class StageTrace:
    rows: tuple

    def to_json(self):
        return [{"k": r.k, "d": r.total, "s": r.count, "I_max": r.i_max, "I_min": r.i_min} for r in self.rows]

    @classmethod
    def from_json(cls, data) -> "StageTrace":
        return cls(tuple(StageRow(r["k"], r["d"], r["s"], r["I_max"], r["I_min"]) for r in data))


def _check_arity(s: int, s_prime: int):
    if s_prime < 1 or s_prime > s:
        raise BadArity(f"need 1 <= s' <= s, got s' = {s_prime}, s = {s}")


def greedy_decompose(ds: DegreeMultiset, s_prime: int) -> tuple[Decomposition, StageTrace]:
    """Seed the bins with the s' largest degrees, then give each next degree to the lightest bin.

    Ties go to the lowest bin index.  After all degrees equal to k have been
    placed (k running from the largest degree down to 1) a trace row records
    the placed total, the placed count and the largest and smallest bin
    degrees; bins still empty count as 0.
    """
    degrees = ds.degrees
    _check_arity(len(degrees), s_prime)
    bins: list[list[int]] = [[] for _ in range(s_prime)]
    loads = [0] * s_prime
    # (load, index) pairs: the heap top is the lightest bin, lowest index on ties
    heap = [(0, j) for j in range(s_prime)]
    rows = []
    placed = 0
    total = 0
    top = 0
    for k in range(degrees[0], 0, -1):
        while placed < len(degrees) and degrees[placed] == k:
            if placed < s_prime:
                j = placed
            else:
                _, j = heapq.heappop(heap)
                heapq.heappush(heap, (loads[j] + k, j))
            bins[j].append(placed + 1)
            loads[j] += k
            total += k
            placed += 1
            top = max(top, loads[j])
            if placed == s_prime:
                heap = [(loads[b], b) for b in range(s_prime)]
                heapq.heapify(heap)
        low = heap[0][0] if placed >= s_prime else 0
        rows.append(StageRow(k, total, placed, top, low))
    return Decomposition(tuple(tuple(b) for b in bins), tuple(loads)), StageTrace(tuple(rows))


def bound(d: int, s: int, s_prime: int) -> int:
    """max{d - s + 1, ceil(d / s')}."""
    if not (1 <= s_prime <= s <= d):
        raise BadArity(f"need 1 <= s' <= s <= d, got d={d}, s={s}, s'={s_prime}")
    return max(d - s + 1, -(-d // s_prime))


def brute_force_minmax(ds: DegreeMultiset, s_prime: int) -> int:
    """Exact optimum over all partitions into s' nonempty groups (s <= 12).

    Enumerates set partitions as restricted-growth strings with
    branch-and-bound pruning; pruning never discards an optimal partition.
    """
    degrees = ds.degrees
    s = len(degrees)
    if s > BRUTE_FORCE_LIMIT:
        raise TooLarge(f"brute force is limited to s <= {BRUTE_FORCE_LIMIT}, got {s}")
    _check_arity(s, s_prime)
    best = [sum(degrees)]
    loads = [0] * s_prime

    def place(i: int, used: int, current_max: int):
        if current_max >= best[0]:
            return
        remaining = s - i
        if remaining < s_prime - used:
            return
        if i == s:
            if used == s_prime:
                best[0] = current_max
            return
        d = degrees[i]
        for j in range(min(used + 1, s_prime)):
            loads[j] += d
            place(i + 1, max(used, j + 1), max(current_max, loads[j]))
            loads[j] -= d

    place(0, 0, 0)
    return best[0]


def polynomial_decompose(factors: Sequence[tuple[HomPoly, int]], s_prime: int) -> list[HomPoly]:
    """Group factors into s' pairwise-coprime products using the greedy bins.

    A factor of multiplicity m is one atomic item of degree m * deg, so no
    irreducible factor is split across two groups.
    """
    items = [(f, int(m)) for f, m in factors]
    if len(items) < s_prime:
        raise NotEnoughFactors(f"{len(items)} distinct factors cannot fill {s_prime} groups")
    if s_prime < 1:
        raise BadArity("s' must be positive")
    weights = [f.degree * m for f, m in items]
    # stable sort: ties keep input order, which fixes the index assignment
    order = sorted(range(len(items)), key=lambda i: -weights[i])
    dec, _ = greedy_decompose(DegreeMultiset(tuple(weights[i] for i in order)), s_prime)
    nvars = items[0][0].nvars
    out = []
    for b in dec.bins:
        prod = HomPoly.constant(1, nvars)
        for idx in b:
            f, m = items[order[idx - 1]]
            prod = prod * f**m
        out.append(prod)
    return out


def format_table(trace: StageTrace, dec: Decomposition | None = None) -> str:
    """Plain-text stage table: one line per k with d, s, I_max, I_min."""
    lines = [f"{'k':>3} {'d(k)':>5} {'s(k)':>5} {'Imax':>5} {'Imin':>5}"]
    for r in trace.rows:
        lines.append(f"{r.k:>3} {r.total:>5} {r.count:>5} {r.i_max:>5} {r.i_min:>5}")
    if dec is not None:
        lines.append("bins: " + ", ".join(str(d) for d in dec.bin_degrees))
    return "\n".join(lines) + "\n"


def to_json(dec: Decomposition, trace: StageTrace) -> str:
    return json.dumps({"decomposition": dec.to_json(), "trace": trace.to_json()}, indent=2)
