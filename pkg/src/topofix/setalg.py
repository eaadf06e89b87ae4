"""Exact Boolean algebra of symbolic subsets of countable ground sets.

A ground set consists of finitely many named atoms plus finitely many
integer channels (each either NAT, domain {1,2,3,...}, or INT, domain Z).
A symbolic set stores, per channel, two eventually-periodic tails and an
explicit finite window between them, so finite sets, cofinite sets, parity
sets and all their Boolean combinations and translates are represented
exactly.  Values are immutable; every operation is pure and returns a
normalized set, so semantic equality is structural equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Iterable, Iterator

NAT = "nat"
INT = "int"


class GroundMismatchError(ValueError):
    """Raised when an operation mixes values from different ground sets."""


@dataclass(frozen=True)
class Channel:
    name: str
    kind: str  # NAT or INT

    def __post_init__(self):
        if self.kind not in (NAT, INT):
            raise ValueError(f"unknown channel kind {self.kind!r}")

    def contains_value(self, value: int) -> bool:
        return value >= 1 if self.kind == NAT else True


@dataclass(frozen=True)
class GroundSpec:
    atoms: tuple[str, ...]
    channels: tuple[Channel, ...]

    def __post_init__(self):
        if len(set(self.atoms)) != len(self.atoms):
            raise ValueError("atom names must be distinct")
        names = [c.name for c in self.channels]
        if len(set(names)) != len(names):
            raise ValueError("channel names must be distinct")
        if set(self.atoms) & set(names):
            raise ValueError("atom and channel names must not collide")

    def channel(self, name: str | None) -> Channel:
        if name is None:
            if len(self.channels) != 1:
                raise ValueError(
                    "channel name required: ground has "
                    f"{len(self.channels)} channels"
                )
            return self.channels[0]
        for c in self.channels:
            if c.name == name:
                return c
        raise KeyError(f"no channel {name!r} in ground")

    def channel_index(self, name: str) -> int:
        for i, c in enumerate(self.channels):
            if c.name == name:
                return i
        raise KeyError(f"no channel {name!r} in ground")

    def has_atom(self, name: str) -> bool:
        return name in self.atoms


@dataclass(frozen=True)
class Point:
    """A single element of a ground set: either an atom or a channel integer."""

    atom: str | None = None
    channel: str | None = None
    value: int | None = None

    def __post_init__(self):
        if (self.atom is None) == (self.channel is None):
            raise ValueError("a point is either an atom or a channel integer")
        if self.channel is not None and self.value is None:
            raise ValueError("channel point needs a value")

    @property
    def is_atom(self) -> bool:
        return self.atom is not None

    def in_ground(self, ground: GroundSpec) -> bool:
        if self.is_atom:
            return ground.has_atom(self.atom)
        try:
            ch = ground.channel(self.channel)
        except KeyError:
            return False
        return ch.contains_value(self.value)

    def __repr__(self):
        if self.is_atom:
            return f"Point({self.atom})"
        return f"Point({self.value}@{self.channel})"


def atom(name: str) -> Point:
    return Point(atom=name)


def intp(channel: str, value: int) -> Point:
    return Point(channel=channel, value=value)


def _reduce_pattern(period: int, residues: frozenset[int]) -> tuple[int, frozenset[int]]:
    """Smallest divisor d of period such that residues is d-periodic."""
    for d in range(1, period + 1):
        if period % d:
            continue
        if all(((r in residues) == (((r + d) % period) in residues)) for r in range(period)):
            return d, frozenset(r for r in range(d) if r in residues)
    return period, residues


@dataclass(frozen=True)
class ChannelTrace:
    """Membership data of one channel: periodic tails plus a finite window.

    For x >= hi_threshold membership depends only on x mod period via
    hi_residues; for INT channels and x <= lo_threshold it depends on
    lo_residues.  The window records explicit members strictly between the
    thresholds (for NAT, on [1, hi_threshold)).  Instances are normalized:
    minimal period, thresholds pulled inward, window disjoint from tails.
    """

    kind: str
    period: int
    hi_threshold: int
    hi_residues: frozenset[int]
    window: frozenset[int]
    lo_threshold: int | None = None
    lo_residues: frozenset[int] | None = None

    @staticmethod
    def make(
        kind: str,
        period: int,
        hi_threshold: int,
        hi_residues: Iterable[int],
        window: Iterable[int],
        lo_threshold: int | None = None,
        lo_residues: Iterable[int] | None = None,
    ) -> "ChannelTrace":
        if period < 1:
            raise ValueError("period must be >= 1")
        hi_res = frozenset(r % period for r in hi_residues)
        win = set(window)
        if kind == NAT:
            hi = max(hi_threshold, 1)
            if any(x < 1 or x >= hi for x in win):
                raise ValueError("window out of range for NAT trace")
            m, hset = _reduce_pattern(period, hi_res)
            while hi > 1:
                x = hi - 1
                if (x in win) == ((x % m) in hset):
                    win.discard(x)
                    hi = x
                else:
                    break
            return ChannelTrace(NAT, m, hi, hset, frozenset(win))
        if lo_threshold is None or lo_residues is None:
            raise ValueError("INT trace needs lo_threshold and lo_residues")
        lo_res = frozenset(r % period for r in lo_residues)
        hi, lo = hi_threshold, lo_threshold
        if lo >= hi:
            raise ValueError("lo_threshold must be below hi_threshold")
        if any(x <= lo or x >= hi for x in win):
            raise ValueError("window out of range for INT trace")
        # reduce the period jointly so both tails stay consistent
        m = period
        for d in range(1, period + 1):
            if period % d:
                continue
            ok_h = all(((r in hi_res) == (((r + d) % period) in hi_res)) for r in range(period))
            ok_l = all(((r in lo_res) == (((r + d) % period) in lo_res)) for r in range(period))
            if ok_h and ok_l:
                m = d
                break
        hset = frozenset(r for r in range(m) if r in hi_res)
        lset = frozenset(r for r in range(m) if r in lo_res)
        while hi - 1 > lo:
            x = hi - 1
            if (x in win) == ((x % m) in hset):
                win.discard(x)
                hi = x
            else:
                break
        while lo + 1 < hi:
            x = lo + 1
            if (x in win) == ((x % m) in lset):
                win.discard(x)
                lo = x
            else:
                break
        if hi == lo + 1:  # empty window: canonicalize the tail boundary
            if hset == lset:
                hi, lo = 0, -1
            else:
                # slide the boundary down while both tails classify alike;
                # terminates within one period because the patterns differ
                while (((hi - 1) % m) in hset) == (((hi - 1) % m) in lset):
                    hi -= 1
                    lo -= 1
        return ChannelTrace(INT, m, hi, hset, frozenset(win), lo, lset)

    @staticmethod
    def empty(kind: str) -> "ChannelTrace":
        if kind == NAT:
            return ChannelTrace.make(NAT, 1, 1, (), ())
        return ChannelTrace.make(INT, 1, 1, (), (), 0, ())

    @staticmethod
    def full(kind: str) -> "ChannelTrace":
        if kind == NAT:
            return ChannelTrace.make(NAT, 1, 1, (0,), ())
        return ChannelTrace.make(INT, 1, 1, (0,), (), 0, (0,))

    @staticmethod
    def from_values(kind: str, values: Iterable[int]) -> "ChannelTrace":
        vals = set(values)
        if kind == NAT:
            vals = {v for v in vals if v >= 1}
            hi = max(vals) + 1 if vals else 1
            return ChannelTrace.make(NAT, 1, hi, (), vals)
        hi = max(vals) + 1 if vals else 1
        lo = min(vals) - 1 if vals else 0
        return ChannelTrace.make(INT, 1, hi, (), vals, lo, ())

    def member(self, x: int) -> bool:
        if self.kind == NAT and x < 1:
            return False
        if x >= self.hi_threshold:
            return (x % self.period) in self.hi_residues
        if self.kind == INT and x <= self.lo_threshold:
            return (x % self.period) in self.lo_residues
        return x in self.window

    def is_empty(self) -> bool:
        if self.hi_residues or self.window:
            return False
        return not (self.kind == INT and self.lo_residues)

    def is_finite(self) -> bool:
        if self.hi_residues:
            return False
        return not (self.kind == INT and self.lo_residues)

    def finite_values(self) -> frozenset[int]:
        if not self.is_finite():
            raise ValueError("trace is infinite")
        return self.window

    def complement(self) -> "ChannelTrace":
        hi_res = frozenset(r for r in range(self.period) if r not in self.hi_residues)
        if self.kind == NAT:
            win = frozenset(
                x for x in range(1, self.hi_threshold) if x not in self.window
            )
            return ChannelTrace.make(NAT, self.period, self.hi_threshold, hi_res, win)
        lo_res = frozenset(r for r in range(self.period) if r not in self.lo_residues)
        win = frozenset(
            x
            for x in range(self.lo_threshold + 1, self.hi_threshold)
            if x not in self.window
        )
        return ChannelTrace.make(
            INT, self.period, self.hi_threshold, hi_res, win, self.lo_threshold, lo_res
        )

    def combine(self, other: "ChannelTrace", op) -> "ChannelTrace":
        if self.kind != other.kind:
            raise GroundMismatchError("cannot combine NAT and INT traces")
        m = lcm(self.period, other.period)
        hi = max(self.hi_threshold, other.hi_threshold)
        hi_res = frozenset(
            r
            for r in range(m)
            if op((r % self.period) in self.hi_residues, (r % other.period) in other.hi_residues)
        )
        if self.kind == NAT:
            win = frozenset(
                x for x in range(1, hi) if op(self.member(x), other.member(x))
            )
            return ChannelTrace.make(NAT, m, hi, hi_res, win)
        lo = min(self.lo_threshold, other.lo_threshold)
        lo_res = frozenset(
            r
            for r in range(m)
            if op((r % self.period) in self.lo_residues, (r % other.period) in other.lo_residues)
        )
        win = frozenset(
            x for x in range(lo + 1, hi) if op(self.member(x), other.member(x))
        )
        return ChannelTrace.make(INT, m, hi, hi_res, win, lo, lo_res)

    def shift(self, k: int) -> "ChannelTrace":
        m = self.period
        hi_res = frozenset((r + k) % m for r in self.hi_residues)
        if self.kind == NAT:
            hi = self.hi_threshold + k
            win = {x + k for x in self.window}
            if hi < 1:
                hi = 1
            win = {x for x in win if 1 <= x < hi}
            return ChannelTrace.make(NAT, m, hi, hi_res, win)
        lo_res = frozenset((r + k) % m for r in self.lo_residues)
        return ChannelTrace.make(
            INT,
            m,
            self.hi_threshold + k,
            hi_res,
            {x + k for x in self.window},
            self.lo_threshold + k,
            lo_res,
        )

    def affine_image(self, scale: int, offset: int) -> "ChannelTrace":
        """Exact image {scale*x + offset : x in trace}; requires scale >= 1."""
        if scale < 1:
            raise ValueError("scale must be >= 1")
        if scale == 1:
            return self.shift(offset)
        m = self.period * scale
        hi_res = frozenset(
            (scale * r + offset) % m for r in range(self.period) if r in self.hi_residues
        )
        win = {scale * x + offset for x in self.window}
        hi = scale * self.hi_threshold + offset
        # scaled tail members below hi that the residue pattern would misread
        # cannot occur: scale*x+offset >= hi iff x >= hi_threshold
        if self.kind == NAT:
            if hi < 1:
                hi = 1
            win = {x for x in win if 1 <= x < hi}
            return ChannelTrace.make(NAT, m, hi, hi_res, win)
        lo_res = frozenset(
            (scale * r + offset) % m for r in range(self.period) if r in self.lo_residues
        )
        lo = scale * self.lo_threshold + offset
        # scaling leaves gaps between consecutive tail members; those gaps lie
        # in residue classes excluded from hi_res/lo_res, so the pattern is exact
        return ChannelTrace.make(INT, m, hi, hi_res, win, lo, lo_res)

    def min_element(self) -> int | None:
        """Least member, or None when empty or unbounded below (INT lo tail)."""
        if self.kind == INT and self.lo_residues:
            return None
        candidates = []
        if self.window:
            candidates.append(min(self.window))
        if self.hi_residues:
            lo = self.hi_threshold if self.kind == INT else max(self.hi_threshold, 1)
            candidates.append(
                min(x for x in range(lo, lo + self.period) if (x % self.period) in self.hi_residues)
            )
        return min(candidates) if candidates else None

    def max_element(self) -> int | None:
        """Greatest member, or None when empty or unbounded above."""
        if self.hi_residues:
            return None
        candidates = []
        if self.window:
            candidates.append(max(self.window))
        if self.kind == INT and self.lo_residues:
            hi = self.lo_threshold
            candidates.append(
                max(x for x in range(hi - self.period + 1, hi + 1) if (x % self.period) in self.lo_residues)
            )
        return max(candidates) if candidates else None

    def values_in(self, lo: int, hi: int) -> Iterator[int]:
        start = max(lo, 1) if self.kind == NAT else lo
        for x in range(start, hi + 1):
            if self.member(x):
                yield x


@dataclass(frozen=True)
class SymSet:
    """An exact symbolic subset of a ground set."""

    ground: GroundSpec
    atom_members: frozenset[str]
    traces: tuple[ChannelTrace, ...]

    def _check(self, other: "SymSet") -> None:
        if self.ground != other.ground:
            raise GroundMismatchError("sets live over different grounds")

    def trace(self, channel: str | None = None) -> ChannelTrace:
        ch = self.ground.channel(channel)
        return self.traces[self.ground.channel_index(ch.name)]

    def member(self, p: Point) -> bool:
        if not p.in_ground(self.ground):
            raise GroundMismatchError(f"{p!r} not in ground")
        if p.is_atom:
            return p.atom in self.atom_members
        return self.trace(p.channel).member(p.value)

    def __contains__(self, p: Point) -> bool:
        return self.member(p)

    def _zip(self, other: "SymSet", op) -> "SymSet":
        self._check(other)
        traces = tuple(a.combine(b, op) for a, b in zip(self.traces, other.traces))
        atoms = frozenset(
            a for a in self.ground.atoms if op(a in self.atom_members, a in other.atom_members)
        )
        return SymSet(self.ground, atoms, traces)

    def union(self, other: "SymSet") -> "SymSet":
        return self._zip(other, lambda a, b: a or b)

    def inter(self, other: "SymSet") -> "SymSet":
        return self._zip(other, lambda a, b: a and b)

    def diff(self, other: "SymSet") -> "SymSet":
        return self._zip(other, lambda a, b: a and not b)

    def complement(self) -> "SymSet":
        traces = tuple(t.complement() for t in self.traces)
        atoms = frozenset(a for a in self.ground.atoms if a not in self.atom_members)
        return SymSet(self.ground, atoms, traces)

    __or__ = union
    __and__ = inter
    __sub__ = diff

    def __invert__(self) -> "SymSet":
        return self.complement()

    def is_empty(self) -> bool:
        return not self.atom_members and all(t.is_empty() for t in self.traces)

    def is_subset(self, other: "SymSet") -> bool:
        return self.diff(other).is_empty()

    def is_finite(self) -> bool:
        return all(t.is_finite() for t in self.traces)

    def cardinality_if_finite(self) -> int | None:
        if not self.is_finite():
            return None
        return len(self.atom_members) + sum(len(t.finite_values()) for t in self.traces)

    def shift(self, k: int, channel: str | None = None) -> "SymSet":
        ch = self.ground.channel(channel)
        idx = self.ground.channel_index(ch.name)
        traces = list(self.traces)
        traces[idx] = traces[idx].shift(k)
        return SymSet(self.ground, self.atom_members, tuple(traces))

    def affine_image(self, scale: int, offset: int, channel: str | None = None) -> "SymSet":
        ch = self.ground.channel(channel)
        idx = self.ground.channel_index(ch.name)
        traces = list(self.traces)
        traces[idx] = traces[idx].affine_image(scale, offset)
        return SymSet(self.ground, self.atom_members, tuple(traces))

    def min_int_element(self, channel: str | None = None) -> int | None:
        return self.trace(channel).min_element()

    def enumerate_window(self, lo: int, hi: int) -> list[Point]:
        """Brute-force oracle: atoms plus all channel members in [lo, hi]."""
        if lo > hi:
            raise ValueError("lo must not exceed hi")
        pts: list[Point] = [atom(a) for a in self.ground.atoms if a in self.atom_members]
        for ch, tr in zip(self.ground.channels, self.traces):
            pts.extend(intp(ch.name, v) for v in tr.values_in(lo, hi))
        return pts

    def iter_points(self) -> Iterator[Point]:
        """Enumerate a finite set; raises on infinite sets."""
        if not self.is_finite():
            raise ValueError("cannot enumerate an infinite set")
        for a in self.ground.atoms:
            if a in self.atom_members:
                yield atom(a)
        for ch, tr in zip(self.ground.channels, self.traces):
            for v in sorted(tr.finite_values()):
                yield intp(ch.name, v)

    def some_point(self) -> Point | None:
        """A deterministic member (least atom, else a small channel member)."""
        for a in self.ground.atoms:
            if a in self.atom_members:
                return atom(a)
        for ch, tr in zip(self.ground.channels, self.traces):
            if tr.is_empty():
                continue
            v = tr.min_element()
            if v is None:
                v = tr.max_element()
            if v is None:
                # two-sided tails: pick a member of the lower pattern near 0
                for x in range(tr.lo_threshold, tr.lo_threshold - tr.period, -1):
                    if tr.member(x):
                        v = x
                        break
            if v is not None:
                return intp(ch.name, v)
        return None

    def to_dict(self) -> dict:
        out: dict = {"atoms": sorted(self.atom_members), "channels": {}}
        for ch, tr in zip(self.ground.channels, self.traces):
            d = {
                "period": tr.period,
                "hi_threshold": tr.hi_threshold,
                "hi_residues": sorted(tr.hi_residues),
                "window": sorted(tr.window),
            }
            if tr.kind == INT:
                d["lo_threshold"] = tr.lo_threshold
                d["lo_residues"] = sorted(tr.lo_residues)
            out["channels"][ch.name] = d
        return out

    def __repr__(self):
        bits = []
        if self.atom_members:
            bits.append("{" + ",".join(sorted(self.atom_members)) + "}")
        for ch, tr in zip(self.ground.channels, self.traces):
            if tr.is_empty():
                continue
            if tr.is_finite():
                vals = ",".join(str(v) for v in sorted(tr.finite_values()))
                bits.append(f"{ch.name}:{{{vals}}}")
            else:
                bits.append(
                    f"{ch.name}:per{tr.period} hi{tr.hi_threshold}{sorted(tr.hi_residues)}"
                    + (f" lo{tr.lo_threshold}{sorted(tr.lo_residues)}" if tr.kind == INT else "")
                    + (f" w{sorted(tr.window)}" if tr.window else "")
                )
        return "SymSet(" + ("; ".join(bits) if bits else "empty") + ")"


# --- constructors ---------------------------------------------------------


def empty_set(ground: GroundSpec) -> SymSet:
    return SymSet(ground, frozenset(), tuple(ChannelTrace.empty(c.kind) for c in ground.channels))


def whole_set(ground: GroundSpec) -> SymSet:
    return SymSet(
        ground,
        frozenset(ground.atoms),
        tuple(ChannelTrace.full(c.kind) for c in ground.channels),
    )


def atom_set(ground: GroundSpec, names: Iterable[str]) -> SymSet:
    names = frozenset(names)
    for n in names:
        if not ground.has_atom(n):
            raise GroundMismatchError(f"no atom {n!r} in ground")
    return SymSet(ground, names, tuple(ChannelTrace.empty(c.kind) for c in ground.channels))


def _single_channel(ground: GroundSpec, channel: str | None, trace: ChannelTrace) -> SymSet:
    ch = ground.channel(channel)
    traces = [ChannelTrace.empty(c.kind) for c in ground.channels]
    traces[ground.channel_index(ch.name)] = trace
    return SymSet(ground, frozenset(), tuple(traces))


def finite_channel(ground: GroundSpec, values: Iterable[int], channel: str | None = None) -> SymSet:
    ch = ground.channel(channel)
    vals = set(values)
    for v in vals:
        if not ch.contains_value(v):
            raise ValueError(f"value {v} outside {ch.kind} domain")
    return _single_channel(ground, channel, ChannelTrace.from_values(ch.kind, vals))


def cofinite_channel(ground: GroundSpec, excluded: Iterable[int], channel: str | None = None) -> SymSet:
    """All of one channel except finitely many values (atoms not included)."""
    ch = ground.channel(channel)
    full = _single_channel(ground, channel, ChannelTrace.full(ch.kind))
    return full.diff(finite_channel(ground, excluded, channel))


def parity_set(ground: GroundSpec, residue: int, channel: str | None = None) -> SymSet:
    ch = ground.channel(channel)
    if ch.kind == NAT:
        tr = ChannelTrace.make(NAT, 2, 1, (residue,), ())
    else:
        tr = ChannelTrace.make(INT, 2, 1, (residue,), (), 0, (residue,))
    return _single_channel(ground, channel, tr)


def odd_set(ground: GroundSpec, channel: str | None = None) -> SymSet:
    return parity_set(ground, 1, channel)


def even_set(ground: GroundSpec, channel: str | None = None) -> SymSet:
    return parity_set(ground, 0, channel)


def negnat0_set(ground: GroundSpec, channel: str | None = None) -> SymSet:
    """The set {0, -1, -2, ...} inside an INT channel."""
    ch = ground.channel(channel)
    if ch.kind != INT:
        raise ValueError("negnat0 needs an INT channel")
    return _single_channel(ground, channel, ChannelTrace.make(INT, 1, 1, (), (), 0, (0,)))


def upward_set(ground: GroundSpec, start: int, channel: str | None = None) -> SymSet:
    """The half line {x : x >= start} within a channel."""
    ch = ground.channel(channel)
    if ch.kind == NAT:
        tr = ChannelTrace.make(NAT, 1, max(start, 1), (0,), ())
    else:
        tr = ChannelTrace.make(INT, 1, start, (0,), (), start - 1, ())
    return _single_channel(ground, channel, tr)


def point_set(ground: GroundSpec, points: Iterable[Point]) -> SymSet:
    atoms = set()
    per_channel: dict[str, set[int]] = {}
    for p in points:
        if not p.in_ground(ground):
            raise GroundMismatchError(f"{p!r} not in ground")
        if p.is_atom:
            atoms.add(p.atom)
        else:
            per_channel.setdefault(p.channel, set()).add(p.value)
    out = atom_set(ground, atoms)
    for ch_name, vals in per_channel.items():
        out = out.union(finite_channel(ground, vals, ch_name))
    return out


def singleton(ground: GroundSpec, p: Point) -> SymSet:
    return point_set(ground, [p])


def embed(
    s: SymSet,
    new_ground: GroundSpec,
    atom_map: dict[str, str],
    channel_map: dict[str, str],
) -> SymSet:
    """Re-home a set into a larger ground under injective renamings."""
    atoms = frozenset(atom_map[a] for a in s.atom_members)
    traces = [ChannelTrace.empty(c.kind) for c in new_ground.channels]
    for ch, tr in zip(s.ground.channels, s.traces):
        traces[new_ground.channel_index(channel_map[ch.name])] = tr
    return SymSet(new_ground, atoms, tuple(traces))
