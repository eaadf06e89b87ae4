"""Independent brute-force oracle for symbolic set expressions.

Expression trees are tuples; the oracle evaluates membership pointwise from
leaf definitions alone, never through the SymSet algebra, so it can be used
to cross-check every SymSet operation.
"""

from __future__ import annotations

from math import lcm

from topofix import setalg
from topofix.setalg import NAT, GroundSpec, Point, SymSet

# leaves: ("empty",) ("all",) ("finite", ch, vals) ("cofinite", ch, vals)
#         ("odd", ch) ("even", ch) ("negnat0", ch) ("atoms", names)
# nodes:  ("union", a, b) ("inter", a, b) ("compl", a) ("shift", a, ch, k)


def oracle_member(tree, ground: GroundSpec, p: Point) -> bool:
    op = tree[0]
    if op == "empty":
        return False
    if op == "all":
        return True
    if op == "atoms":
        return p.is_atom and p.atom in tree[1]
    if op == "finite":
        return (not p.is_atom) and p.channel == tree[1] and p.value in tree[2]
    if op == "cofinite":
        # complement of a finite channel set within the whole ground
        return not oracle_member(("finite", tree[1], tree[2]), ground, p)
    if op == "odd":
        return (not p.is_atom) and p.channel == tree[1] and p.value % 2 == 1
    if op == "even":
        return (not p.is_atom) and p.channel == tree[1] and p.value % 2 == 0
    if op == "negnat0":
        return (not p.is_atom) and p.channel == tree[1] and p.value <= 0
    if op == "union":
        return oracle_member(tree[1], ground, p) or oracle_member(tree[2], ground, p)
    if op == "inter":
        return oracle_member(tree[1], ground, p) and oracle_member(tree[2], ground, p)
    if op == "compl":
        return not oracle_member(tree[1], ground, p)
    if op == "shift":
        _, sub, ch, k = tree
        if p.is_atom or p.channel != ch:
            return oracle_member(sub, ground, p)
        src = p.value - k
        kind = ground.channel(ch).kind
        if kind == NAT and src < 1:
            return False
        return oracle_member(sub, ground, Point(channel=ch, value=src))
    raise ValueError(f"unknown oracle node {op!r}")


def eval_tree(tree, ground: GroundSpec) -> SymSet:
    """Evaluate an expression tree through the SymSet algebra under test."""
    op = tree[0]
    if op == "empty":
        return setalg.empty_set(ground)
    if op == "all":
        return setalg.whole_set(ground)
    if op == "atoms":
        return setalg.atom_set(ground, tree[1])
    if op == "finite":
        return setalg.finite_channel(ground, tree[2], tree[1])
    if op == "cofinite":
        return setalg.finite_channel(ground, tree[2], tree[1]).complement()
    if op == "odd":
        return setalg.odd_set(ground, tree[1])
    if op == "even":
        return setalg.even_set(ground, tree[1])
    if op == "negnat0":
        return setalg.negnat0_set(ground, tree[1])
    if op == "union":
        return eval_tree(tree[1], ground).union(eval_tree(tree[2], ground))
    if op == "inter":
        return eval_tree(tree[1], ground).inter(eval_tree(tree[2], ground))
    if op == "compl":
        return eval_tree(tree[1], ground).complement()
    if op == "shift":
        return eval_tree(tree[1], ground).shift(tree[3], tree[2])
    raise ValueError(f"unknown node {op!r}")


def collect_sets(tree, ground: GroundSpec, acc: list[SymSet]) -> SymSet:
    """Evaluate while recording every intermediate SymSet."""
    op = tree[0]
    if op in ("union", "inter"):
        a = collect_sets(tree[1], ground, acc)
        b = collect_sets(tree[2], ground, acc)
        s = a.union(b) if op == "union" else a.inter(b)
    elif op == "compl":
        s = collect_sets(tree[1], ground, acc).complement()
    elif op == "shift":
        s = collect_sets(tree[1], ground, acc).shift(tree[3], tree[2])
    else:
        s = eval_tree(tree, ground)
    acc.append(s)
    return s


def window_bound(sets: list[SymSet]) -> int:
    """T = max threshold magnitude + 2 * lcm of all periods, over all traces."""
    thresh = 1
    period = 1
    for s in sets:
        for tr in s.traces:
            thresh = max(thresh, abs(tr.hi_threshold))
            if tr.kind == setalg.INT:
                thresh = max(thresh, abs(tr.lo_threshold))
            if tr.window:
                thresh = max(thresh, max(abs(x) for x in tr.window))
            period = lcm(period, tr.period)
    return thresh + 2 * period


def agree_on_window(tree, ground: GroundSpec) -> tuple[bool, Point | None]:
    """Compare algebra result vs pointwise oracle on the derived window."""
    acc: list[SymSet] = []
    result = collect_sets(tree, ground, acc)
    bound = window_bound(acc)
    points = [setalg.atom(a) for a in ground.atoms]
    for ch in ground.channels:
        lo = 1 if ch.kind == NAT else -bound
        points.extend(setalg.intp(ch.name, v) for v in range(lo, bound + 1))
    for p in points:
        if result.member(p) != oracle_member(tree, ground, p):
            return False, p
    return True, None
