"""Exact maximum clique by branch and bound over integer bitsets.

Vertices are renumbered in degeneracy order so that low bits hold the
vertices most likely to finish a large clique early.  Each node colours the
candidate set greedily (one pass of bit intersections per colour class) and
prunes any branch whose colour bound cannot beat the incumbent.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


class Undecided(RuntimeError):
    """The node budget ran out before the search finished.

    ``best`` is the largest clique found so far, so ``len(best)`` is a valid
    lower bound on the clique number.
    """

    def __init__(self, best: Sequence[int], nodes: int):
        super().__init__(f"budget exhausted after {nodes} nodes (best so far {len(best)})")
        self.best = list(best)
        self.nodes = nodes


@dataclass(frozen=True)
class CliqueResult:
    size: int
    witness: tuple[int, ...]
    nodes: int


def degeneracy_order(adj: Sequence[int]) -> list[int]:
    """Smallest-last ordering; the returned list puts high-core vertices first."""
    n = len(adj)
    deg = [a.bit_count() for a in adj]
    alive = (1 << n) - 1
    removed = []
    buckets: dict[int, set[int]] = {}
    for v, d in enumerate(deg):
        buckets.setdefault(d, set()).add(v)
    d = 0
    for _ in range(n):
        d = max(0, d - 1)
        while not buckets.get(d):
            d += 1
        v = min(buckets[d])
        buckets[d].discard(v)
        alive &= ~(1 << v)
        removed.append(v)
        nb = adj[v] & alive
        while nb:
            low = nb & -nb
            u = low.bit_length() - 1
            nb ^= low
            buckets[deg[u]].discard(u)
            deg[u] -= 1
            buckets.setdefault(deg[u], set()).add(u)
    removed.reverse()
    return removed


def _relabel(adj: Sequence[int], order: Sequence[int]) -> list[int]:
    pos = {v: i for i, v in enumerate(order)}
    out = []
    for v in order:
        a, m = adj[v], 0
        while a:
            low = a & -a
            m |= 1 << pos[low.bit_length() - 1]
            a ^= low
        out.append(m)
    return out


def max_clique(
    adj: Sequence[int],
    *,
    budget: int | None = None,
    target: int | None = None,
    lower: int = 0,
) -> CliqueResult:
    """Maximum clique of the graph whose vertex ``v`` has neighbour mask ``adj[v]``.

    ``target`` turns the search into a decision: it stops as soon as a clique
    of that size is found.  ``lower`` asks only for cliques strictly larger
    than a known bound; if none exists the result has size ``lower`` and an
    empty witness.  ``budget`` caps the number of branch nodes and raises
    :class:`Undecided` when exceeded.
    """
    n = len(adj)
    if n == 0:
        return CliqueResult(0, (), 0)
    order = degeneracy_order(adj)
    g = _relabel(adj, order)

    best: list[int] = []
    best_size = lower
    nodes = 0
    stop = False

    def colour_sort(p: int) -> tuple[list[int], list[int]]:
        verts: list[int] = []
        bounds: list[int] = []
        k = 0
        while p:
            k += 1
            q = p
            while q:
                low = q & -q
                v = low.bit_length() - 1
                q &= ~(g[v] | low)
                p ^= low
                verts.append(v)
                bounds.append(k)
        return verts, bounds

    def expand(r: list[int], p: int) -> None:
        nonlocal best, best_size, nodes, stop
        nodes += 1
        if budget is not None and nodes > budget:
            raise Undecided([order[v] for v in best], nodes)
        verts, bounds = colour_sort(p)
        for i in range(len(verts) - 1, -1, -1):
            if len(r) + bounds[i] <= best_size:
                return
            v = verts[i]
            r.append(v)
            np_ = p & g[v]
            if np_:
                expand(r, np_)
            elif len(r) > best_size:
                best, best_size = list(r), len(r)
                if target is not None and best_size >= target:
                    stop = True
            r.pop()
            if stop:
                return
            p &= ~(1 << v)

    expand([], (1 << n) - 1)
    return CliqueResult(best_size, tuple(sorted(order[v] for v in best)), nodes)


def has_clique_through(adj: Sequence[int], candidates: int, size: int) -> list[int] | None:
    """Find ``size`` pairwise-adjacent vertices inside the bitset ``candidates``.

    Returns the vertices or ``None``.  Meant for the small sizes that arise
    in incremental search, so it uses plain popcount pruning.
    """
    if size <= 0:
        return []

    def rec(p: int, need: int) -> list[int] | None:
        if need == 0:
            return []
        while p:
            if p.bit_count() < need:
                return None
            low = p & -p
            v = low.bit_length() - 1
            p ^= low
            rest = rec(p & adj[v], need - 1)
            if rest is not None:
                return [v] + rest
        return None

    return rec(candidates, size)
