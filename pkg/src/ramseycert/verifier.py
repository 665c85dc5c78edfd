"""Clique numbers of distance colourings and Ramsey certificates.

A linear colouring contains a monochromatic K_k in colour s exactly when the
expanded length set D_s holds k-1 lengths whose pairwise differences also lie
in D_s: translate the clique so its first vertex is 0, and its other vertices
are those lengths.  The clique number in colour s is therefore one more than
the clique number of the *difference graph* on D_s (u ~ v iff |u - v| in D_s).

Cyclic colourings go through the same path via their linear expansion.
"""
from __future__ import annotations

import datetime as _dt
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .clique import CliqueResult, Undecided, max_clique
from .core import (
    DEFAULT_EXPLICIT_CAP,
    ColoringError,
    DistanceColoring,
    ExplicitCapError,
    ExplicitColoring,
    KVector,
    require_valid,
)

SATISFIED = "satisfied"
VIOLATED = "violated"
UNDECIDED = "undecided"


def difference_graph(lengths: Iterable[int]) -> tuple[list[int], list[int]]:
    """Vertices (sorted lengths) and neighbour bitmasks of the difference graph.

    Bit ``j`` of ``adj[i]`` is set iff ``|D[i] - D[j]|`` is in ``D``.
    """
    verts = sorted(set(lengths))
    if not verts:
        return [], []
    top = verts[-1]
    dmask = 0
    for d in verts:
        dmask |= 1 << d
    # reversed copy: bit (top - d) for d in D, so u - d lands at bit u - d after a shift
    rmask = 0
    for d in verts:
        rmask |= 1 << (top - d)
    pos = {d: i for i, d in enumerate(verts)}
    adj = []
    for u in verts:
        up = (dmask << u) | (rmask >> (top - u))
        hits = up & dmask & ~(1 << u)
        m = 0
        while hits:
            low = hits & -hits
            m |= 1 << pos[low.bit_length() - 1]
            hits ^= low
        adj.append(m)
    return verts, adj


def _color_clique(lengths: frozenset[int], budget: int | None) -> CliqueResult:
    verts, adj = difference_graph(lengths)
    if not verts:
        return CliqueResult(0, (), 0)
    res = max_clique(adj, budget=budget)
    return CliqueResult(res.size + 1, (0,) + tuple(verts[i] for i in res.witness), res.nodes)


def clique_witness(c: DistanceColoring, s: int, budget: int | None = None) -> CliqueResult:
    """Exact clique number of colour ``s`` with a maximum clique as vertex set.

    The witness lists vertices of K_N (``0`` plus lengths).  Unused colours
    have clique number 0 and an empty witness.
    """
    require_valid(c)
    if not 1 <= s <= c.num_colors:
        raise ColoringError(f"unknown colour {s}")
    return _color_clique(c.expanded_sets[s], budget)


def clique_number_color(c: DistanceColoring, s: int, budget: int | None = None) -> int:
    return clique_witness(c, s, budget).size


def _worker(args: tuple[frozenset[int], int | None]) -> CliqueResult | tuple[str, list[int], int]:
    lengths, budget = args
    try:
        return _color_clique(lengths, budget)
    except Undecided as exc:
        return ("undecided", exc.best, exc.nodes)


@dataclass
class Certificate:
    """A colouring together with its verified per-colour clique numbers.

    ``clique_numbers[s-1]`` is ``None`` for a colour whose search ran out of
    budget; ``lower_bounds`` then holds the best clique size seen.
    """

    coloring: DistanceColoring
    clique_numbers: tuple[int | None, ...]
    claimed: KVector | None = None
    provenance: tuple[str, ...] = ()
    verified_at: str = ""
    witnesses: dict[int, tuple[int, ...]] = field(default_factory=dict)
    lower_bounds: tuple[int, ...] = ()

    @property
    def status(self) -> str:
        if self.claimed is None:
            return UNDECIDED if None in self.clique_numbers else SATISFIED
        for s, k in enumerate(self.claimed, start=1):
            w = self.clique_numbers[s - 1]
            lb = self.lower_bounds[s - 1] if self.lower_bounds else 0
            if (w is not None and w >= k) or lb >= k:
                return VIOLATED
        if None in self.clique_numbers:
            return UNDECIDED
        return SATISFIED

    @property
    def satisfied(self) -> bool:
        return self.status == SATISFIED

    def violations(self) -> list[tuple[int, tuple[int, ...]]]:
        """(colour, clique vertex set) for each colour breaking its bound."""
        if self.claimed is None:
            return []
        out = []
        for s, k in enumerate(self.claimed, start=1):
            w = self.clique_numbers[s - 1]
            lb = self.lower_bounds[s - 1] if self.lower_bounds else 0
            if (w is not None and w >= k) or lb >= k:
                out.append((s, self.witnesses.get(s, ())))
        return out

    def with_provenance(self, *steps: str) -> Certificate:
        return Certificate(
            self.coloring, self.clique_numbers, self.claimed,
            self.provenance + tuple(steps), self.verified_at, dict(self.witnesses),
            self.lower_bounds,
        )


def verify(
    c: DistanceColoring,
    k: KVector | Sequence[int] | None = None,
    *,
    budget: int | None = None,
    workers: int = 1,
    provenance: Sequence[str] = (),
) -> Certificate:
    """Compute every colour's clique number and check it against ``k``.

    With ``workers > 1`` the colours are searched in separate processes;
    results do not depend on scheduling.
    """
    require_valid(c)
    if k is not None and not isinstance(k, KVector):
        k = KVector(tuple(k))
    if k is not None and len(k) != c.num_colors:
        raise ColoringError(f"k-vector has {len(k)} entries but colouring has {c.num_colors} colours")
    jobs = [(c.expanded_sets[s], budget) for s in range(1, c.num_colors + 1)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as pool:
            results = list(pool.map(_worker, jobs))
    else:
        results = [_worker(j) for j in jobs]

    numbers: list[int | None] = []
    lows: list[int] = []
    witnesses: dict[int, tuple[int, ...]] = {}
    for s, res in enumerate(results, start=1):
        if isinstance(res, tuple):
            _, best, _ = res
            verts = sorted(c.expanded_sets[s])
            numbers.append(None)
            lows.append(len(best) + 1)
            witnesses[s] = (0,) + tuple(sorted(verts[i] for i in best))
        else:
            numbers.append(res.size)
            lows.append(res.size)
            witnesses[s] = res.witness
    stamp = _dt.datetime.now(_dt.timezone.utc).replace(microsecond=0).isoformat()
    return Certificate(c, tuple(numbers), k, tuple(provenance), stamp, witnesses, tuple(lows))


def explicit_clique(e: ExplicitColoring, s: int, *, cap: int = DEFAULT_EXPLICIT_CAP,
                    budget: int | None = None) -> CliqueResult:
    """Maximum clique of the colour-``s`` subgraph, searched over vertices."""
    if e.order > cap:
        raise ExplicitCapError(f"order {e.order} exceeds explicit cap {cap}")
    if not 1 <= s <= e.num_colors:
        raise ColoringError(f"unknown colour {s}")
    adj = []
    for row in (e.matrix == s):
        m = 0
        for j in row.nonzero()[0]:
            m |= 1 << int(j)
        adj.append(m)
    if not any(adj):
        # same convention as distance colourings: an absent colour scores 0
        return CliqueResult(0, (), 0)
    return max_clique(adj, budget=budget)


def explicit_clique_number(e: ExplicitColoring, s: int, *, cap: int = DEFAULT_EXPLICIT_CAP) -> int:
    return explicit_clique(e, s, cap=cap).size
