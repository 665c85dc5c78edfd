"""Depth-first search for distance colourings avoiding given clique sizes.

Lengths are assigned one at a time.  After each assignment only cliques
through an edge of the new length can have appeared, so the feasibility test
looks for a monochromatic K_k containing the edge {0, x}: its other k-2
vertices y satisfy |y|, |y - x| in D_s and are pairwise at distances in D_s.
Vertices may be negative here; the span of any clique is one of its own
distances, so it always fits inside K_N after translation.

Each colour keeps one integer bitset ``S_s`` with bit ``N + y`` set for every
y in D_s and -y in -D_s, which turns all of these tests into shifts and ANDs.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence

from .clique import Undecided
from .core import CYCLIC, LINEAR, MODES, ColoringError, DistanceColoring, KVector, stored_range
from .verifier import Certificate, verify

ASCENDING = "ascending"


@dataclass(frozen=True)
class SearchConfig:
    """Everything that determines a search, and hence its emission order.

    ``min_distance`` maps a colour to the smallest stored length it may take.
    ``ordering`` is ``"ascending"`` or an explicit sequence of stored lengths.
    ``seed`` is a partial colouring whose assignments are fixed up front.
    """

    order: int
    mode: str
    avoid: KVector
    min_distance: Mapping[int, int] = field(default_factory=dict)
    max_solutions: int | None = None
    node_budget: int | None = None
    seed: DistanceColoring | None = None
    ordering: str | tuple[int, ...] = ASCENDING
    symmetry_breaking: bool = True
    forward_check: bool = False

    def __post_init__(self) -> None:
        if not isinstance(self.avoid, KVector):
            object.__setattr__(self, "avoid", KVector(tuple(self.avoid)))
        object.__setattr__(self, "min_distance", dict(self.min_distance))
        if not isinstance(self.ordering, str):
            object.__setattr__(self, "ordering", tuple(self.ordering))

    @property
    def num_colors(self) -> int:
        return len(self.avoid)

    def lengths(self) -> list[int]:
        rng = stored_range(self.order, self.mode)
        if self.ordering == ASCENDING:
            return list(rng)
        if isinstance(self.ordering, str):
            raise ValueError(f"unknown ordering {self.ordering!r}")
        if sorted(self.ordering) != list(rng):
            raise ValueError("custom ordering must be a permutation of the stored lengths")
        return list(self.ordering)


@dataclass
class SearchStats:
    nodes: int = 0
    solutions: int = 0
    exhaustive: bool = False
    budget_exhausted: bool = False
    symmetry_classes: list[tuple[int, ...]] = field(default_factory=list)
    seconds: float = 0.0

    def summary(self) -> str:
        state = "exhaustive" if self.exhaustive else (
            "budget exhausted" if self.budget_exhausted else "stopped early")
        sym = ("symmetry breaking on " + " ".join("{" + ",".join(map(str, c)) + "}"
                                                for c in self.symmetry_classes)
               if self.symmetry_classes else "no symmetry breaking")
        return (f"{self.nodes} nodes, {self.solutions} solutions, {state}, {sym}, "
                f"{self.seconds:.2f}s")


def _shift(x: int, t: int) -> int:
    return x << t if t >= 0 else x >> -t


def _closes_clique(S: int, x: int, need: int, n: int) -> bool:
    """True iff some ``need`` pairwise-compatible y complete a clique through {0, x}."""
    if need <= 0:
        return True
    cand = S & (S << x)
    if cand.bit_count() < need:
        return False

    def rec(p: int, k: int) -> bool:
        if k == 0:
            return True
        while p:
            if p.bit_count() < k:
                return False
            low = p & -p
            pos = low.bit_length() - 1
            p ^= low
            if rec(p & _shift(S, pos - n), k - 1):
                return True
        return False

    return rec(cand, need)


def _check_config(cfg: SearchConfig) -> tuple[list[int], dict[int, int]]:
    """Validate ``cfg``; return the free lengths in branching order and the seed table."""
    if cfg.mode not in MODES:
        raise ValueError(f"unknown mode {cfg.mode!r}")
    if cfg.order < 2:
        raise ValueError("order must be at least 2")
    r = cfg.num_colors
    for s, d in cfg.min_distance.items():
        if not 1 <= s <= r:
            raise ValueError(f"threshold for unknown colour {s}")
        if not 1 <= d <= cfg.order - 1:
            raise ValueError(f"threshold {d} for colour {s} outside 1..{cfg.order - 1}")
    rng = stored_range(cfg.order, cfg.mode)
    seeded: dict[int, int] = {}
    if cfg.seed is not None:
        sd = cfg.seed
        if sd.order != cfg.order or sd.mode != cfg.mode:
            raise ValueError("seed order/mode differ from the search")
        for s, ls in sd.classes.items():
            if ls and not 1 <= s <= r:
                raise ValueError(f"seed uses colour {s} beyond {r} colours")
            for l in ls:
                if l not in rng:
                    raise ValueError(f"seed length {l} outside stored range")
                if l in seeded:
                    raise ValueError(f"seed assigns length {l} twice")
                if l < cfg.min_distance.get(s, 1):
                    raise ValueError(f"seed puts colour {s} at length {l}, below its threshold")
                seeded[l] = s
    free = [l for l in cfg.lengths() if l not in seeded]
    dead = [l for l in free if all(l < cfg.min_distance.get(s, 1) for s in range(1, r + 1))]
    if dead:
        raise ColoringError(f"unsatisfiable thresholds: no colour permitted at lengths {dead[:10]}")
    return free, seeded


def _symmetry_classes(cfg: SearchConfig, seeded: Mapping[int, int]) -> list[tuple[int, ...]]:
    """Groups of interchangeable colours: same k, same threshold, absent from the seed."""
    used = set(seeded.values())
    groups: dict[tuple[int, int], list[int]] = {}
    for s in range(1, cfg.num_colors + 1):
        if s not in used:
            groups.setdefault((cfg.avoid[s - 1], cfg.min_distance.get(s, 1)), []).append(s)
    return [tuple(g) for g in groups.values() if len(g) > 1]


class SearchRun:
    """Iterable over verified solutions; ``stats`` is updated as it runs."""

    def __init__(self, cfg: SearchConfig):
        self.cfg = cfg
        self.free, self.seeded = _check_config(cfg)
        self.stats = SearchStats()
        self.classes = _symmetry_classes(cfg, self.seeded) if cfg.symmetry_breaking else []
        self.stats.symmetry_classes = list(self.classes)
        # colour -> colour that must already be in use before it may appear
        self.pred: dict[int, int] = {}
        for cls in self.classes:
            for a, b in zip(cls, cls[1:]):
                self.pred[b] = a

    def _images(self, l: int) -> tuple[int, ...]:
        n = self.cfg.order
        if self.cfg.mode == CYCLIC and n - l != l:
            return (l, n - l)
        return (l,)

    def __iter__(self) -> Iterator[Certificate]:
        cfg = self.cfg
        n, r = cfg.order, cfg.num_colors
        need = [0] + [k - 2 for k in cfg.avoid]
        floor = [0] + [cfg.min_distance.get(s, 1) for s in range(1, r + 1)]
        S = [0] * (r + 1)
        used = [0] * (r + 1)
        assign: dict[int, int] = {}
        start = time.perf_counter()

        def place(l: int, s: int) -> bool:
            for x in self._images(l):
                S[s] |= (1 << (n + x)) | (1 << (n - x))
            return not any(_closes_clique(S[s], x, need[s], n) for x in self._images(l))

        for l in sorted(self.seeded):
            s = self.seeded[l]
            used[s] += 1
            assign[l] = s
            if not place(l, s):
                self.stats.exhaustive = True
                self.stats.seconds = time.perf_counter() - start
                return

        free = self.free
        emitted = 0
        # allowed colours per free length (bit s), narrowed by forward checking
        dom = {l: sum(1 << s for s in range(1, r + 1) if l >= floor[s]) for l in free}

        def would_close(l: int, s: int) -> bool:
            T = S[s]
            for x in self._images(l):
                T |= (1 << (n + x)) | (1 << (n - x))
            return any(_closes_clique(T, x, need[s], n) for x in self._images(l))

        if cfg.forward_check:
            for l in free:
                for s in range(1, r + 1):
                    if dom[l] >> s & 1 and would_close(l, s):
                        dom[l] &= ~(1 << s)
            if any(not d for d in dom.values()):
                self.stats.exhaustive = True
                self.stats.seconds = time.perf_counter() - start
                return

        def narrow(i: int, s: int) -> list[int] | None:
            """Drop colour s where it now closes a clique; None on a wipeout."""
            hit = []
            for l2 in free[i + 1:]:
                if dom[l2] >> s & 1 and would_close(l2, s):
                    dom[l2] &= ~(1 << s)
                    hit.append(l2)
                    if not dom[l2]:
                        for h in hit:
                            dom[h] |= 1 << s
                        return None
            return hit

        def dfs(i: int) -> Iterator[Certificate]:
            nonlocal emitted
            if i == len(free):
                c = DistanceColoring.from_table(n, cfg.mode, assign, r)
                cert = verify(c, cfg.avoid, provenance=("search",))
                if not cert.satisfied:
                    raise AssertionError(f"search pruning let through a bad colouring: {cert.violations()}")
                emitted += 1
                self.stats.solutions = emitted
                yield cert
                return
            l = free[i]
            for s in range(1, r + 1):
                if not dom[l] >> s & 1:
                    continue
                p = self.pred.get(s)
                if p is not None and not used[p]:
                    continue
                self.stats.nodes += 1
                if cfg.node_budget is not None and self.stats.nodes > cfg.node_budget:
                    self.stats.budget_exhausted = True
                    raise _Stop
                saved = S[s]
                if place(l, s):
                    hit = narrow(i, s) if cfg.forward_check else []
                    if hit is not None:
                        assign[l] = s
                        used[s] += 1
                        yield from dfs(i + 1)
                        used[s] -= 1
                        del assign[l]
                        for h in hit:
                            dom[h] |= 1 << s
                S[s] = saved
                if cfg.max_solutions is not None and emitted >= cfg.max_solutions:
                    raise _Stop

        try:
            yield from dfs(0)
            self.stats.exhaustive = True
        except _Stop:
            pass
        finally:
            self.stats.seconds = time.perf_counter() - start


class _Stop(Exception):
    pass


def search(cfg: SearchConfig) -> SearchRun:
    """Start a search.  Iterate the result for certificates; read ``.stats`` after.

    Solutions come out in a fixed order: lengths in ``cfg.ordering``, colours
    by increasing id.  Every solution is re-verified before it is yielded.
    """
    return SearchRun(cfg)


def exhaustive_nonexistence(cfg: SearchConfig) -> bool:
    """True iff no colouring of this order and mode avoids ``cfg.avoid``.

    Thresholds and seeds restrict the tree, so they are refused.  Running out
    of ``cfg.node_budget`` raises :class:`Undecided` rather than answering.
    """
    if cfg.min_distance or cfg.seed is not None:
        raise ValueError("a nonexistence proof must search the full tree (no thresholds, no seed)")
    run = SearchRun(SearchConfig(cfg.order, cfg.mode, cfg.avoid, {}, 1, cfg.node_budget,
                                 None, cfg.ordering, cfg.symmetry_breaking,
                                 cfg.forward_check))
    found = next(iter(run), None)
    if found is not None:
        return False
    if not run.stats.exhaustive:
        raise Undecided([], run.stats.nodes)
    return True


def brute_force(order: int, mode: str, avoid: KVector | Sequence[int]) -> list[DistanceColoring]:
    """Every colouring of the stored lengths that verifies against ``avoid``; tiny orders only."""
    import itertools

    avoid = avoid if isinstance(avoid, KVector) else KVector(tuple(avoid))
    rng = list(stored_range(order, mode))
    r = len(avoid)
    if r ** len(rng) > 2_000_000:
        raise ValueError("brute force space too large")
    out = []
    for combo in itertools.product(range(1, r + 1), repeat=len(rng)):
        c = DistanceColoring.from_table(order, mode, dict(zip(rng, combo)), r)
        if verify(c, avoid).satisfied:
            out.append(c)
    return out


__all__ = ["ASCENDING", "LINEAR", "CYCLIC", "SearchConfig", "SearchRun", "SearchStats",
           "brute_force", "exhaustive_nonexistence", "search"]
