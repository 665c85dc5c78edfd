"""Distance colourings of complete graphs and their explicit expansions.

A *linear* colouring of K_N gives each edge {i, j} the colour of its length
|j - i|.  A *cyclic* colouring additionally satisfies c(l) = c(N - l), so only
the lengths 1..N//2 are stored and the rest follow by reflection.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

import numpy as np

LINEAR = "linear"
CYCLIC = "cyclic"
MODES = (LINEAR, CYCLIC)

DEFAULT_EXPLICIT_CAP = 256


class ColoringError(ValueError):
    """Raised when an operation needs a valid colouring and did not get one."""


class ExplicitCapError(ColoringError):
    """Raised instead of building an explicit matrix above the order cap."""


def stored_range(order: int, mode: str) -> range:
    if mode == CYCLIC:
        return range(1, order // 2 + 1)
    return range(1, order)


@dataclass(frozen=True)
class DistanceColoring:
    """Colour classes of edge lengths for a linear or cyclic colouring.

    ``classes`` maps a 1-based colour id to the set of *stored* lengths with
    that colour.  Instances may be invalid (missing or duplicated lengths);
    :func:`validate` reports what is wrong and every operation that needs
    a sound colouring checks it first.
    """

    order: int
    mode: str
    classes: Mapping[int, frozenset[int]]
    num_colors: int

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        frozen = {int(s): frozenset(int(x) for x in ls) for s, ls in self.classes.items()}
        for s in range(1, self.num_colors + 1):
            frozen.setdefault(s, frozenset())
        object.__setattr__(self, "classes", MappingProxyType(dict(sorted(frozen.items()))))

    def __hash__(self) -> int:
        return hash((self.order, self.mode, self.num_colors, tuple(self.classes.items())))

    def __reduce__(self):
        return (DistanceColoring, (self.order, self.mode, dict(self.classes), self.num_colors))

    @classmethod
    def from_sets(
        cls,
        order: int,
        mode: str,
        sets: Sequence[Iterable[int]] | Mapping[int, Iterable[int]],
        num_colors: int | None = None,
    ) -> DistanceColoring:
        """Build from per-colour length sets (a sequence is read as colours 1, 2, ...)."""
        if isinstance(sets, Mapping):
            classes = {int(s): frozenset(ls) for s, ls in sets.items()}
        else:
            classes = {i + 1: frozenset(ls) for i, ls in enumerate(sets)}
        if num_colors is None:
            num_colors = max(classes, default=0)
        return cls(order, mode, classes, num_colors)

    @classmethod
    def from_table(
        cls, order: int, mode: str, colors: Mapping[int, int], num_colors: int | None = None
    ) -> DistanceColoring:
        """Build from a ``{length: colour}`` map.

        In cyclic mode lengths above N//2 may be present; they are folded onto
        their reflection and must agree with it.
        """
        classes: dict[int, set[int]] = {}
        seen: dict[int, int] = {}
        for length, colour in colors.items():
            if mode == CYCLIC and length > order // 2:
                length = order - length
            if length in seen:
                if seen[length] != colour:
                    raise ColoringError(
                        f"length {length} coloured {seen[length]} and {colour} under reflection"
                    )
                continue
            seen[length] = colour
            classes.setdefault(colour, set()).add(length)
        if num_colors is None:
            num_colors = max(classes, default=0)
        for s in range(1, num_colors + 1):
            classes.setdefault(s, set())
        return cls(order, mode, {s: frozenset(v) for s, v in classes.items()}, num_colors)

    def color_set(self, s: int) -> frozenset[int]:
        """Stored lengths of colour ``s`` (empty if the colour is unused)."""
        return self.classes.get(s, frozenset())

    @cached_property
    def table(self) -> tuple[int, ...]:
        """Expanded colour per length; index 0 is a 0 placeholder."""
        require_valid(self)
        t = [0] * self.order
        for s, ls in self.classes.items():
            for l in ls:
                t[l] = s
                if self.mode == CYCLIC:
                    t[self.order - l] = s
        return tuple(t)

    @cached_property
    def expanded_sets(self) -> tuple[frozenset[int], ...]:
        """Expanded length set per colour; index 0 is empty."""
        out: list[set[int]] = [set() for _ in range(self.num_colors + 1)]
        for l, s in enumerate(self.table):
            if l:
                out[s].add(l)
        return tuple(frozenset(x) for x in out)

    def as_linear(self) -> DistanceColoring:
        """The same colouring viewed as linear (every cyclic colouring is linear)."""
        if self.mode == LINEAR:
            return self
        return DistanceColoring.from_sets(
            self.order, LINEAR, {s: self.expanded_sets[s] for s in range(1, self.num_colors + 1)},
            self.num_colors,
        )


@dataclass(frozen=True)
class KVector:
    """Avoidance targets (k_1, ..., k_r): no monochromatic K_{k_s} in colour s."""

    bounds: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "bounds", tuple(int(k) for k in self.bounds))
        if not self.bounds:
            raise ValueError("empty k-vector")
        bad = [k for k in self.bounds if k < 2]
        if bad:
            raise ValueError(f"k-vector entries must be >= 2, got {bad}")

    @classmethod
    def parse(cls, text: str) -> KVector:
        return cls(tuple(int(x) for x in text.replace(",", " ").split()))

    def __len__(self) -> int:
        return len(self.bounds)

    def __iter__(self):
        return iter(self.bounds)

    def __getitem__(self, i: int) -> int:
        return self.bounds[i]

    def __str__(self) -> str:
        return ",".join(map(str, self.bounds))


@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        return "ok" if self.ok else "; ".join(self.violations)


def validate(c: DistanceColoring) -> ValidationReport:
    report = ValidationReport()
    if c.order < 1:
        report.violations.append(f"order {c.order} is not positive")
        return report
    if c.num_colors < 1:
        report.violations.append(f"colour count {c.num_colors} is not positive")
    wanted = stored_range(c.order, c.mode)
    owner: dict[int, int] = {}
    for s, ls in c.classes.items():
        if not 1 <= s <= c.num_colors:
            report.violations.append(f"colour {s} out of range 1..{c.num_colors}")
        for l in sorted(ls):
            if l not in wanted:
                report.violations.append(f"length {l} (colour {s}) outside stored range "
                                         f"{wanted.start}..{wanted.stop - 1}")
            elif l in owner:
                report.violations.append(f"length {l} assigned twice (colours {owner[l]} and {s})")
            else:
                owner[l] = s
    for l in wanted:
        if l not in owner:
            report.violations.append(f"length {l} unassigned")
    return report


def require_valid(c: DistanceColoring) -> None:
    report = validate(c)
    if not report.ok:
        raise ColoringError(f"invalid colouring: {report}")


def expand(c: DistanceColoring) -> dict[int, int]:
    """Total ``{length: colour}`` map over 1..N-1."""
    return {l: s for l, s in enumerate(c.table) if l}


def color_degree(c: DistanceColoring, s: int) -> int:
    """Number of lengths of colour ``s``; the degree of every vertex when cyclic."""
    if not 1 <= s <= c.num_colors:
        raise ColoringError(f"unknown colour {s} (colouring has {c.num_colors})")
    return len(c.expanded_sets[s])


@dataclass(frozen=True, eq=False)
class ExplicitColoring:
    """Dense symmetric edge-colour matrix; the diagonal holds 0."""

    matrix: np.ndarray
    num_colors: int

    def __post_init__(self) -> None:
        m = np.array(self.matrix, dtype=np.int16, copy=True)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ColoringError("edge-colour matrix must be square")
        if not np.array_equal(m, m.T):
            raise ColoringError("edge-colour matrix must be symmetric")
        if np.any(np.diag(m) != 0):
            raise ColoringError("diagonal must be 0")
        off = m[~np.eye(len(m), dtype=bool)]
        if off.size and (off.min() < 1 or off.max() > self.num_colors):
            raise ColoringError(f"edge colours must lie in 1..{self.num_colors}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def order(self) -> int:
        return int(self.matrix.shape[0])

    def edge_color(self, u: int, v: int) -> int:
        return int(self.matrix[u, v])

    def degree(self, v: int, s: int) -> int:
        return int(np.count_nonzero(self.matrix[v] == s))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExplicitColoring):
            return NotImplemented
        return self.num_colors == other.num_colors and np.array_equal(self.matrix, other.matrix)

    __hash__ = None  # type: ignore[assignment]


def to_explicit(c: DistanceColoring, cap: int = DEFAULT_EXPLICIT_CAP) -> ExplicitColoring:
    require_valid(c)
    if c.order > cap:
        raise ExplicitCapError(f"order {c.order} exceeds explicit cap {cap}")
    idx = np.arange(c.order)
    lengths = np.abs(idx[:, None] - idx[None, :])
    return ExplicitColoring(np.asarray(c.table, dtype=np.int16)[lengths], c.num_colors)


def induced(e: ExplicitColoring, vertices: Sequence[int]) -> ExplicitColoring:
    """Subcolouring on ``vertices``, relabelled 0..len-1 in the given order."""
    vs = [int(v) for v in vertices]
    for v in vs:
        if not 0 <= v < e.order:
            raise ColoringError(f"vertex {v} out of range 0..{e.order - 1}")
    if len(set(vs)) != len(vs):
        raise ColoringError("repeated vertex in induced vertex set")
    return ExplicitColoring(e.matrix[np.ix_(vs, vs)], e.num_colors)


def neighbourhood(c: DistanceColoring, s: int, v: int = 0) -> list[int]:
    """Vertices joined to ``v`` by an edge of colour ``s``, ascending."""
    if not 0 <= v < c.order:
        raise ColoringError(f"vertex {v} out of range 0..{c.order - 1}")
    t = c.table
    return [u for u in range(c.order) if u != v and t[abs(u - v)] == s]
