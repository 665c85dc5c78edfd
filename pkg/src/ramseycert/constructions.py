"""Graph-building procedures on distance colourings.

The trusted constructions (:func:`extend_linear`, :func:`cyclify`,
:func:`compound`, :func:`paley`) are closed-form.  Doubling, quadrupling and
banded extension are assembled from candidate distance maps and only ever
returned together with a passing :class:`~ramseycert.verifier.Certificate`;
a failing candidate raises :class:`GateFailure` carrying the offending
monochromatic clique.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np
from sympy import isprime

from .clique import Undecided, max_clique
from .core import (
    CYCLIC,
    DEFAULT_EXPLICIT_CAP,
    LINEAR,
    ColoringError,
    DistanceColoring,
    ExplicitCapError,
    ExplicitColoring,
    KVector,
    color_degree,
    neighbourhood,
    require_valid,
)
from .verifier import UNDECIDED, Certificate, verify


class GateFailure(RuntimeError):
    """A candidate colouring failed verification; no certificate was produced."""

    def __init__(self, message: str, certificate: Certificate | None = None,
                 tried: Sequence[str] = (), rejected: dict[str, str] | None = None):
        super().__init__(message)
        self.certificate = certificate
        self.tried = tuple(tried)
        self.rejected = dict(rejected or {})

    @property
    def undecided(self) -> bool:
        return self.certificate is not None and self.certificate.status == UNDECIDED

    @property
    def witnesses(self) -> list[tuple[int, tuple[int, ...]]]:
        return self.certificate.violations() if self.certificate else []


def _linear_prototype(u: DistanceColoring) -> DistanceColoring:
    require_valid(u)
    # a cyclic colouring is in particular linear
    return u.as_linear()


def extend_linear(u: DistanceColoring) -> DistanceColoring:
    """Linear colouring of order 3m-1 with a new colour on lengths m..2m-1.

    Prototype colour classes L_s appear twice: unchanged, and shifted up by
    2m-1.  The new colour r+1 is triangle-free since no two band lengths
    differ by a band length.
    """
    u = _linear_prototype(u)
    m, r = u.order, u.num_colors
    sets = {s: set() for s in range(1, r + 2)}
    for s in range(1, r + 1):
        for l in u.expanded_sets[s]:
            sets[s].add(l)
            sets[s].add(l + 2 * m - 1)
    sets[r + 1] = set(range(m, 2 * m))
    out = DistanceColoring.from_sets(3 * m - 1, LINEAR, sets, r + 1)
    assert out.order == 3 * m - 1
    return out


def cyclify(u: DistanceColoring) -> DistanceColoring:
    """Cyclic colouring of order 3m-1 whose clique numbers match the prototype.

    Lengths below m keep the prototype colour, m..2m-1 take the new colour,
    and 2m..3m-2 reflect the prototype (l gets the colour of 3m-1-l).
    """
    u = _linear_prototype(u)
    m, r = u.order, u.num_colors
    n = 3 * m - 1
    table = {}
    for l in range(1, n // 2 + 1):
        table[l] = u.table[l] if l < m else r + 1
    out = DistanceColoring.from_table(n, CYCLIC, table, r + 1)
    assert out.order == 3 * m - 1
    return out


def compound(u: DistanceColoring, h: DistanceColoring) -> DistanceColoring:
    """Linear colouring of order 2mn-m-n+1 using the colours of both prototypes.

    With M = 2m-1, write each length as l = M*q + e with -(m-1) <= e <= m-1.
    A positive offset e keeps U's colour c_U(e); otherwise the length sits in
    the band around M*q and takes H's colour c_H(q), shifted past U's colours.
    For a single-colour H of order 2 this is exactly :func:`extend_linear`.
    """
    u = _linear_prototype(u)
    h = _linear_prototype(h)
    m, n = u.order, h.order
    big_m = 2 * m - 1
    p = 2 * m * n - m - n + 1
    assert 2 * p - 1 == big_m * (2 * n - 1)
    table = {}
    for l in range(1, p):
        q, e = divmod(l, big_m)
        if e >= m:
            q, e = q + 1, e - big_m
        table[l] = u.table[e] if e > 0 else u.num_colors + h.table[q]
    return DistanceColoring.from_table(p, LINEAR, table, u.num_colors + h.num_colors)


def compound_order(m: int, n: int) -> int:
    return 2 * m * n - m - n + 1


def quadratic_residues(q: int) -> frozenset[int]:
    return frozenset(x * x % q for x in range(1, q))


def paley(q: int) -> DistanceColoring:
    """Two-colouring of K_q: colour 1 on quadratic residues, colour 2 elsewhere."""
    if not isprime(q) or q % 4 != 1:
        raise ValueError(f"paley needs a prime q = 1 (mod 4), got {q}")
    res = quadratic_residues(q)
    return DistanceColoring.from_table(
        q, CYCLIC, {l: 1 if l in res else 2 for l in range(1, q // 2 + 1)}, 2
    )


# --- gated constructions -------------------------------------------------

CandidateMap = Callable[[DistanceColoring], DistanceColoring]


def _gate(candidates: Sequence[tuple[str, CandidateMap]], c: DistanceColoring,
          target: KVector, step: str, budget: int | None,
          check: Callable[[DistanceColoring], None] | None = None) -> Certificate:
    tried = []
    rejected: dict[str, str] = {}
    worst: Certificate | None = None
    for name, fn in candidates:
        tried.append(name)
        try:
            cand = fn(c)
            if check is not None:
                check(cand)
        except ColoringError as exc:
            # structurally wrong (bad order, degree, symmetry): never verified
            rejected[name] = str(exc)
            continue
        cert = verify(cand, target, budget=budget, provenance=(f"{step}:{name}",))
        if cert.satisfied:
            return cert
        if worst is None or _excess(cert) < _excess(worst):
            worst = cert
    if worst is None:
        detail = "; ".join(f"{n}: {why}" for n, why in rejected.items()) or "no candidates"
        raise GateFailure(f"{step}: every candidate rejected before verification ({detail})",
                          None, tried, rejected)
    raise GateFailure(
        f"{step}: no candidate verified against {target} "
        f"(tried {', '.join(tried)}; best {worst.provenance[-1]} is {worst.status})",
        worst, tried, rejected,
    )


def _excess(cert: Certificate) -> int:
    total = 0
    for s, k in enumerate(cert.claimed or (), start=1):
        w = cert.clique_numbers[s - 1]
        w = cert.lower_bounds[s - 1] if w is None else w
        total += max(0, w - k + 1)
    return total


def crt_double(swap_cross: bool, zero_color: int) -> CandidateMap:
    """Candidate doubling map on Z_2q = Z_2 x Z_q for a 2-colouring of prime order q.

    Even lengths 2d keep the colour of d mod q.  Odd lengths carry the cross
    edges between the two halves: the colour of d mod q, swapped when
    ``swap_cross`` is set, and ``zero_color`` on the length q itself.
    """

    def build(c: DistanceColoring) -> DistanceColoring:
        q = c.order
        t = c.table
        table = {}
        for l in range(1, q + 1):
            d = l % q
            if l % 2 == 0:
                table[l] = t[d]
            elif d == 0:
                table[l] = zero_color
            else:
                table[l] = 3 - t[d] if swap_cross else t[d]
        return DistanceColoring.from_table(2 * q, CYCLIC, table, 2)

    return build


DOUBLING_CANDIDATES: dict[str, CandidateMap] = {
    "crt-swap-1": crt_double(True, 1),
    "crt-swap-2": crt_double(True, 2),
    "crt-same-1": crt_double(False, 1),
    "crt-same-2": crt_double(False, 2),
}


def mathon_double(
    c: DistanceColoring,
    target: KVector | Sequence[int],
    *,
    candidates: Sequence[str] | None = None,
    extra: Sequence[tuple[str, CandidateMap]] = (),
    budget: int | None = None,
) -> Certificate:
    """Cyclic colouring of order 2q from a prime-order cyclic 2-colouring.

    Candidate maps are tried in order; the first one whose result verifies
    against ``target`` is returned with its certificate.
    """
    require_valid(c)
    target = target if isinstance(target, KVector) else KVector(tuple(target))
    if c.mode != CYCLIC or c.num_colors != 2 or not isprime(c.order):
        raise ColoringError("doubling needs a cyclic 2-colouring of prime order")
    if len(target) != 2:
        raise ColoringError("doubling target must have two entries")
    names = list(DOUBLING_CANDIDATES) if candidates is None else list(candidates)
    maps = [(n, DOUBLING_CANDIDATES[n]) for n in names] + list(extra)
    cert = _gate(maps, c, target, "double", budget)
    assert cert.coloring.order == 2 * c.order
    return cert


def lift_quadruple(band_color: int, fibre_colors: tuple[int, int],
                   swap: dict[int, int] | None = None, adaptive: bool = False) -> CandidateMap:
    """Candidate quadrupling map on Z_4n built from the projection Z_4n -> Z_n.

    A length l = j*n + d (0 <= j < 4) with d != 0 keeps the colour of d,
    except that lengths of other colours falling strictly inside the mid band
    (3n/2, 5n/2) take ``band_color``.  ``fibre_colors`` colour the lengths n
    and 3n, then 2n.  ``swap`` optionally recolours the outer lifts
    (j = 1 or 2 outside the band) of selected colours.

    ``adaptive`` (even n) closes the band and lets the fibre lengths depend
    on the colour of n/2.  If n/2 has the band colour, n and 3n take it and
    2n takes the other fibre colour; otherwise 2n takes it and n, 3n do not.
    Every residue outside the band colour then gets exactly one band-coloured
    lift (two for n/2), so the band-colour degree is 3A + n + 1 where A is
    the prototype's, and no fibre {x, x+n, x+2n, x+3n} is monochromatic.
    """
    swap = swap or {}

    def build(c: DistanceColoring) -> DistanceColoring:
        n = c.order
        t = c.table
        adapt = adaptive and n % 2 == 0
        fib = fibre_colors
        if adapt and t[n // 2] != band_color:
            fib = (fibre_colors[1], band_color)
        table = {}
        for l in range(1, 2 * n + 1):
            j, d = divmod(l, n)
            if d == 0:
                table[l] = fib[0] if j in (1, 3) else fib[1]
            elif t[d] == band_color or 3 * n < 2 * l < 5 * n or (adapt and 2 * l == 3 * n):
                table[l] = band_color
            elif j >= 1 and t[d] in swap:
                table[l] = swap[t[d]]
            else:
                table[l] = t[d]
        return DistanceColoring.from_table(4 * n, CYCLIC, table, c.num_colors)

    return build


def band_quadruple(band_color: int, middle_color: int) -> CandidateMap:
    """Candidate quadrupling map laid out like :func:`cyclify`.

    Lengths 1..n-1 copy the prototype, n takes ``middle_color``, n+1..3n/2-1
    repeat the prototype from 1, and the mid band 3n/2..2n takes
    ``band_color``; the upper half follows by reflection.
    """

    def build(c: DistanceColoring) -> DistanceColoring:
        n = c.order
        t = c.table
        table = {}
        for l in range(1, 2 * n + 1):
            if 2 * l >= 3 * n:
                table[l] = band_color
            elif l < n:
                table[l] = t[l]
            elif l == n:
                table[l] = middle_color
            else:
                table[l] = t[l - n]
        return DistanceColoring.from_table(4 * n, CYCLIC, table, c.num_colors)

    return build


def quadruple_candidates(variant: str, band_color: int, plus_color: int) -> dict[str, CandidateMap]:
    """Candidate maps for a quadrupling variant.

    ``band_color`` is the colour whose bound goes from k to 2k-1 and
    ``plus_color`` the colour whose bound grows by one.
    """
    if variant not in ("cor3", "cor5"):
        raise ValueError(f"unknown quadrupling variant {variant!r}")
    out = {
        f"{variant}-lift": lift_quadruple(band_color, (band_color, plus_color), adaptive=True),
        f"{variant}-lift-plus": lift_quadruple(band_color, (plus_color, band_color)),
        f"{variant}-band": band_quadruple(band_color, plus_color),
    }
    return out


def _infer_roles(k_old: KVector, k_new: KVector) -> tuple[int, int]:
    band = plus = None
    for s, (a, b) in enumerate(zip(k_old, k_new), start=1):
        if b == 2 * a - 1 and a > 2 and band is None:
            band = s
        elif b == a + 1 and plus is None:
            plus = s
    if band is None:
        band = max(range(1, len(k_old) + 1), key=lambda s: k_new[s - 1] - k_old[s - 1])
    if plus is None:
        plus = next((s for s in range(1, len(k_old) + 1)
                     if s != band and k_new[s - 1] > k_old[s - 1]), band)
    return band, plus


def quadruple(
    c: DistanceColoring,
    variant: str,
    target: KVector | Sequence[int],
    *,
    own: KVector | Sequence[int] | None = None,
    candidates: Sequence[str] | None = None,
    extra: Sequence[tuple[str, CandidateMap]] = (),
    budget: int | None = None,
    expect_degree: tuple[int, int] | None = None,
) -> Certificate:
    """Cyclic colouring of order 4n verified against a caller-supplied target.

    ``own`` is the prototype's k-vector (needed to pick the colour roles of
    the candidate maps).  ``expect_degree=(s, d)`` asserts that every
    candidate has colour-``s`` degree ``d`` before any clique search starts.
    """
    require_valid(c)
    target = target if isinstance(target, KVector) else KVector(tuple(target))
    if c.mode != CYCLIC:
        raise ColoringError("quadrupling needs a cyclic prototype")
    if len(target) != c.num_colors:
        raise ColoringError("target length differs from colour count")
    if own is not None:
        own = own if isinstance(own, KVector) else KVector(tuple(own))
        band, plus = _infer_roles(own, target)
    else:
        band, plus = 1, min(2, c.num_colors)
    family = quadruple_candidates(variant, band, plus)
    names = list(family) if candidates is None else list(candidates)
    maps = [(n, family[n]) for n in names] + list(extra)

    def check(cand: DistanceColoring) -> None:
        if cand.order != 4 * c.order:
            raise ColoringError(f"candidate order {cand.order} is not 4 x {c.order}")
        if expect_degree is not None:
            s, d = expect_degree
            got = color_degree(cand, s)
            if got != d:
                raise ColoringError(f"colour-{s} degree {got}, expected {d}")

    return _gate(maps, c, target, f"quadruple-{variant}", budget, check)


# --- banded extension ----------------------------------------------------

@dataclass(frozen=True)
class FillRule:
    kind: str  # "copy" or "reflect"
    src: tuple[int, int]
    dst: tuple[int, int]

    def __post_init__(self) -> None:
        if self.kind not in ("copy", "reflect"):
            raise ValueError(f"unknown fill rule {self.kind!r}")
        if self.src[1] - self.src[0] != self.dst[1] - self.dst[0] or self.src[0] > self.src[1]:
            raise ValueError(f"rule ranges differ in size: {self}")

    def pairs(self) -> Iterable[tuple[int, int]]:
        """(target length, source length) pairs."""
        a, b = self.src
        c, d = self.dst
        for i in range(b - a + 1):
            yield (c + i, a + i) if self.kind == "copy" else (d - i, a + i)

    def __str__(self) -> str:
        return f"{self.kind} {self.src[0]}..{self.src[1]} -> {self.dst[0]}..{self.dst[1]}"


@dataclass(frozen=True)
class BandSpec:
    """Where the new colour goes and how prototype colours fill the rest."""

    order: int
    band: frozenset[int]
    rules: tuple[FillRule, ...] = field(default_factory=tuple)

    @classmethod
    def gap_free(cls, m: int) -> BandSpec:
        """The layout of :func:`cyclify` for a prototype of order m."""
        rules = [FillRule("copy", (1, m - 1), (1, m - 1)),
                 FillRule("reflect", (1, m - 1), (2 * m, 3 * m - 2))] if m > 1 else []
        return cls(3 * m - 1, frozenset(range(m, 2 * m)), tuple(rules))

    def band_ranges(self) -> list[tuple[int, int]]:
        out: list[tuple[int, int]] = []
        for l in sorted(self.band):
            if out and out[-1][1] == l - 1:
                out[-1] = (out[-1][0], l)
            else:
                out.append((l, l))
        return out


_RANGE = re.compile(r"^(\d+)(?:\.\.(\d+))?$")


def parse_ranges(text: str) -> list[tuple[int, int]]:
    out = []
    for tok in text.replace(",", " ").split():
        m = _RANGE.match(tok)
        if not m:
            raise ValueError(f"bad range {tok!r}")
        a = int(m.group(1))
        b = int(m.group(2)) if m.group(2) else a
        out.append((a, b))
    return out


def apply_band(u: DistanceColoring, spec: BandSpec) -> DistanceColoring:
    """Fill a cyclic colouring of ``spec.order`` from the prototype and the band.

    Raises :class:`ColoringError` if some length is unassigned, assigned
    twice with different colours, or breaks cyclic symmetry.
    """
    u = _linear_prototype(u)
    n, r = spec.order, u.num_colors
    full: dict[int, int] = {}

    def put(l: int, colour: int, why: str) -> None:
        if not 1 <= l < n:
            raise ColoringError(f"{why}: length {l} outside 1..{n - 1}")
        if l in full and full[l] != colour:
            raise ColoringError(f"{why}: length {l} already has colour {full[l]}, not {colour}")
        full[l] = colour

    for l in spec.band:
        put(l, r + 1, "band")
    for rule in spec.rules:
        for dst, src in rule.pairs():
            if not 1 <= src < u.order:
                raise ColoringError(f"{rule}: source length {src} outside prototype")
            put(dst, u.table[src], str(rule))
    missing = [l for l in range(1, n) if l not in full]
    if missing:
        raise ColoringError(f"incomplete band spec: {len(missing)} lengths unassigned, "
                            f"first {missing[:5]}")
    asym = [l for l in range(1, n) if full[l] != full[n - l]]
    if asym:
        raise ColoringError(f"band spec breaks cyclic symmetry at lengths {asym[:5]}")
    return DistanceColoring.from_table(n, CYCLIC, {l: full[l] for l in range(1, n // 2 + 1)}, r + 1)


def gapped_cyclify(
    u: DistanceColoring,
    spec: BandSpec,
    target: KVector | Sequence[int],
    *,
    budget: int | None = None,
) -> Certificate:
    """Banded cyclic extension; returned only with a certificate against ``target``."""
    target = target if isinstance(target, KVector) else KVector(tuple(target))
    cand = apply_band(u, spec)
    return _gate([("band", lambda _: cand)], u, target, "gapped", budget)


# --- neighbourhoods ------------------------------------------------------

def neighborhood_subgraph(
    c: DistanceColoring, s: int, v: int = 0, *, cap: int = DEFAULT_EXPLICIT_CAP
) -> ExplicitColoring:
    """Explicit colouring induced on the colour-``s`` neighbours of ``v``."""
    require_valid(c)
    if not 1 <= s <= c.num_colors:
        raise ColoringError(f"unknown colour {s}")
    verts = neighbourhood(c, s, v)
    if len(verts) > cap:
        raise ExplicitCapError(
            f"neighbourhood has {len(verts)} vertices, above explicit cap {cap}; "
            "use neighborhood_clique_numbers for streaming verification"
        )
    idx = np.asarray(verts)
    table = np.asarray(c.table, dtype=np.int16)
    m = table[np.abs(idx[:, None] - idx[None, :])]
    return ExplicitColoring(m, c.num_colors)


def neighborhood_clique_numbers(
    c: DistanceColoring, s: int, v: int = 0, *, budget: int | None = None
) -> tuple[int, tuple[int | None, ...]]:
    """Order and per-colour clique numbers of a neighbourhood without a dense matrix.

    Adjacency is read straight from the distance table, so memory stays
    linear in the neighbourhood size per colour.  A colour whose search runs
    out of budget reports ``None``.
    """
    require_valid(c)
    verts = neighbourhood(c, s, v)
    t = c.table
    numbers: list[int | None] = []
    for colour in range(1, c.num_colors + 1):
        adj = []
        for a in verts:
            m = 0
            for j, b in enumerate(verts):
                if b != a and t[abs(a - b)] == colour:
                    m |= 1 << j
            adj.append(m)
        if not any(adj):
            numbers.append(0)
            continue
        try:
            numbers.append(max_clique(adj, budget=budget).size)
        except Undecided:
            numbers.append(None)
    return len(verts), tuple(numbers)


__all__ = [
    "BandSpec", "FillRule", "GateFailure", "apply_band", "compound", "compound_order",
    "crt_double", "cyclify", "extend_linear", "gapped_cyclify", "lift_quadruple",
    "band_quadruple", "mathon_double", "neighborhood_clique_numbers", "neighborhood_subgraph",
    "paley", "parse_ranges", "quadratic_residues", "quadruple", "quadruple_candidates",
]
