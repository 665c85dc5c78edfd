"""Certificate and band-spec files, bundled data, and the bounds ledger."""
from __future__ import annotations

import math
import os
import tempfile
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from .constructions import BandSpec, FillRule, compound_order, parse_ranges
from .core import MODES, DistanceColoring, KVector, stored_range
from .verifier import Certificate

CERT_MAGIC = "ramsey-cert v1"
BAND_MAGIC = "ramsey-band v1"


class ParseError(ValueError):
    def __init__(self, path: str, lineno: int, message: str):
        super().__init__(f"{path}:{lineno}: {message}")
        self.path = path
        self.lineno = lineno


@dataclass
class CertFile:
    """Contents of a v1 certificate file.

    Comment lines are kept verbatim (without the leading ``#``) so that a
    canonical file survives a load/save round trip byte for byte.  The
    ``provenance:``, ``verified:`` and ``status:`` comments are interpreted.
    """

    coloring: DistanceColoring
    avoid: KVector | None = None
    comments: list[str] = field(default_factory=list)

    def _tagged(self, tag: str) -> list[str]:
        prefix = f" {tag}:"
        return [c[len(prefix):].strip() for c in self.comments if c.startswith(prefix)]

    @property
    def provenance(self) -> list[str]:
        return self._tagged("provenance")

    @property
    def verified(self) -> tuple[int, ...] | None:
        vals = self._tagged("verified")
        if not vals:
            return None
        return tuple(int(x) for x in vals[-1].replace("clique numbers", "").split())

    @property
    def claimed_only(self) -> bool:
        return any(v.startswith("claimed") for v in self._tagged("status"))


def _bad_header(lines: list[str], magic: str, path: str) -> None:
    got = lines[0].strip() if lines else ""
    kind = magic.split()[0]
    if got.startswith(kind + " "):
        raise ParseError(path, 1, f"unsupported version {got[len(kind) + 1:]!r} (only v1 is known)")
    raise ParseError(path, 1, f"expected {magic!r}, got {got!r}")


def format_cert(cf: CertFile) -> str:
    c = cf.coloring
    lines = [CERT_MAGIC, f"order {c.order}", f"mode {c.mode}", f"colors {c.num_colors}"]
    if cf.avoid is not None:
        lines.append("avoid " + " ".join(map(str, cf.avoid)))
    for s in range(1, c.num_colors + 1):
        ls = sorted(c.color_set(s))
        lines.append(f"color {s}:" + "".join(f" {l}" for l in ls))
    lines.extend("#" + com for com in cf.comments)
    return "\n".join(lines) + "\n"


def parse_cert(text: str, path: str = "<string>") -> CertFile:
    order = mode = ncolors = None
    avoid = None
    classes: dict[int, list[int]] = {}
    comments: list[str] = []
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or lines[0].strip() != CERT_MAGIC:
        _bad_header(lines, CERT_MAGIC, path)
    for no, raw in enumerate(lines[1:], start=2):
        if raw.startswith("#"):
            comments.append(raw[1:])
            continue
        line = raw.strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        try:
            if key == "order":
                order = int(rest)
            elif key == "mode":
                if rest not in MODES:
                    raise ValueError(f"unknown mode {rest!r}")
                mode = rest
            elif key == "colors":
                ncolors = int(rest)
            elif key == "avoid":
                avoid = KVector.parse(rest)
            elif key == "color":
                label, _, body = rest.partition(":")
                if not _:
                    raise ValueError("missing ':' after colour id")
                s = int(label)
                if s in classes:
                    raise ValueError(f"colour {s} listed twice")
                classes[s] = [int(x) for x in body.split()]
                if classes[s] != sorted(classes[s]):
                    raise ValueError("lengths must be ascending")
            else:
                raise ValueError(f"unknown key {key!r}")
        except ValueError as exc:
            raise ParseError(path, no, f"{exc} in {line!r}") from None
    for name, val in (("order", order), ("mode", mode), ("colors", ncolors)):
        if val is None:
            raise ParseError(path, len(lines), f"missing {name!r} line")
    coloring = DistanceColoring.from_sets(order, mode, classes, ncolors)
    if avoid is not None and len(avoid) != ncolors:
        raise ParseError(path, len(lines), f"avoid has {len(avoid)} entries for {ncolors} colours")
    return CertFile(coloring, avoid, comments)


def format_band(spec: BandSpec) -> str:
    lines = [BAND_MAGIC, f"order {spec.order}",
             "band: " + " ".join(f"{a}..{b}" if a != b else str(a) for a, b in spec.band_ranges())]
    lines.extend(str(r) for r in spec.rules)
    return "\n".join(lines) + "\n"


def parse_band(text: str, path: str = "<string>") -> BandSpec:
    lines = text.split("\n")
    if not lines or lines[0].strip() != BAND_MAGIC:
        _bad_header(lines, BAND_MAGIC, path)
    order = None
    band: set[int] = set()
    rules = []
    for no, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            if line.startswith("order "):
                order = int(line.split()[1])
            elif line.startswith("band:"):
                for a, b in parse_ranges(line[5:]):
                    band.update(range(a, b + 1))
            elif line.startswith(("copy ", "reflect ")):
                kind, rest = line.split(None, 1)
                src, arrow, dst = rest.partition("->")
                if not arrow:
                    raise ValueError("missing '->'")
                (sa, sb), = parse_ranges(src)
                (da, db), = parse_ranges(dst)
                rules.append(FillRule(kind, (sa, sb), (da, db)))
            else:
                raise ValueError("unknown line")
        except ValueError as exc:
            raise ParseError(path, no, f"{exc} in {line!r}") from None
    if order is None:
        raise ParseError(path, len(lines), "missing 'order' line")
    return BandSpec(order, frozenset(band), tuple(rules))


def _atomic_write(path: str | os.PathLike, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
        os.chmod(tmp, path.stat().st_mode & 0o777 if path.exists() else 0o644)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def load(path: str | os.PathLike) -> CertFile | BandSpec:
    text = Path(path).read_text(encoding="utf-8")
    first = text.split("\n", 1)[0].strip()
    if first == BAND_MAGIC:
        return parse_band(text, str(path))
    return parse_cert(text, str(path))


def load_cert(path: str | os.PathLike) -> CertFile:
    out = load(path)
    if not isinstance(out, CertFile):
        raise ParseError(str(path), 1, "expected a certificate, found a band spec")
    return out


def save(obj: CertFile | BandSpec | DistanceColoring, path: str | os.PathLike) -> None:
    if isinstance(obj, BandSpec):
        _atomic_write(path, format_band(obj))
    elif isinstance(obj, DistanceColoring):
        _atomic_write(path, format_cert(CertFile(obj)))
    else:
        _atomic_write(path, format_cert(obj))


def certificate_file(cert: Certificate, notes: Iterable[str] = ()) -> CertFile:
    """CertFile recording a verification result as comment lines."""
    comments = [f" provenance: {p}" for p in cert.provenance]
    if None not in cert.clique_numbers:
        comments.append(" verified: " + " ".join(str(w) for w in cert.clique_numbers))
    comments.append(f" status: {cert.status}")
    comments.extend(f" {n}" for n in notes)
    return CertFile(cert.coloring, cert.claimed, comments)


# --- bundled data ---------------------------------------------------------

def data_dir() -> Path:
    return Path(str(resources.files("ramseycert") / "data"))


def bundled(name: str) -> CertFile | BandSpec:
    p = data_dir() / name
    if not p.exists():
        raise FileNotFoundError(f"no bundled file {name!r}; have {sorted(bundled_names())}")
    return load(p)


def bundled_names() -> list[str]:
    return sorted(p.name for p in data_dir().iterdir() if p.suffix in (".cert", ".band"))


# --- ledger ----------------------------------------------------------------

VERIFIED = "verified"
CLAIMED = "claimed"


@dataclass(frozen=True)
class BoundsRecord:
    """A Ramsey graph order for a k-vector, with the derived growth factor."""

    kvector: tuple[int, ...]
    order: int
    provenance: str = CLAIMED
    source: str = ""

    @property
    def colors(self) -> int:
        return len(self.kvector)

    @property
    def big_m(self) -> int:
        return 2 * self.order - 1

    @property
    def growth_factor(self) -> float:
        return ledger_growth_factor(self)

    @property
    def lower_bound(self) -> int:
        return self.order + 1

    @property
    def diagonal(self) -> int | None:
        ks = set(self.kvector)
        return ks.pop() if len(ks) == 1 else None


def ledger_growth_factor(rec: BoundsRecord) -> float:
    """(2m - 1) ** (1/r); self-compounding keeps it fixed as r doubles."""
    return rec.big_m ** (1.0 / rec.colors)


def self_compound(rec: BoundsRecord) -> BoundsRecord:
    """Record for compounding a linear colouring with itself."""
    m = rec.order
    p = compound_order(m, m)
    assert p == ((2 * m - 1) ** 2 + 1) // 2
    tag = CLAIMED if rec.provenance == CLAIMED else VERIFIED
    return BoundsRecord(rec.kvector * 2, p, tag, f"compound({rec.source or rec.order}, itself)")


@dataclass(frozen=True)
class ChainStep:
    record: BoundsRecord
    step: str

    def describe(self) -> str:
        rec = self.record
        k = rec.diagonal
        name = f"R_{rec.colors}({k})" if k is not None else "R(" + ",".join(map(str, rec.kvector)) + ")"
        return (f"{name} >= {rec.lower_bound}  [order {rec.order}; {self.step}; "
                f"{rec.provenance}; lower bound only]")


def derive_bound_chain(records: Sequence[BoundsRecord], depth: int = 1) -> list[ChainStep]:
    """Self-compound each record ``depth`` times and report the implied bounds.

    A chain inherits the weakest provenance of its inputs; the "verified" tag
    on a compounded order means its prototype was verified and the order
    arithmetic was checked, not that the large colouring was searched.
    """
    out = []
    for rec in records:
        out.append(ChainStep(rec, "base"))
        cur = rec
        for i in range(depth):
            cur = self_compound(cur)
            out.append(ChainStep(cur, f"self-compound x{i + 1}"))
    return out


def reconstructed_tables(records: Sequence[BoundsRecord], depth: int = 1) -> str:
    """Highest known orders per (k, r) and the matching growth factors, as text.

    These are rebuilt from the records given (plus self-compounds); they are
    not a transcription of any published table.
    """
    best: dict[tuple[int, int], BoundsRecord] = {}
    for step in derive_bound_chain(records, depth):
        rec = step.record
        k = rec.diagonal
        if k is None:
            continue
        key = (k, rec.colors)
        if key not in best or rec.order > best[key].order:
            best[key] = rec
    lines = ["Highest orders of linear Ramsey colourings (reconstructed)",
             f"{'k':>3} {'r':>3} {'order m':>14} {'R_r(k) >=':>14}  provenance"]
    for (k, r), rec in sorted(best.items()):
        lines.append(f"{k:>3} {r:>3} {rec.order:>14} {rec.lower_bound:>14}  {rec.provenance}")
    lines += ["", "Growth factors g = (2m-1)^(1/r) (reconstructed)",
              f"{'k':>3} {'r':>3} {'g':>14}"]
    for (k, r), rec in sorted(best.items()):
        lines.append(f"{k:>3} {r:>3} {rec.growth_factor:>14.6f}")
    return "\n".join(lines)


def default_records() -> list[BoundsRecord]:
    """Records for the bundled diagonal two-colour certificates."""
    out = []
    for name in bundled_names():
        if not name.endswith(".cert"):
            continue
        cf = bundled(name)
        assert isinstance(cf, CertFile)
        if cf.avoid is None or cf.coloring.num_colors != 2 or len(set(cf.avoid)) != 1:
            continue
        prov = CLAIMED if cf.claimed_only or cf.verified is None else VERIFIED
        out.append(BoundsRecord(tuple(cf.avoid), cf.coloring.order, prov, name))
    return out


def check_growth_identity(rec: BoundsRecord, tol: float = 1e-12) -> bool:
    return math.isclose(rec.growth_factor ** rec.colors, rec.big_m, rel_tol=tol)


__all__ = [
    "BoundsRecord", "CertFile", "ChainStep", "ParseError", "bundled", "bundled_names",
    "certificate_file", "check_growth_identity", "data_dir", "default_records",
    "derive_bound_chain", "format_band", "format_cert", "ledger_growth_factor", "load",
    "load_cert", "parse_band", "parse_cert", "reconstructed_tables", "save", "self_compound",
    "stored_range",
]
