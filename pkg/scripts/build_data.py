"""Regenerate the bundled certificates under src/ramseycert/data."""
from __future__ import annotations

import sys
from pathlib import Path

from ramseycert.catalog import certificate_file, format_band, save
from ramseycert.constructions import BandSpec, FillRule, gapped_cyclify, mathon_double, paley, quadruple
from ramseycert.core import CYCLIC, LINEAR, DistanceColoring
from ramseycert.verifier import verify

TABLE1 = {
    1: "2 6 9 10 17 21 24 25 28 32 39 40 55 62 75",
    2: "49 56 59 63 64 66 67 69 70 71 72 73 74 76 77 78 79 80 81 82 83 84 85 86",
    3: "1 5 11 12 15 19 20 22 27 29 30 34 37 38 44 48 50 51 54 58 60 61 68",
    4: "3 4 7 8 13 14 16 18 23 26 31 33 35 36 41 42 43 45 46 47 52 53 57 65",
}

BAND_622 = BandSpec(
    622,
    frozenset(range(202, 208)) | frozenset(range(219, 404)) | frozenset(range(415, 421)),
    (
        FillRule("copy", (1, 201), (1, 201)),
        FillRule("copy", (6, 16), (208, 218)),
        FillRule("reflect", (6, 16), (404, 414)),
        FillRule("reflect", (1, 201), (421, 621)),
    ),
)


def write(out: Path, name: str, cert, notes=()) -> None:
    assert cert.satisfied, (name, cert.clique_numbers)
    save(certificate_file(cert, notes), out / name)
    print(f"{name}: clique numbers {cert.clique_numbers}")


def main(out: Path) -> None:
    out.mkdir(parents=True, exist_ok=True)
    t1 = DistanceColoring.from_sets(173, CYCLIC, {s: map(int, v.split()) for s, v in TABLE1.items()})
    write(out, "t1_33344_173.cert", verify(t1, (3, 3, 4, 4), provenance=("table",)))
    k2 = DistanceColoring.from_sets(2, LINEAR, [{1}])
    write(out, "k2.cert", verify(k2, (3,), provenance=("single edge",)))
    for q, k, name in ((5, 3, "pentagon.cert"), (17, 4, "paley17.cert"), (101, 6, "paley101.cert")):
        write(out, name, verify(paley(q), (k, k), provenance=(f"paley({q})",)))
    c202 = mathon_double(paley(101), (7, 7))
    write(out, "mathon_77_202.cert", c202.with_provenance("from paley(101)"))
    c562 = mathon_double(paley(281), (9, 9))
    write(out, "mathon_99_562.cert", c562.with_provenance("from paley(281)"))
    (out / "s5_622.band").write_text(format_band(BAND_622))
    c622 = gapped_cyclify(c202.coloring, BAND_622, (7, 7, 3))
    write(out, "gapped_377_622.cert", c622.with_provenance("from mathon_77_202.cert", "s5_622.band"))
    # colour 3 (k=3) is the band colour, colour 1 grows by one
    c2488 = quadruple(c622.coloring, "cor5", (8, 7, 5), own=(7, 7, 3), expect_degree=(3, 1214))
    write(out, "quad_875_2488.cert", c2488.with_provenance("from gapped_377_622.cert"))


if __name__ == "__main__":
    main(Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).parent.parent / "src/ramseycert/data")
