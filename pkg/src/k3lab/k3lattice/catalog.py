"""Builtin polarized lattices and the Gram-matrix JSON format.

U3   genus 4: basis {L, E}, Gram [[6,3],[3,0]]; h = L.
M6   genus 6: basis {L, E1..E4}; h is the square-2 class s0 with
     s0 = E1+E2+E3+E4-L, against which all five pencils are oriented.
N1..N9  genus 8: basis {L, E1..Ei}, L^2 = 14, L.Ej = 5, Ej.Ek = 2.
"""

from __future__ import annotations

import json

from .. import SCHEMA
from ..errors import DimensionMismatch
from .lattice import GramLattice, PolarizedLattice


def u3() -> PolarizedLattice:
    lat = GramLattice([[6, 3], [3, 0]], labels=("L", "E"))
    return PolarizedLattice(lat, (1, 0))


def m6() -> PolarizedLattice:
    gram = [
        [10, 4, 4, 4, 4],
        [4, 0, 2, 2, 2],
        [4, 2, 0, 2, 2],
        [4, 2, 2, 0, 2],
        [4, 2, 2, 2, 0],
    ]
    labels = ("L", "E1", "E2", "E3", "E4")
    lat = GramLattice(gram, labels=labels)
    s0 = (-1, 1, 1, 1, 1)
    return PolarizedLattice(lat, (1, 0, 0, 0, 0), reference_nef=s0)


def n_pencils(i: int) -> PolarizedLattice:
    if not 1 <= i <= 9:
        raise DimensionMismatch("N_i defined for 1 <= i <= 9")
    n = i + 1
    gram = [[0] * n for _ in range(n)]
    gram[0][0] = 14
    for a in range(1, n):
        gram[0][a] = gram[a][0] = 5
        for b in range(1, n):
            if a != b:
                gram[a][b] = 2
    labels = ("L",) + tuple(f"E{j}" for j in range(1, n))
    lat = GramLattice(gram, labels=labels)
    pol = (1,) + (0,) * i
    return PolarizedLattice(lat, pol)


_FACTORIES = {"U3": u3, "M6": m6}
for _i in range(1, 10):
    _FACTORIES[f"N{_i}"] = (lambda j: (lambda: n_pencils(j)))(_i)

BUILTIN_NAMES = tuple(sorted(_FACTORIES))


def builtin(name: str) -> PolarizedLattice:
    key = str(name).upper()
    if key not in _FACTORIES:
        raise KeyError(f"unknown builtin lattice {name!r}; "
                       f"choices: {', '.join(BUILTIN_NAMES)}")
    return _FACTORIES[key]()


def dump_gram(pl: PolarizedLattice) -> dict:
    return {
        "schema": SCHEMA,
        "rank": pl.rank,
        "gram": [list(row) for row in pl.gram],
        "labels": list(pl.lattice.labels),
        "polarization": list(pl.polarization),
        "reference_nef": list(pl.reference_nef),
    }


def load_gram(data) -> PolarizedLattice:
    """Build a PolarizedLattice from the JSON dict (or a path to one)."""
    if isinstance(data, str):
        with open(data, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    gram = data["gram"]
    if "rank" in data and len(gram) != int(data["rank"]):
        raise DimensionMismatch("rank field disagrees with gram size")
    lat = GramLattice(gram, labels=data.get("labels"))
    pol = data["polarization"]
    nef = data.get("reference_nef")
    return PolarizedLattice(lat, pol, reference_nef=nef)
