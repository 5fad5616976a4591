"""Curated reference data for the one-holed torus and four-holed sphere.

The stored walks were found by exhaustive search over closed fat-graph
walks and are pinned down by exact identities: generator triples satisfy
the cubic/quartic trace relation, the bracket matches the u-derivative of
the relation polynomial (with the recorded normalization constant), the
skein product decomposes, and every (curve, flip) pair listed in
``COVARIANT_WALKS`` reproduces its trace through the coordinate mutation.
All of that is re-verified by the test suite; nothing here is trusted
without a check.
"""

from __future__ import annotations

from .surfaces import CurvePath, reference_triangulation

# ratio (dP/dL_u) / {L_s, L_t} measured exactly on the reference surfaces;
# one intersection point on the torus piece, two on the sphere piece
LOOP_BRACKET_CONSTANT = {"c11": 2, "c04": 1}

_CURVES = {
    "c11": {
        # generators: s and t cross once; u is their coherent resolution
        "s": ([(0, "L"), (1, "R")], 0),
        "t": ([(0, "R"), (2, "L")], 0),
        "u": ([(1, "L"), (2, "R")], 0),
        # the other resolution of the s,t crossing
        "st_other": ([(0, "R"), (2, "L"), (0, "L"), (1, "R")], 0),
        # peripheral walk around the puncture
        "p1": ([(0, "R"), (2, "R"), (1, "R"), (0, "R"), (2, "R"), (1, "R")], 0),
    },
    "c04": {
        # edges 0..5 = (12,13,14,23,24,34); s separates punctures 12|34,
        # t separates 23|14, u separates 13|24
        "s": ([(3, "R"), (1, "L"), (2, "R"), (4, "L")], 0),
        "t": ([(5, "L"), (1, "R"), (0, "L"), (4, "R")], 0),
        "u": ([(3, "L"), (0, "R"), (2, "L"), (5, "R")], 0),
        "st_other": ([(3, "R"), (1, "R"), (5, "L"), (4, "L"),
                      (2, "R"), (1, "R"), (0, "L"), (4, "L")], 0),
        # peripheral walks around punctures 1..4
        "p1": ([(1, "R"), (0, "R"), (2, "R")], 1),
        "p2": ([(4, "R"), (0, "R"), (3, "R")], 0),
        "p3": ([(3, "R"), (1, "R"), (5, "R")], 0),
        "p4": ([(5, "R"), (2, "R"), (4, "R")], 0),
    },
}

# Dehn parameters (r, s) of the generator curves w.r.t. the cut curve
GENERATOR_DEHN = {
    "c11": {"s": (0, 1), "t": (1, 0), "u": (1, 1)},
    "c04": {"s": (0, 1), "t": (2, 0), "u": (2, 1)},
}

# walk of each curve in the triangulation flipped at the given edge,
# keyed by (surface, flipped edge, curve name)
COVARIANT_WALKS = {
    ("c11", 0, "s"): ([(1, "L"), (0, "R")], 0),
    ("c11", 0, "t"): ([(2, "R"), (0, "L")], 0),
    ("c11", 0, "u"): ([(2, "R"), (0, "R"), (1, "L"), (0, "L")], 0),
    ("c11", 0, "p1"): ([(2, "R"), (0, "R"), (1, "R"), (2, "R"), (0, "R"), (1, "R")], 0),
    ("c11", 1, "s"): ([(0, "R"), (1, "L")], 0),
    ("c11", 1, "t"): ([(0, "R"), (1, "R"), (2, "L"), (1, "L")], 0),
    ("c11", 1, "u"): ([(2, "L"), (1, "R")], 0),
    ("c11", 1, "p1"): ([(0, "R"), (1, "R"), (2, "R"), (0, "R"), (1, "R"), (2, "R")], 0),
    ("c11", 2, "s"): ([(1, "R"), (2, "R"), (0, "L"), (2, "L")], 0),
    ("c11", 2, "t"): ([(0, "L"), (2, "R")], 0),
    ("c11", 2, "u"): ([(1, "R"), (2, "L")], 0),
    ("c11", 2, "p1"): ([(1, "R"), (2, "R"), (0, "R"), (1, "R"), (2, "R"), (0, "R")], 0),
    ("c04", 0, "s"): ([(3, "R"), (0, "R"), (1, "L"), (2, "R"), (0, "R"), (4, "L")], 0),
    ("c04", 0, "t"): ([(5, "L"), (1, "L"), (0, "R"), (4, "R")], 0),
    ("c04", 0, "u"): ([(3, "R"), (0, "L"), (2, "L"), (5, "R")], 0),
    ("c04", 0, "p1"): ([(2, "L"), (1, "L")], 1),
    ("c04", 0, "p2"): ([(3, "L"), (4, "L")], 0),
    ("c04", 0, "p3"): ([(3, "R"), (0, "R"), (1, "R"), (5, "R")], 0),
    ("c04", 0, "p4"): ([(5, "R"), (2, "R"), (0, "R"), (4, "R")], 0),
    ("c04", 1, "s"): ([(3, "L"), (1, "R"), (2, "R"), (4, "L")], 0),
    ("c04", 1, "t"): ([(5, "R"), (1, "L"), (0, "L"), (4, "R")], 0),
    ("c04", 1, "u"): ([(3, "L"), (1, "L"), (0, "R"), (2, "L"), (1, "L"), (5, "R")], 0),
    ("c04", 1, "p1"): ([(0, "L"), (2, "L")], 2),
    ("c04", 1, "p2"): ([(3, "L"), (1, "L"), (0, "L"), (4, "L")], 0),
    ("c04", 1, "p3"): ([(3, "R"), (5, "R")], 0),
    ("c04", 1, "p4"): ([(5, "R"), (1, "R"), (2, "R"), (4, "R")], 0),
    ("c04", 2, "s"): ([(3, "R"), (1, "R"), (2, "L"), (4, "L")], 0),
    ("c04", 2, "t"): ([(5, "L"), (2, "L"), (1, "R"), (0, "L"), (2, "L"), (4, "R")], 0),
    ("c04", 2, "u"): ([(3, "L"), (0, "L"), (2, "R"), (5, "R")], 0),
    ("c04", 2, "p1"): ([(1, "R"), (0, "R")], 1),
    ("c04", 2, "p2"): ([(3, "L"), (0, "L"), (2, "L"), (4, "L")], 0),
    ("c04", 2, "p3"): ([(3, "R"), (1, "R"), (2, "R"), (5, "R")], 0),
    ("c04", 2, "p4"): ([(5, "R"), (4, "R")], 0),
    ("c04", 3, "s"): ([(4, "L"), (2, "R"), (1, "R"), (3, "L")], 0),
    ("c04", 3, "t"): ([(4, "R"), (0, "L"), (3, "L"), (1, "R"), (5, "L"), (3, "L")], 0),
    ("c04", 3, "u"): ([(0, "R"), (2, "L"), (5, "L"), (3, "R")], 0),
    ("c04", 3, "p1"): ([(0, "R"), (2, "R"), (1, "R"), (3, "R")], 0),
    ("c04", 3, "p2"): ([(4, "R"), (0, "R")], 0),
    ("c04", 3, "p3"): ([(5, "R"), (1, "R")], 1),
    ("c04", 3, "p4"): ([(4, "L"), (2, "L"), (5, "L"), (3, "L")], 0),
    ("c04", 4, "s"): ([(2, "R"), (1, "L"), (3, "L"), (4, "R")], 0),
    ("c04", 4, "t"): ([(5, "L"), (1, "R"), (0, "R"), (4, "L")], 0),
    ("c04", 4, "u"): ([(5, "R"), (2, "L"), (4, "L"), (0, "R"), (3, "L"), (4, "L")], 0),
    ("c04", 4, "p1"): ([(2, "R"), (1, "R"), (0, "R"), (4, "R")], 0),
    ("c04", 4, "p2"): ([(0, "R"), (3, "R")], 2),
    ("c04", 4, "p3"): ([(5, "L"), (1, "L"), (3, "L"), (4, "L")], 0),
    ("c04", 4, "p4"): ([(5, "R"), (2, "R")], 0),
    ("c04", 5, "s"): ([(3, "R"), (1, "L"), (5, "L"), (2, "R"), (4, "L"), (5, "L")], 0),
    ("c04", 5, "t"): ([(1, "R"), (0, "L"), (4, "L"), (5, "R")], 0),
    ("c04", 5, "u"): ([(3, "L"), (0, "R"), (2, "R"), (5, "L")], 0),
    ("c04", 5, "p1"): ([(1, "R"), (0, "R"), (2, "R"), (5, "R")], 0),
    ("c04", 5, "p2"): ([(3, "L"), (0, "L"), (4, "L"), (5, "L")], 0),
    ("c04", 5, "p3"): ([(3, "R"), (1, "R")], 0),
    ("c04", 5, "p4"): ([(2, "R"), (4, "R")], 1),
}


def reference_curves(name: str) -> dict:
    """All curated walks on the reference triangulation ``name``."""
    if name not in _CURVES:
        raise ValueError(f"no reference curves for {name!r}")
    return {k: CurvePath(steps, start=start) for k, (steps, start) in _CURVES[name].items()}


def covariant_walk(name: str, e: int, curve: str) -> CurvePath:
    """The stored walk of ``curve`` in the triangulation flipped at ``e``."""
    key = (name, e, curve)
    if key not in COVARIANT_WALKS:
        raise KeyError(f"no covariant walk stored for {key}")
    steps, start = COVARIANT_WALKS[key]
    return CurvePath(steps, start=start)


def covariance_corpus(name: str) -> list:
    """All (edge, curve name) pairs with stored covariant walks."""
    return sorted((e, c) for (nm, e, c) in COVARIANT_WALKS if nm == name)


def boundary_names(name: str) -> list:
    if name == "c11":
        return ["p1"]
    if name == "c04":
        return ["p1", "p2", "p3", "p4"]
    raise ValueError(f"unknown reference surface {name!r}")


def reference_setup(name: str) -> tuple:
    """(Triangulation, curves dict) for the named reference surface."""
    return reference_triangulation(name), reference_curves(name)


def generator_curves_for(kind: str) -> dict:
    """Generator triple with Dehn parameters on the companion triangulation.

    Returns {"s"|"t"|"u": (CurvePath, (r, s))}.
    """
    curves = reference_curves(kind)
    dehn = GENERATOR_DEHN[kind]
    return {k: (curves[k], dehn[k]) for k in ("s", "t", "u")}
