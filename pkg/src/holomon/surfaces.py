"""Combinatorial surface topology.

Punctured surfaces, ideal triangulations given by gluing tables, the dual
trivalent fat graph, diagonal flips, the antisymmetric exchange matrix,
closed walks carrying curves, and pants decompositions with their
elementary moves.

Triangles are oriented: each one lists its three sides in counterclockwise
order as ``(edge_index, flag)`` with ``flag = +1`` when the side runs along
the edge's reference orientation.  On an oriented surface every edge is
used exactly twice, once with each flag.  Self-folded triangles (an edge
used twice by the same triangle) are rejected everywhere.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Sequence

LEFT = "L"
RIGHT = "R"


@dataclass(frozen=True)
class Surface:
    """A genus-g surface with n punctures; must be stable (2g-2+n > 0)."""

    genus: int
    punctures: int

    def __post_init__(self):
        if self.genus < 0 or self.punctures < 0:
            raise ValueError("genus and punctures must be non-negative")
        if 2 * self.genus - 2 + self.punctures <= 0:
            raise ValueError(f"unstable surface C_{{{self.genus},{self.punctures}}}")

    @property
    def is_triangulable(self) -> bool:
        return self.punctures >= 1

    @property
    def n_edges(self) -> int:
        return 6 * self.genus - 6 + 3 * self.punctures

    @property
    def n_triangles(self) -> int:
        return 4 * self.genus - 4 + 2 * self.punctures

    @property
    def n_pants_curves(self) -> int:
        return 3 * self.genus - 3 + self.punctures


class TriangulationError(ValueError):
    pass


class Triangulation:
    """An ideal triangulation with all vertices at the punctures.

    ``triangles`` is a tuple of triples ``((e0,f0),(e1,f1),(e2,f2))`` in ccw
    order.  Construction validates the Euler counts, the side pairing and
    the absence of self-folded triangles.
    """

    __slots__ = ("surface", "triangles", "n_edges")

    def __init__(self, surface: Surface, triangles: Sequence):
        if not surface.is_triangulable:
            raise TriangulationError("surface has no punctures, not triangulable")
        tris = []
        for t in triangles:
            sides = tuple((int(e), int(f)) for e, f in t)
            if len(sides) != 3:
                raise TriangulationError(f"triangle {t} does not have 3 sides")
            for _, f in sides:
                if f not in (1, -1):
                    raise TriangulationError(f"bad orientation flag in {t}")
            tris.append(sides)
        self.surface = surface
        self.triangles = tuple(tris)

        edges = sorted({e for t in self.triangles for e, _ in t})
        if edges != list(range(len(edges))):
            raise TriangulationError("edge indices must be 0..E-1 without gaps")
        self.n_edges = len(edges)

        if self.n_edges != surface.n_edges:
            raise TriangulationError(
                f"expected {surface.n_edges} edges, gluing table uses {self.n_edges}")
        if len(self.triangles) != surface.n_triangles:
            raise TriangulationError(
                f"expected {surface.n_triangles} triangles, got {len(self.triangles)}")

        # each edge must be used exactly twice, with opposite flags, by
        # two distinct triangles
        seen: dict = {}
        for ti, t in enumerate(self.triangles):
            for e, f in t:
                seen.setdefault(e, []).append((ti, f))
        for e, occ in seen.items():
            if len(occ) != 2:
                raise TriangulationError(f"edge {e} used {len(occ)} times, want 2")
            (t1, f1), (t2, f2) = occ
            if t1 == t2:
                raise TriangulationError(f"edge {e} makes triangle {t1} self-folded")
            if f1 + f2 != 0:
                raise TriangulationError(f"edge {e} glued without reversing orientation")

    # -- queries -----------------------------------------------------------

    def edge_triangles(self, e: int) -> tuple:
        """The two (triangle index, position) occurrences of edge e."""
        occ = []
        for ti, t in enumerate(self.triangles):
            for pos, (ee, _) in enumerate(t):
                if ee == e:
                    occ.append((ti, pos))
        return tuple(occ)

    def __eq__(self, other):
        if not isinstance(other, Triangulation):
            return NotImplemented
        return self.surface == other.surface and canonical_key(self) == canonical_key(other)

    def __hash__(self):
        return hash((self.surface, canonical_key(self)))

    def __repr__(self):
        return (f"Triangulation(C_{{{self.surface.genus},{self.surface.punctures}}}, "
                f"{len(self.triangles)} triangles, {self.n_edges} edges)")


def build_triangulation(surface: Surface, gluing: Sequence) -> Triangulation:
    """Validated triangulation from a gluing table.

    ``gluing`` lists triangles as triples of ``(edge, flag)`` pairs in ccw
    order; bare ints are accepted and read as signed 1-based edge labels.
    """
    tris = []
    for t in gluing:
        sides = []
        for s in t:
            if isinstance(s, int):
                if s == 0:
                    raise TriangulationError("signed 1-based side labels cannot be 0")
                sides.append((abs(s) - 1, 1 if s > 0 else -1))
            else:
                sides.append((int(s[0]), int(s[1])))
        tris.append(tuple(sides))
    return Triangulation(surface, tris)


# -- reference triangulations ----------------------------------------------

def reference_triangulation(name: str) -> Triangulation:
    """Stored triangulations: 'c11' (two-triangle torus), 'c04'
    (tetrahedron sphere), 'c05' (bipyramid sphere)."""
    if name == "c11":
        # edges 0=a, 1=b, 2=c (diagonal); both triangles see cyclic (a,b,c)
        return Triangulation(
            Surface(1, 1),
            [[(0, 1), (1, 1), (2, -1)], [(2, 1), (0, -1), (1, -1)]],
        )
    if name == "c04":
        # boundary of a tetrahedron on punctures 1..4;
        # edges 0..5 = (12, 13, 14, 23, 24, 34)
        return Triangulation(
            Surface(0, 4),
            [
                [(3, 1), (5, 1), (4, -1)],   # face (2,3,4)
                [(2, 1), (5, -1), (1, -1)],  # face (1,4,3)
                [(0, 1), (4, 1), (2, -1)],   # face (1,2,4)
                [(1, 1), (3, -1), (0, -1)],  # face (1,3,2)
            ],
        )
    if name == "c05":
        # triangular bipyramid: equator punctures 1,2,3, apexes 4 (top), 5
        # (bottom); edges 0..8 = (12, 23, 31, 41, 42, 43, 51, 52, 53)
        return Triangulation(
            Surface(0, 5),
            [
                [(0, 1), (4, 1), (3, -1)],   # (1,2,4)
                [(1, 1), (5, 1), (4, -1)],   # (2,3,4)
                [(2, 1), (3, 1), (5, -1)],   # (3,1,4)
                [(0, -1), (6, 1), (7, -1)],  # (2,1,5)
                [(1, -1), (7, 1), (8, -1)],  # (3,2,5)
                [(2, -1), (8, 1), (6, -1)],  # (1,3,5)
            ],
        )
    raise ValueError(f"unknown reference triangulation {name!r}")


# -- exchange matrix ---------------------------------------------------------

def exchange_matrix(tri: Triangulation) -> list:
    """Antisymmetric integer matrix of total corner intersection indices.

    Convention: within each triangle, the ccw successor relation
    contributes +1, its reverse -1; both adjacent triangles contribute.
    """
    E = tri.n_edges
    n = [[0] * E for _ in range(E)]
    for t in tri.triangles:
        es = [e for e, _ in t]
        for i in range(3):
            a, b = es[i], es[(i + 1) % 3]
            n[a][b] += 1
            n[b][a] -= 1
    return n


def mutate_exchange_matrix(n: list, k: int) -> list:
    """Matrix mutation at index k (skew-symmetric exchange-matrix rule)."""
    E = len(n)
    out = [[0] * E for _ in range(E)]
    for i in range(E):
        for j in range(E):
            if i == k or j == k:
                out[i][j] = -n[i][j]
            else:
                out[i][j] = n[i][j] + (abs(n[i][k]) * n[k][j] + n[i][k] * abs(n[k][j])) // 2
    return out


# -- flips -------------------------------------------------------------------

class FlipError(ValueError):
    pass


def flip(tri: Triangulation, e: int) -> Triangulation:
    """Exchange the diagonal e of its quadrilateral.

    The edge index is reused for the new diagonal.  Rejected when the move
    would produce a self-folded triangle.
    """
    occ = tri.edge_triangles(e)
    if len(occ) != 2:
        raise FlipError(f"edge {e} not interior")
    (t1, p1), (t2, p2) = occ
    if t1 == t2:
        raise FlipError(f"edge {e} is self-folded")

    def rotated(ti, pos):
        t = tri.triangles[ti]
        # rotate so the diagonal is last: (A, B, e)
        return (t[(pos + 1) % 3], t[(pos + 2) % 3], t[pos])

    A, B, _ = rotated(t1, p1)
    C, D, _ = rotated(t2, p2)
    if B[0] == C[0] or D[0] == A[0]:
        raise FlipError(f"flip at edge {e} would create a self-folded triangle")

    new1 = (B, C, (e, 1))
    new2 = (D, A, (e, -1))
    tris = list(tri.triangles)
    tris[t1] = new1
    tris[t2] = new2
    return Triangulation(tri.surface, tris)


def flippable_edges(tri: Triangulation) -> list:
    out = []
    for e in range(tri.n_edges):
        try:
            flip(tri, e)
        except FlipError:
            continue
        out.append(e)
    return out


def random_flip_walk(tri: Triangulation, steps: int, rng) -> list:
    """Random flip sequence; returns [(edge, triangulation_after), ...]."""
    walk = []
    cur = tri
    for _ in range(steps):
        choices = flippable_edges(cur)
        e = rng.choice(choices)
        cur = flip(cur, e)
        walk.append((e, cur))
    return walk


# -- canonical form ----------------------------------------------------------

def canonical_key(tri: Triangulation) -> tuple:
    """Edge-relabeling-invariant key.

    Performs the rooted-traversal canonicalization over all (triangle,
    rotation) roots; edge orientations are renormalized so each edge is
    first seen with flag +1.
    """
    best = None
    for root_t, root_r in itertools.product(range(len(tri.triangles)), range(3)):
        relabel: dict = {}
        reorient: dict = {}
        out = []
        visited = set()

        def side_key(side):
            e, f = side
            if e not in relabel:
                relabel[e] = len(relabel)
                reorient[e] = f  # first sight defines orientation +1
            return (relabel[e], f * reorient[e])

        # visit triangles in order of the smallest labeled edge they contain
        pending = [(root_t, root_r)]
        while pending or len(visited) < len(tri.triangles):
            if pending:
                ti, rot = pending.pop(0)
            else:
                # pick unvisited triangle holding the smallest labeled edge
                cand = []
                for ti2, t in enumerate(tri.triangles):
                    if ti2 in visited:
                        continue
                    labs = [relabel.get(e) for e, _ in t if e in relabel]
                    cand.append((min(labs) if labs else len(relabel), ti2))
                _, ti = min(cand)
                t = tri.triangles[ti]
                labs = [(relabel.get(e, len(relabel)), pos) for pos, (e, _) in enumerate(t)]
                rot = min(labs)[1]
            if ti in visited:
                continue
            visited.add(ti)
            t = tri.triangles[ti]
            triple = tuple(side_key(t[(rot + i) % 3]) for i in range(3))
            out.append(triple)
        key = tuple(out)
        if best is None or key < best:
            best = key
    return best


# -- dual fat graph ----------------------------------------------------------

class FatGraph:
    """Trivalent dual of a triangulation.

    One vertex per triangle; ``cyclic[v]`` is the ccw edge order at v
    (inherited from the triangle); ``ends[e]`` the two incident vertices.
    """

    __slots__ = ("cyclic", "ends", "n_edges")

    def __init__(self, cyclic: Sequence, ends: Sequence):
        self.cyclic = tuple(tuple(c) for c in cyclic)
        self.ends = tuple(tuple(p) for p in ends)
        self.n_edges = len(self.ends)
        for c in self.cyclic:
            if len(c) != 3 or len(set(c)) != 3:
                raise ValueError("fat graph vertices must see 3 distinct edges")

    @property
    def n_vertices(self) -> int:
        return len(self.cyclic)

    def other_end(self, e: int, v: int) -> int:
        a, b = self.ends[e]
        if v == a:
            return b
        if v == b:
            return a
        raise ValueError(f"vertex {v} not an end of edge {e}")

    def step(self, v_from: int, e: int, turn: str) -> tuple:
        """Traverse e from v_from, turn L/R at the far vertex; returns
        (far_vertex, next_edge)."""
        w = self.other_end(e, v_from)
        cyc = self.cyclic[w]
        p = cyc.index(e)
        if turn == LEFT:
            nxt = cyc[(p + 1) % 3]
        elif turn == RIGHT:
            nxt = cyc[(p + 2) % 3]
        else:
            raise ValueError(f"turn must be 'L' or 'R', got {turn!r}")
        return w, nxt

    def face_walks(self) -> list:
        """Boundary walks of the ribbon structure, one per puncture.

        Each walk is returned as a CurvePath turning the same way at every
        vertex.
        """
        # half-edges: (vertex, slot); face tracing: arrive at (w, slot of e),
        # leave via cyclic successor
        unused = {(v, s) for v in range(self.n_vertices) for s in range(3)}
        walks = []
        while unused:
            v0, s0 = min(unused)
            walk = []
            v, s = v0, s0
            start_vertex = v0
            while True:
                e = self.cyclic[v][s]
                unused.discard((v, s))
                walk.append((e, RIGHT))
                w = self.other_end(e, v)
                p = self.cyclic[w].index(e)
                s = (p + 2) % 3
                v = w
                if (v, s) == (v0, s0):
                    break
            walks.append(CurvePath(walk, start=start_vertex))
        return walks


def dual_fat_graph(tri: Triangulation) -> FatGraph:
    cyclic = [tuple(e for e, _ in t) for t in tri.triangles]
    ends = []
    for e in range(tri.n_edges):
        occ = tri.edge_triangles(e)
        ends.append((occ[0][0], occ[1][0]))
    return FatGraph(cyclic, ends)


# -- curves as fat-graph walks ------------------------------------------------

class CurvePath:
    """A closed walk in a fat graph given as (edge, turn-after) steps.

    ``start`` is the vertex the first edge is traversed from; when omitted
    it defaults to the smaller-indexed end of the first edge.
    """

    __slots__ = ("steps", "start")

    def __init__(self, steps: Sequence, start: int | None = None):
        self.steps = tuple((int(e), str(t)) for e, t in steps)
        if not self.steps:
            raise ValueError("empty walk")
        for _, t in self.steps:
            if t not in (LEFT, RIGHT):
                raise ValueError(f"turn must be 'L' or 'R', got {t!r}")
        self.start = start

    def __len__(self):
        return len(self.steps)

    def __eq__(self, other):
        if not isinstance(other, CurvePath):
            return NotImplemented
        return self.steps == other.steps and self.start == other.start

    def __hash__(self):
        return hash((self.steps, self.start))

    def rotated(self, k: int) -> "CurvePath":
        """The same cyclic walk starting k steps later (start recomputed)."""
        n = len(self.steps)
        k %= n
        # walk the first k steps to find the new starting vertex; needs a
        # graph, so rotation is resolved lazily: store None and let
        # resolve() recompute, beginning from the rotated first edge.
        return CurvePath(self.steps[k:] + self.steps[:k], start=None)

    def resolve(self, fg: FatGraph) -> list:
        """Validate the walk against ``fg``.

        Returns the vertex-resolved step list ``[(v_from, edge, turn), ...]``
        and raises if consecutive steps do not share a vertex or the walk
        fails to close up.
        """
        e0 = self.steps[0][0]
        v = self.start if self.start is not None else min(fg.ends[e0])
        if v not in fg.ends[e0]:
            raise ValueError(f"start vertex {v} is not an end of edge {e0}")
        out = []
        for i, (e, turn) in enumerate(self.steps):
            out.append((v, e, turn))
            w, nxt = fg.step(v, e, turn)
            expected = self.steps[(i + 1) % len(self.steps)][0]
            if nxt != expected:
                raise ValueError(
                    f"walk broken at step {i}: turn {turn} at vertex {w} "
                    f"leads to edge {nxt}, walk says {expected}")
            v = w
        v0 = self.start if self.start is not None else min(fg.ends[e0])
        if v != v0:
            raise ValueError("walk does not close up")
        return out

    def edge_multiplicities(self, n_edges: int) -> list:
        m = [0] * n_edges
        for e, _ in self.steps:
            m[e] += 1
        return m

    def __repr__(self):
        body = ",".join(f"{e}{t}" for e, t in self.steps)
        return f"CurvePath[{body}; start={self.start}]"


# -- pants decompositions ------------------------------------------------------

class PantsDecomposition:
    """A cut system with marking graph.

    ``vertices`` lists, per pair of pants, the cyclic triple of legs; a leg
    is ``('cut', curve_index)`` or ``('bdry', puncture_label)``.  Each cut
    curve must appear on exactly two legs (possibly of the same vertex).
    """

    __slots__ = ("surface", "vertices", "curve_names")

    def __init__(self, surface: Surface, vertices: Sequence, curve_names=None):
        self.surface = surface
        self.vertices = tuple(tuple(tuple(leg) for leg in v) for v in vertices)
        h = surface.n_pants_curves
        cuts: dict = {}
        bdry = []
        for v in self.vertices:
            if len(v) != 3:
                raise ValueError("pants vertices must have exactly 3 legs")
            for kind, lab in v:
                if kind == "cut":
                    cuts[lab] = cuts.get(lab, 0) + 1
                elif kind == "bdry":
                    bdry.append(lab)
                else:
                    raise ValueError(f"unknown leg kind {kind!r}")
        if sorted(cuts) != list(range(h)):
            raise ValueError(f"cut curves must be 0..{h - 1}")
        if any(cnt != 2 for cnt in cuts.values()):
            raise ValueError("every cut curve needs exactly two legs")
        if sorted(bdry) != list(range(surface.punctures)):
            raise ValueError("boundary labels must be each puncture once")
        if len(self.vertices) != 2 * surface.genus - 2 + surface.punctures:
            raise ValueError("wrong number of pairs of pants")
        if curve_names is None:
            curve_names = [f"gamma{c}" for c in range(h)]
        self.curve_names = tuple(curve_names)

    @property
    def n_curves(self) -> int:
        return self.surface.n_pants_curves

    def curve_vertices(self, c: int) -> list:
        out = []
        for vi, v in enumerate(self.vertices):
            for slot, (kind, lab) in enumerate(v):
                if kind == "cut" and lab == c:
                    out.append((vi, slot))
        return out

    def subsurface_type(self, c: int) -> str:
        """'c11' when curve c bounds a one-holed torus piece (self-glued
        vertex), else 'c04'."""
        occ = self.curve_vertices(c)
        return "c11" if occ[0][0] == occ[1][0] else "c04"

    def structure_key(self) -> tuple:
        """Canonical key ignoring curve names (for move identities)."""
        # relabel cut curves by the sorted signature of their two vertices
        sigs = []
        for vi, v in enumerate(self.vertices):
            sig = tuple(sorted((kind, lab if kind == "bdry" else -1) for kind, lab in v))
            sigs.append(sig)

        def leg_key(leg):
            kind, lab = leg
            if kind == "bdry":
                return ("bdry", lab)
            a, b = self.curve_vertices(lab)
            return ("cut", tuple(sorted((sigs[a[0]], sigs[b[0]]))))

        normalized = []
        for v in self.vertices:
            keys = [leg_key(leg) for leg in v]
            rots = [tuple(keys[i:] + keys[:i]) for i in range(3)]
            normalized.append(min(rots))
        return tuple(sorted(normalized))

    def __repr__(self):
        return f"PantsDecomposition({self.surface}, {len(self.vertices)} pants)"


@dataclass(frozen=True)
class DehnViolation:
    constraint: str
    location: object
    detail: str


def validate_dehn(pd: PantsDecomposition, dp: dict) -> list:
    """Check Dehn parameters ``{curve: (r, s)}``; returns violation list
    (empty = valid)."""
    violations = []
    for c in range(pd.n_curves):
        r, s = dp.get(c, (0, 0))
        if r < 0:
            violations.append(DehnViolation("(i)", c, f"r_{c} = {r} < 0"))
        if r == 0 and s < 0:
            violations.append(DehnViolation("(ii)", c, f"r_{c} = 0 but s_{c} = {s} < 0"))
    for vi, v in enumerate(pd.vertices):
        total = 0
        for kind, lab in v:
            if kind == "cut":
                total += dp.get(lab, (0, 0))[0]
        if total % 2 != 0:
            violations.append(
                DehnViolation("(iii)", vi, f"pants {vi} has odd total r = {total}"))
    return violations


class MoveError(ValueError):
    pass


def ms_move(pd: PantsDecomposition, move: str, location) -> PantsDecomposition:
    """Elementary change-of-decomposition moves on the marking graph.

    F at an internal curve whose piece is a four-holed sphere, S at a
    curve whose piece is a one-holed torus, B swaps two legs of one pair
    of pants, Z rotates the distinguished leg.  Pure bookkeeping.
    """
    if move == "F":
        c = location
        occ = pd.curve_vertices(c)
        if pd.subsurface_type(c) != "c04":
            raise MoveError("F move needs a four-holed-sphere piece")
        (u, su), (v, sv) = occ
        legs_u = list(pd.vertices[u])
        legs_v = list(pd.vertices[v])
        # other legs in cyclic order after the cut leg
        l1, l2 = legs_u[(su + 1) % 3], legs_u[(su + 2) % 3]
        l3, l4 = legs_v[(sv + 1) % 3], legs_v[(sv + 2) % 3]
        verts = list(pd.vertices)
        verts[u] = (l2, l3, ("cut", c))
        verts[v] = (l4, l1, ("cut", c))
        names = list(pd.curve_names)
        names[c] = _toggle_channel(names[c])
        return PantsDecomposition(pd.surface, verts, names)
    if move == "S":
        c = location
        if pd.subsurface_type(c) != "c11":
            raise MoveError("S move needs a one-holed-torus piece")
        names = list(pd.curve_names)
        names[c] = _toggle_channel(names[c])
        return PantsDecomposition(pd.surface, pd.vertices, names)
    if move == "B":
        vi, slot = location
        legs = list(pd.vertices[vi])
        legs[slot % 3], legs[(slot + 1) % 3] = legs[(slot + 1) % 3], legs[slot % 3]
        verts = list(pd.vertices)
        verts[vi] = tuple(legs)
        return PantsDecomposition(pd.surface, verts, pd.curve_names)
    if move == "Z":
        vi = location
        legs = pd.vertices[vi]
        verts = list(pd.vertices)
        verts[vi] = (legs[1], legs[2], legs[0])
        return PantsDecomposition(pd.surface, verts, pd.curve_names)
    raise MoveError(f"unknown move {move!r}")


def _toggle_channel(name: str) -> str:
    if name.endswith("~"):
        return name[:-1]
    return name + "~"


# -- serialization --------------------------------------------------------------

def surface_to_json(tri: Triangulation, curves: dict | None = None,
                    pants: PantsDecomposition | None = None) -> str:
    doc: dict = {
        "genus": tri.surface.genus,
        "punctures": tri.surface.punctures,
        "triangles": [[[e, f] for e, f in t] for t in tri.triangles],
    }
    if curves:
        doc["curves"] = {
            name: {"start": cp.start, "steps": [[e, t] for e, t in cp.steps]}
            for name, cp in sorted(curves.items())
        }
    if pants:
        doc["pants"] = {
            "vertices": [[[k, lab] for k, lab in v] for v in pants.vertices],
            "names": list(pants.curve_names),
        }
    return json.dumps(doc, indent=2, sort_keys=True)


def surface_from_json(text: str) -> tuple:
    """Returns (Triangulation, {name: CurvePath}, PantsDecomposition|None)."""
    doc = json.loads(text)
    tri = Triangulation(
        Surface(doc["genus"], doc["punctures"]),
        [[(e, f) for e, f in t] for t in doc["triangles"]],
    )
    curves = {}
    for name, item in doc.get("curves", {}).items():
        curves[name] = CurvePath([(e, t) for e, t in item["steps"]], start=item.get("start"))
    pants = None
    if "pants" in doc:
        pants = PantsDecomposition(
            tri.surface,
            [[(k, lab) for k, lab in v] for v in doc["pants"]["vertices"]],
            doc["pants"].get("names"),
        )
    return tri, curves, pants


def generator_curves(pd: PantsDecomposition, c: int) -> tuple:
    """Generator curves for the piece around cut curve c.

    Returns (kind, companion Triangulation, {"s"/"t"/"u": (CurvePath,
    (r, s))}); the walks live on the reference triangulation of the piece.
    """
    from .reference import generator_curves_for, reference_triangulation as _ref

    kind = pd.subsurface_type(c)
    return kind, _ref(kind), generator_curves_for(kind)
