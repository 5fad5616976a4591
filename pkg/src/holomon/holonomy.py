"""Classical algebra of trace functions in shear coordinates.

Holonomies of fat-graph walks are products of per-edge matrices
``[[0, X^(1/2)], [-X^(-1/2), 0]]`` with constant turn matrices
``L = [[1,1],[-1,0]]`` and ``R = [[0,1],[-1,-1]]`` (so ``L^3 = -1``,
matching the trivalent vertices).  Traces are sign-normalized Laurent
polynomials; the log-canonical bracket, coordinate mutation and the
cubic/quartic generator relations live here as well.
"""

from __future__ import annotations

from fractions import Fraction

from .laurent import LaurentPoly, LaurentRational
from .surfaces import LEFT, RIGHT, CurvePath, FatGraph, Triangulation, dual_fat_graph

# turn matrices as integer 2x2 tuples
_TURN = {
    LEFT: ((1, 1), (-1, 0)),
    RIGHT: ((0, 1), (-1, -1)),
}


def _edge_matrix(nvars: int, e: int):
    half = [0] * nvars
    half[e] = 1
    up = LaurentPoly.monomial(nvars, half)
    dn = LaurentPoly.monomial(nvars, [-x for x in half], -1)
    zero = LaurentPoly.zero(nvars)
    return ((zero, up), (dn, zero))


def _mat_mul(A, B):
    return tuple(
        tuple(A[i][0] * B[0][j] + A[i][1] * B[1][j] for j in range(2))
        for i in range(2)
    )


def _mat_scale_turn(A, T):
    # multiply on the right by an integer turn matrix
    return tuple(
        tuple(A[i][0] * T[0][j] + A[i][1] * T[1][j] for j in range(2))
        for i in range(2)
    )


def holonomy_matrix(tri: Triangulation, curve: CurvePath, fg: FatGraph | None = None):
    """Product of edge and turn matrices along the (validated) walk."""
    if fg is None:
        fg = dual_fat_graph(tri)
    resolved = curve.resolve(fg)
    nvars = tri.n_edges
    acc = None
    for _, e, turn in resolved:
        M = _mat_scale_turn(_edge_matrix(nvars, e), _TURN[turn])
        acc = M if acc is None else _mat_mul(acc, M)
    return acc


def trace_function(tri: Triangulation, curve: CurvePath,
                   fg: FatGraph | None = None) -> LaurentPoly:
    """Sign-normalized trace of the walk holonomy.

    The overall sign is fixed so the lexicographically leading coefficient
    is positive; simple-curve walks then have all coefficients positive.
    """
    H = holonomy_matrix(tri, curve, fg)
    return (H[0][0] + H[1][1]).normalize_sign()


# -- Poisson bracket -----------------------------------------------------------

def pairing(d1, d2, n) -> Fraction:
    """Symplectic pairing of doubled exponent vectors: sum mu_a n_ab nu_b."""
    total = 0
    for a, da in enumerate(d1):
        if not da:
            continue
        row = n[a]
        for b, db in enumerate(d2):
            if db:
                total += da * row[b] * db
    return Fraction(total, 4)


def poisson_bracket(p: LaurentPoly, q: LaurentPoly, n) -> LaurentPoly:
    """Log-canonical bracket {X^mu, X^nu} = <mu, nu> X^(mu+nu), extended
    bilinearly (which is exactly the Leibniz extension)."""
    if p.nvars != q.nvars or len(n) != p.nvars:
        raise ValueError("variable index sets differ")
    out = LaurentPoly.zero(p.nvars)
    acc: dict = {}
    for d1, c1 in p.terms.items():
        for d2, c2 in q.terms.items():
            w = pairing(d1, d2, n)
            if w == 0:
                continue
            e = tuple(a + b for a, b in zip(d1, d2))
            s = acc.get(e, Fraction(0)) + w * c1 * c2
            if s == 0:
                acc.pop(e, None)
            else:
                acc[e] = s
    return LaurentPoly(p.nvars, acc)


# -- cluster mutation -----------------------------------------------------------

def mutate_coordinate(n, e: int, target: int) -> LaurentRational:
    """Flipped-triangulation coordinate X'_target written in the unflipped
    coordinates (rational in general)."""
    E = len(n)
    if target == e:
        return LaurentRational(LaurentPoly.variable(E, e)).inverse()
    k = n[target][e]
    x_t = LaurentPoly.variable(E, target)
    if k == 0:
        return LaurentRational(x_t)
    x_e = LaurentPoly.variable(E, e)
    one = LaurentPoly.const(E, 1)
    if k > 0:
        base = one + x_e.monomial_inverse()       # 1 + X_e^{-1}
        return LaurentRational(x_t, base ** k)
    base = one + x_e                              # 1 + X_e
    return LaurentRational(x_t * base ** (-k))


class SubstitutionError(ValueError):
    pass


def substitute_flip(p: LaurentPoly, n, e: int) -> LaurentRational:
    """Rewrite a polynomial in flipped coordinates as a rational function of
    the unflipped ones.

    Works monomial by monomial: every half-integer power of a mutated
    coordinate contributes a power of u = 1 + X_e times a monomial, and for
    honest trace polynomials the total u-exponent is integral; a
    half-integral power (impossible for curves) raises SubstitutionError.
    """
    E = p.nvars
    terms = []  # (doubled monomial exponents, doubled u exponent, coeff)
    for d, c in p.terms.items():
        mono = list(d)
        u2 = 0  # doubled exponent of u
        mono[e] = -d[e]
        for a, da in enumerate(d):
            if a == e or da == 0:
                continue
            k = n[a][e]
            if k == 0:
                continue
            u2 += -k * da
            if k > 0:
                mono[e] += k * da
        terms.append((tuple(mono), u2, c))
    if any(u2 % 2 for _, u2, _ in terms):
        raise SubstitutionError("substitution produced a half-integer power of 1+X_e")
    j_all = [u2 // 2 for _, u2, _ in terms]
    j0 = min(0, min(j_all))
    u = LaurentPoly.const(E, 1) + LaurentPoly.variable(E, e)
    upows = {}
    num = LaurentPoly.zero(E)
    for (mono, u2, c), j in zip(terms, j_all):
        k = j - j0
        if k not in upows:
            upows[k] = u ** k
        num = num + LaurentPoly.monomial(E, mono, c) * upows[k]
    den = u ** (-j0)
    return LaurentRational(num, den)


def verify_mutation_covariance(tri: Triangulation, e: int, curve: CurvePath,
                               curve_in_flipped: CurvePath) -> bool:
    """Exact check that the flipped-triangulation trace, pushed through the
    coordinate mutation, reproduces the original trace."""
    from .surfaces import flip

    n = [row[:] for row in _exchange(tri)]
    orig = trace_function(tri, curve)
    tri2 = flip(tri, e)
    flipped = trace_function(tri2, curve_in_flipped)
    pushed = substitute_flip(flipped, n, e)
    return pushed == LaurentRational(orig)


def _exchange(tri: Triangulation):
    from .surfaces import exchange_matrix

    return exchange_matrix(tri)


def enumerate_closed_walks(fg: FatGraph, length: int) -> list:
    """All closed walks of the given length, one representative per
    (start vertex, turn sequence); used to curate curve fixtures."""
    out = []
    for v0 in range(fg.n_vertices):
        for e0 in fg.cyclic[v0]:
            for mask in range(2 ** length):
                turns = [(LEFT if (mask >> i) & 1 else RIGHT) for i in range(length)]
                v, e = v0, e0
                steps = []
                ok = True
                for t in turns:
                    steps.append((e, t))
                    v, e = fg.step(v, e, t)
                if v == v0 and e == e0:
                    cp = CurvePath(steps, start=v0)
                    try:
                        cp.resolve(fg)
                    except ValueError:
                        ok = False
                    if ok:
                        out.append(cp)
    return out


def find_covariant_walk(tri: Triangulation, e: int, curve: CurvePath,
                        max_len: int = 8):
    """Search the flipped triangulation for a walk of the same curve.

    Returns the first closed walk whose trace, pushed through the mutation,
    equals the original trace; None when no walk up to ``max_len`` matches.
    """
    from .surfaces import flip

    n = _exchange(tri)
    orig = LaurentRational(trace_function(tri, curve))
    tri2 = flip(tri, e)
    fg2 = dual_fat_graph(tri2)
    seen = set()
    for length in range(2, max_len + 1):
        for cand in enumerate_closed_walks(fg2, length):
            tr = trace_function(tri2, cand, fg2)
            key = tuple(tr.sorted_terms())
            if key in seen:
                continue
            seen.add(key)
            if tr.is_zero() or not tr.all_coefficients_positive():
                continue
            try:
                pushed = substitute_flip(tr, n, e)
            except SubstitutionError:
                continue
            if pushed == orig:
                return cand
    return None


# -- skein products -------------------------------------------------------------

def skein_check(tri: Triangulation, c1: CurvePath, c2: CurvePath,
                resolutions) -> bool:
    """Exact check of L_{c1} L_{c2} = sum of resolution traces.

    ``resolutions`` is a list of (CurvePath, multiplicity); the smoothed
    curves themselves are supplied by the caller (curated fixtures).
    """
    fg = dual_fat_graph(tri)
    lhs = trace_function(tri, c1, fg) * trace_function(tri, c2, fg)
    rhs = LaurentPoly.zero(tri.n_edges)
    for cp, mult in resolutions:
        rhs = rhs + trace_function(tri, cp, fg) * mult
    return lhs == rhs


# -- generator relations ----------------------------------------------------------

def _coerce(nvars: int, v):
    if isinstance(v, LaurentPoly) or nvars is None:
        return v
    return LaurentPoly.const(nvars, v)


def relation_poly(kind: str, values: dict):
    """Evaluate the generator relation polynomial on trace data.

    kind 'c11' needs keys s, t, u, L0; kind 'c04' needs s, t, u, L1..L4.
    Exact polynomials give an exact polynomial back; plain numeric inputs
    are evaluated numerically.
    """
    nvars = _common_nvars(values)
    g = lambda k: _coerce(nvars, values[k])
    if kind == "c11":
        s, t, u, L0 = g("s"), g("t"), g("u"), g("L0")
        return s * s + t * t + u * u - s * t * u + L0 - 2
    if kind == "c04":
        s, t, u = g("s"), g("t"), g("u")
        L1, L2, L3, L4 = g("L1"), g("L2"), g("L3"), g("L4")
        return (L1 * L2 * L3 * L4 + s * s + t * t + u * u
                + L1 * L1 + L2 * L2 + L3 * L3 + L4 * L4 - 4
                + s * (L3 * L4 + L1 * L2)
                + t * (L2 * L3 + L1 * L4)
                + u * (L1 * L3 + L2 * L4)
                - s * t * u)
    raise ValueError(f"unknown relation kind {kind!r}")


def relation_poly_du(kind: str, values: dict):
    """Partial derivative of the relation polynomial in the u-generator."""
    nvars = _common_nvars(values)
    g = lambda k: _coerce(nvars, values[k])
    if kind == "c11":
        s, t, u = g("s"), g("t"), g("u")
        return 2 * u - s * t
    if kind == "c04":
        s, t, u = g("s"), g("t"), g("u")
        L1, L2, L3, L4 = g("L1"), g("L2"), g("L3"), g("L4")
        return 2 * u + (L1 * L3 + L2 * L4) - s * t
    raise ValueError(f"unknown relation kind {kind!r}")


def _common_nvars(values: dict):
    has_float = any(isinstance(v, (float, complex)) for v in values.values())
    for v in values.values():
        if isinstance(v, LaurentPoly):
            if has_float:
                raise TypeError("cannot mix polynomials with inexact scalars")
            return v.nvars
    return None if has_float else 1


def goldman_vs_dp(kind: str, n, values: dict):
    """Compare {L_s, L_t} with dP/dL_u on trace polynomials.

    Returns (equal, constant) where constant is the measured ratio of the
    two sides when they are proportional (None when either side is zero or
    they are not proportional).
    """
    nvars = len(n)
    s = _coerce(nvars, values["s"])
    t = _coerce(nvars, values["t"])
    lhs = poisson_bracket(s, t, n)
    rhs = relation_poly_du(kind, values)
    if lhs == rhs:
        return True, Fraction(1)
    if lhs.is_zero() or rhs.is_zero():
        return False, None
    # measure a constant of proportionality if one exists
    lead = max(rhs.terms)
    if lead not in lhs.terms:
        return False, None
    ratio = lhs.terms[lead] / rhs.terms[lead]
    if lhs == rhs * ratio:
        return False, ratio
    return False, None
