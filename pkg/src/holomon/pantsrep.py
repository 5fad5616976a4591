"""Difference-operator representation of the quantized trace algebra.

The length operator acts by multiplication with 2 cosh(l/2) and the
conjugate shift moves l one step along the lattice l_n = l0 - 2 pi i b^2 n,
so the generators become banded matrices on a finite window.  Square roots
in coefficients are taken with one fixed principal branch per site and per
factor; the relation residuals double as the branch-consistency check.

Everything here is numeric (mpmath), at a configurable working precision.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import mpmath as mp


@dataclass
class RepParams:
    """Parameters of one representation instance.

    b2 is the deformation parameter (q = exp(i pi b2) must not be a root of
    unity); boundary holds L0 (torus piece) or L1..L4 (sphere piece); x0 is
    the lattice base point e^(l0/2).
    """

    b2: complex
    boundary: dict = field(default_factory=dict)
    x0: complex = 1.3 + 0.21j
    digits: int = 30

    def __post_init__(self):
        if self.b2 == 0:
            raise ValueError("b2 must be nonzero")

    def q(self):
        with mp.workdps(self.digits):
            return mp.exp(1j * mp.pi * mp.mpmathify(self.b2))

    def site(self, n: int):
        """x at lattice site n: x_n = x0 q^(-n), i.e. l_n = l0 - 2 pi i b2 n."""
        with mp.workdps(self.digits):
            return mp.mpmathify(self.x0) * self.q() ** (-n)

    def validate_window(self, lo: int, hi: int, tol: float = 1e-12):
        """Reject base points that land on a zero of 2 sinh(l/2)."""
        for n in range(lo, hi + 1):
            x = self.site(n)
            if abs(x - 1 / x) < tol:
                raise ValueError(f"lattice site {n} hits a zero of 2 sinh(l/2)")


class DiffOperator:
    """Finite sum of lattice shifts with per-site coefficient evaluators.

    ``terms`` maps the shift power m to a callable n -> coefficient; the
    operator acts as (A psi)(n) = sum_m coeff_m(n) psi(n + m).
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = dict(terms or {})

    @classmethod
    def zero(cls) -> "DiffOperator":
        return cls({})

    @classmethod
    def identity(cls) -> "DiffOperator":
        return cls({0: lambda n: mp.mpf(1)})

    @classmethod
    def diagonal(cls, f) -> "DiffOperator":
        return cls({0: f})

    @classmethod
    def shift(cls, m: int, f=None) -> "DiffOperator":
        if f is None:
            f = lambda n: mp.mpf(1)
        return cls({m: f})

    @property
    def bandwidth(self) -> int:
        return max((abs(m) for m in self.terms), default=0)

    def __add__(self, other: "DiffOperator") -> "DiffOperator":
        out = dict(self.terms)
        for m, f in other.terms.items():
            if m in out:
                g = out[m]
                out[m] = (lambda g=g, f=f: lambda n: g(n) + f(n))()
            else:
                out[m] = f
        return DiffOperator(out)

    def __sub__(self, other: "DiffOperator") -> "DiffOperator":
        return self + other.scaled(-1)

    def scaled(self, c) -> "DiffOperator":
        return DiffOperator(
            {m: (lambda f=f: lambda n: c * f(n))() for m, f in self.terms.items()})

    def __mul__(self, other: "DiffOperator") -> "DiffOperator":
        """Operator composition: (self о other), self applied second."""
        out: dict = {}
        for mA, fA in self.terms.items():
            for mB, fB in other.terms.items():
                m = mA + mB

                def term(n, fA=fA, fB=fB, mA=mA):
                    return fA(n) * fB(n + mA)

                if m in out:
                    g = out[m]
                    out[m] = (lambda g=g, t=term: lambda n: g(n) + t(n))()
                else:
                    out[m] = (lambda t=term: lambda n: t(n))()
        return DiffOperator(out)

    def coefficient(self, m: int, n: int):
        f = self.terms.get(m)
        return f(n) if f is not None else mp.mpf(0)

    def apply(self, vec: dict, window: tuple) -> tuple:
        """Banded product on a vector given as {site: value}.

        Returns (result dict, valid set): result[n] = sum_m c_m(n) v[n+m];
        sites needing values outside the window are flagged invalid.
        """
        lo, hi = window
        out = {}
        valid = set()
        for n in range(lo, hi + 1):
            total = mp.mpf(0)
            ok = True
            for m, f in self.terms.items():
                src = n + m
                if src < lo or src > hi:
                    # the vector is unknown outside the window
                    ok = False
                    continue
                v = vec.get(src, 0)
                if v:
                    total += f(n) * v
            out[n] = total
            if ok:
                valid.add(n)
        return out, valid


def operator_apply(op: DiffOperator, vec: dict, window: tuple) -> tuple:
    return op.apply(vec, window)


# -- generator operators -------------------------------------------------------


def _two_sinh_half(x):
    return x - 1 / x


def _two_cosh_half(x):
    return x + 1 / x


def build_Ls(p: RepParams) -> DiffOperator:
    """Multiplication by 2 cosh(l/2): the diagonal length operator."""

    def f(n):
        return _two_cosh_half(p.site(n))

    return DiffOperator.diagonal(f)


def c_factor(L, Li, Lj):
    """The boundary-dressed quadratic c_ij(L) = L^2+Li^2+Lj^2+L Li Lj-4."""
    return L * L + Li * Li + Lj * Lj + L * Li * Lj - 4


def build_Lt(p: RepParams, kind: str = "c04") -> DiffOperator:
    """The flip-channel length operator.

    Sphere piece: diagonal part plus two double-shift terms whose sandwich
    factors 1/sqrt(2sinh) . sqrt(c12 c34)/(2sinh) . 1/sqrt(2sinh) are
    evaluated at their shifted arguments.  Torus piece: single shifts with
    square-root coefficients of the one-step-displaced length function.
    """
    q = p.q()
    if kind == "c04":
        L1, L2, L3, L4 = (mp.mpmathify(p.boundary[k]) for k in ("L1", "L2", "L3", "L4"))

        def diag(n):
            x = p.site(n)
            num = (q + 1 / q) * (L2 * L3 + L1 * L4) + _two_cosh_half(x) * (L1 * L3 + L2 * L4)
            den = x ** 2 + x ** -2 - q ** 2 - q ** -2
            return num / den

        def shift_coeff(eps):
            def f(n, eps=eps):
                x = p.site(n)
                y = p.site(n + eps)
                z = p.site(n + 2 * eps)
                Ly = _two_cosh_half(y)
                mid = mp.sqrt(c_factor(Ly, L1, L2)) * mp.sqrt(c_factor(Ly, L3, L4))
                return (1 / mp.sqrt(_two_sinh_half(x))) * (mid / _two_sinh_half(y)) \
                    * (1 / mp.sqrt(_two_sinh_half(z)))

            return f

        return DiffOperator({0: diag, 2: shift_coeff(1), -2: shift_coeff(-1)})

    if kind == "c11":
        L0 = mp.mpmathify(p.boundary["L0"])

        def up(n):
            x = p.site(n)
            return mp.sqrt(L0 + x ** 2 / q + q / x ** 2) / _two_sinh_half(x)

        def dn(n):
            x = p.site(n)
            return mp.sqrt(L0 + q * x ** 2 + 1 / (q * x ** 2)) / _two_sinh_half(x)

        return DiffOperator({1: up, -1: dn})

    raise ValueError(f"unknown kind {kind!r}")


def build_Lu(p: RepParams, kind: str = "c04") -> DiffOperator:
    """Third generator, solved from the quadratic relation by operator
    arithmetic: (q LsLt - LtLs/q - (q-1/q)(central)) / (q^2 - q^-2) on the
    sphere piece and its single-bracket analogue on the torus piece."""
    q = p.q()
    Ls, Lt = build_Ls(p), build_Lt(p, kind)
    if kind == "c04":
        if abs(q ** 4 - 1) < mp.mpf(10) ** (-p.digits // 2):
            raise ValueError("q^4 = 1 makes the defining divisor degenerate")
        L1, L2, L3, L4 = (mp.mpmathify(p.boundary[k]) for k in ("L1", "L2", "L3", "L4"))
        central = (L1 * L3 + L2 * L4) * (q - 1 / q)
        core = (Ls * Lt).scaled(q) - (Lt * Ls).scaled(1 / q) - DiffOperator.identity().scaled(central)
        return core.scaled(1 / (q ** 2 - q ** -2))
    if kind == "c11":
        core = (Ls * Lt).scaled(mp.sqrt(q)) - (Lt * Ls).scaled(1 / mp.sqrt(q))
        return core.scaled(1 / (q - 1 / q))
    raise ValueError(f"unknown kind {kind!r}")


# -- relation residuals -----------------------------------------------------------


def _relation_terms(p: RepParams, kind: str, degree: int):
    """The summands of the deformed relation, kept separate so residuals
    can be normalized by the term-magnitude scale."""
    q = p.q()
    Ls, Lt = build_Ls(p), build_Lt(p, kind)
    Lu = build_Lu(p, kind)
    I = DiffOperator.identity()
    if kind == "c11":
        L0 = mp.mpmathify(p.boundary["L0"])
        if degree == 2:
            return [
                (Ls * Lt).scaled(mp.sqrt(q)),
                (Lt * Ls).scaled(-1 / mp.sqrt(q)),
                Lu.scaled(-(q - 1 / q)),
            ]
        if degree == 3:
            return [
                (Ls * Ls).scaled(q),
                (Lt * Lt).scaled(1 / q),
                (Lu * Lu).scaled(q),
                (Ls * Lt * Lu).scaled(-mp.sqrt(q)),
                I.scaled(L0 - q - 1 / q),
            ]
    if kind == "c04":
        L1, L2, L3, L4 = (mp.mpmathify(p.boundary[k]) for k in ("L1", "L2", "L3", "L4"))
        if degree == 2:
            return [
                (Ls * Lt).scaled(q),
                (Lt * Ls).scaled(-1 / q),
                Lu.scaled(-(q ** 2 - q ** -2)),
                I.scaled(-(q - 1 / q) * (L1 * L3 + L2 * L4)),
            ]
        if degree == 3:
            return [
                I.scaled(L1 * L2 * L3 * L4 + L1 ** 2 + L2 ** 2 + L3 ** 2 + L4 ** 2
                         - (q + 1 / q) ** 2),
                (Ls * Lt * Lu).scaled(-q),
                (Ls * Ls).scaled(q ** 2),
                (Lt * Lt).scaled(q ** -2),
                (Lu * Lu).scaled(q ** 2),
                Ls.scaled(q * (L3 * L4 + L1 * L2)),
                Lt.scaled((1 / q) * (L2 * L3 + L1 * L4)),
                Lu.scaled(q * (L1 * L3 + L2 * L4)),
            ]
    raise ValueError(f"no relation for kind={kind!r} degree={degree}")


def relation_residual(p: RepParams, kind: str, degree: int, site: int,
                      window: tuple | None = None):
    """Relative residual of the relation applied to the basis vector at
    ``site``: |P delta_n| / (term magnitude scale), over valid entries."""
    with mp.workdps(p.digits):
        terms = _relation_terms(p, kind, degree)
        bw = max(t.bandwidth for t in terms)
        if window is None:
            window = (site - 2 * bw - 2, site + 2 * bw + 2)
        p.validate_window(*window)
        delta = {site: mp.mpf(1)}
        total = None
        scale = mp.mpf(0)
        valid_all = None
        for t in terms:
            vec, valid = t.apply(delta, window)
            scale += mp.sqrt(sum(abs(v) ** 2 for v in vec.values()))
            if total is None:
                total, valid_all = vec, valid
            else:
                total = {n: total[n] + vec[n] for n in total}
                valid_all &= valid
        resid = mp.sqrt(sum(abs(total[n]) ** 2 for n in valid_all))
        if scale == 0:
            return mp.mpf("inf")
        return resid / scale


def verify_pants_relations(p: RepParams, kind: str, tol: float = 1e-9,
                           sites: tuple = (-2, 0, 3)) -> dict:
    """Residual report for both relations over several interior sites."""
    report = {}
    for degree in (2, 3):
        worst = mp.mpf(0)
        for site in sites:
            r = relation_residual(p, kind, degree, site)
            worst = max(worst, r)
        report[degree] = {"residual": worst, "pass": bool(worst < tol)}
    return report


def random_params(kind: str, rng, digits: int = 30) -> RepParams:
    """Generic parameter draw: b2 in a complex annulus around 0.3 + 0.1i,
    boundary constants of hyperbolic size, base point off the real axis."""
    def jitter(scale=0.15):
        return (rng.uniform(-scale, scale) + 1j * rng.uniform(-scale, scale))

    b2 = 0.3 + 0.1j + jitter()
    x0 = 1.3 + 0.2j + jitter(0.3)
    if kind == "c11":
        boundary = {"L0": 2.2 + rng.uniform(0, 2) + 1j * rng.uniform(-0.5, 0.5)}
    else:
        boundary = {f"L{i}": 2.1 + rng.uniform(0, 2) + 1j * rng.uniform(-0.4, 0.4)
                    for i in range(1, 5)}
    return RepParams(b2=b2, boundary=boundary, x0=x0, digits=digits)


# -- flip-move phase and weight dictionary ------------------------------------------


def conformal_weight_of_length(l, b):
    """Delta(l) = Q^2/4 + (l / 4 pi b)^2 with Q = b + 1/b.

    The quarter term uses Q^2, which is what the weight dictionary
    Delta = alpha (Q - alpha) gives at alpha = Q/2 + i l/(4 pi b); the
    variant with a bare Q/4 printed elsewhere is inconsistent with that
    dictionary and is deliberately not used (see the verification report).
    """
    Q = b + 1 / b
    return Q * Q / 4 + (l / (4 * math.pi * b)) ** 2


B_MOVE_WEIGHT_NOTE = (
    "weight exponent uses Q^2/4 + (l/4 pi b)^2; the alternative printed "
    "form (1+b^2)/4b + (l/4 pi b)^2 disagrees with the weight dictionary "
    "Delta = alpha(Q - alpha) and was not used"
)


def b_move_phase(l3, l2, l1, b):
    """Braiding phase exp(i pi (Delta_{l3} - Delta_{l2} - Delta_{l1}))."""
    if b == 0:
        raise ValueError("b must be nonzero")
    d3 = conformal_weight_of_length(l3, b)
    d2 = conformal_weight_of_length(l2, b)
    d1 = conformal_weight_of_length(l1, b)
    return cmath.exp(1j * cmath.pi * (d3 - d2 - d1))


def classical_symbol(op: DiffOperator, p: RepParams, site: int, k):
    """Commutative symbol of the operator at a lattice site: shifts are
    replaced by e^(m k / 2).  Used for small-b2 consistency probes against
    the classical trace relations."""
    with mp.workdps(p.digits):
        total = mp.mpf(0)
        for m, f in op.terms.items():
            total += f(site) * mp.exp(m * mp.mpmathify(k) / 2)
        return total


class BandMatrix:
    """Materialized banded matrix of an operator on a finite window.

    Entry (row, col) is nonzero only when |row - col| <= bandwidth; rows
    whose full band fits inside the window are exact, the rest are
    boundary rows (tracked in ``interior``).
    """

    __slots__ = ("lo", "hi", "bandwidth", "rows", "interior")

    def __init__(self, lo: int, hi: int, bandwidth: int, rows: dict, interior: set):
        self.lo, self.hi = lo, hi
        self.bandwidth = bandwidth
        self.rows = rows
        self.interior = interior

    @classmethod
    def from_operator(cls, op: DiffOperator, p: RepParams, window: tuple) -> "BandMatrix":
        lo, hi = window
        bw = op.bandwidth
        rows: dict = {}
        interior = set()
        with mp.workdps(p.digits):
            for n in range(lo, hi + 1):
                row = {}
                ok = True
                for m, f in op.terms.items():
                    col = n + m
                    if col < lo or col > hi:
                        ok = False
                        continue
                    row[col] = f(n)
                rows[n] = row
                if ok:
                    interior.add(n)
        return cls(lo, hi, bw, rows, interior)

    def entry(self, row: int, col: int):
        if abs(row - col) > self.bandwidth:
            return mp.mpf(0)
        return self.rows.get(row, {}).get(col, mp.mpf(0))

    def matvec(self, vec: dict) -> tuple:
        """Product with {site: value}; returns (result, interior rows)."""
        out = {}
        for n in range(self.lo, self.hi + 1):
            total = mp.mpf(0)
            for col, val in self.rows[n].items():
                v = vec.get(col, 0)
                if v:
                    total += val * v
            out[n] = total
        return out, set(self.interior)


def residual_table(p: RepParams, kind: str, sites=(-2, -1, 0, 1, 2)) -> list:
    """Per-site residual rows [(site, degree, residual), ...] for CSV
    reports."""
    out = []
    for degree in (2, 3):
        for site in sites:
            out.append((site, degree, relation_residual(p, kind, degree, site)))
    return out
