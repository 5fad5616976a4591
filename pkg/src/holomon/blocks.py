"""Chiral partition functions from the gluing construction.

Level coefficients contract descendant three-point data (generated by the
commutation of raising generators through a primary insertion) against
inverse Gram matrices.  Sphere four-point series are indexed by the
position of the second puncture; the self-glued torus one-point series
carries the extra central-charge shift -c/24 in its prefactor exponent
(a recorded convention).

Arithmetic follows the inputs: exact rational weights give exact rational
coefficients, anything else runs in mpmath at a configurable precision
(default 50 digits, HOLOMON_PRECISION overrides).
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath as mp

from .virasoro import (GramSingularError, VermaModule, invert_matrix,
                       partitions, solve_contraction)


def default_digits() -> int:
    return int(os.environ.get("HOLOMON_PRECISION", "50"))


def _is_exact(*vals) -> bool:
    return all(isinstance(v, (int, Fraction)) for v in vals)


def _coerce_all(exact: bool, digits: int, *vals):
    if exact:
        return tuple(Fraction(v) for v in vals)
    with mp.workdps(digits):
        return tuple(mp.mpmathify(v) for v in vals)


# -- parameter dictionary -----------------------------------------------------


def dict_params(b, l=None, beta=None, delta=None) -> dict:
    """Translate between length, momentum and weight parameters.

    Provide exactly one of l, beta, delta; returns all of them together
    with the central charge of b.  beta and delta use the weight map
    delta = beta (Q - beta) with Q = b + 1/b.
    """
    given = [x is not None for x in (l, beta, delta)]
    if sum(given) != 1:
        raise ValueError("provide exactly one of l, beta, delta")
    Q = b + 1 / b
    c = 1 + 6 * Q * Q
    if l is not None:
        beta = Q / 2 + 1j * l / (4 * mp.pi * b)
        delta = beta * (Q - beta)
    elif beta is not None:
        delta = beta * (Q - beta)
        l = (beta - Q / 2) * 4 * mp.pi * b / 1j
    else:
        # invert delta = beta(Q - beta) on the principal branch
        beta = Q / 2 - mp.sqrt(Q * Q / 4 - delta)
        l = (beta - Q / 2) * 4 * mp.pi * b / 1j
    return {"l": l, "beta": beta, "delta": delta, "c": c, "Q": Q}


# -- descendant three-point data ------------------------------------------------


def three_point_descendant(delta_out, h, delta_in, lam: tuple):
    """Normalized value of the primary insertion between a highest-weight
    vector and the descendant L_{-lam} of weight delta_in.

    Peeling one lowering generator at a time off the descendant gives the
    factor (delta_in + inner level + n h - delta_out) per part n.
    """
    if not lam:
        return 1
    n, rest = lam[0], lam[1:]
    inner = sum(rest)
    return (delta_in + inner + n * h - delta_out) * \
        three_point_descendant(delta_out, h, delta_in, rest)


class PrimaryMatrixElements:
    """Matrix elements of a primary insertion between two descendants of
    the same module, by recursion on the left state."""

    def __init__(self, module: VermaModule, h):
        self.module = module
        self.h = h
        self._memo: dict = {}

    def element(self, lam: tuple, mu: tuple):
        """<L_{-lam} e | primary(1) | L_{-mu} e> normalized to 1 on (), ()."""
        key = (lam, mu)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        if not lam:
            val = three_point_descendant(self.module.delta, self.h,
                                         self.module.delta, mu)
        else:
            n, rest = lam[0], lam[1:]
            d = self.module.delta
            dw = d + sum(rest)
            du = d + sum(mu)
            val = (dw - self.h - du + (n + 1) * self.h) * self.element(rest, mu)
            lowered = self.module.apply_L(n, {mu: 1})
            for nu, v in lowered.items():
                val = val + v * self.element(rest, nu)
        self._memo[key] = val
        return val


# -- block series ------------------------------------------------------------


@dataclass
class BlockSeries:
    """Truncated chiral partition function: prefactor exponent plus power
    series coefficients (c_0 = 1 under the trivial three-point
    normalization)."""

    leading_exponent: object
    coeffs: list
    channel: str
    weights: dict
    c: object
    mode: str
    digits: int = field(default=0)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def evaluate(self, q):
        with mp.workdps(max(self.digits, mp.mp.dps)):
            total = mp.mpf(0)
            for k, ck in enumerate(self.coeffs):
                total += mp.mpmathify(_to_num(ck)) * mp.mpmathify(q) ** k
            return mp.mpmathify(q) ** mp.mpmathify(_to_num(self.leading_exponent)) * total

    def sorted_items(self):
        return list(enumerate(self.coeffs))


def _to_num(v):
    if isinstance(v, Fraction):
        return mp.mpf(v.numerator) / mp.mpf(v.denominator)
    return v


def _contract(module: VermaModule, k: int, left: list, right: list, exact: bool = True):
    try:
        val = solve_contraction(module.gram(k), left, right)
    except GramSingularError as exc:
        raise GramSingularError(
            f"level-{k} contraction failed at internal weight "
            f"{module.delta}: {exc}") from exc
    if not exact and isinstance(val, (int, Fraction)):
        val = mp.mpf(int(val)) if int(val) == val else mp.mpf(val.numerator) / val.denominator
    return val


def sphere4_block(d1, d2, d3, d4, d_beta, c, N: int = 8,
                  digits: int | None = None) -> BlockSeries:
    """Four-point series in the position of the second puncture.

    Punctures sit at 0, q, 1 and infinity with weights d1, d2, d3, d4; the
    internal channel weight is d_beta.  Prefactor exponent is
    d_beta - d1 - d2; coefficient k contracts the level-k descendant
    three-point rows through the inverse Gram matrix.
    """
    digits = digits or default_digits()
    exact = _is_exact(d1, d2, d3, d4, d_beta, c)
    with mp.workdps(digits):
        d1, d2, d3, d4, d_beta, c = _coerce_all(exact, digits, d1, d2, d3, d4, d_beta, c)
        module = VermaModule(d_beta, c)
        coeffs = []
        for k in range(N + 1):
            basis = partitions(k)
            left = [three_point_descendant(d4, d3, d_beta, lam) for lam in basis]
            right = [three_point_descendant(d1, d2, d_beta, mu) for mu in basis]
            coeffs.append(_contract(module, k, left, right, exact))
    return BlockSeries(
        leading_exponent=d_beta - d1 - d2,
        coeffs=coeffs,
        channel="sphere4",
        weights={"d1": d1, "d2": d2, "d3": d3, "d4": d4, "d_beta": d_beta},
        c=c,
        mode="exact" if exact else "float",
        digits=0 if exact else digits,
    )


def torus1_block(d0, d_beta, c, N: int = 8, digits: int | None = None) -> BlockSeries:
    """Self-glued one-point series: graded trace of the primary insertion
    weighted by q^(L_0 - c/24)."""
    digits = digits or default_digits()
    exact = _is_exact(d0, d_beta, c)
    with mp.workdps(digits):
        d0, d_beta, c = _coerce_all(exact, digits, d0, d_beta, c)
        module = VermaModule(d_beta, c)
        elements = PrimaryMatrixElements(module, d0)
        coeffs = []
        for k in range(N + 1):
            basis = partitions(k)
            Ginv = invert_matrix(module.gram(k))
            total = 0
            for i, lam in enumerate(basis):
                for j, mu in enumerate(basis):
                    total = total + Ginv[j][i] * elements.element(mu, lam)
            if not exact and isinstance(total, (int, Fraction)):
                total = mp.mpf(total.numerator) / total.denominator if isinstance(total, Fraction) else mp.mpf(total)
            coeffs.append(total)
    c24 = c * (Fraction(1, 24) if exact else mp.mpf(1) / 24)
    return BlockSeries(
        leading_exponent=d_beta - c24,
        coeffs=coeffs,
        channel="torus1",
        weights={"d0": d0, "d_beta": d_beta},
        c=c,
        mode="exact" if exact else "float",
        digits=0 if exact else digits,
    )


# -- degenerate second-order equation ----------------------------------------


def degenerate_weight_of(b2):
    """Weight of the momentum -b/2 insertion as a function of b^2."""
    if isinstance(b2, (int, Fraction)):
        return Fraction(-1, 2) - 3 * Fraction(b2) / 4
    return -0.5 - 3 * b2 / 4


def bpz_residual(series: BlockSeries, b2, which: str = "b") -> list:
    """Coefficients of the second-order null-vector equation applied to a
    four-point series whose second puncture is the degenerate field.

    The equation (in the position z of the degenerate puncture, weights
    d1, dd, d3, d4 at 0, z, 1, infinity) reads

        G'' + B [ -(1/z + 1/(z-1)) G' + d1/z^2 + d3/(z-1)^2
                  - (d1 + dd + d3 - d4)/(z (z-1)) ] G = 0

    with B = b^2 ('b' branch) or 1/b^2.  Returns the residual series
    coefficients (orders z^(rho-2+j), j = 0..N).
    """
    if series.channel != "sphere4":
        raise ValueError("null-vector equation applies to four-point series")
    w = series.weights
    d1, dd, d3, d4 = w["d1"], w["d2"], w["d3"], w["d4"]
    exact = series.mode == "exact" and isinstance(b2, (int, Fraction))
    B = (Fraction(b2) if which == "b" else 1 / Fraction(b2)) if exact else \
        (b2 if which == "b" else 1 / b2)
    rho = series.leading_exponent
    cs = series.coeffs
    delta_sum = d1 + dd + d3 - d4
    N = series.order
    out = []
    for j in range(N + 1):
        r = cs[j] * ((rho + j) * (rho + j - 1) - B * (rho + j) + B * d1)
        acc1 = 0
        for k in range(j):
            acc1 = acc1 + cs[k] * (rho + k)
        r = r + B * acc1
        acc2 = 0
        for k in range(max(j - 1, 0)):
            acc2 = acc2 + (j - 1 - k) * cs[k]
        r = r + B * d3 * acc2
        acc3 = 0
        for k in range(j):
            acc3 = acc3 + cs[k]
        r = r + B * delta_sum * acc3
        out.append(r)
    return out


def frobenius_solution(d1, dd, d3, d4, b2, rho, N: int, which: str = "b") -> list:
    """Independent power-series solution of the same null-vector equation
    by the recursion on coefficients, normalized to c_0 = 1.

    Valid when the indicial roots do not differ by a positive integer
    along the chosen branch (generic weights).
    """
    exact = _is_exact(d1, dd, d3, d4, b2, rho)
    B = (Fraction(b2) if which == "b" else 1 / Fraction(b2)) if exact else \
        (b2 if which == "b" else 1 / b2)
    delta_sum = d1 + dd + d3 - d4
    cs = [Fraction(1) if exact else mp.mpf(1)]
    for j in range(1, N + 1):
        lead = (rho + j) * (rho + j - 1) - B * (rho + j) + B * d1
        if lead == 0:
            raise ZeroDivisionError("resonant indicial roots")
        acc = 0
        for k in range(j):
            acc = acc + B * cs[k] * (rho + k) + B * delta_sum * cs[k]
        for k in range(max(j - 1, 0)):
            acc = acc + B * d3 * (j - 1 - k) * cs[k]
        cs.append(-acc / lead)
    return cs
