"""The quantum torus of an exchange matrix, in the Weyl-ordered basis.

Basis monomials are indexed by half-integer exponent vectors (stored
doubled); the product rule multiplies exponents additively and picks up
q to the symplectic pairing, q = s^4.  Specializing s -> 1 recovers the
commutative Laurent ring.
"""

from __future__ import annotations

from fractions import Fraction

from .laurent import LaurentPoly
from .qcoeff import QCoeff, q_int_bracket, two_cos_pi_b2


def _pairing_s_exponent(d1, d2, n) -> int:
    """s-exponent of q^<mu,nu> for doubled exponent vectors: since
    <mu,nu> = (1/4) d1.n.d2 and q = s^4, this is just d1.n.d2."""
    total = 0
    for a, da in enumerate(d1):
        if not da:
            continue
        row = n[a]
        for b, db in enumerate(d2):
            if db:
                total += da * row[b] * db
    return total


class QuantumTorusElement:
    """Finite QCoeff-combination of Weyl-ordered monomials."""

    __slots__ = ("context", "terms")

    def __init__(self, context, terms: dict | None = None):
        self.context = tuple(tuple(row) for row in context)
        clean = {}
        for d, c in (terms or {}).items():
            if not isinstance(c, QCoeff):
                c = QCoeff.const(c)
            if not c.is_zero():
                clean[tuple(int(x) for x in d)] = c
        self.terms = clean

    @property
    def nvars(self) -> int:
        return len(self.context)

    # -- constructors --------------------------------------------------

    @classmethod
    def zero(cls, context) -> "QuantumTorusElement":
        return cls(context, {})

    @classmethod
    def const(cls, context, c) -> "QuantumTorusElement":
        E = len(context)
        return cls(context, {(0,) * E: c})

    @classmethod
    def monomial(cls, context, d, coeff=None) -> "QuantumTorusElement":
        return cls(context, {tuple(d): coeff if coeff is not None else QCoeff.one()})

    @classmethod
    def generator(cls, context, i: int, power2: int = 2) -> "QuantumTorusElement":
        """X_i^(power2/2) as a Weyl monomial."""
        E = len(context)
        d = [0] * E
        d[i] = power2
        return cls.monomial(context, d)

    # -- ring operations --------------------------------------------------

    def _check(self, other):
        if self.context != other.context:
            raise ValueError("quantum torus context mismatch")

    def __add__(self, other):
        if isinstance(other, (int, Fraction, QCoeff)):
            other = QuantumTorusElement.const(self.context, other)
        self._check(other)
        out = dict(self.terms)
        for d, c in other.terms.items():
            s = out.get(d, QCoeff.zero()) + c
            if s.is_zero():
                out.pop(d, None)
            else:
                out[d] = s
        return QuantumTorusElement(self.context, out)

    __radd__ = __add__

    def __neg__(self):
        return QuantumTorusElement(self.context, {d: -c for d, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, QCoeff)):
            other = QuantumTorusElement.const(self.context, other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QCoeff)):
            return QuantumTorusElement(
                self.context, {d: c * other for d, c in self.terms.items()})
        self._check(other)
        n = self.context
        out: dict = {}
        for d1, c1 in self.terms.items():
            for d2, c2 in other.terms.items():
                k = _pairing_s_exponent(d1, d2, n)
                d = tuple(a + b for a, b in zip(d1, d2))
                c = c1 * c2 * QCoeff.s_power(k)
                s = out.get(d, QCoeff.zero()) + c
                if s.is_zero():
                    out.pop(d, None)
                else:
                    out[d] = s
        return QuantumTorusElement(self.context, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, QCoeff)):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, QCoeff)):
            other = QuantumTorusElement.const(self.context, other)
        if not isinstance(other, QuantumTorusElement):
            return NotImplemented
        return self.context == other.context and self.terms == other.terms

    def __hash__(self):
        return hash((self.context, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def commutator_ratio_holds(self, other, power: int) -> bool:
        """True when self * other == q^power * other * self."""
        lhs = self * other
        rhs = (other * self) * QCoeff.q_power(power)
        return lhs == rhs

    # -- structure maps -----------------------------------------------------

    def classical_limit(self) -> LaurentPoly:
        """Specialize s -> 1 (coefficients must be regular there)."""
        return LaurentPoly(self.nvars, {d: c.at_one() for d, c in self.terms.items()})

    def bar(self) -> "QuantumTorusElement":
        """Conjugated coefficients in the opposite-pairing torus.

        The map fixing Weyl monomials and sending s -> 1/s is an algebra
        isomorphism onto the torus with negated exchange matrix.
        """
        neg = tuple(tuple(-v for v in row) for row in self.context)
        return QuantumTorusElement(neg, {d: c.conj() for d, c in self.terms.items()})

    def sorted_terms(self):
        return sorted(self.terms.items())

    def __repr__(self):
        if self.is_zero():
            return "0"
        bits = []
        for d, c in self.sorted_terms():
            mono = "*".join(
                (f"X{i}^{e}/2" if e % 2 else f"X{i}^{e // 2}")
                for i, e in enumerate(d) if e)
            bits.append(f"({c!r})" + (f":{mono}:" if mono else ""))
        return " + ".join(bits)


def weyl_product(a: QuantumTorusElement, b: QuantumTorusElement) -> QuantumTorusElement:
    return a * b


def quantize_trace(p: LaurentPoly, n) -> QuantumTorusElement:
    """Coefficient-preserving Weyl quantization of a classical trace
    polynomial: each monomial goes to its Weyl-ordered counterpart."""
    if p.nvars != len(n):
        raise ValueError("matrix size does not match variable count")
    return QuantumTorusElement(n, {d: QCoeff.const(c) for d, c in p.terms.items()})


def q_relation(kind: str, degree: int, operands: dict, conj: bool = False) -> QuantumTorusElement:
    """Evaluate the deformed generator relation, preserving the printed
    operator ordering.

    ``operands`` maps 's','t','u' plus 'L0' (torus piece) or 'L1'..'L4'
    (sphere piece) to QuantumTorusElements; boundary operands must be
    central.  With ``conj`` the coefficients are conjugated (s -> 1/s),
    which together with bar-transformed operands realizes the coefficient
    involution on the identity.
    """
    C = lambda x: x.conj() if conj else x
    q1 = C(QCoeff.s_power(4))     # q
    qm1 = C(QCoeff.s_power(-4))   # 1/q
    qh = C(QCoeff.s_power(2))     # q^(1/2)
    qmh = C(QCoeff.s_power(-2))
    s, t, u = operands["s"], operands["t"], operands["u"]
    if kind == "c11":
        L0 = operands["L0"]
        if degree == 2:
            return s * t * qh - t * s * qmh - u * C(q_int_bracket(1))
        if degree == 3:
            return (s * s * q1 + t * t * qm1 + u * u * q1
                    - s * t * u * qh + L0 - C(two_cos_pi_b2()))
    if kind == "c04":
        L1, L2, L3, L4 = (operands[k] for k in ("L1", "L2", "L3", "L4"))
        if degree == 2:
            return (s * t * q1 - t * s * qm1 - u * C(q_int_bracket(2))
                    - (L1 * L3 + L2 * L4) * C(q_int_bracket(1)))
        if degree == 3:
            c2 = C(two_cos_pi_b2())
            return (L1 * L2 * L3 * L4 + L1 * L1 + L2 * L2 + L3 * L3 + L4 * L4
                    - s * t * u * q1
                    + s * s * q1 ** 2 + t * t * qm1 ** 2 + u * u * q1 ** 2
                    - c2 * c2
                    + s * (L3 * L4 + L1 * L2) * q1
                    + t * (L2 * L3 + L1 * L4) * qm1
                    + u * (L1 * L3 + L2 * L4) * q1)
    raise ValueError(f"no relation for kind={kind!r} degree={degree}")


def relations_hold(kind: str, tri, walks: dict) -> bool:
    """Quantize the given walks on ``tri`` and test both deformed relations."""
    from .holonomy import trace_function
    from .surfaces import dual_fat_graph, exchange_matrix

    n = exchange_matrix(tri)
    fg = dual_fat_graph(tri)
    ops = {k: quantize_trace(trace_function(tri, w, fg), n) for k, w in walks.items()}
    return (q_relation(kind, 2, ops).is_zero()
            and q_relation(kind, 3, ops).is_zero())


def find_simple_triangulation(kind: str, tri, walks: dict, depth: int = 2):
    """Search flip-equivalent triangulations for one where the naive Weyl
    quantization of every generator satisfies the deformed relations.

    The relation check itself is the simplicity detector.  Walks are
    carried through each flip by the exact covariance search.  Returns
    (triangulation, walks, flip sequence) or None within ``depth``.
    """
    from .holonomy import find_covariant_walk
    from .surfaces import flip, flippable_edges

    def node_key(t, ws):
        # concrete labels matter for simplicity, so no canonical collapsing
        return (t.triangles, tuple(sorted((k, w.steps, w.start) for k, w in ws.items())))

    frontier = [(tri, dict(walks), [])]
    seen = {node_key(tri, walks)}
    for _ in range(depth + 1):
        next_frontier = []
        for cur, cur_walks, path in frontier:
            if relations_hold(kind, cur, cur_walks):
                return cur, cur_walks, path
            for e in flippable_edges(cur):
                try:
                    carried = {
                        k: find_covariant_walk(cur, e, w) for k, w in cur_walks.items()
                    }
                except Exception:
                    continue
                if any(w is None for w in carried.values()):
                    continue
                nxt = flip(cur, e)
                key = node_key(nxt, carried)
                if key in seen:
                    continue
                seen.add(key)
                next_frontier.append((nxt, carried, path + [e]))
        frontier = next_frontier
        if not frontier:
            break
    return None


def commutator_classical_limit(a: QuantumTorusElement,
                               b: QuantumTorusElement) -> LaurentPoly:
    """(a b - b a) / (q - 1/q) specialized to s -> 1.

    This is the classical bracket the deformation came from; dividing the
    commutator coefficients by s^4 - s^-4 stays exact in the coefficient
    field, so the limit is computed without any epsilon games.
    """
    comm = a * b - b * a
    divisor = QCoeff.s_power(4) - QCoeff.s_power(-4)
    out = {}
    for d, c in comm.terms.items():
        out[d] = (c / divisor).at_one()
    return LaurentPoly(a.nvars, out)
