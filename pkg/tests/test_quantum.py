import random
from fractions import Fraction

import pytest

from holomon.holonomy import relation_poly, trace_function
from holomon.laurent import LaurentPoly
from holomon.qcoeff import QCoeff, SPoly, q_int_bracket, two_cos_pi_b2
from holomon.qtorus import (
    QuantumTorusElement,
    find_simple_triangulation,
    q_relation,
    quantize_trace,
    relations_hold,
    weyl_product,
)
from holomon.reference import boundary_names, covariant_walk, reference_setup
from holomon.surfaces import dual_fat_graph, exchange_matrix, flip


class TestQCoeff:
    def test_reduction(self):
        # (s^2 - 1)/(s - 1) reduces to s + 1
        num = SPoly({2: 1, 0: -1})
        den = SPoly({1: 1, 0: -1})
        assert QCoeff(num, den) == QCoeff(SPoly({1: 1, 0: 1}))

    def test_cross_equality(self):
        a = QCoeff(SPoly({1: 1}), SPoly({0: 1, 2: 1}))
        b = QCoeff(SPoly({2: 1}), SPoly({1: 1, 3: 1}))
        assert a == b

    def test_q_power(self):
        assert QCoeff.q_power(Fraction(1, 4)) == QCoeff.s_power(1)
        assert QCoeff.q_power(2) == QCoeff.s_power(8)
        with pytest.raises(ValueError):
            QCoeff.q_power(Fraction(1, 3))

    def test_conj_involution(self):
        a = QCoeff(SPoly({3: 2, -1: 1}), SPoly({0: 1, 2: 5}))
        assert a.conj().conj() == a

    def test_at_one(self):
        assert q_int_bracket(1).at_one() == 0
        assert two_cos_pi_b2().at_one() == 2

    def test_arithmetic_field_axioms(self):
        rng = random.Random(0)

        def rand():
            return QCoeff(
                SPoly({rng.randint(-3, 3): rng.randint(-4, 4) for _ in range(3)}),
                SPoly({0: 1, rng.randint(1, 3): rng.randint(1, 3)}),
            )

        for _ in range(20):
            a, b, c = rand(), rand(), rand()
            assert (a + b) * c == a * c + b * c
            if not a.is_zero():
                assert a * a.inverse() == QCoeff.one()


def _context(name):
    tri, curves = reference_setup(name)
    return tri, curves, exchange_matrix(tri)


class TestWeylProduct:
    def test_commutation_ratio(self):
        _, _, n = _context("c11")
        for a in range(3):
            for b in range(3):
                Xa = QuantumTorusElement.generator(n, a)
                Xb = QuantumTorusElement.generator(n, b)
                assert Xa.commutator_ratio_holds(Xb, 2 * n[a][b])

    def test_classical_limit_of_product(self):
        tri, curves, n = _context("c11")
        fg = dual_fat_graph(tri)
        ps = trace_function(tri, curves["s"], fg)
        pt = trace_function(tri, curves["t"], fg)
        qs, qt = quantize_trace(ps, n), quantize_trace(pt, n)
        assert (qs * qt).classical_limit() == ps * pt

    def test_associativity_random(self):
        # brute-force both evaluation orders on random sparse triples
        rng = random.Random(7)
        _, _, n = _context("c04")

        def rand_elem():
            terms = {}
            for _ in range(rng.randint(1, 3)):
                d = tuple(rng.randint(-2, 2) for _ in range(6))
                terms[d] = QCoeff.s_power(rng.randint(-4, 4), rng.randint(1, 3))
            return QuantumTorusElement(n, terms)

        for _ in range(15):
            a, b, c = rand_elem(), rand_elem(), rand_elem()
            assert (a * b) * c == a * (b * c)

    def test_context_mismatch_rejected(self):
        _, _, n1 = _context("c11")
        _, _, n2 = _context("c04")
        with pytest.raises(ValueError):
            weyl_product(QuantumTorusElement.const(n1, 1), QuantumTorusElement.const(n2, 1))


def _quantized_operands(name):
    tri, curves, n = _context(name)
    fg = dual_fat_graph(tri)
    ops = {k: quantize_trace(trace_function(tri, curves[k], fg), n)
           for k in ("s", "t", "u")}
    if name == "c11":
        ops["L0"] = quantize_trace(trace_function(tri, curves["p1"], fg), n)
    else:
        for i, p in enumerate(boundary_names(name), 1):
            ops[f"L{i}"] = quantize_trace(trace_function(tri, curves[p], fg), n)
    return tri, curves, n, ops


class TestQuantizeTrace:
    def test_single_monomial_fixed(self):
        _, _, n = _context("c11")
        p = LaurentPoly.monomial(3, (1, -1, 0), Fraction(3))
        q = quantize_trace(p, n)
        assert list(q.terms) == [(1, -1, 0)]
        assert q.classical_limit() == p

    def test_classical_limit_is_identity(self):
        tri, curves, n = _context("c04")
        p = trace_function(tri, curves["s"])
        assert quantize_trace(p, n).classical_limit() == p

    def test_c11_commutator_identity(self):
        # q^(1/2) Ls Lt - q^(-1/2) Lt Ls = (q - 1/q) Lu
        _, _, n, ops = _quantized_operands("c11")
        lhs = ops["s"] * ops["t"] * QCoeff.s_power(2) - ops["t"] * ops["s"] * QCoeff.s_power(-2)
        rhs = ops["u"] * q_int_bracket(1)
        assert lhs == rhs


class TestQRelations:
    @pytest.mark.parametrize("name", ["c11", "c04"])
    @pytest.mark.parametrize("degree", [2, 3])
    def test_vanish(self, name, degree):
        _, _, _, ops = _quantized_operands(name)
        assert q_relation(name, degree, ops).is_zero()

    @pytest.mark.parametrize("name", ["c11", "c04"])
    def test_bar_invariance(self, name):
        # conjugated coefficients on bar-transformed operands in the
        # opposite torus: the involuted identity also vanishes
        _, _, _, ops = _quantized_operands(name)
        bar_ops = {k: v.bar() for k, v in ops.items()}
        for degree in (2, 3):
            assert q_relation(name, degree, bar_ops, conj=True).is_zero()

    def test_classical_limit_of_cubic(self):
        # the s -> 1 limit of the cubic evaluation recovers the classical
        # relation polynomial evaluation
        tri, curves, n, ops = _quantized_operands("c04")
        fg = dual_fat_graph(tri)
        vals = {k: trace_function(tri, curves[k], fg) for k in ("s", "t", "u")}
        for i, p in enumerate(boundary_names("c04"), 1):
            vals[f"L{i}"] = trace_function(tri, curves[p], fg)
        lhs = q_relation("c04", 3, ops).classical_limit()
        assert lhs == relation_poly("c04", vals)
        # and on generic scalar operands the limit is the classical value
        scal = {k: QuantumTorusElement.const(n, v) for k, v in
                {"s": 3, "t": 4, "u": 5, "L1": 2, "L2": 2, "L3": 2, "L4": 2}.items()}
        num = q_relation("c04", 3, scal).classical_limit()
        want = relation_poly("c04", {"s": 3, "t": 4, "u": 5,
                                     "L1": 2, "L2": 2, "L3": 2, "L4": 2})
        assert num.constant_value() == want.constant_value()

    def test_missing_operand(self):
        _, _, n = _context("c11")
        with pytest.raises(KeyError):
            q_relation("c11", 2, {"s": QuantumTorusElement.const(n, 1)})

    def test_boundary_operands_central(self):
        _, _, _, ops = _quantized_operands("c04")
        for k in ("L1", "L2", "L3", "L4"):
            for g in ("s", "t", "u"):
                assert ops[k] * ops[g] == ops[g] * ops[k]


class TestSimplicitySearch:
    def test_relations_fail_after_flip(self):
        # the naive quantization is not simple in the flipped triangulation
        tri, curves, _ = _context("c11")
        tri2 = flip(tri, 0)
        walks = {k: covariant_walk("c11", 0, k) for k in ("s", "t", "u")}
        walks["L0"] = covariant_walk("c11", 0, "p1")
        assert not relations_hold("c11", tri2, walks)

    def test_search_recovers_simple_triangulation(self):
        tri, curves, _ = _context("c11")
        tri2 = flip(tri, 0)
        walks = {k: covariant_walk("c11", 0, k) for k in ("s", "t", "u")}
        walks["L0"] = covariant_walk("c11", 0, "p1")
        hit = find_simple_triangulation("c11", tri2, walks, depth=1)
        assert hit is not None
        found, found_walks, path = hit
        assert len(path) == 1
        assert relations_hold("c11", found, found_walks)
        assert found == tri

    def test_reference_already_simple(self):
        tri, curves, _ = _context("c11")
        walks = {k: curves[k] for k in ("s", "t", "u")}
        walks["L0"] = curves["p1"]
        found, _, path = find_simple_triangulation("c11", tri, walks, depth=0)
        assert path == [] and found == tri
