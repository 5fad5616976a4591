import pytest

from holomon.holonomy import mutate_coordinate
from holomon.laurent import LaurentPoly, LaurentRational
from holomon.qcoeff import QCoeff
from holomon.qmutation import (
    QMutationImage,
    XPoly,
    XRat,
    double_mutation_is_identity,
    quantum_mutation,
    verify_q_mutation_relations,
)
from holomon.surfaces import exchange_matrix, mutate_exchange_matrix, reference_triangulation


def _n(name):
    return exchange_matrix(reference_triangulation(name))


class TestImages:
    def test_target_is_flipped_edge(self):
        n = _n("c11")
        img = quantum_mutation(n, 0, 0)
        assert img.mono == (-2, 0, 0)
        assert img.rat.is_one() and img.coeff == QCoeff.one()

    def test_zero_coupling_identity_image(self):
        n = _n("c04")
        assert n[0][5] == 0
        img = quantum_mutation(n, 5, 0)
        assert img.is_generator(0)

    def test_ordered_product_factors(self):
        # coupling -2: X_target (1 + q X)(1 + q^3 X)
        n = _n("c11")
        assert n[1][0] == -2
        img = quantum_mutation(n, 0, 1)
        want = XPoly({0: QCoeff.one()})
        for a in (1, 2):
            want = want * XPoly({0: QCoeff.one(), 1: QCoeff.s_power(4 * (2 * a - 1))})
        assert img.rat == XRat(want)

    def test_classical_limit_matches_classical_mutation(self):
        for name in ("c11", "c04"):
            n = _n(name)
            E = len(n)
            for e in range(E):
                for target in range(E):
                    img = quantum_mutation(n, e, target)
                    classical = mutate_coordinate(n, e, target)
                    assert _classical_of_image(img, e) == classical


def _classical_of_image(img: QMutationImage, e: int) -> LaurentRational:
    E = len(img.context)

    def xpoly_to_laurent(xp: XPoly) -> LaurentPoly:
        out = LaurentPoly.zero(E)
        for k, c in xp.c.items():
            exps = [0] * E
            exps[e] = 2 * k
            out = out + LaurentPoly.monomial(E, exps, c.at_one())
        return out

    mono = LaurentPoly.monomial(E, img.mono, img.coeff.at_one())
    return LaurentRational(mono * xpoly_to_laurent(img.rat.num),
                           xpoly_to_laurent(img.rat.den))


class TestFlippedRelations:
    @pytest.mark.parametrize("name", ["c11", "c04"])
    def test_all_pairs_all_edges(self, name):
        n = _n(name)
        for e in range(len(n)):
            report = verify_q_mutation_relations(n, e)
            assert all(report.values()), [k for k, v in report.items() if not v]

    def test_diagonal_pairs_trivial(self):
        n = _n("c11")
        report = verify_q_mutation_relations(n, 0)
        for a in range(3):
            assert report[(a, a)]

    def test_detects_wrong_matrix(self):
        # feeding the unflipped matrix in place of the mutated one must fail
        n = _n("c11")
        n2 = mutate_exchange_matrix(n, 0)
        images = [quantum_mutation(n, 0, t) for t in range(3)]
        a, b = 1, 2
        lhs = images[a] * images[b]
        wrong = (images[b] * images[a]).scaled(QCoeff.s_power(8 * n[a][b]))
        right = (images[b] * images[a]).scaled(QCoeff.s_power(8 * n2[a][b]))
        assert lhs == right and lhs != wrong


class TestDoubleMutation:
    @pytest.mark.parametrize("name", ["c11", "c04"])
    def test_identity(self, name):
        n = _n(name)
        for e in range(len(n)):
            assert double_mutation_is_identity(n, e)
