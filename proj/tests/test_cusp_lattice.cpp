#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ninecusps/lattice.hpp"
#include "ninecusps/rng.hpp"

using namespace ninecusps;

TEST_CASE("cusp lattice construction") {
    SUBCASE("single pair block") {
        const GramLattice l = build_cusp_lattice(1);
        CHECK(l.rank() == 2);
        CHECK(l.basis_kind == BasisKind::EEprime);
        CHECK(l.gram == Matrix<Int>{{Int(-2), Int(1)}, {Int(1), Int(-2)}});
        CHECK(l.basis_labels == std::vector<std::string>{"E1", "E1'"});
    }

    SUBCASE("cross-pair entries vanish") {
        const GramLattice l = build_cusp_lattice(2);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 2; j < 4; ++j) {
                CHECK(l.gram.at(i, j) == 0);
                CHECK(l.gram.at(j, i) == 0);
            }
    }

    SUBCASE("nine pairs have determinant 3^9") {
        const GramLattice l = build_cusp_lattice(9);
        CHECK(l.rank() == 18);
        CHECK(det_exact(l.gram) == 19683);
    }

    SUBCASE("p = 0 is rejected") {
        CHECK_THROWS_AS(build_cusp_lattice(0), std::invalid_argument);
    }
}

TEST_CASE("base change to the E/F basis") {
    SUBCASE("single pair pairings") {
        const GramLattice ef = ef_base_change(build_cusp_lattice(1));
        CHECK(ef.basis_kind == BasisKind::EF);
        CHECK(ef.gram == Matrix<Int>{{Int(-2), Int(-3)}, {Int(-3), Int(-6)}});
        CHECK(ef.basis_labels == std::vector<std::string>{"E1", "F1"});
    }

    SUBCASE("pairings are -3 and -6 deltas for every p") {
        const GramLattice ef = ef_base_change(build_cusp_lattice(4));
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                CHECK(ef.gram.at(2 * i, 2 * j + 1) == (i == j ? -3 : 0));
                CHECK(ef.gram.at(2 * i + 1, 2 * j + 1) == (i == j ? -6 : 0));
            }
    }

    SUBCASE("determinant is preserved") {
        const GramLattice l = build_cusp_lattice(9);
        CHECK(det_exact(ef_base_change(l).gram) == det_exact(l.gram));
    }

    SUBCASE("round trip restores the original Gram matrix") {
        const GramLattice l = build_cusp_lattice(3);
        const GramLattice back = ef_base_change_inverse(ef_base_change(l));
        CHECK(back.gram == l.gram);
        CHECK(back.basis_kind == BasisKind::EEprime);
    }

    SUBCASE("wrong basis kind is rejected") {
        const GramLattice ef = ef_base_change(build_cusp_lattice(1));
        CHECK_THROWS_AS(ef_base_change(ef), std::invalid_argument);
        CHECK_THROWS_AS(ef_base_change_inverse(build_cusp_lattice(1)), std::invalid_argument);
    }
}

TEST_CASE("admissible branch multiplicities") {
    CHECK(admissible_multiplicities(1, 2));
    CHECK(admissible_multiplicities(2, 1));
    CHECK_FALSE(admissible_multiplicities(1, 1));
    CHECK_FALSE(admissible_multiplicities(2, 2));

    int accepted = 0;
    for (int a = 1; a <= 2; ++a)
        for (int ap = 1; ap <= 2; ++ap) accepted += admissible_multiplicities(a, ap);
    CHECK(accepted == 2);

    CHECK_THROWS_AS(admissible_multiplicities(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(admissible_multiplicities(1, 3), std::invalid_argument);
}

TEST_CASE("integrality membership over the E/F basis") {
    const GramLattice ef = ef_base_change(build_cusp_lattice(9));

    auto cls = [](std::vector<Rational> eps, std::vector<Rational> phi) {
        RationalClass c;
        c.coeffs = std::move(eps);
        c.coeffs.insert(c.coeffs.end(), phi.begin(), phi.end());
        return c;
    };

    SUBCASE("all thirds in phi is integral against every pairing") {
        std::vector<Rational> eps(9, Rational(0)), phi(9, make_rational(1, 3));
        CHECK(lemma2_membership(ef, cls(eps, phi)));
    }

    SUBCASE("a half in eps fails") {
        std::vector<Rational> eps(9, Rational(0)), phi(9, Rational(0));
        eps[0] = make_rational(1, 2);
        CHECK_FALSE(lemma2_membership(ef, cls(eps, phi)));
    }

    SUBCASE("integer coefficients always pass") {
        std::vector<Rational> eps{Rational(1), Rational(-3), Rational(0), Rational(2),
                                  Rational(7), Rational(0),  Rational(1), Rational(-1),
                                  Rational(5)};
        std::vector<Rational> phi(9, Rational(-2));
        CHECK(lemma2_membership(ef, cls(eps, phi)));
    }

    SUBCASE("matches the closed-form condition on randomized inputs") {
        SplitMix64 rng(91);
        for (int t = 0; t < 300; ++t) {
            std::vector<Rational> eps, phi;
            for (int i = 0; i < 9; ++i) {
                eps.push_back(make_rational(rng.range(-6, 6), rng.range(1, 4)));
                phi.push_back(make_rational(rng.range(-6, 6), rng.range(1, 4)));
            }
            bool expected = true;
            for (int i = 0; i < 9; ++i) {
                if (!is_integer(eps[i]) || !is_integer(Rational(3 * phi[i]))) expected = false;
            }
            CHECK(lemma2_membership(ef, cls(eps, phi)) == expected);
        }
    }

    SUBCASE("wrong basis kind is rejected") {
        RationalClass c;
        c.coeffs.assign(18, Rational(0));
        CHECK_THROWS_AS(lemma2_membership(build_cusp_lattice(9), c), std::invalid_argument);
    }
}

TEST_CASE("block matrices and the mod-3 determinant obstruction") {
    SUBCASE("seeded instances pass the pattern and have determinant 0 mod 3") {
        const GramLattice l = block_obstruction_matrix({.seed = 0});
        CHECK(block_pattern_holds(l.gram));
        CHECK(block_determinant_mod3(l) == F3(0));
        // Cross-check against the exact determinant.
        const Int d = det_exact(l.gram);
        CHECK(mpz_fdiv_ui(d.get_mpz_t(), 3) == 0);
    }

    SUBCASE("exact pair-block values form a valid instance") {
        // f_i = F_i exactly: f.f block -6I, f.e block -3 deltas on the
        // matching cusps (f_3..f_9 against e_3..e_9).
        GramLattice l = block_obstruction_matrix({.seed = 5});
        Matrix<Int> m = l.gram;
        for (int i = 0; i < 7; ++i) {
            for (int j = 0; j < 7; ++j) m.at(i, j) = i == j ? -6 : 0;
            for (int j = 0; j < 9; ++j) {
                const Int v = (j == i + 2) ? -3 : 0;  // e_1..e_9 occupy columns 7..15
                m.at(i, 7 + j) = v;
                m.at(7 + j, i) = v;
            }
        }
        const GramLattice exact = block_lattice_from(m);
        CHECK(block_pattern_holds(exact.gram));
        CHECK(block_determinant_mod3(exact) == F3(0));
    }

    SUBCASE("a single stray unit entry violates the pattern") {
        GramLattice l = block_obstruction_matrix({.seed = 1});
        Matrix<Int> m = l.gram;
        m.at(2, 10) = 1;  // an f.e entry not divisible by 3
        m.at(10, 2) = 1;
        CHECK_FALSE(block_pattern_holds(m));
        CHECK_THROWS_AS(block_determinant_mod3(block_lattice_from(m)), std::invalid_argument);
    }

    SUBCASE("identity matrix fails the pattern gate") {
        CHECK_FALSE(block_pattern_holds(Matrix<Int>::identity(22)));
        CHECK_THROWS_AS(block_determinant_mod3(block_lattice_from(Matrix<Int>::identity(22))),
                        std::invalid_argument);
    }

    SUBCASE("property sweep over seeds, exact cross-check on a sample") {
        for (std::uint64_t seed = 100; seed < 180; ++seed) {
            const GramLattice l = block_obstruction_matrix({.seed = seed});
            CHECK(block_determinant_mod3(l) == F3(0));
            if (seed % 16 == 0) {
                const Int d = det_exact(l.gram);
                CHECK(mpz_fdiv_ui(d.get_mpz_t(), 3) == 0);
            }
        }
    }

    SUBCASE("violated controls are not all divisible by 3") {
        // Break the pattern in exactly one symmetric entry; expect the
        // obstruction to disappear at least once.
        int nonzero = 0;
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            GramLattice l = block_obstruction_matrix({.seed = seed});
            Matrix<Int> m = l.gram;
            SplitMix64 rng(seed ^ 0xabcdef);
            const int i = static_cast<int>(rng.range(0, 6));
            const int j = static_cast<int>(rng.range(0, 15));
            m.at(i, j) += 1;
            m.at(j, i) = m.at(i, j);
            if (det_mod3(m) != F3(0)) ++nonzero;
        }
        CHECK(nonzero > 0);
    }

    SUBCASE("asymmetric e block is rejected") {
        Matrix<Int> e(9, 9, Int(0));
        e.at(0, 1) = 1;
        CHECK_THROWS_AS(block_obstruction_matrix({.seed = 0, .e_block = e}),
                        std::invalid_argument);
    }

    SUBCASE("supplied e block is embedded") {
        Matrix<Int> e(9, 9, Int(0));
        for (int i = 0; i < 9; ++i) e.at(i, i) = -2;
        const GramLattice l = block_obstruction_matrix({.seed = 3, .e_block = e});
        for (int i = 0; i < 9; ++i)
            for (int j = 0; j < 9; ++j) CHECK(l.gram.at(7 + i, 7 + j) == (i == j ? -2 : 0));
        CHECK(block_determinant_mod3(l) == F3(0));
    }
}

TEST_CASE("euler numbers of branched triple covers") {
    CHECK(euler_triple_cover(6).euler == 24);
    CHECK(euler_triple_cover(6).classification == CoverClassification::K3);
    CHECK(euler_triple_cover(9).euler == 0);
    CHECK(euler_triple_cover(9).classification == CoverClassification::Torus);
    CHECK(euler_triple_cover(7).euler == 16);
    CHECK(euler_triple_cover(7).classification == CoverClassification::NotRealizable);

    for (int p = 0; p <= 30; ++p) {
        const EulerResult r = euler_triple_cover(p);
        CHECK(r.euler == 72 - 8 * p);
        const bool realizable = r.classification != CoverClassification::NotRealizable;
        CHECK(realizable == (p == 6 || p == 9));
    }
    CHECK_THROWS_AS(euler_triple_cover(-1), std::invalid_argument);
}
