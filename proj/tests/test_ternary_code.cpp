#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "ninecusps/code.hpp"

using namespace ninecusps;

namespace {

std::map<int, int> weight_enumerator(const TernaryCode& c) {
    std::map<int, int> counts;
    for (const TernaryWord& w : span(c)) counts[w.weight()] += 1;
    return counts;
}

}  // namespace

TEST_CASE("word weight and overlap") {
    CHECK(TernaryWord().weight() == 0);
    CHECK(TernaryWord::parse("111111000").weight() == 6);
    CHECK(TernaryWord::parse("111111111").weight() == 9);
    CHECK(TernaryWord::parse("102000021").weight() == 4);

    const TernaryWord q = TernaryWord::parse("111111000");
    CHECK(overlap(q, q) == 6);
    CHECK(overlap(q, TernaryWord::parse("000111111")) == 3);
    CHECK(overlap(q, TernaryWord::parse("000000111")) == 0);

    CHECK_THROWS_AS(TernaryWord::parse("11111100"), std::invalid_argument);
    CHECK_THROWS_AS(TernaryWord::parse("111111003"), std::invalid_argument);
}

TEST_CASE("word arithmetic and order") {
    const TernaryWord a = TernaryWord::parse("120000000");
    const TernaryWord b = TernaryWord::parse("210000000");
    CHECK((a + b).is_zero());
    CHECK(F3(2) * a == b);
    CHECK(-a == b);
    CHECK(a.to_string() == "120000000");
    CHECK(a.at(1) == F3(1));
    CHECK(a.at(2) == F3(2));
    CHECK(a.with(9, F3(2)).to_string() == "120000002");
    CHECK(TernaryWord::parse("010000000") < TernaryWord::parse("100000000"));
    CHECK(TernaryWord::parse("100000000") < TernaryWord::parse("100000001"));
}

TEST_CASE("span and admissibility") {
    SUBCASE("single weight-6 generator") {
        TernaryCode c;
        c.basis = {TernaryWord::parse("111111000")};
        const auto words = span(c);
        CHECK(words.size() == 3);
        CHECK(is_admissible(c));
    }

    SUBCASE("single short word fails") {
        TernaryCode c;
        c.basis = {TernaryWord::parse("100000000")};
        CHECK_FALSE(is_admissible(c));
    }

    SUBCASE("affine-plane code is admissible with spectrum (1, 24, 2)") {
        const TernaryCode c = affine_plane_code();
        CHECK(is_admissible(c));
        const auto counts = weight_enumerator(c);
        CHECK(counts.at(0) == 1);
        CHECK(counts.at(6) == 24);
        CHECK(counts.at(9) == 2);
    }

    SUBCASE("dependent generators are rejected") {
        TernaryCode c;
        c.basis = {TernaryWord::parse("111111000"), TernaryWord::parse("222222000")};
        CHECK_THROWS_AS(span(c), std::invalid_argument);
    }
}

TEST_CASE("independent weight-6 words overlap in 3 or 4 places") {
    CHECK(claim1_overlaps(affine_plane_code()));

    SUBCASE("single generator code holds vacuously") {
        TernaryCode c;
        c.basis = {TernaryWord::parse("111111000")};
        CHECK(claim1_overlaps(c));
    }

    SUBCASE("an artificial 5-overlap pair is flagged") {
        // Two weight-6 words overlapping in 5 places cannot live in an
        // admissible code; claim1_overlaps on the raw pair detects them.
        TernaryCode c;
        c.basis = {TernaryWord::parse("111111000"), TernaryWord::parse("021111100")};
        CHECK(overlap(c.basis[0], c.basis[1]) == 5);
        CHECK_FALSE(claim1_overlaps(c));
        CHECK_FALSE(is_admissible(c));
    }

    SUBCASE("exhaustive overlap histogram in the affine-plane code") {
        std::vector<TernaryWord> sixes;
        for (const TernaryWord& w : span(affine_plane_code()))
            if (w.weight() == 6) sixes.push_back(w);
        REQUIRE(sixes.size() == 24);
        for (std::size_t i = 0; i < sixes.size(); ++i)
            for (std::size_t j = i + 1; j < sixes.size(); ++j) {
                const int r = overlap(sixes[i], sixes[j]);
                const bool dependent = F3(2) * sixes[i] == sixes[j];
                if (dependent) CHECK(r == 6);
                else CHECK((r == 3 || r == 4));
            }
    }
}

TEST_CASE("line structure of an admissible dimension-3 code") {
    const TernaryCode c = affine_plane_code();
    const LineIncidence inc = lines_of(c);

    CHECK(inc.lines.size() == 12);
    CHECK(inc.parallel_classes.size() == 4);
    for (const auto& pc : inc.parallel_classes) CHECK(pc.size() == 3);

    // Four lines through each point.
    std::map<int, int> per_point;
    for (const auto& line : inc.lines)
        for (int cipher : line) per_point[cipher] += 1;
    for (int cipher = 1; cipher <= 9; ++cipher) CHECK(per_point[cipher] == 4);

    // Two distinct lines share at most one point.
    for (std::size_t i = 0; i < inc.lines.size(); ++i)
        for (std::size_t j = i + 1; j < inc.lines.size(); ++j) {
            std::vector<int> common;
            std::set_intersection(inc.lines[i].begin(), inc.lines[i].end(),
                                  inc.lines[j].begin(), inc.lines[j].end(),
                                  std::back_inserter(common));
            CHECK(common.size() <= 1);
        }

    // Unique line through each pair of points.
    for (int p = 1; p <= 9; ++p)
        for (int q = p + 1; q <= 9; ++q) {
            int through = 0;
            for (const auto& line : inc.lines)
                through += std::count(line.begin(), line.end(), p) &&
                           std::count(line.begin(), line.end(), q);
            CHECK(through == 1);
        }

    SUBCASE("dimension below 3 is rejected") {
        TernaryCode small;
        small.basis = {TernaryWord::parse("111111000")};
        CHECK_THROWS_AS(lines_of(small), std::invalid_argument);
    }
}

TEST_CASE("weight-9 word from a parallel class") {
    const TernaryCode c = affine_plane_code();
    const TernaryWord w = find_weight9(c);
    CHECK(w.weight() == 9);
    CHECK((F3(2) * w).weight() == 9);

    // The code contains exactly two weight-9 words, of which w is one.
    std::vector<TernaryWord> nines;
    for (const TernaryWord& s : span(c))
        if (s.weight() == 9) nines.push_back(s);
    CHECK(nines.size() == 2);
    CHECK((w == nines[0] || w == nines[1]));
    CHECK(nines[1] == F3(2) * nines[0]);
}

TEST_CASE("divisor from a weight-9 word") {
    const GramLattice ef = ef_base_change(build_cusp_lattice(9));

    SUBCASE("all ones gives (2,1) everywhere") {
        const CuspDivisor d = divisor_from_word(TernaryWord::parse("111111111"), ef);
        for (const auto& [a, ap] : d.multiplicities) {
            CHECK(a == 2);
            CHECK(ap == 1);
        }
    }

    SUBCASE("a two flips its pair to (1,2)") {
        const CuspDivisor d = divisor_from_word(TernaryWord::parse("211111111"), ef);
        CHECK(d.multiplicities[0] == std::pair<int, int>{1, 2});
        for (int i = 1; i < 9; ++i) CHECK(d.multiplicities[i] == std::pair<int, int>{2, 1});
    }

    SUBCASE("brute-force expansion oracle over the E/E' basis") {
        // Expand 3D - sum_{w_i=2} 3E_i longhand: 3D = sum w_i (2E_i + E_i').
        // Checked against both subtraction variants: subtracting 3E_i' instead
        // would give coefficient 4 on E_i, outside {1,2}.
        for (const std::string s : {"111111111", "211111111", "122121212", "222222222"}) {
            const TernaryWord w = TernaryWord::parse(s);
            if (w.weight() != 9) continue;
            const CuspDivisor d = divisor_from_word(w, ef);
            for (int i = 1; i <= 9; ++i) {
                const int wi = w.at(i).value();
                const int e_coeff = 2 * wi - (wi == 2 ? 3 : 0);
                const int ep_coeff = wi;
                CHECK(d.multiplicities[i - 1] == std::pair<int, int>{e_coeff, ep_coeff});
                CHECK((e_coeff == 1 || e_coeff == 2));
                CHECK(e_coeff != ep_coeff);
                const int other_variant = 2 * wi;  // keeps E_i at 4 when w_i = 2
                if (wi == 2) CHECK(other_variant == 4);
            }
        }
    }

    SUBCASE("the divisor is three times a membership-passing class") {
        const CuspDivisor d = divisor_from_word(TernaryWord::parse("121212121"), ef);
        CHECK(lemma2_membership(ef, d.third));
        // And D itself has phi_i in {1/3, 2/3} with eps = 0.
        for (int i = 0; i < 9; ++i) {
            CHECK(d.d.coeffs[i] == 0);
            const Rational phi = d.d.coeffs[9 + i];
            CHECK((phi == make_rational(1, 3) || phi == make_rational(2, 3)));
        }
    }

    SUBCASE("non-weight-9 words are rejected") {
        CHECK_THROWS_AS(divisor_from_word(TernaryWord::parse("111111000"), ef),
                        std::invalid_argument);
        CHECK_THROWS_AS(divisor_from_word(TernaryWord::parse("111111111"),
                                          build_cusp_lattice(9)),
                        std::invalid_argument);
    }
}

TEST_CASE("canonical form and monomial maps") {
    const TernaryCode c = affine_plane_code();

    SUBCASE("doubling the generators leaves the code fixed") {
        TernaryCode doubled;
        for (const TernaryWord& w : c.basis) doubled.basis.push_back(F3(2) * w);
        CHECK(canonical_code(doubled).generator_strings() ==
              canonical_code(c).generator_strings());
    }

    SUBCASE("monomial images stay admissible") {
        MonomialMap m;
        m.perm = {3, 1, 2, 5, 4, 9, 8, 7, 6};
        m.scale = {F3(1), F3(2), F3(2), F3(1), F3(1), F3(2), F3(1), F3(1), F3(2)};
        const TernaryCode image = apply(m, c);
        CHECK(is_admissible(image));
        CHECK(count_monomial_classes({c, image}) == 1);
        const auto iso = find_monomial_isomorphism(c, image);
        REQUIRE(iso.has_value());
        CHECK(canonical_code(apply(*iso, c)).generator_strings() ==
              canonical_code(image).generator_strings());
    }
}

TEST_CASE("exhaustive enumeration of maximal admissible codes") {
    // Shared across subcases; doctest re-enters the case per subcase.
    static EnumerationStats stats_full;
    static const auto full = enumerate_admissible_codes(false, 4, &stats_full);
    CHECK(full.size() > 0);
    MESSAGE("full enumeration: ", full.size(), " codes, ", stats_full.pair_nodes,
            " pair nodes, ", stats_full.triple_nodes, " triple nodes");

    static EnumerationStats stats_reduced;
    static const auto reduced = enumerate_admissible_codes(true, 1, &stats_reduced);
    MESSAGE("reduced enumeration: ", stats_reduced.reduced_found, " codes before expansion");

    SUBCASE("both strategies produce the identical sorted list") {
        REQUIRE(full.size() == reduced.size());
        for (std::size_t i = 0; i < full.size(); ++i)
            CHECK(full[i].generator_strings() == reduced[i].generator_strings());
    }

    SUBCASE("worker partitioning does not change the result") {
        const auto serial = enumerate_admissible_codes(false, 1);
        REQUIRE(serial.size() == full.size());
        for (std::size_t i = 0; i < full.size(); ++i)
            CHECK(serial[i].generator_strings() == full[i].generator_strings());
    }

    SUBCASE("every code has dimension 3 and spectrum (1, 24, 2)") {
        for (const TernaryCode& c : full) {
            REQUIRE(c.dimension() == 3);
            const auto counts = weight_enumerator(c);
            REQUIRE(counts.at(0) == 1);
            REQUIRE(counts.at(6) == 24);
            REQUIRE(counts.at(9) == 2);
            REQUIRE(counts.size() == 3);
        }
    }

    SUBCASE("the affine-plane code is among them") {
        const auto canon = canonical_code(affine_plane_code()).generator_strings();
        bool found = false;
        for (const TernaryCode& c : full) found |= c.generator_strings() == canon;
        CHECK(found);
    }

    SUBCASE("single monomial class, cross-checked by explicit isomorphisms") {
        CHECK(count_monomial_classes(full) == 1);
        // Spot-check: explicit isomorphism from a few codes to the reference.
        const TernaryCode reference = affine_plane_code();
        for (std::size_t i = 0; i < full.size(); i += full.size() / 3) {
            const auto iso = find_monomial_isomorphism(full[i], reference);
            REQUIRE(iso.has_value());
            CHECK(canonical_code(apply(*iso, full[i])).generator_strings() ==
                  canonical_code(reference).generator_strings());
        }
    }
}
