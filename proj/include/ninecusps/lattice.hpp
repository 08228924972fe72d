#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ninecusps/matrix.hpp"
#include "ninecusps/rational.hpp"

namespace ninecusps {

enum class BasisKind { EEprime, EF, Lemma3Block };

std::string to_string(BasisKind kind);

// Integer symmetric bilinear form with a labeled basis. Carries the sublattice
// spanned by the exceptional-curve classes, its E/F variant, and the 22x22
// block matrices used by the determinant obstruction.
struct GramLattice {
    std::vector<std::string> basis_labels;
    Matrix<Int> gram;
    BasisKind basis_kind;

    std::size_t rank() const { return basis_labels.size(); }
};

// Exact-rational coefficient vector over a lattice basis.
struct RationalClass {
    std::vector<Rational> coeffs;
};

// Branch multiplicities (a_i, a_i') attached to the curve pairs; entries are
// restricted to {1, 2}.
struct MultiplicityPattern {
    std::vector<std::pair<int, int>> pairs;
};

// Rank-2p lattice of p disjoint pairs E, E' with E^2 = (E')^2 = -2, E.E' = 1
// and no cross-pair intersections.
GramLattice build_cusp_lattice(int p);

// Replaces each pair basis (E_i, E_i') by (E_i, F_i = 2E_i + E_i'). The new
// pairings are E_i.F_j = -3 d_ij, F_i.F_j = -6 d_ij; the change of basis is
// unimodular, so the determinant is unchanged.
GramLattice ef_base_change(const GramLattice& l);
GramLattice ef_base_change_inverse(const GramLattice& l);

// True when both pairing values -2a + a' and a - 2a' are divisible by 3,
// i.e. exactly for (1,2) and (2,1). Inputs outside {1,2} are rejected.
bool admissible_multiplicities(int a, int a_prime);

// Integrality test for a class sum(eps_i E_i + phi_i F_i) against all pairings
// with the E_k and E_k': requires eps_k and -2*eps_k - 3*phi_k integral.
// Coefficients are ordered (eps_1..eps_p, phi_1..phi_p).
bool lemma2_membership(const GramLattice& l, const RationalClass& c);

// Options for the seeded 22x22 block matrices: 7 f-rows, 9 e-rows, 6 others.
// The f.f and f.e blocks are filled with multiples of 3; everything else is
// uniform in [-bound, bound].
struct BlockMatrixOptions {
    std::uint64_t seed = 0;
    long bound = 100;
    std::optional<Matrix<Int>> e_block;  // optional 9x9 symmetric (e.e) block
};

GramLattice block_obstruction_matrix(const BlockMatrixOptions& options);

// Wraps a caller-built 22x22 matrix in the block basis without validating the
// divisibility pattern; the checker below is the gate.
GramLattice block_lattice_from(Matrix<Int> m);

// The divisibility pattern required of the 22x22 intersection matrix:
// symmetric, with the 7x7 (f.f) and 7x9 (f.e) blocks all divisible by 3.
bool block_pattern_holds(const Matrix<Int>& m);

// det mod 3 of a patterned matrix. Every matrix passing the pattern check has
// determinant divisible by 3 (each Leibniz summand picks at least one factor
// from the f-rows outside the e-columns), which is the obstruction: a
// unimodular lattice admits no such basis.
F3 block_determinant_mod3(const GramLattice& l);

enum class CoverClassification { K3, Torus, NotRealizable };

std::string to_string(CoverClassification c);

struct EulerResult {
    int euler;
    CoverClassification classification;
};

// Euler number 72 - 8p of a triple cover branched over p cusps, classified by
// the only values a smooth cover with trivial canonical bundle can take:
// 24 (K3) and 0 (torus).
EulerResult euler_triple_cover(int p);

}  // namespace ninecusps
