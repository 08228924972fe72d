#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ninecusps/f3.hpp"
#include "ninecusps/lattice.hpp"

namespace ninecusps {

// Word of length 9 over F3, indexed by the cusp ciphers 1..9.
class TernaryWord {
  public:
    TernaryWord() = default;  // the zero word
    explicit TernaryWord(const std::array<F3, 9>& entries);

    // Parses a 9-character string over {0,1,2}, cipher 1 first.
    static TernaryWord parse(const std::string& digits);

    F3 at(int cipher) const;
    TernaryWord with(int cipher, F3 value) const;

    // Number of nonzero entries (the word's length in coding terms).
    int weight() const;
    bool is_zero() const { return packed_ == 0; }

    std::string to_string() const;

    friend TernaryWord operator+(TernaryWord x, TernaryWord y);
    friend TernaryWord operator-(TernaryWord x);
    friend TernaryWord operator*(F3 c, TernaryWord w);
    friend bool operator==(TernaryWord x, TernaryWord y) = default;

    // Lexicographic on digit strings, cipher 1 most significant.
    friend bool operator<(TernaryWord x, TernaryWord y) { return x.rank() < y.rank(); }

    // Value of the word read as a base-3 number; doubles as the lex rank.
    int rank() const;

    // Bit-sliced representation: low 9 bits flag entries equal to 1, the next
    // 9 bits flag entries equal to 2.
    std::uint32_t packed() const { return packed_; }
    static TernaryWord from_packed(std::uint32_t packed);

  private:
    std::uint32_t packed_ = 0;
};

// Number of ciphers where both words are nonzero.
int overlap(TernaryWord x, TernaryWord y);

// Linear code in F3^9 given by an independent list of generator words.
struct TernaryCode {
    std::vector<TernaryWord> basis;

    int dimension() const { return static_cast<int>(basis.size()); }
    std::vector<std::string> generator_strings() const;
    static TernaryCode from_strings(const std::vector<std::string>& generators);
};

// All 3^dim spanned words, zero included, in a deterministic order.
// Throws when the generators are dependent.
std::vector<TernaryWord> span(const TernaryCode& c);

// True when every spanned word has weight 0, 6 or 9.
bool is_admissible(const TernaryCode& c);

// Checks the overlap structure of an admissible code: independent weight-6
// pairs overlap in exactly 3 or 4 places, and weight-6 pairs overlapping in
// all six places are proportional.
bool claim1_overlaps(const TernaryCode& c);

// The incidence structure on the ciphers 1..9: a line is the zero support of
// a weight-6 word.
struct LineIncidence {
    std::vector<std::array<int, 3>> lines;           // sorted triples, sorted list
    std::vector<std::vector<int>> parallel_classes;  // indices into `lines`
};

// Extracts the lines of an admissible code of dimension >= 3 and groups them
// into parallel classes. For dimension 3 the affine-plane counts (12 lines,
// 4 through each point, 4 classes of 3 disjoint lines) are enforced.
LineIncidence lines_of(const TernaryCode& c);

// Builds a weight-9 word from two words vanishing on two parallel lines,
// rescaling one so the sum has full support.
TernaryWord find_weight9(const TernaryCode& c);

// The divisor data attached to a weight-9 word over the rank-18 E/F lattice.
struct CuspDivisor {
    // D = sum phi_i F_i with phi_i = w_i / 3, as (eps_1..eps_9, phi_1..phi_9).
    RationalClass d;
    // The integral divisor 3D - sum_{w_i = 2} 3 E_i in the E/E' basis:
    // multiplicities (a_i, a_i') per cusp.
    std::vector<std::pair<int, int>> multiplicities;
    // The class with divisor = 3 * third, over the E/F basis; integral by
    // construction and in the membership kernel of the E/F pairings.
    RationalClass third;
};

CuspDivisor divisor_from_word(const TernaryWord& w, const GramLattice& ef_lattice);

// The code spanned by the affine functions 1, x, y on the nine points of the
// affine plane over F3 (cipher c at position (x, y) with c - 1 = x + 3y).
// The reference example of an admissible code.
TernaryCode affine_plane_code();

struct EnumerationStats {
    std::uint64_t pair_nodes = 0;     // canonical two-dimensional spans visited
    std::uint64_t triple_nodes = 0;   // canonical three-dimensional spans visited
    std::uint64_t reduced_found = 0;  // codes found before symmetry expansion
};

// Exhaustive search for the maximal admissible codes of dimension >= 3,
// returned with canonical generators in a canonical order. The result is
// independent of `reduce_symmetry` (which searches only codes containing the
// normalized word 111111000 and expands the monomial orbit afterwards) and of
// `jobs` (search-tree partitioning).
std::vector<TernaryCode> enumerate_admissible_codes(bool reduce_symmetry, int jobs = 1,
                                                    EnumerationStats* stats = nullptr);

// Coordinate permutation composed with per-coordinate rescaling by {1,2}:
// (m w)_{perm[i]} = scale_i * w_i with ciphers 1-based in the arrays.
struct MonomialMap {
    std::array<int, 9> perm;
    std::array<F3, 9> scale;
};

TernaryWord apply(const MonomialMap& m, TernaryWord w);
TernaryCode apply(const MonomialMap& m, const TernaryCode& c);

// Canonical form of a code: the generators picked degree-lex minimally from
// the span. Two codes are equal as sets exactly when these agree.
TernaryCode canonical_code(const TernaryCode& c);

// Number of orbits of the monomial group on the given list of codes.
int count_monomial_classes(const std::vector<TernaryCode>& codes);

// Explicit isomorphism search (independent of the orbit computation): finds a
// monomial map with image(a) = b by matching line structures and solving for
// the rescaling.
std::optional<MonomialMap> find_monomial_isomorphism(const TernaryCode& a, const TernaryCode& b);

}  // namespace ninecusps
