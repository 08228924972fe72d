#include "ninecusps/code.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <unordered_set>

namespace ninecusps {

// Packed word layout: low 9 bits flag digit 1, next 9 bits flag digit 2,
// bit i for cipher i+1. Addition mod 3 is bit-sliced so the search engine can
// check millions of spans per second.
namespace {

constexpr std::uint32_t kMask9 = 0x1FF;

inline std::uint32_t ones_part(std::uint32_t w) { return w & kMask9; }
inline std::uint32_t twos_part(std::uint32_t w) { return (w >> 9) & kMask9; }
inline std::uint32_t pack_parts(std::uint32_t ones, std::uint32_t twos) {
    return ones | (twos << 9);
}

inline std::uint32_t packed_add(std::uint32_t x, std::uint32_t y) {
    const std::uint32_t a1 = ones_part(x), b1 = twos_part(x);
    const std::uint32_t a2 = ones_part(y), b2 = twos_part(y);
    const std::uint32_t r1 = (a1 & ~a2 & ~b2) | (a2 & ~a1 & ~b1) | (b1 & b2);
    const std::uint32_t r2 = (b1 & ~a2 & ~b2) | (b2 & ~a1 & ~b1) | (a1 & a2);
    return pack_parts(r1, r2);
}

// Doubling equals negation over F3: swap the digit planes.
inline std::uint32_t packed_double(std::uint32_t x) {
    return pack_parts(twos_part(x), ones_part(x));
}

inline int packed_weight(std::uint32_t x) {
    return std::popcount(ones_part(x) | twos_part(x));
}

inline int packed_digit(std::uint32_t w, int cipher) {
    const std::uint32_t bit = 1u << (cipher - 1);
    if (ones_part(w) & bit) return 1;
    if (twos_part(w) & bit) return 2;
    return 0;
}

inline int packed_rank(std::uint32_t w) {
    int r = 0;
    for (int cipher = 1; cipher <= 9; ++cipher) r = 3 * r + packed_digit(w, cipher);
    return r;
}

inline bool weight_admissible(std::uint32_t w) {
    const int k = packed_weight(w);
    return k == 0 || k == 6 || k == 9;
}

}  // namespace

TernaryWord::TernaryWord(const std::array<F3, 9>& entries) {
    std::uint32_t ones = 0, twos = 0;
    for (int i = 0; i < 9; ++i) {
        if (entries[i].value() == 1) ones |= 1u << i;
        if (entries[i].value() == 2) twos |= 1u << i;
    }
    packed_ = pack_parts(ones, twos);
}

TernaryWord TernaryWord::parse(const std::string& digits) {
    if (digits.size() != 9) throw std::invalid_argument("word: expected 9 digits");
    std::array<F3, 9> e;
    for (int i = 0; i < 9; ++i) {
        const char c = digits[i];
        if (c < '0' || c > '2') throw std::invalid_argument("word: digits must be 0, 1 or 2");
        e[i] = F3(c - '0');
    }
    return TernaryWord(e);
}

F3 TernaryWord::at(int cipher) const {
    if (cipher < 1 || cipher > 9) throw std::invalid_argument("word: cipher out of range");
    return F3(packed_digit(packed_, cipher));
}

TernaryWord TernaryWord::with(int cipher, F3 value) const {
    if (cipher < 1 || cipher > 9) throw std::invalid_argument("word: cipher out of range");
    const std::uint32_t bit = 1u << (cipher - 1);
    std::uint32_t ones = ones_part(packed_) & ~bit;
    std::uint32_t twos = twos_part(packed_) & ~bit;
    if (value.value() == 1) ones |= bit;
    if (value.value() == 2) twos |= bit;
    return from_packed(pack_parts(ones, twos));
}

int TernaryWord::weight() const { return packed_weight(packed_); }

std::string TernaryWord::to_string() const {
    std::string s(9, '0');
    for (int cipher = 1; cipher <= 9; ++cipher) s[cipher - 1] = '0' + packed_digit(packed_, cipher);
    return s;
}

TernaryWord operator+(TernaryWord x, TernaryWord y) {
    return TernaryWord::from_packed(packed_add(x.packed_, y.packed_));
}

TernaryWord operator-(TernaryWord x) { return TernaryWord::from_packed(packed_double(x.packed_)); }

TernaryWord operator*(F3 c, TernaryWord w) {
    switch (c.value()) {
        case 0: return TernaryWord();
        case 1: return w;
        default: return TernaryWord::from_packed(packed_double(w.packed_));
    }
}

int TernaryWord::rank() const { return packed_rank(packed_); }

TernaryWord TernaryWord::from_packed(std::uint32_t packed) {
    if ((ones_part(packed) & twos_part(packed)) != 0 || packed >> 18)
        throw std::invalid_argument("word: malformed packed value");
    TernaryWord w;
    w.packed_ = packed;
    return w;
}

int overlap(TernaryWord x, TernaryWord y) {
    const std::uint32_t sx = ones_part(x.packed()) | twos_part(x.packed());
    const std::uint32_t sy = ones_part(y.packed()) | twos_part(y.packed());
    return std::popcount(sx & sy);
}

std::vector<std::string> TernaryCode::generator_strings() const {
    std::vector<std::string> out;
    for (const TernaryWord& w : basis) out.push_back(w.to_string());
    return out;
}

TernaryCode TernaryCode::from_strings(const std::vector<std::string>& generators) {
    TernaryCode c;
    for (const std::string& s : generators) c.basis.push_back(TernaryWord::parse(s));
    return c;
}

namespace {

// Span of packed generators, 3^k values, deterministic order (coefficient
// counter little-endian over the generators).
std::vector<std::uint32_t> packed_span(const std::vector<std::uint32_t>& gens) {
    std::vector<std::uint32_t> s{0};
    for (std::uint32_t g : gens) {
        const std::size_t n = s.size();
        const std::uint32_t g2 = packed_double(g);
        s.reserve(3 * n);
        for (std::size_t i = 0; i < n; ++i) s.push_back(packed_add(s[i], g));
        for (std::size_t i = 0; i < n; ++i) s.push_back(packed_add(s[i], g2));
    }
    return s;
}

bool packed_independent(const std::vector<std::uint32_t>& gens) {
    std::vector<std::uint32_t> s{0};
    for (std::uint32_t g : gens) {
        if (std::find(s.begin(), s.end(), g) != s.end()) return false;
        const std::size_t n = s.size();
        const std::uint32_t g2 = packed_double(g);
        for (std::size_t i = 0; i < n; ++i) s.push_back(packed_add(s[i], g));
        for (std::size_t i = 0; i < n; ++i) s.push_back(packed_add(s[i], g2));
    }
    return true;
}

std::vector<std::uint32_t> packed_basis(const TernaryCode& c) {
    std::vector<std::uint32_t> gens;
    for (const TernaryWord& w : c.basis) gens.push_back(w.packed());
    return gens;
}

// Degree-lex minimal generators of the span: repeatedly take the lowest-rank
// word outside the current subspan.
std::vector<std::uint32_t> canonical_generators(std::vector<std::uint32_t> span_words) {
    std::sort(span_words.begin(), span_words.end(),
              [](std::uint32_t a, std::uint32_t b) { return packed_rank(a) < packed_rank(b); });
    std::vector<std::uint32_t> gens;
    std::vector<std::uint32_t> have{0};
    for (std::uint32_t w : span_words) {
        if (w == 0 || std::find(have.begin(), have.end(), w) != have.end()) continue;
        gens.push_back(w);
        const std::size_t n = have.size();
        const std::uint32_t w2 = packed_double(w);
        for (std::size_t i = 0; i < n; ++i) have.push_back(packed_add(have[i], w));
        for (std::size_t i = 0; i < n; ++i) have.push_back(packed_add(have[i], w2));
        if (have.size() == span_words.size()) break;
    }
    return gens;
}

std::uint64_t code_key(const std::vector<std::uint32_t>& canonical_gens) {
    std::uint64_t k = 0;
    for (std::uint32_t g : canonical_gens) k = (k << 18) | g;
    return k;
}

}  // namespace

std::vector<TernaryWord> span(const TernaryCode& c) {
    const auto gens = packed_basis(c);
    if (!packed_independent(gens)) throw std::invalid_argument("code: dependent generators");
    std::vector<TernaryWord> out;
    for (std::uint32_t w : packed_span(gens)) out.push_back(TernaryWord::from_packed(w));
    return out;
}

bool is_admissible(const TernaryCode& c) {
    for (const TernaryWord& w : span(c))
        if (!weight_admissible(w.packed())) return false;
    return true;
}

bool claim1_overlaps(const TernaryCode& c) {
    std::vector<std::uint32_t> sixes;
    for (const TernaryWord& w : span(c))
        if (w.weight() == 6) sixes.push_back(w.packed());
    for (std::size_t i = 0; i < sixes.size(); ++i) {
        for (std::size_t j = i + 1; j < sixes.size(); ++j) {
            if (sixes[j] == packed_double(sixes[i])) continue;
            const int r = std::popcount((ones_part(sixes[i]) | twos_part(sixes[i])) &
                                        (ones_part(sixes[j]) | twos_part(sixes[j])));
            if (r != 3 && r != 4) return false;
        }
    }
    // Overlap in six places forces linear dependence: same support means the
    // words are proportional or their difference has weight <= 5.
    for (std::size_t i = 0; i < sixes.size(); ++i)
        for (std::size_t j = i + 1; j < sixes.size(); ++j) {
            const std::uint32_t si = ones_part(sixes[i]) | twos_part(sixes[i]);
            const std::uint32_t sj = ones_part(sixes[j]) | twos_part(sixes[j]);
            if (si == sj && sixes[j] != packed_double(sixes[i])) return false;
        }
    return true;
}

LineIncidence lines_of(const TernaryCode& c) {
    if (c.dimension() < 3) throw std::invalid_argument("lines: code dimension must be >= 3");
    if (!is_admissible(c)) throw std::invalid_argument("lines: code is not admissible");

    std::vector<std::uint32_t> zero_masks;
    for (const TernaryWord& w : span(c)) {
        if (w.weight() != 6) continue;
        zero_masks.push_back(~(ones_part(w.packed()) | twos_part(w.packed())) & kMask9);
    }
    std::sort(zero_masks.begin(), zero_masks.end());
    zero_masks.erase(std::unique(zero_masks.begin(), zero_masks.end()), zero_masks.end());

    LineIncidence inc;
    for (std::uint32_t m : zero_masks) {
        std::array<int, 3> line{};
        int k = 0;
        for (int cipher = 1; cipher <= 9; ++cipher)
            if (m & (1u << (cipher - 1))) line[k++] = cipher;
        if (k != 3) throw std::logic_error("lines: weight-6 word with malformed zero support");
        inc.lines.push_back(line);
    }
    // Re-sort lines lexicographically and keep the masks aligned, so the
    // parallel classes computed below index the right rows.
    {
        std::vector<std::size_t> order(inc.lines.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return inc.lines[a] < inc.lines[b];
        });
        std::vector<std::array<int, 3>> lines_sorted;
        std::vector<std::uint32_t> masks_sorted;
        for (std::size_t i : order) {
            lines_sorted.push_back(inc.lines[i]);
            masks_sorted.push_back(zero_masks[i]);
        }
        inc.lines = std::move(lines_sorted);
        zero_masks = std::move(masks_sorted);
    }

    // Pairwise intersections: one point or none.
    for (std::size_t i = 0; i < zero_masks.size(); ++i)
        for (std::size_t j = i + 1; j < zero_masks.size(); ++j)
            if (std::popcount(zero_masks[i] & zero_masks[j]) > 1)
                throw std::logic_error("lines: two lines sharing two points");

    // Parallel classes: connected components of the disjointness relation.
    const std::size_t n = zero_masks.size();
    std::vector<int> cls(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        if (cls[i] != -1) continue;
        const int id = static_cast<int>(inc.parallel_classes.size());
        inc.parallel_classes.push_back({});
        std::deque<std::size_t> queue{i};
        cls[i] = id;
        while (!queue.empty()) {
            const std::size_t cur = queue.front();
            queue.pop_front();
            inc.parallel_classes[id].push_back(static_cast<int>(cur));
            for (std::size_t j = 0; j < n; ++j)
                if (cls[j] == -1 && (zero_masks[cur] & zero_masks[j]) == 0) {
                    cls[j] = id;
                    queue.push_back(j);
                }
        }
        std::sort(inc.parallel_classes[id].begin(), inc.parallel_classes[id].end());
    }

    if (c.dimension() == 3) {
        // Affine-plane counts for the three-dimensional case.
        if (inc.lines.size() != 12) throw std::logic_error("lines: expected 12 lines");
        std::array<int, 10> per_point{};
        for (const auto& line : inc.lines)
            for (int cipher : line) per_point[cipher] += 1;
        for (int cipher = 1; cipher <= 9; ++cipher)
            if (per_point[cipher] != 4) throw std::logic_error("lines: expected 4 lines per point");
        if (inc.parallel_classes.size() != 4)
            throw std::logic_error("lines: expected 4 parallel classes");
        for (const auto& pc : inc.parallel_classes) {
            if (pc.size() != 3) throw std::logic_error("lines: expected classes of 3");
            for (std::size_t a = 0; a < pc.size(); ++a)
                for (std::size_t b = a + 1; b < pc.size(); ++b)
                    if ((zero_masks[pc[a]] & zero_masks[pc[b]]) != 0)
                        throw std::logic_error("lines: parallel lines intersect");
        }
    }
    return inc;
}

TernaryWord find_weight9(const TernaryCode& c) {
    const LineIncidence inc = lines_of(c);
    if (inc.parallel_classes.empty()) throw std::logic_error("weight9: no parallel class");
    const auto& pc = inc.parallel_classes.front();
    if (pc.size() < 2) throw std::logic_error("weight9: degenerate parallel class");

    auto line_mask = [&](int index) {
        std::uint32_t m = 0;
        for (int cipher : inc.lines[index]) m |= 1u << (cipher - 1);
        return m;
    };
    const std::uint32_t mask_l = line_mask(pc[0]);
    const std::uint32_t mask_lp = line_mask(pc[1]);

    std::uint32_t q = 0, qp = 0;
    for (const TernaryWord& w : span(c)) {
        if (w.weight() != 6) continue;
        const std::uint32_t support = ones_part(w.packed()) | twos_part(w.packed());
        if ((support & mask_l) == 0 && q == 0) q = w.packed();
        if ((support & mask_lp) == 0 && qp == 0) qp = w.packed();
    }
    if (q == 0 || qp == 0) throw std::logic_error("weight9: missing vanishing words");

    // The two words overlap exactly on the third line of the class. Rescale q
    // so they agree somewhere there; then q - q' has weight 6, which forces
    // agreement on the whole line, and q + q' has full support.
    if (std::popcount((ones_part(q) | twos_part(q)) & (ones_part(qp) | twos_part(qp))) != 3)
        throw std::logic_error("weight9: expected overlap exactly 3");
    const std::uint32_t agree_mask = (ones_part(q) & ones_part(qp)) | (twos_part(q) & twos_part(qp));
    if (agree_mask == 0) q = packed_double(q);
    if (((ones_part(q) & ones_part(qp)) | (twos_part(q) & twos_part(qp))) == 0)
        throw std::logic_error("weight9: rescaling failed to align the words");
    const std::uint32_t diff = packed_add(q, packed_double(qp));  // q - q'
    if (packed_weight(diff) != 6) throw std::logic_error("weight9: difference not of weight 6");

    const std::uint32_t sum = packed_add(q, qp);
    if (packed_weight(sum) != 9) throw std::logic_error("weight9: sum not of weight 9");
    return TernaryWord::from_packed(sum);
}

CuspDivisor divisor_from_word(const TernaryWord& w, const GramLattice& ef_lattice) {
    if (w.weight() != 9) throw std::invalid_argument("divisor: word must have weight 9");
    if (ef_lattice.basis_kind != BasisKind::EF || ef_lattice.rank() != 18)
        throw std::invalid_argument("divisor: expected the rank-18 E/F lattice");

    CuspDivisor out;
    out.d.coeffs.assign(18, Rational(0));
    out.third.coeffs.assign(18, Rational(0));
    for (int i = 1; i <= 9; ++i) {
        const int digit = w.at(i).value();
        out.d.coeffs[9 + i - 1] = make_rational(digit, 3);
        // 3D = sum w_i F_i = sum (2 w_i E_i + w_i E_i'); subtracting 3 E_i at
        // the ciphers with w_i = 2 lands every multiplicity in {1, 2}.
        const int a = 2 * digit - (digit == 2 ? 3 : 0);
        const int a_prime = digit;
        out.multiplicities.push_back({a, a_prime});
        out.third.coeffs[i - 1] = Rational(digit == 2 ? -1 : 0);
        out.third.coeffs[9 + i - 1] = make_rational(digit, 3);
    }
    return out;
}

TernaryCode affine_plane_code() {
    std::array<F3, 9> ones_row, x_row, y_row;
    for (int c = 0; c < 9; ++c) {
        ones_row[c] = F3(1);
        x_row[c] = F3(c % 3);
        y_row[c] = F3(c / 3);
    }
    TernaryCode code;
    code.basis = {TernaryWord(ones_row), TernaryWord(x_row), TernaryWord(y_row)};
    return code;
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration.

namespace {

struct SearchTables {
    std::vector<std::uint32_t> words;  // admissible nonzero words by rank
    std::vector<int> rank_by_index;
    std::vector<std::int32_t> index_by_packed;  // -1 when not admissible
    std::vector<std::uint16_t> rank_by_packed;  // every valid packed value
    std::size_t row_size;                       // 64-bit words per bitset row
    std::vector<std::uint64_t> compat;          // pairwise span-admissibility

    static const SearchTables& instance() {
        static const SearchTables t = build();
        return t;
    }

    int rank(std::uint32_t packed) const { return rank_by_packed[packed]; }

  private:
    static SearchTables build() {
        SearchTables t;
        t.index_by_packed.assign(1 << 18, -1);
        t.rank_by_packed.assign(1 << 18, 0);
        for (int rank = 0; rank < 19683; ++rank) {
            int digits = rank;
            std::uint32_t ones = 0, twos = 0;
            for (int cipher = 9; cipher >= 1; --cipher) {
                const int d = digits % 3;
                digits /= 3;
                if (d == 1) ones |= 1u << (cipher - 1);
                if (d == 2) twos |= 1u << (cipher - 1);
            }
            const std::uint32_t w = pack_parts(ones, twos);
            t.rank_by_packed[w] = static_cast<std::uint16_t>(rank);
            if (!weight_admissible(w) || w == 0) continue;
            t.index_by_packed[w] = static_cast<std::int32_t>(t.words.size());
            t.words.push_back(w);
            t.rank_by_index.push_back(rank);
        }
        const std::size_t n = t.words.size();
        t.row_size = (n + 63) / 64;
        t.compat.assign(n * t.row_size, 0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const std::uint32_t wi = t.words[i], wj = t.words[j];
                if (wj == packed_double(wi)) continue;  // dependent
                if (!weight_admissible(packed_add(wi, wj))) continue;
                if (!weight_admissible(packed_add(wi, packed_double(wj)))) continue;
                t.compat[i * t.row_size + j / 64] |= 1ULL << (j % 64);
                t.compat[j * t.row_size + i / 64] |= 1ULL << (i % 64);
            }
        }
        return t;
    }
};

// Canonical generator triple of a dimension-3 span, allocation-free: the
// degree-lex smallest word, then the smallest outside its line, then the
// smallest outside the resulting 9-element span.
std::array<std::uint32_t, 3> canonical_triple(const SearchTables& t,
                                              std::array<std::uint32_t, 27> span27) {
    std::sort(span27.begin(), span27.end(),
              [&](std::uint32_t a, std::uint32_t b) { return t.rank(a) < t.rank(b); });
    const std::uint32_t g1 = span27[1];  // span27[0] is the zero word
    const std::uint32_t g1d = packed_double(g1);
    std::uint32_t g2 = 0;
    for (std::size_t k = 2; k < 27; ++k) {
        if (span27[k] == g1d) continue;
        g2 = span27[k];
        break;
    }
    std::array<std::uint32_t, 9> span9;
    {
        int k = 0;
        for (std::uint32_t a : {0u, g1, g1d})
            for (std::uint32_t b : {0u, g2, packed_double(g2)}) span9[k++] = packed_add(a, b);
    }
    std::uint32_t g3 = 0;
    for (std::size_t k = 2; k < 27; ++k) {
        bool inside = false;
        for (std::uint32_t s : span9) inside |= s == span27[k];
        if (inside) continue;
        g3 = span27[k];
        break;
    }
    if (g2 == 0 || g3 == 0) throw std::logic_error("canonical triple: span not of dimension 3");
    return {g1, g2, g3};
}

std::array<std::uint32_t, 27> span27_of(std::uint32_t g1, std::uint32_t g2, std::uint32_t g3) {
    std::array<std::uint32_t, 27> out;
    int k = 0;
    for (std::uint32_t a : {0u, g1, packed_double(g1)})
        for (std::uint32_t b : {0u, g2, packed_double(g2)})
            for (std::uint32_t c : {0u, g3, packed_double(g3)})
                out[k++] = packed_add(packed_add(a, b), c);
    return out;
}

struct PackedCode {
    std::array<std::uint32_t, 3> gens;

    friend bool operator<(const PackedCode& a, const PackedCode& b) {
        return std::array{packed_rank(a.gens[0]), packed_rank(a.gens[1]), packed_rank(a.gens[2])} <
               std::array{packed_rank(b.gens[0]), packed_rank(b.gens[1]), packed_rank(b.gens[2])};
    }
    friend bool operator==(const PackedCode& a, const PackedCode& b) { return a.gens == b.gens; }
};

// True when adjoining w to the dimension-3 span keeps every weight in
// {0, 6, 9}; words already inside the span do not count as extensions.
bool extends_admissibly(const std::array<std::uint32_t, 27>& span27, std::uint32_t w) {
    for (std::uint32_t s : span27) {
        if (s == w) return false;  // already inside
        if (!weight_admissible(packed_add(w, s))) return false;
        if (!weight_admissible(packed_add(packed_double(w), s))) return false;
    }
    return true;
}

bool is_maximal(const SearchTables& t, std::size_t i1, std::size_t i2, std::size_t i3,
                const std::array<std::uint32_t, 27>& span27) {
    for (std::size_t blk = 0; blk < t.row_size; ++blk) {
        std::uint64_t bits = t.compat[i1 * t.row_size + blk] & t.compat[i2 * t.row_size + blk] &
                             t.compat[i3 * t.row_size + blk];
        while (bits) {
            const std::size_t j = blk * 64 + static_cast<std::size_t>(std::countr_zero(bits));
            bits &= bits - 1;
            if (extends_admissibly(span27, t.words[j])) return false;
        }
    }
    return true;
}

// DFS over canonical generator sequences: every added generator must be the
// lowest-rank word its extension adds to the span. Each code is therefore
// visited exactly once, from its unique degree-lex minimal generating triple.
void enumerate_from(const SearchTables& t, std::size_t i1, std::vector<PackedCode>& out,
                    EnumerationStats& stats) {
    const std::uint32_t w1 = t.words[i1];
    if (t.rank(packed_double(w1)) < t.rank_by_index[i1]) return;
    const std::uint64_t* row1 = &t.compat[i1 * t.row_size];

    for (std::size_t blk2 = i1 / 64; blk2 < t.row_size; ++blk2) {
        std::uint64_t bits2 = row1[blk2];
        if (blk2 == i1 / 64) bits2 &= ~((2ULL << (i1 % 64)) - 1);
        while (bits2) {
            const std::size_t i2 = blk2 * 64 + static_cast<std::size_t>(std::countr_zero(bits2));
            bits2 &= bits2 - 1;
            const std::uint32_t w2 = t.words[i2];
            const int rank2 = t.rank_by_index[i2];

            // Canonical-prefix rule for the pair.
            const std::uint32_t w2d = packed_double(w2);
            bool canonical = true;
            for (std::uint32_t base : {w2, w2d}) {
                for (std::uint32_t s : {0u, w1, packed_double(w1)}) {
                    const std::uint32_t v = packed_add(base, s);
                    if (t.rank(v) < rank2) canonical = false;
                }
            }
            if (!canonical) continue;
            stats.pair_nodes += 1;

            std::uint32_t span9[9];
            {
                int k = 0;
                for (std::uint32_t a : {0u, w1, packed_double(w1)})
                    for (std::uint32_t b : {0u, w2, w2d}) span9[k++] = packed_add(a, b);
            }
            const std::uint64_t* row2 = &t.compat[i2 * t.row_size];

            for (std::size_t blk3 = i2 / 64; blk3 < t.row_size; ++blk3) {
                std::uint64_t bits3 = row1[blk3] & row2[blk3];
                if (blk3 == i2 / 64) bits3 &= ~((2ULL << (i2 % 64)) - 1);
                while (bits3) {
                    const std::size_t i3 =
                        blk3 * 64 + static_cast<std::size_t>(std::countr_zero(bits3));
                    bits3 &= bits3 - 1;
                    const std::uint32_t w3 = t.words[i3];
                    const int rank3 = t.rank_by_index[i3];

                    bool ok = true;
                    bool inside = false;
                    for (std::uint32_t s : span9)
                        if (s == w3) inside = true;
                    if (inside) continue;
                    for (std::uint32_t base : {w3, packed_double(w3)}) {
                        for (std::uint32_t s : span9) {
                            const std::uint32_t v = packed_add(base, s);
                            if (!weight_admissible(v) || t.rank(v) < rank3) {
                                ok = false;
                                break;
                            }
                        }
                        if (!ok) break;
                    }
                    if (!ok) continue;
                    stats.triple_nodes += 1;

                    const auto span27 = span27_of(w1, w2, w3);
                    if (is_maximal(t, i1, i2, i3, span27)) out.push_back({{w1, w2, w3}});
                    // A further admissible extension would contradict the
                    // dimension bound; is_maximal covers both roles (the
                    // callers assert that nothing of dimension 4 turned up).
                }
            }
        }
    }
}

std::vector<PackedCode> enumerate_full(int jobs, EnumerationStats& stats) {
    const SearchTables& t = SearchTables::instance();
    const std::size_t n = t.words.size();
    if (jobs < 1) throw std::invalid_argument("enumerate: jobs must be >= 1");

    std::vector<std::vector<PackedCode>> results(jobs);
    std::vector<EnumerationStats> all_stats(jobs);
    std::vector<std::thread> threads;
    for (int worker = 0; worker < jobs; ++worker) {
        threads.emplace_back([&, worker] {
            for (std::size_t i1 = worker; i1 < n; i1 += jobs)
                enumerate_from(t, i1, results[worker], all_stats[worker]);
        });
    }
    for (auto& th : threads) th.join();

    std::vector<PackedCode> out;
    for (int worker = 0; worker < jobs; ++worker) {
        out.insert(out.end(), results[worker].begin(), results[worker].end());
        stats.pair_nodes += all_stats[worker].pair_nodes;
        stats.triple_nodes += all_stats[worker].triple_nodes;
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Applies a cipher permutation given as images (1-based), with no rescaling.
std::uint32_t apply_perm(const std::array<int, 9>& perm, std::uint32_t w) {
    std::uint32_t ones = 0, twos = 0;
    for (int cipher = 1; cipher <= 9; ++cipher) {
        const int d = packed_digit(w, cipher);
        const std::uint32_t bit = 1u << (perm[cipher - 1] - 1);
        if (d == 1) ones |= bit;
        if (d == 2) twos |= bit;
    }
    return pack_parts(ones, twos);
}

std::vector<PackedCode> enumerate_reduced(int jobs, EnumerationStats& stats) {
    const SearchTables& t = SearchTables::instance();

    // Normalized first generator (1,1,1,1,1,1,0,0,0): every admissible code
    // has a weight-6 word, and any weight-6 word reaches this one by a
    // coordinate permutation and rescaling.
    const std::uint32_t w0 = pack_parts(0x3F, 0);
    const std::size_t i0 = static_cast<std::size_t>(t.index_by_packed[w0]);
    const std::uint64_t* row0 = &t.compat[i0 * t.row_size];

    std::vector<std::size_t> candidates;
    for (std::size_t blk = 0; blk < t.row_size; ++blk) {
        std::uint64_t bits = row0[blk];
        while (bits) {
            candidates.push_back(blk * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
            bits &= bits - 1;
        }
    }

    std::unordered_set<std::uint64_t> examined;
    std::vector<PackedCode> found;
    for (std::size_t a = 0; a < candidates.size(); ++a) {
        const std::size_t ia = candidates[a];
        const std::uint32_t wa = t.words[ia];
        std::uint32_t span9[9];
        {
            int k = 0;
            for (std::uint32_t x : {0u, w0, packed_double(w0)})
                for (std::uint32_t y : {0u, wa, packed_double(wa)}) span9[k++] = packed_add(x, y);
        }
        stats.pair_nodes += 1;
        const std::uint64_t* rowa = &t.compat[ia * t.row_size];
        for (std::size_t b = a + 1; b < candidates.size(); ++b) {
            const std::size_t ib = candidates[b];
            if (!(rowa[ib / 64] >> (ib % 64) & 1)) continue;
            const std::uint32_t wb = t.words[ib];
            bool inside = false;
            bool ok = true;
            for (std::uint32_t s : span9)
                if (s == wb) inside = true;
            if (inside) continue;
            for (std::uint32_t base : {wb, packed_double(wb)}) {
                for (std::uint32_t s : span9)
                    if (!weight_admissible(packed_add(base, s))) {
                        ok = false;
                        break;
                    }
                if (!ok) break;
            }
            if (!ok) continue;
            stats.triple_nodes += 1;

            const auto span27 = span27_of(w0, wa, wb);
            const auto canon_gens = canonical_triple(t, span27);
            const PackedCode canon{canon_gens};
            if (!examined.insert(code_key({canon.gens[0], canon.gens[1], canon.gens[2]})).second)
                continue;
            const std::size_t c1 = static_cast<std::size_t>(t.index_by_packed[canon.gens[0]]);
            const std::size_t c2 = static_cast<std::size_t>(t.index_by_packed[canon.gens[1]]);
            const std::size_t c3 = static_cast<std::size_t>(t.index_by_packed[canon.gens[2]]);
            if (is_maximal(t, c1, c2, c3, span27)) found.push_back(canon);
        }
    }
    stats.reduced_found = found.size();

    // Expand the monomial orbit: a transposition and a 9-cycle generate the
    // permutations, one single-coordinate rescaling generates the rest.
    const std::array<int, 9> transposition{2, 1, 3, 4, 5, 6, 7, 8, 9};
    const std::array<int, 9> cycle{2, 3, 4, 5, 6, 7, 8, 9, 1};

    std::unordered_set<std::uint64_t> seen;
    seen.reserve(1 << 19);
    std::deque<PackedCode> queue(found.begin(), found.end());
    for (const PackedCode& c : found) seen.insert(code_key({c.gens[0], c.gens[1], c.gens[2]}));

    std::vector<PackedCode> out(found.begin(), found.end());
    while (!queue.empty()) {
        const PackedCode cur = queue.front();
        queue.pop_front();
        for (int action = 0; action < 3; ++action) {
            std::array<std::uint32_t, 3> image;
            for (int g = 0; g < 3; ++g) {
                std::uint32_t w = cur.gens[g];
                if (action == 0) w = apply_perm(transposition, w);
                if (action == 1) w = apply_perm(cycle, w);
                if (action == 2) {
                    // rescale cipher 1 by 2
                    const int d = packed_digit(w, 1);
                    if (d == 1) w = (w & ~1u) | (1u << 9);
                    else if (d == 2) w = (w & ~(1u << 9)) | 1u;
                }
                image[g] = w;
            }
            const PackedCode canon{canonical_triple(t, span27_of(image[0], image[1], image[2]))};
            if (seen.insert(code_key({canon.gens[0], canon.gens[1], canon.gens[2]})).second) {
                queue.push_back(canon);
                out.push_back(canon);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<TernaryCode> enumerate_admissible_codes(bool reduce_symmetry, int jobs,
                                                    EnumerationStats* stats) {
    EnumerationStats local;
    std::vector<PackedCode> packed =
        reduce_symmetry ? enumerate_reduced(jobs, local) : enumerate_full(jobs, local);
    if (stats) *stats = local;
    std::vector<TernaryCode> out;
    out.reserve(packed.size());
    for (const PackedCode& p : packed) {
        TernaryCode c;
        for (std::uint32_t g : p.gens) c.basis.push_back(TernaryWord::from_packed(g));
        out.push_back(std::move(c));
    }
    return out;
}

TernaryWord apply(const MonomialMap& m, TernaryWord w) {
    std::array<F3, 9> out{};
    for (int cipher = 1; cipher <= 9; ++cipher)
        out[m.perm[cipher - 1] - 1] = m.scale[cipher - 1] * w.at(cipher);
    return TernaryWord(out);
}

TernaryCode apply(const MonomialMap& m, const TernaryCode& c) {
    TernaryCode out;
    for (const TernaryWord& w : c.basis) out.basis.push_back(apply(m, w));
    return out;
}

TernaryCode canonical_code(const TernaryCode& c) {
    std::vector<std::uint32_t> span_words;
    for (const TernaryWord& w : span(c)) span_words.push_back(w.packed());
    TernaryCode out;
    for (std::uint32_t g : canonical_generators(span_words))
        out.basis.push_back(TernaryWord::from_packed(g));
    return out;
}

int count_monomial_classes(const std::vector<TernaryCode>& codes) {
    const SearchTables& t = SearchTables::instance();
    auto canon_of = [&](const std::array<std::uint32_t, 3>& gens) {
        return canonical_triple(t, span27_of(gens[0], gens[1], gens[2]));
    };
    auto key_of = [](const std::array<std::uint32_t, 3>& gens) {
        return code_key({gens[0], gens[1], gens[2]});
    };

    const std::array<int, 9> transposition{2, 1, 3, 4, 5, 6, 7, 8, 9};
    const std::array<int, 9> cycle{2, 3, 4, 5, 6, 7, 8, 9, 1};

    int classes = 0;
    std::unordered_set<std::uint64_t> visited;
    visited.reserve(1 << 19);
    for (const TernaryCode& c : codes) {
        if (c.dimension() != 3)
            throw std::invalid_argument("classes: expected dimension-3 codes");
        const auto start =
            canon_of({c.basis[0].packed(), c.basis[1].packed(), c.basis[2].packed()});
        if (visited.count(key_of(start))) continue;
        classes += 1;
        // BFS through the whole orbit; members outside the given list still
        // drive the closure so that the orbit is group-complete.
        std::deque<std::array<std::uint32_t, 3>> queue{start};
        visited.insert(key_of(start));
        while (!queue.empty()) {
            const auto cur = queue.front();
            queue.pop_front();
            for (int action = 0; action < 3; ++action) {
                std::array<std::uint32_t, 3> image;
                for (int g = 0; g < 3; ++g) {
                    std::uint32_t p = cur[g];
                    if (action == 0) p = apply_perm(transposition, p);
                    if (action == 1) p = apply_perm(cycle, p);
                    if (action == 2) {
                        const int d = packed_digit(p, 1);
                        if (d == 1) p = (p & ~1u) | (1u << 9);
                        else if (d == 2) p = (p & ~(1u << 9)) | 1u;
                    }
                    image[g] = p;
                }
                const auto canon = canon_of(image);
                if (visited.insert(key_of(canon)).second) queue.push_back(canon);
            }
        }
    }
    return classes;
}

std::optional<MonomialMap> find_monomial_isomorphism(const TernaryCode& a, const TernaryCode& b) {
    if (!is_admissible(a) || !is_admissible(b) || a.dimension() != 3 || b.dimension() != 3)
        return std::nullopt;

    const LineIncidence la = lines_of(a);
    const LineIncidence lb = lines_of(b);

    auto line_set = [](const LineIncidence& inc) {
        std::vector<std::uint32_t> masks;
        for (const auto& line : inc.lines) {
            std::uint32_t m = 0;
            for (int cipher : line) m |= 1u << (cipher - 1);
            masks.push_back(m);
        }
        std::sort(masks.begin(), masks.end());
        return masks;
    };
    const auto masks_a = line_set(la);
    const auto masks_b = line_set(lb);

    // Span of b as a hash set for the final membership check.
    std::unordered_set<std::uint32_t> span_b;
    for (const TernaryWord& w : span(b)) span_b.insert(w.packed());

    // One weight-9 word of each code pins the rescaling once the point map is
    // chosen.
    std::uint32_t u = 0, v = 0;
    for (const TernaryWord& w : span(a))
        if (w.weight() == 9 && u == 0) u = w.packed();
    for (const TernaryWord& w : span(b))
        if (w.weight() == 9 && v == 0) v = w.packed();
    if (u == 0 || v == 0) return std::nullopt;

    std::array<int, 9> perm{};
    std::array<bool, 9> used{};

    auto collinear = [](const std::vector<std::uint32_t>& masks, std::uint32_t triple) {
        return std::binary_search(masks.begin(), masks.end(), triple);
    };

    // Backtracking on the point bijection; prune on every completed triple.
    auto valid_so_far = [&](int placed) {
        for (int i = 0; i < placed; ++i)
            for (int j = i + 1; j < placed; ++j)
                for (int k = j + 1; k < placed; ++k) {
                    const std::uint32_t ta = (1u << i) | (1u << j) | (1u << k);
                    const std::uint32_t tb =
                        (1u << (perm[i] - 1)) | (1u << (perm[j] - 1)) | (1u << (perm[k] - 1));
                    if (collinear(masks_a, ta) != collinear(masks_b, tb)) return false;
                }
        return true;
    };

    std::optional<MonomialMap> result;
    auto try_scales = [&]() {
        for (std::uint32_t target : {v, packed_double(v)}) {
            MonomialMap m;
            m.perm = perm;
            bool ok = true;
            for (int cipher = 1; cipher <= 9 && ok; ++cipher) {
                const int du = packed_digit(u, cipher);
                const int dt = packed_digit(target, m.perm[cipher - 1]);
                if (du == 0 || dt == 0) {
                    ok = false;
                    break;
                }
                m.scale[cipher - 1] = F3(dt) / F3(du);
            }
            if (!ok) continue;
            bool maps = true;
            for (const TernaryWord& g : a.basis)
                if (!span_b.count(apply(m, g).packed())) {
                    maps = false;
                    break;
                }
            if (maps) {
                result = m;
                return true;
            }
        }
        return false;
    };

    auto backtrack = [&](auto&& self, int next) -> bool {
        if (next == 9) return try_scales();
        for (int image = 1; image <= 9; ++image) {
            if (used[image - 1]) continue;
            perm[next] = image;
            used[image - 1] = true;
            if (valid_so_far(next + 1) && self(self, next + 1)) return true;
            used[image - 1] = false;
        }
        return false;
    };
    backtrack(backtrack, 0);
    return result;
}

}  // namespace ninecusps
