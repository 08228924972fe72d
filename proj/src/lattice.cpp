#include "ninecusps/lattice.hpp"

#include <stdexcept>

#include "ninecusps/rng.hpp"

namespace ninecusps {

std::string to_string(BasisKind kind) {
    switch (kind) {
        case BasisKind::EEprime: return "E-Eprime";
        case BasisKind::EF: return "E-F";
        case BasisKind::Lemma3Block: return "block-22";
    }
    return "?";
}

std::string to_string(CoverClassification c) {
    switch (c) {
        case CoverClassification::K3: return "K3";
        case CoverClassification::Torus: return "Torus";
        case CoverClassification::NotRealizable: return "NotRealizable";
    }
    return "?";
}

GramLattice build_cusp_lattice(int p) {
    if (p < 1) throw std::invalid_argument("cusp lattice: p must be >= 1");
    GramLattice l;
    l.basis_kind = BasisKind::EEprime;
    l.gram = Matrix<Int>(2 * p, 2 * p, Int(0));
    for (int i = 0; i < p; ++i) {
        const std::string n = std::to_string(i + 1);
        l.basis_labels.push_back("E" + n);
        l.basis_labels.push_back("E" + n + "'");
        l.gram.at(2 * i, 2 * i) = -2;
        l.gram.at(2 * i + 1, 2 * i + 1) = -2;
        l.gram.at(2 * i, 2 * i + 1) = 1;
        l.gram.at(2 * i + 1, 2 * i) = 1;
    }
    return l;
}

namespace {

// Per-pair change of basis; columns express the new basis in the old one.
Matrix<Int> ef_transform(int p, bool inverse) {
    Matrix<Int> t(2 * p, 2 * p, Int(0));
    for (int i = 0; i < p; ++i) {
        // E_i stays; F_i = 2E_i + E_i'. Inverse: E_i' = F_i - 2E_i.
        t.at(2 * i, 2 * i) = 1;
        t.at(2 * i, 2 * i + 1) = inverse ? -2 : 2;
        t.at(2 * i + 1, 2 * i + 1) = 1;
    }
    return t;
}

}  // namespace

GramLattice ef_base_change(const GramLattice& l) {
    if (l.basis_kind != BasisKind::EEprime)
        throw std::invalid_argument("ef base change: expected an E/E' basis");
    const int p = static_cast<int>(l.rank()) / 2;
    const Matrix<Int> t = ef_transform(p, false);
    GramLattice out;
    out.basis_kind = BasisKind::EF;
    out.gram = t.transposed() * l.gram * t;
    for (int i = 0; i < p; ++i) {
        const std::string n = std::to_string(i + 1);
        out.basis_labels.push_back("E" + n);
        out.basis_labels.push_back("F" + n);
    }
    return out;
}

GramLattice ef_base_change_inverse(const GramLattice& l) {
    if (l.basis_kind != BasisKind::EF)
        throw std::invalid_argument("ef base change: expected an E/F basis");
    const int p = static_cast<int>(l.rank()) / 2;
    const Matrix<Int> t = ef_transform(p, true);
    GramLattice out;
    out.basis_kind = BasisKind::EEprime;
    out.gram = t.transposed() * l.gram * t;
    for (int i = 0; i < p; ++i) {
        const std::string n = std::to_string(i + 1);
        out.basis_labels.push_back("E" + n);
        out.basis_labels.push_back("E" + n + "'");
    }
    return out;
}

bool admissible_multiplicities(int a, int a_prime) {
    if ((a != 1 && a != 2) || (a_prime != 1 && a_prime != 2))
        throw std::invalid_argument("multiplicities: values must be 1 or 2");
    return (-2 * a + a_prime) % 3 == 0 && (a - 2 * a_prime) % 3 == 0;
}

bool lemma2_membership(const GramLattice& l, const RationalClass& c) {
    if (l.basis_kind != BasisKind::EF)
        throw std::invalid_argument("membership: expected an E/F basis");
    const std::size_t rank = l.rank();
    if (c.coeffs.size() != rank)
        throw std::invalid_argument("membership: coefficient count does not match rank");
    const int p = static_cast<int>(rank) / 2;

    // Coefficients arrive as (eps_1..eps_p, phi_1..phi_p); the lattice basis
    // interleaves (E_1, F_1, E_2, F_2, ...).
    std::vector<Rational> v(rank);
    for (int i = 0; i < p; ++i) {
        v[2 * i] = c.coeffs[i];
        v[2 * i + 1] = c.coeffs[p + i];
    }

    // Pair against E_k and E_k' = F_k - 2E_k through the Gram matrix.
    for (int k = 0; k < p; ++k) {
        Rational with_e(0), with_f(0);
        for (std::size_t j = 0; j < rank; ++j) {
            with_e += v[j] * Rational(l.gram.at(j, 2 * k));
            with_f += v[j] * Rational(l.gram.at(j, 2 * k + 1));
        }
        const Rational with_eprime = with_f - 2 * with_e;
        if (!is_integer(with_e) || !is_integer(with_eprime)) return false;
    }
    return true;
}

namespace {

constexpr int kBlockSize = 22;
constexpr int kFRows = 7;  // f_3..f_9
constexpr int kERows = 9;  // e_1..e_9

}  // namespace

bool block_pattern_holds(const Matrix<Int>& m) {
    if (m.rows() != kBlockSize || m.cols() != kBlockSize) return false;
    if (!m.is_symmetric()) return false;
    for (int i = 0; i < kFRows; ++i)
        for (int j = 0; j < kFRows + kERows; ++j)
            if (m.at(i, j) % 3 != 0) return false;
    return true;
}

GramLattice block_lattice_from(Matrix<Int> m) {
    if (m.rows() != kBlockSize || m.cols() != kBlockSize)
        throw std::invalid_argument("block matrix: expected 22x22");
    GramLattice l;
    l.basis_kind = BasisKind::Lemma3Block;
    l.gram = std::move(m);
    for (int i = 3; i <= 9; ++i) l.basis_labels.push_back("f" + std::to_string(i));
    for (int i = 1; i <= 9; ++i) l.basis_labels.push_back("e" + std::to_string(i));
    l.basis_labels.push_back("q1");
    l.basis_labels.push_back("q2");
    for (int i = 19; i <= 22; ++i) l.basis_labels.push_back("t" + std::to_string(i));
    return l;
}

GramLattice block_obstruction_matrix(const BlockMatrixOptions& options) {
    if (options.e_block) {
        if (options.e_block->rows() != kERows || options.e_block->cols() != kERows ||
            !options.e_block->is_symmetric())
            throw std::invalid_argument("block matrix: e block must be symmetric 9x9");
    }
    if (options.bound < 3) throw std::invalid_argument("block matrix: bound must be >= 3");

    SplitMix64 rng(options.seed);
    const long b = options.bound;
    const long b3 = b / 3;
    Matrix<Int> m(kBlockSize, kBlockSize, Int(0));
    for (int i = 0; i < kBlockSize; ++i) {
        for (int j = i; j < kBlockSize; ++j) {
            long v;
            if (i < kFRows && j < kFRows + kERows) {
                v = 3 * rng.range(-b3, b3);
            } else if (i >= kFRows && i < kFRows + kERows && j < kFRows + kERows &&
                       options.e_block) {
                v = options.e_block->at(i - kFRows, j - kFRows).get_si();
            } else {
                v = rng.range(-b, b);
            }
            m.at(i, j) = v;
            m.at(j, i) = v;
        }
    }
    return block_lattice_from(std::move(m));
}

F3 block_determinant_mod3(const GramLattice& l) {
    if (l.basis_kind != BasisKind::Lemma3Block || !block_pattern_holds(l.gram))
        throw std::invalid_argument("block determinant: divisibility pattern violated");
    return det_mod3(l.gram);
}

EulerResult euler_triple_cover(int p) {
    if (p < 0) throw std::invalid_argument("euler: p must be >= 0");
    const int euler = 72 - 8 * p;
    CoverClassification c = CoverClassification::NotRealizable;
    if (euler == 24) c = CoverClassification::K3;
    if (euler == 0) c = CoverClassification::Torus;
    return {euler, c};
}

}  // namespace ninecusps
