#pragma once
// Monomial (signed-permutation) transforms of codeword templates, and the
// 2x2 block-pattern algebra relating the eight-antenna code forms. A left
// and right signed permutation permutes slots/antennas and flips signs,
// which preserves orthogonality and every power statistic.

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ostbc/code.hpp"
#include "ostbc/exact.hpp"
#include "ostbc/rng.hpp"

namespace ostbc {

struct MonomialTransform {
    ExactMatrix left;   // applied from the left (permutes time slots)
    ExactMatrix right;  // applied from the right (permutes antennas)
};

inline bool is_signed_permutation(const ExactMatrix& m) {
    if (m.rows() != m.cols()) return false;
    std::vector<bool> col_used(m.cols(), false);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        std::size_t hits = 0, col = 0;
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const ExactScalar& v = m.at(r, c);
            if (v.is_zero()) continue;
            if (!(v == ExactScalar::one() || v == -ExactScalar::one())) return false;
            ++hits;
            col = c;
        }
        if (hits != 1 || col_used[col]) return false;
        col_used[col] = true;
    }
    return true;
}

/// grid' = left * grid * right, entry-wise on the linear forms. With signed
/// permutations every output cell is a +-1 multiple of one input cell.
inline SymbolicCode apply_transform(const SymbolicCode& code, const MonomialTransform& tr) {
    if (tr.left.rows() != code.p || tr.right.rows() != code.nt)
        throw std::invalid_argument("apply_transform: transform size does not match the template");
    if (!is_signed_permutation(tr.left) || !is_signed_permutation(tr.right))
        throw std::invalid_argument("apply_transform: factors must be signed permutations");

    // Row t of the output reads input row src_row[t]; column m reads
    // input column src_col[m]; signs multiply through.
    std::vector<std::size_t> src_row(code.p), src_col(code.nt);
    std::vector<int> row_sign(code.p), col_sign(code.nt);
    for (std::size_t t = 0; t < code.p; ++t)
        for (std::size_t a = 0; a < code.p; ++a)
            if (!tr.left.at(t, a).is_zero()) {
                src_row[t] = a;
                row_sign[t] = tr.left.at(t, a) == ExactScalar::one() ? 1 : -1;
            }
    for (std::size_t m = 0; m < code.nt; ++m)
        for (std::size_t b = 0; b < code.nt; ++b)
            if (!tr.right.at(b, m).is_zero()) {
                src_col[m] = b;
                col_sign[m] = tr.right.at(b, m) == ExactScalar::one() ? 1 : -1;
            }

    SymbolicCode out;
    out.p = code.p;
    out.nt = code.nt;
    out.k = code.k;
    out.label = code.label + "-transformed";
    out.grid.assign(out.p, std::vector<LinearForm>(out.nt));
    for (std::size_t t = 0; t < out.p; ++t)
        for (std::size_t m = 0; m < out.nt; ++m) {
            const LinearForm& f = code.grid[src_row[t]][src_col[m]];
            out.grid[t][m] = (row_sign[t] * col_sign[m] < 0)
                                 ? f.scaled(-ExactScalar::one())
                                 : f;
        }
    return out;
}

using Block = std::vector<std::vector<LinearForm>>;  // 2x2 sub-template

inline Block code_block(const SymbolicCode& code, std::size_t bi, std::size_t bj) {
    Block b(2, std::vector<LinearForm>(2));
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) b[i][j] = code.grid.at(2 * bi + i).at(2 * bj + j);
    return b;
}

inline Block block_neg(const Block& b) {
    Block o = b;
    for (auto& row : o)
        for (LinearForm& f : row) f = f.scaled(-ExactScalar::one());
    return o;
}

inline Block block_conj(const Block& b) {
    Block o = b;
    for (auto& row : o)
        for (LinearForm& f : row) f = f.conjugated();
    return o;
}

/// 8x8 template built from a 4x4 arrangement of 2x2 blocks.
inline SymbolicCode compose_blocks(const std::vector<std::vector<Block>>& blocks,
                                   std::size_t k, const std::string& label) {
    if (blocks.size() != 4)
        throw std::invalid_argument("compose_blocks: need a 4x4 block arrangement");
    SymbolicCode code;
    code.p = code.nt = 8;
    code.k = k;
    code.label = label;
    code.grid.assign(8, std::vector<LinearForm>(8));
    for (std::size_t bi = 0; bi < 4; ++bi) {
        if (blocks[bi].size() != 4)
            throw std::invalid_argument("compose_blocks: need a 4x4 block arrangement");
        for (std::size_t bj = 0; bj < 4; ++bj)
            for (std::size_t i = 0; i < 2; ++i)
                for (std::size_t j = 0; j < 2; ++j)
                    code.grid[2 * bi + i][2 * bj + j] = blocks[bi][bj].at(i).at(j);
    }
    return code;
}

enum class BlockPatternId { Q8, Q2, None };

inline std::string to_string(BlockPatternId id) {
    switch (id) {
        case BlockPatternId::Q8: return "Q8";
        case BlockPatternId::Q2: return "Q2";
        default: return "none";
    }
}

struct BlockPattern {
    BlockPatternId id = BlockPatternId::None;
    Block p, q, r, s;  // top block row on a match, empty otherwise
};

/**
 * Partition an 8x8 template into 2x2 blocks and test the two quaternionic
 * layouts against the top block row (P, Q, R, S):
 *   Q8: [[P Q R S], [-Q P S* -R*], [-R -S* P Q*], [-S R* -Q* P]]
 *   Q2: [[P Q R S], [-Q P -S* R*], [-R S* P -Q*], [-S -R* Q* P]]
 * Anything else (including non-8x8 input) reports none.
 */
inline BlockPattern extract_blocks(const SymbolicCode& code) {
    BlockPattern out;
    if (code.p != 8 || code.nt != 8) return out;
    const Block P = code_block(code, 0, 0), Q = code_block(code, 0, 1);
    const Block R = code_block(code, 0, 2), S = code_block(code, 0, 3);
    auto at = [&](std::size_t i, std::size_t j) { return code_block(code, i, j); };
    auto eq = [](const Block& a, const Block& b) { return a == b; };

    const bool q8 = eq(at(1, 0), block_neg(Q)) && eq(at(1, 1), P) &&
                    eq(at(1, 2), block_conj(S)) && eq(at(1, 3), block_neg(block_conj(R))) &&
                    eq(at(2, 0), block_neg(R)) && eq(at(2, 1), block_neg(block_conj(S))) &&
                    eq(at(2, 2), P) && eq(at(2, 3), block_conj(Q)) &&
                    eq(at(3, 0), block_neg(S)) && eq(at(3, 1), block_conj(R)) &&
                    eq(at(3, 2), block_neg(block_conj(Q))) && eq(at(3, 3), P);
    const bool q2 = eq(at(1, 0), block_neg(Q)) && eq(at(1, 1), P) &&
                    eq(at(1, 2), block_neg(block_conj(S))) && eq(at(1, 3), block_conj(R)) &&
                    eq(at(2, 0), block_neg(R)) && eq(at(2, 1), block_conj(S)) &&
                    eq(at(2, 2), P) && eq(at(2, 3), block_neg(block_conj(Q))) &&
                    eq(at(3, 0), block_neg(S)) && eq(at(3, 1), block_neg(block_conj(R))) &&
                    eq(at(3, 2), block_conj(Q)) && eq(at(3, 3), P);
    if (q8 || q2) {
        out.id = q8 ? BlockPatternId::Q8 : BlockPatternId::Q2;
        out.p = P;
        out.q = Q;
        out.r = R;
        out.s = S;
    }
    return out;
}

/// The witness transform relating the two eight-antenna block forms:
/// negate the last two block rows, swap the first and last two block
/// columns, both acting block-wise (each 4x4 factor is expanded by I_2).
inline MonomialTransform appendix_transform() {
    MonomialTransform tr;
    tr.left = mat_kron(
        ExactMatrix::from_ints({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, -1}}),
        ExactMatrix::identity(2));
    tr.right = mat_kron(
        ExactMatrix::from_ints({{0, 0, 1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, 1, 0, 0}}),
        ExactMatrix::identity(2));
    return tr;
}

/// Seeded uniformly-random signed permutation pair of order n.
inline MonomialTransform random_monomial_transform(std::size_t n, std::uint64_t seed) {
    SplitMix64 g(seed);
    auto make = [&]() {
        std::vector<std::size_t> perm(n);
        for (std::size_t i = 0; i < n; ++i) perm[i] = i;
        for (std::size_t i = n; i > 1; --i)
            std::swap(perm[i - 1], perm[std::size_t(g.below(i))]);
        ExactMatrix m = ExactMatrix::zero(n, n);
        for (std::size_t r = 0; r < n; ++r)
            m.at(r, perm[r]) = (g.next() & 1) ? -ExactScalar::one() : ExactScalar::one();
        return m;
    };
    MonomialTransform tr;
    tr.left = make();
    tr.right = make();
    return tr;
}

} // namespace ostbc
