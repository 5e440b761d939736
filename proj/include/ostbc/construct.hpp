#pragma once
// Kronecker expansion of dispersion families: order n -> 4n via a verified
// {M, N} seed, and order n -> 2n via a fixed 2x2 triple. Also the catalog of
// the small starting families and seeds every higher-order design here is
// grown from.

#include <array>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "ostbc/design.hpp"
#include "ostbc/errors.hpp"
#include "ostbc/exact.hpp"

namespace ostbc {

// Two triples of 4x4 expansion matrices. Valid seeds satisfy the conditions
// checked by verify_mn_seed; u_i and v_i below name the Gram weights
// M_i^H M_i = u_i I and N_i^H N_i = v_i I.
struct MnSeed {
    std::array<ExactMatrix, 3> m_mats;
    std::array<ExactMatrix, 3> n_mats;
    std::string label;
};

// Which guarantee the expansion must preserve. The AF target relaxes the two
// conditions that only protect entry-wise disjointness.
enum class Target { AOD, AF };

/**
 * Seed admissibility check. Violation ids:
 *   5-0   M_i o M_q != 0 or N_i o N_q != 0 for i != q   (AOD target only)
 *   5i    some Gram is not a positive rational multiple of I
 *   5ii   a triple fails pairwise anti-commutation
 *   5iii  some M_i, N_q pair fails amicability
 *   5iv   a seed matrix touches the diagonal                (AOD target only)
 *   5v    a seed matrix is not skew-Hermitian
 *   5-unit  AOD target: some weight u_i or v_i is not 1
 */
inline VerifyReport verify_mn_seed(const MnSeed& seed, Target target) {
    VerifyReport rep;
    std::vector<ExactMatrix> m(seed.m_mats.begin(), seed.m_mats.end());
    std::vector<ExactMatrix> n(seed.n_mats.begin(), seed.n_mats.end());

    bool shaped = true;
    auto shape = [&](const std::vector<ExactMatrix>& mats, char list) {
        for (std::size_t i = 0; i < mats.size(); ++i)
            if (mats[i].rows() != 4 || mats[i].cols() != 4) {
                rep.add({"5i", int(i), -1, mats[i],
                         detail::slot_name(list, i) + " is not 4x4"});
                shaped = false;
            }
    };
    shape(m, 'M');
    shape(n, 'N');
    if (!shaped) return rep;

    if (target == Target::AOD) {
        auto disjoint = [&](const std::vector<ExactMatrix>& mats, char list) {
            for (std::size_t i = 0; i < mats.size(); ++i)
                for (std::size_t l = i + 1; l < mats.size(); ++l) {
                    ExactMatrix h = mat_hadamard(mats[i], mats[l]);
                    if (!h.is_zero())
                        rep.add({"5-0", int(i), int(l), h,
                                 detail::slot_name(list, i) + " and " +
                                     detail::slot_name(list, l) + " overlap entry-wise"});
                }
        };
        disjoint(m, 'M');
        disjoint(n, 'N');
    }

    auto weights = [&](const std::vector<ExactMatrix>& mats, char list) {
        for (std::size_t i = 0; i < mats.size(); ++i) {
            std::string name = detail::slot_name(list, i);
            auto f = detail::gram_scalar(mats[i]);
            if (!f || !f->is_rational() || f->real_quad().sign() <= 0) {
                rep.add({"5i", int(i), -1, mat_mul(mat_hermitian(mats[i]), mats[i]),
                         name + "^H " + name + " is not a positive rational multiple of I"});
                continue;
            }
            if (target == Target::AOD && !(*f == ExactScalar::one()))
                rep.add({"5-unit", int(i), -1, mat_mul(mat_hermitian(mats[i]), mats[i]),
                         name + " has weight " + f->str() + ", expected 1"});
        }
    };
    weights(m, 'M');
    weights(n, 'N');

    detail::check_anticommute(m, 'M', "5ii", rep);
    detail::check_anticommute(n, 'N', "5ii", rep);
    detail::check_cross_amicable(m, 'M', n, 'N', "5iii", rep);

    if (target == Target::AOD) {
        const ExactMatrix i4 = ExactMatrix::identity(4);
        auto hollow = [&](const std::vector<ExactMatrix>& mats, char list) {
            for (std::size_t i = 0; i < mats.size(); ++i) {
                ExactMatrix h = mat_hadamard(mats[i], i4);
                if (!h.is_zero())
                    rep.add({"5iv", int(i), -1, h,
                             detail::slot_name(list, i) + " has nonzero diagonal entries"});
            }
        };
        hollow(m, 'M');
        hollow(n, 'N');
    }

    auto skew = [&](const std::vector<ExactMatrix>& mats, char list) {
        for (std::size_t i = 0; i < mats.size(); ++i) {
            ExactMatrix sum = mat_hermitian(mats[i]) + mats[i];
            if (!sum.is_zero())
                rep.add({"5v", int(i), -1, sum,
                         detail::slot_name(list, i) + " is not skew-Hermitian"});
        }
    };
    skew(m, 'M');
    skew(n, 'N');

    return rep;
}

/**
 * Order n -> 4n expansion. A_1 and B_1 of the input are consumed as carriers
 * of the seed products; the remaining matrices ride along on identity blocks:
 *   a-side: M_1 x B_1, M_2 x B_1, M_3 x B_1, then I_4 x A_i for i >= 2
 *   b-side: N_1 x A_1, N_2 x A_1, N_3 x A_1, then I_4 x B_q for q >= 2
 * (x is the Kronecker product with the expansion matrix as the block
 * pattern, so I_4 x A_i is block-diagonal.) Weighing types permute to
 * (g_1, g_1, g_1, f_2..f_s; f_1, f_1, f_1, g_2..g_t).
 *
 * The caller is responsible for having run verify_mn_seed on the seed with
 * the target it intends the output to meet.
 */
inline DispersionFamily construct1(const DispersionFamily& fam, const MnSeed& seed) {
    if (fam.s() < 1 || fam.t() < 1)
        throw std::invalid_argument(
            "construct1: input family must provide A_1 and B_1 (s >= 1 and t >= 1)");
    DispersionFamily out;
    out.order = fam.order * 4;
    const ExactMatrix i4 = ExactMatrix::identity(4);
    for (const ExactMatrix& mk : seed.m_mats)
        out.a_mats.push_back(mat_kron(mk, fam.b_mats[0]));
    for (std::size_t i = 1; i < fam.a_mats.size(); ++i)
        out.a_mats.push_back(mat_kron(i4, fam.a_mats[i]));
    for (const ExactMatrix& nk : seed.n_mats)
        out.b_mats.push_back(mat_kron(nk, fam.a_mats[0]));
    for (std::size_t q = 1; q < fam.b_mats.size(); ++q)
        out.b_mats.push_back(mat_kron(i4, fam.b_mats[q]));
    out.complex_entries = family_has_complex_entries(out);
    out.label = "c1(" + fam.label + "," + seed.label + ")";
    out.provenance = Provenance{fam.label, seed.label, "c1"};
    return out;
}

/**
 * Order n -> 2n expansion with the fixed skew/symmetric/symmetric triple
 * N_1 = [0 1; -1 0], N_2 = [0 1; 1 0], N_3 = [1 0; 0 -1]:
 *   a-side: N_1 x B_1, then I_2 x A_i for every i
 *   b-side: N_2 x B_1, N_3 x B_1, then I_2 x B_q for q >= 2
 * Weighing types become (g_1, f_1..f_s; g_1, g_1, g_2..g_t).
 */
inline DispersionFamily construct2(const DispersionFamily& fam) {
    if (fam.s() < 1 || fam.t() < 1)
        throw std::invalid_argument(
            "construct2: input family must provide A_1 and B_1 (s >= 1 and t >= 1)");
    const ExactMatrix n1 = ExactMatrix::from_ints({{0, 1}, {-1, 0}});
    const ExactMatrix n2 = ExactMatrix::from_ints({{0, 1}, {1, 0}});
    const ExactMatrix n3 = ExactMatrix::from_ints({{1, 0}, {0, -1}});
    const ExactMatrix i2 = ExactMatrix::identity(2);
    DispersionFamily out;
    out.order = fam.order * 2;
    out.a_mats.push_back(mat_kron(n1, fam.b_mats[0]));
    for (const ExactMatrix& a : fam.a_mats) out.a_mats.push_back(mat_kron(i2, a));
    out.b_mats.push_back(mat_kron(n2, fam.b_mats[0]));
    out.b_mats.push_back(mat_kron(n3, fam.b_mats[0]));
    for (std::size_t q = 1; q < fam.b_mats.size(); ++q)
        out.b_mats.push_back(mat_kron(i2, fam.b_mats[q]));
    out.complex_entries = family_has_complex_entries(out);
    out.label = "c2(" + fam.label + ")";
    out.provenance = Provenance{fam.label, "", "c2"};
    return out;
}

namespace detail {

// The catalog matrices below are fixed data: each entry is a transcription
// of a known small design or expansion set, entered digit-for-digit.

inline DispersionFamily make_af2_ex1() {
    DispersionFamily fam;
    fam.order = 2;
    fam.a_mats = {ExactMatrix::from_ints({{1, -1}, {-1, -1}}),
                  ExactMatrix::from_ints({{1, 1}, {1, -1}})};
    fam.b_mats = {ExactMatrix::from_ints({{1, -1}, {1, 1}}),
                  ExactMatrix::from_ints({{-1, -1}, {1, -1}})};
    fam.complex_entries = false;
    fam.label = "af2-ex1";
    return fam;
}

inline DispersionFamily make_af2_ex2_complex() {
    using P = std::pair<Int, Int>;
    auto g = [](std::vector<std::vector<P>> v) { return ExactMatrix::from_gauss(v); };
    DispersionFamily fam;
    fam.order = 2;
    fam.a_mats = {g({{P{1, 0}, P{-1, 0}}, {P{0, -1}, P{0, -1}}}),
                  g({{P{1, 0}, P{1, 0}}, {P{0, 1}, P{0, -1}}})};
    fam.b_mats = {g({{P{1, 0}, P{-1, 0}}, {P{0, 1}, P{0, 1}}}),
                  g({{P{-1, 0}, P{-1, 0}}, {P{0, 1}, P{0, -1}}})};
    fam.complex_entries = true;
    fam.label = "af2-ex2-complex";
    return fam;
}

// Despite the historical name this family is an amicable family, not an
// orthogonal design: its matrices overlap entry-wise (and its type sum 8
// exceeds what order 2 admits), so classify() reports AF.
inline DispersionFamily make_aod2_ex3() {
    DispersionFamily fam;
    fam.order = 2;
    fam.a_mats = {ExactMatrix::from_ints({{-1, 1}, {1, 1}}),
                  ExactMatrix::from_ints({{1, 1}, {1, -1}})};
    fam.b_mats = {ExactMatrix::from_ints({{1, -1}, {1, 1}}),
                  ExactMatrix::from_ints({{1, 1}, {-1, 1}})};
    fam.complex_entries = false;
    fam.label = "aod2-ex3";
    return fam;
}

inline MnSeed make_mn_eq6() {
    MnSeed seed;
    seed.m_mats = {ExactMatrix::from_ints({{0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, -1, 0}}),
                   ExactMatrix::from_ints({{0, 0, 1, 0}, {0, 0, 0, -1}, {-1, 0, 0, 0}, {0, 1, 0, 0}}),
                   ExactMatrix::from_ints({{0, 0, 0, 1}, {0, 0, 1, 0}, {0, -1, 0, 0}, {-1, 0, 0, 0}})};
    seed.n_mats = {ExactMatrix::from_ints({{0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}}),
                   ExactMatrix::from_ints({{0, 0, 1, 0}, {0, 0, 0, 1}, {-1, 0, 0, 0}, {0, -1, 0, 0}}),
                   ExactMatrix::from_ints({{0, 0, 0, 1}, {0, 0, -1, 0}, {0, 1, 0, 0}, {-1, 0, 0, 0}})};
    seed.label = "mn-eq6";
    return seed;
}

// Same six matrices with the M and N roles exchanged.
inline MnSeed make_mn_eq16() {
    MnSeed base = make_mn_eq6();
    MnSeed seed;
    seed.m_mats = base.n_mats;
    seed.n_mats = base.m_mats;
    seed.label = "mn-eq16";
    return seed;
}

} // namespace detail

inline std::vector<std::string> catalog_names() {
    return {"af2-ex1", "af2-ex2-complex", "aod2-ex3", "mn-eq6", "mn-eq16"};
}

using CatalogEntry = std::variant<DispersionFamily, MnSeed>;

/// Catalog lookup by name; throws UnknownNameError for anything else.
inline CatalogEntry seed_catalog(const std::string& name) {
    if (name == "af2-ex1") return detail::make_af2_ex1();
    if (name == "af2-ex2-complex") return detail::make_af2_ex2_complex();
    if (name == "aod2-ex3") return detail::make_aod2_ex3();
    if (name == "mn-eq6") return detail::make_mn_eq6();
    if (name == "mn-eq16") return detail::make_mn_eq16();
    throw UnknownNameError("unknown catalog name: " + name +
                           " (known: af2-ex1, af2-ex2-complex, aod2-ex3, mn-eq6, mn-eq16)");
}

/// Typed lookup; throws UnknownNameError when the name is not a family.
inline DispersionFamily seed_family(const std::string& name) {
    CatalogEntry e = seed_catalog(name);
    if (auto* fam = std::get_if<DispersionFamily>(&e)) return *fam;
    throw UnknownNameError("catalog entry " + name + " is an {M, N} seed, not a family");
}

/// Typed lookup; throws UnknownNameError when the name is not an {M, N} seed.
inline MnSeed seed_mn(const std::string& name) {
    CatalogEntry e = seed_catalog(name);
    if (auto* seed = std::get_if<MnSeed>(&e)) return *seed;
    throw UnknownNameError("catalog entry " + name + " is a family, not an {M, N} seed");
}

} // namespace ostbc
