#pragma once

// Verification kernels for amicable orthogonal designs (AODs), amicable
// families (AFs) and the orthogonality conditions of square space-time block
// codes. All checks are exact; failures are reported, not thrown.
//
// Conventions, for a family {A_1..A_s; B_1..B_t} of order n:
//   (i)   A_i^H A_i = f_i I  with rational f_i > 0  (weighing type)
//   (ii)  A_i^H A_l = -A_l^H A_i  for i != l, within each list
//   (iii) A_i^H B_q = B_q^H A_i   across the lists (amicability)
//   (0)   A_i o A_l = 0 entry-wise within each list (AOD disjointness only)
// An AF satisfies (i)-(iii); an AOD additionally satisfies (0) and draws its
// entries from {0, +-1} (or {0, +-1, +-j} when flagged complex).

#include <optional>
#include <string>
#include <vector>

#include "exact.hpp"

namespace ostbc {

/** Where a constructed family came from; serialized alongside it. */
struct Provenance {
    std::string input_label;
    std::string seed_label;
    std::string construction;  // "c1" or "c2"

    bool operator==(const Provenance&) const = default;
};

/** The pair of dispersion matrix lists defining a design. */
struct DispersionFamily {
    std::size_t order = 0;
    std::vector<ExactMatrix> a_mats;
    std::vector<ExactMatrix> b_mats;
    bool complex_entries = false;
    std::string label;
    std::optional<Provenance> provenance;

    std::size_t s() const { return a_mats.size(); }
    std::size_t t() const { return b_mats.size(); }
    std::size_t variables() const { return s() + t(); }
};

// Sets complex_entries from the matrices themselves.
inline bool family_has_complex_entries(const DispersionFamily& fam) {
    for (const auto* list : {&fam.a_mats, &fam.b_mats})
        for (const auto& m : *list)
            for (std::size_t r = 0; r < m.rows(); ++r)
                for (std::size_t c = 0; c < m.cols(); ++c)
                    if (!m.at(r, c).is_real()) return true;
    return false;
}

/** Weighing types (f_1..f_s; g_1..g_t). */
struct TypeVector {
    std::vector<Rational> f, g;

    Rational sum() const {
        Rational s(0);
        for (const auto& v : f) s += v;
        for (const auto& v : g) s += v;
        return s;
    }
    bool constant() const {
        if (f.empty() && g.empty()) return true;
        Rational first = f.empty() ? g.front() : f.front();
        for (const auto& v : f) if (v != first) return false;
        for (const auto& v : g) if (v != first) return false;
        return true;
    }
};

struct Violation {
    std::string condition;  // "2i", "2ii", "2iii", "4-0", "4i", "4ii", "4iii",
                            // "alphabet", "5-0", "5i".."5v", "5-unit"
    int i = -1;             // first index involved, -1 when not applicable
    int q = -1;             // second index involved
    ExactMatrix offender;   // the product (or matrix) witnessing the failure
    std::string note;
};

struct VerifyReport {
    bool passed = true;
    std::vector<Violation> violations;
    // Common Gram scale c with A_i^H A_i = c I; set by the dispersion check.
    std::optional<Quad> gram_scale;

    void add(Violation v) {
        passed = false;
        violations.push_back(std::move(v));
    }
};

namespace detail {

// X^H X when it is a scalar multiple of I; nullopt otherwise.
inline std::optional<ExactScalar> gram_scalar(const ExactMatrix& x) {
    ExactMatrix g = mat_mul(mat_hermitian(x), x);
    ExactScalar f = g.at(0, 0);
    if (!is_scalar_multiple_of_identity(g, f)) return std::nullopt;
    return f;
}

inline std::string slot_name(char list, std::size_t idx) {
    return std::string(1, list) + "[" + std::to_string(idx + 1) + "]";
}

// (ii) within one list: X_i^H X_l + X_l^H X_i = 0 for all i < l.
inline void check_anticommute(const std::vector<ExactMatrix>& mats, char list,
                              const std::string& cond, VerifyReport& rep) {
    for (std::size_t i = 0; i < mats.size(); ++i)
        for (std::size_t l = i + 1; l < mats.size(); ++l) {
            ExactMatrix m = mat_mul(mat_hermitian(mats[i]), mats[l]) +
                            mat_mul(mat_hermitian(mats[l]), mats[i]);
            if (!m.is_zero())
                rep.add({cond, int(i), int(l), m,
                         slot_name(list, i) + " and " + slot_name(list, l) + " do not anti-commute"});
        }
}

// (iii) across the lists: A_i^H B_q - B_q^H A_i = 0 for all i, q.
inline void check_cross_amicable(const std::vector<ExactMatrix>& a, char la,
                                 const std::vector<ExactMatrix>& b, char lb,
                                 const std::string& cond, VerifyReport& rep) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t q = 0; q < b.size(); ++q) {
            ExactMatrix m = mat_mul(mat_hermitian(a[i]), b[q]) -
                            mat_mul(mat_hermitian(b[q]), a[i]);
            if (!m.is_zero())
                rep.add({cond, int(i), int(q), m,
                         slot_name(la, i) + " and " + slot_name(lb, q) + " are not amicable"});
        }
}

} // namespace detail

/**
 * Weighing types of a family. Throws std::domain_error naming the offending
 * matrix when some Gram is not a rational scalar multiple of the identity.
 */
inline TypeVector gram_types(const DispersionFamily& fam) {
    TypeVector tv;
    auto one_list = [&](const std::vector<ExactMatrix>& mats, char list, std::vector<Rational>& out) {
        for (std::size_t i = 0; i < mats.size(); ++i) {
            auto f = detail::gram_scalar(mats[i]);
            std::string name = detail::slot_name(list, i);
            if (!f)
                throw std::domain_error("gram_types: " + name + "^H " + name +
                                        " is not f*I (" + name + " is not a weighing-type matrix)");
            if (!f->is_rational())
                throw std::domain_error("gram_types: type of " + name + " is not rational");
            out.push_back(f->real_quad().rat());
        }
    };
    one_list(fam.a_mats, 'A', tv.f);
    one_list(fam.b_mats, 'B', tv.g);
    return tv;
}

/** Checks conditions (i), (ii), (iii); disjointness and alphabet are not required. */
inline VerifyReport verify_af(const DispersionFamily& fam) {
    VerifyReport rep;
    auto check_types = [&](const std::vector<ExactMatrix>& mats, char list) {
        for (std::size_t i = 0; i < mats.size(); ++i) {
            if (mats[i].rows() != fam.order || mats[i].cols() != fam.order) {
                rep.add({"4i", int(i), -1, mats[i], detail::slot_name(list, i) + " has wrong order"});
                continue;
            }
            auto f = detail::gram_scalar(mats[i]);
            if (!f || !f->is_rational() || f->real_quad().rat().sign() <= 0)
                rep.add({"4i", int(i), -1, mat_mul(mat_hermitian(mats[i]), mats[i]),
                         detail::slot_name(list, i) + "^H " + detail::slot_name(list, i) +
                             " is not a positive rational multiple of I"});
        }
    };
    check_types(fam.a_mats, 'A');
    check_types(fam.b_mats, 'B');
    detail::check_anticommute(fam.a_mats, 'A', "4ii", rep);
    detail::check_anticommute(fam.b_mats, 'B', "4ii", rep);
    detail::check_cross_amicable(fam.a_mats, 'A', fam.b_mats, 'B', "4iii", rep);
    return rep;
}

/**
 * Full AOD check: the AF conditions plus entry-wise disjointness within each
 * list (condition (0)) and the entry alphabet {0, +-1}, extended to
 * {0, +-1, +-j} when the family is flagged complex.
 */
inline VerifyReport verify_aod(const DispersionFamily& fam) {
    VerifyReport rep = verify_af(fam);
    auto disjoint = [&](const std::vector<ExactMatrix>& mats, char list) {
        for (std::size_t i = 0; i < mats.size(); ++i)
            for (std::size_t l = i + 1; l < mats.size(); ++l) {
                ExactMatrix h = mat_hadamard(mats[i], mats[l]);
                if (!h.is_zero())
                    rep.add({"4-0", int(i), int(l), h,
                             detail::slot_name(list, i) + " and " + detail::slot_name(list, l) +
                                 " overlap entry-wise"});
            }
    };
    disjoint(fam.a_mats, 'A');
    disjoint(fam.b_mats, 'B');

    auto in_alphabet = [&](const ExactScalar& s) {
        if (s.is_zero()) return true;
        if (s == ExactScalar::one() || s == -ExactScalar::one()) return true;
        if (fam.complex_entries &&
            (s == ExactScalar::imag_unit() || s == -ExactScalar::imag_unit()))
            return true;
        return false;
    };
    auto alphabet = [&](const std::vector<ExactMatrix>& mats, char list) {
        for (std::size_t i = 0; i < mats.size(); ++i)
            for (std::size_t r = 0; r < mats[i].rows(); ++r)
                for (std::size_t c = 0; c < mats[i].cols(); ++c)
                    if (!in_alphabet(mats[i].at(r, c))) {
                        rep.add({"alphabet", int(i), -1, mats[i],
                                 detail::slot_name(list, i) + " entry (" + std::to_string(r + 1) +
                                     "," + std::to_string(c + 1) + ") = " +
                                     mats[i].at(r, c).str() + " outside the design alphabet"});
                        return;  // one alphabet violation per matrix is enough
                    }
    };
    alphabet(fam.a_mats, 'A');
    alphabet(fam.b_mats, 'B');
    return rep;
}

/**
 * Orthogonality check on raw dispersion matrix lists: (i) every Gram equals
 * c I for one common c > 0 (the report carries c), (ii) anti-commutation
 * within each list, (iii) amicability across lists. A uniform scale is
 * accepted because a global scalar does not affect orthogonality.
 */
inline VerifyReport verify_linear_dispersion(const std::vector<ExactMatrix>& a_mats,
                                             const std::vector<ExactMatrix>& b_mats) {
    VerifyReport rep;
    std::optional<Quad> scale;
    auto grams = [&](const std::vector<ExactMatrix>& mats, char list) {
        for (std::size_t i = 0; i < mats.size(); ++i) {
            auto f = detail::gram_scalar(mats[i]);
            if (!f || !f->is_real() || f->real_quad().sign() <= 0) {
                rep.add({"2i", int(i), -1, mat_mul(mat_hermitian(mats[i]), mats[i]),
                         detail::slot_name(list, i) + "^H " + detail::slot_name(list, i) +
                             " is not a positive multiple of I"});
                return;
            }
            Quad c = f->real_quad();
            if (!scale) scale = c;
            else if (*scale != c)
                rep.add({"2i", int(i), -1, mat_mul(mat_hermitian(mats[i]), mats[i]),
                         detail::slot_name(list, i) + " Gram scale " + c.str() +
                             " differs from " + scale->str()});
        }
    };
    grams(a_mats, 'A');
    grams(b_mats, 'B');
    detail::check_anticommute(a_mats, 'A', "2ii", rep);
    detail::check_anticommute(b_mats, 'B', "2ii", rep);
    detail::check_cross_amicable(a_mats, 'A', b_mats, 'B', "2iii", rep);
    if (rep.passed) rep.gram_scale = scale;
    return rep;
}

/** Formal design sum_i C_i v_i over real variables, given by its coefficients. */
struct SymbolicDesign {
    std::size_t order = 0;
    std::vector<ExactMatrix> coeffs;
};

inline SymbolicDesign a_design(const DispersionFamily& fam) { return {fam.order, fam.a_mats}; }
inline SymbolicDesign b_design(const DispersionFamily& fam) { return {fam.order, fam.b_mats}; }

/** Amicability of two formal designs: A_i^H B_q = B_q^H A_i for all i, q. */
inline bool check_amicable(const SymbolicDesign& a, const SymbolicDesign& b) {
    if (a.order != b.order)
        throw std::invalid_argument("check_amicable: designs have different orders");
    for (const auto& ai : a.coeffs)
        for (const auto& bq : b.coeffs) {
            ExactMatrix m = mat_mul(mat_hermitian(ai), bq) - mat_mul(mat_hermitian(bq), ai);
            if (!m.is_zero()) return false;
        }
    return true;
}

enum class Classification { AOD, AF, Invalid };

inline const char* to_string(Classification c) {
    switch (c) {
        case Classification::AOD: return "AOD";
        case Classification::AF: return "AF";
        default: return "invalid";
    }
}

/** Strongest property the family satisfies. Never AOD with overlapping entries. */
inline Classification classify(const DispersionFamily& fam) {
    if (verify_aod(fam).passed) return Classification::AOD;
    if (verify_af(fam).passed) return Classification::AF;
    return Classification::Invalid;
}

/**
 * Maximum number of variables s + t of an AF of order n = 2^a b, b odd,
 * which is 2a + 2.
 */
inline std::size_t max_variables_bound(std::size_t n) {
    if (n == 0) throw std::invalid_argument("max_variables_bound: order must be positive");
    std::size_t a = 0;
    while (n % 2 == 0) { n /= 2; ++a; }
    return 2 * a + 2;
}

} // namespace ostbc
