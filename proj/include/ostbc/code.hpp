#pragma once
// Symbolic codeword templates. Every entry of a code matrix is a linear form
// in the real and imaginary parts of k complex symbols; assembling a
// dispersion family lays those forms out on a p x nt grid, and the fixture
// catalog holds literal transcriptions of known published code matrices.

#include <algorithm>
#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ostbc/design.hpp"
#include "ostbc/errors.hpp"
#include "ostbc/exact.hpp"

namespace ostbc {

enum class Part { R, I };

// One additive term of a codeword entry: coeff * x_i^R or coeff * x_i^I.
// Stored coefficients are the full entry multipliers, so the j in
// x = x^R + j x^I is already folded into imaginary-part coefficients:
// a bare symbol x_i contributes (i, R, 1) and (i, I, j).
struct Term {
    std::size_t symbol = 0;  // 0-based
    Part part = Part::R;
    ExactScalar coeff;

    bool operator==(const Term& o) const {
        return symbol == o.symbol && part == o.part && coeff == o.coeff;
    }
};

class LinearForm {
public:
    // Keeps terms sorted by (symbol, part) with zero coefficients dropped,
    // so equal forms compare equal term-by-term.
    void add(std::size_t symbol, Part part, const ExactScalar& c) {
        if (c.is_zero()) return;
        auto key_less = [](const Term& t, std::pair<std::size_t, Part> k) {
            return t.symbol < k.first || (t.symbol == k.first && t.part < k.second);
        };
        auto it = std::lower_bound(terms_.begin(), terms_.end(),
                                   std::make_pair(symbol, part), key_less);
        if (it != terms_.end() && it->symbol == symbol && it->part == part) {
            it->coeff = it->coeff + c;
            if (it->coeff.is_zero()) terms_.erase(it);
        } else {
            terms_.insert(it, Term{symbol, part, c});
        }
    }

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    ExactScalar coeff(std::size_t symbol, Part part) const {
        for (const Term& t : terms_)
            if (t.symbol == symbol && t.part == part) return t.coeff;
        return ExactScalar::zero();
    }

    // Entry of the conjugated code matrix: conj(sum c_t * v_t) with every
    // v_t real, so only the coefficients conjugate.
    LinearForm conjugated() const {
        LinearForm f;
        f.terms_ = terms_;
        for (Term& t : f.terms_) t.coeff = t.coeff.conj();
        return f;
    }

    LinearForm scaled(const ExactScalar& s) const {
        LinearForm f;
        for (const Term& t : terms_) f.add(t.symbol, t.part, t.coeff * s);
        return f;
    }

    std::complex<double> evaluate(const std::vector<std::complex<double>>& x) const {
        std::complex<double> v{0.0, 0.0};
        for (const Term& t : terms_)
            v += t.coeff.to_complex() *
                 (t.part == Part::R ? x.at(t.symbol).real() : x.at(t.symbol).imag());
        return v;
    }

    bool operator==(const LinearForm& o) const { return terms_ == o.terms_; }
    bool operator!=(const LinearForm& o) const { return !(*this == o); }

    // Pretty form: reunites an (R, I) coefficient pair into c*x or c*x* when
    // the pair matches the conjugation pattern, otherwise spells the parts.
    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        auto piece = [&](const ExactScalar& c, const std::string& var) {
            std::string cs = c.str();
            std::string lead;
            if (c == ExactScalar::one()) lead = var;
            else if (c == -ExactScalar::one()) lead = "-" + var;
            else lead = "(" + cs + ")*" + var;
            if (!out.empty()) out += (lead[0] == '-') ? " - " + lead.substr(1) : " + " + lead;
            else out += lead;
        };
        for (std::size_t n = 0; n < terms_.size(); ++n) {
            const Term& t = terms_[n];
            std::string base = "x" + std::to_string(t.symbol + 1);
            if (t.part == Part::R && n + 1 < terms_.size() &&
                terms_[n + 1].symbol == t.symbol && terms_[n + 1].part == Part::I) {
                const ExactScalar s = terms_[n + 1].coeff;
                const ExactScalar ja = t.coeff * ExactScalar::imag_unit();
                if (s == ja) { piece(t.coeff, base); ++n; continue; }
                if (s == -ja) { piece(t.coeff, base + "*"); ++n; continue; }
            }
            piece(t.coeff, base + (t.part == Part::R ? "^R" : "^I"));
        }
        return out;
    }

private:
    std::vector<Term> terms_;
};

// A p x nt codeword template carrying k complex symbols.
struct SymbolicCode {
    std::size_t p = 0;   // time slots (rows)
    std::size_t nt = 0;  // transmit antennas (columns)
    std::size_t k = 0;   // complex symbols
    std::vector<std::vector<LinearForm>> grid;
    std::string label;

    const LinearForm& at(std::size_t r, std::size_t c) const { return grid.at(r).at(c); }
    LinearForm& at(std::size_t r, std::size_t c) { return grid.at(r).at(c); }
};

inline Rational rate(const SymbolicCode& code) {
    return Rational(Int(code.k), Int(code.p));
}

/// Template identity: dimensions, symbol count and every entry (labels aside).
inline bool same_template(const SymbolicCode& a, const SymbolicCode& b) {
    return a.p == b.p && a.nt == b.nt && a.k == b.k && a.grid == b.grid;
}

inline std::size_t structural_zero_count(const SymbolicCode& code) {
    std::size_t n = 0;
    for (const auto& row : code.grid)
        for (const LinearForm& f : row)
            if (f.is_zero()) ++n;
    return n;
}

// Carrier assignment for assembly: complex symbol i takes its real part
// from a-side slot a_slot[i] and its imaginary part from b-side slot
// b_slot[i], the latter negated when sign[i] = -1. Printed codes order
// their symbols differently from the construction output, which is why
// both slot maps are needed.
struct SymbolPairing {
    std::vector<std::size_t> a_slot;
    std::vector<std::size_t> b_slot;
    std::vector<int> sign;

    std::size_t size() const { return a_slot.size(); }

    static SymbolPairing identity(std::size_t k) {
        SymbolPairing p;
        p.a_slot.resize(k);
        p.b_slot.resize(k);
        for (std::size_t i = 0; i < k; ++i) p.a_slot[i] = p.b_slot[i] = i;
        p.sign.assign(k, 1);
        return p;
    }
};

namespace detail {

inline bool is_permutation_of_iota(const std::vector<std::size_t>& v) {
    std::vector<bool> seen(v.size(), false);
    for (std::size_t s : v) {
        if (s >= v.size() || seen[s]) return false;
        seen[s] = true;
    }
    return true;
}

inline void validate_pairing(const SymbolPairing& pairing, std::size_t k) {
    if (pairing.a_slot.size() != k || pairing.b_slot.size() != k || pairing.sign.size() != k)
        throw std::invalid_argument("pairing does not cover all " + std::to_string(k) + " symbols");
    if (!is_permutation_of_iota(pairing.a_slot) || !is_permutation_of_iota(pairing.b_slot))
        throw std::invalid_argument("pairing slot maps must be permutations");
    for (int s : pairing.sign)
        if (s != 1 && s != -1) throw std::invalid_argument("pairing signs must be +-1");
}

// m with r = 2^m, for positive dyadic rationals only.
inline std::optional<int> log2_exponent(const Rational& r) {
    auto is_pow2 = [](Int v) { return v > 0 && (v & (v - 1)) == 0; };
    if (r.sign() <= 0 || !is_pow2(r.num()) || !is_pow2(r.den())) return std::nullopt;
    int m = 0;
    for (Int v = r.num(); v > 1; v >>= 1) ++m;
    for (Int v = r.den(); v > 1; v >>= 1) --m;
    return m;
}

// sqrt(r) inside the ring, defined exactly when r = 2^m.
inline ExactScalar exact_sqrt_pow2(const Rational& r, const std::string& what) {
    auto m = log2_exponent(r);
    if (!m)
        throw std::domain_error(what + ": " + r.str() +
                                " is not a power of 2, its square root leaves the exact ring");
    return ExactScalar::sqrt2_power(*m);
}

// Equal-power preparation shared by assemble and find_pairing: with
// c = min type over both lists, A_i * sqrt(c/f_i) and B_q * sqrt(c/g_q).
inline std::pair<std::vector<ExactMatrix>, std::vector<ExactMatrix>>
equal_power_scaled(const DispersionFamily& fam) {
    TypeVector tv = gram_types(fam);
    Rational cmin = tv.f.empty() ? tv.g.front() : tv.f.front();
    for (const Rational& f : tv.f)
        if (f < cmin) cmin = f;
    for (const Rational& g : tv.g)
        if (g < cmin) cmin = g;
    std::vector<ExactMatrix> a_scaled, b_scaled;
    a_scaled.reserve(fam.s());
    b_scaled.reserve(fam.t());
    for (std::size_t i = 0; i < fam.s(); ++i)
        a_scaled.push_back(fam.a_mats[i].scaled(exact_sqrt_pow2(
            cmin / tv.f[i], "assemble: power ratio for A[" + std::to_string(i + 1) + "]")));
    for (std::size_t q = 0; q < fam.t(); ++q)
        b_scaled.push_back(fam.b_mats[q].scaled(exact_sqrt_pow2(
            cmin / tv.g[q], "assemble: power ratio for B[" + std::to_string(q + 1) + "]")));
    return {std::move(a_scaled), std::move(b_scaled)};
}

} // namespace detail

/**
 * Lay a dispersion family out as a codeword template. Matrices are first
 * brought to equal power: with c = min type over both lists, A_i is scaled
 * by sqrt(c/f_i) and B_q by sqrt(c/g_q), so every scaled Gram equals c I.
 * This is the exact source of the 1/sqrt(2) and 1/2 coefficients in the
 * unequal-type fixtures, and it leaves constant-type families untouched.
 * Entry (t, m) is then
 *     sum_i A'_{a_slot[i]}[t,m] x_i^R + j sign_i B'_{b_slot[i]}[t,m] x_i^I.
 * Type ratios must be powers of 2 (true for all weighing types here);
 * anything else would need square roots outside the exact ring.
 */
inline SymbolicCode assemble(const DispersionFamily& fam, const SymbolPairing& pairing) {
    if (fam.s() != fam.t())
        throw std::invalid_argument("assemble: family pairs " + std::to_string(fam.s()) +
                                    " real with " + std::to_string(fam.t()) +
                                    " imaginary carriers; counts must match");
    const std::size_t k = fam.s();
    if (k == 0) throw std::invalid_argument("assemble: family carries no symbols");
    detail::validate_pairing(pairing, k);
    auto [a_scaled, b_scaled] = detail::equal_power_scaled(fam);

    SymbolicCode code;
    code.p = code.nt = fam.order;
    code.k = k;
    code.label = fam.label;
    code.grid.assign(code.p, std::vector<LinearForm>(code.nt));
    const ExactScalar j = ExactScalar::imag_unit();
    for (std::size_t r = 0; r < code.p; ++r)
        for (std::size_t c = 0; c < code.nt; ++c)
            for (std::size_t i = 0; i < k; ++i) {
                code.grid[r][c].add(i, Part::R, a_scaled[pairing.a_slot[i]].at(r, c));
                ExactScalar im = j * b_scaled[pairing.b_slot[i]].at(r, c);
                if (pairing.sign[i] < 0) im = -im;
                code.grid[r][c].add(i, Part::I, im);
            }
    return code;
}

/**
 * The coefficient matrices exactly as they sit in the template: A_i from the
 * x_i^R coefficients, B_i from the x_i^I coefficients with the folded j
 * removed. No rescaling, so this is the input for orthogonality checks and
 * for the simulator's equivalent channel.
 */
inline DispersionFamily raw_dispersion(const SymbolicCode& code) {
    if (code.p != code.nt)
        throw std::domain_error("raw_dispersion: only square templates carry a family");
    DispersionFamily fam;
    fam.order = code.p;
    const ExactScalar mj = -ExactScalar::imag_unit();
    for (std::size_t i = 0; i < code.k; ++i) {
        ExactMatrix a = ExactMatrix::zero(code.p, code.nt);
        ExactMatrix b = ExactMatrix::zero(code.p, code.nt);
        for (std::size_t r = 0; r < code.p; ++r)
            for (std::size_t c = 0; c < code.nt; ++c) {
                a.at(r, c) = code.grid[r][c].coeff(i, Part::R);
                b.at(r, c) = mj * code.grid[r][c].coeff(i, Part::I);
            }
        fam.a_mats.push_back(std::move(a));
        fam.b_mats.push_back(std::move(b));
    }
    fam.complex_entries = family_has_complex_entries(fam);
    fam.label = code.label;
    return fam;
}

/// Orthogonality check of a template: every raw coefficient matrix must have
/// Gram c I for one common c > 0, the two lists must anti-commute internally
/// and be amicable across. The report carries c on success.
inline VerifyReport verify_ostbc(const SymbolicCode& code) {
    DispersionFamily raw = raw_dispersion(code);
    return verify_linear_dispersion(raw.a_mats, raw.b_mats);
}

/**
 * Inverse of assemble up to its equal-power normalization: recovers the
 * dispersion family whose largest entry magnitude is 1 per matrix, i.e.
 * undoes the sqrt(c/f_i) scaling. assemble(extract_dispersion(code),
 * identity) reproduces code exactly.
 */
inline DispersionFamily extract_dispersion(const SymbolicCode& code) {
    DispersionFamily fam = raw_dispersion(code);
    auto denorm = [&](ExactMatrix& m, const std::string& name) {
        std::optional<Quad> maxsq;
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c) {
                if (m.at(r, c).is_zero()) continue;
                Quad q = m.at(r, c).abs2_quad();
                if (!maxsq || *maxsq < q) maxsq = q;
            }
        if (!maxsq)
            throw std::domain_error("extract_dispersion: " + name + " never occurs in the template");
        if (!maxsq->is_rational())
            throw std::domain_error("extract_dispersion: peak magnitude of " + name +
                                    " is irrational, cannot renormalize exactly");
        ExactScalar inv = detail::exact_sqrt_pow2(Rational(1) / maxsq->rat(),
                                                  "extract_dispersion: peak power of " + name);
        m = m.scaled(inv);
    };
    for (std::size_t i = 0; i < fam.a_mats.size(); ++i)
        denorm(fam.a_mats[i], "x" + std::to_string(i + 1) + "^R");
    for (std::size_t i = 0; i < fam.b_mats.size(); ++i)
        denorm(fam.b_mats[i], "x" + std::to_string(i + 1) + "^I");
    fam.complex_entries = family_has_complex_entries(fam);
    return fam;
}

/**
 * Replace symbol i by e^(j theta) x_i with theta = eighth_turns * 45 degrees.
 * Rotations on the 45-degree lattice have cos/sin in {0, +-1, +-sqrt(2)/2},
 * so the substitution stays in the exact ring:
 *   x^R -> cos t x^R - sin t x^I,  x^I -> sin t x^R + cos t x^I.
 */
inline SymbolicCode rotate_symbol(const SymbolicCode& code, std::size_t symbol, int eighth_turns) {
    if (symbol >= code.k)
        throw std::invalid_argument("rotate_symbol: symbol index out of range");
    const ExactScalar phase = ExactScalar::unit_phase_eighth(eighth_turns);
    const ExactScalar c = phase.real_part();
    const ExactScalar s = phase.imag_part();

    SymbolicCode out = code;
    for (auto& row : out.grid)
        for (LinearForm& f : row) {
            ExactScalar a = f.coeff(symbol, Part::R);
            ExactScalar si = f.coeff(symbol, Part::I);
            if (a.is_zero() && si.is_zero()) continue;
            LinearForm g;
            for (const Term& t : f.terms())
                if (t.symbol != symbol) g.add(t.symbol, t.part, t.coeff);
            g.add(symbol, Part::R, a * c + si * s);
            g.add(symbol, Part::I, si * c - a * s);
            f = g;
        }
    return out;
}

namespace detail {

// Cell grammar for the fixture tables, whitespace-free:
//   cell  := "0" | ["-"] "(" seq ")" div? | seq
//   seq   := ["-"] atom (("+"|"-") atom)*
//   atom  := "j"? "x" digits ("R"|"I")? "*"? div?
//   div   := "/2" | "/r2"
// A bare xk stands for xk^R + j xk^I, a starred one for its conjugate, and
// R/I pick a single part (the j of a "jxkI" atom is an explicit prefix).

inline ExactScalar parse_cell_div(const std::string& src, std::size_t& pos) {
    if (pos >= src.size() || src[pos] != '/') return ExactScalar::one();
    ++pos;
    if (pos < src.size() && src[pos] == '2') {
        ++pos;
        return ExactScalar::half();
    }
    if (pos + 1 < src.size() && src[pos] == 'r' && src[pos + 1] == '2') {
        pos += 2;
        return ExactScalar::inv_sqrt2();
    }
    throw std::invalid_argument("bad divisor in code entry: " + src);
}

inline void parse_cell_atom(const std::string& src, std::size_t& pos, int sign, LinearForm& out) {
    ExactScalar c = sign < 0 ? -ExactScalar::one() : ExactScalar::one();
    if (pos < src.size() && src[pos] == 'j') {
        c = c * ExactScalar::imag_unit();
        ++pos;
    }
    if (pos >= src.size() || src[pos] != 'x')
        throw std::invalid_argument("expected symbol in code entry: " + src);
    ++pos;
    std::size_t idx = 0, digits = 0;
    while (pos < src.size() && src[pos] >= '0' && src[pos] <= '9') {
        idx = idx * 10 + std::size_t(src[pos] - '0');
        ++pos;
        ++digits;
    }
    if (digits == 0 || idx == 0)
        throw std::invalid_argument("bad symbol index in code entry: " + src);
    char part = 0;
    if (pos < src.size() && (src[pos] == 'R' || src[pos] == 'I')) part = src[pos], ++pos;
    bool star = false;
    if (pos < src.size() && src[pos] == '*') {
        if (part) throw std::invalid_argument("conjugated part in code entry: " + src);
        star = true;
        ++pos;
    }
    c = c * parse_cell_div(src, pos);
    const std::size_t i = idx - 1;
    if (part == 'R') {
        out.add(i, Part::R, c);
    } else if (part == 'I') {
        out.add(i, Part::I, c);
    } else {
        out.add(i, Part::R, c);
        ExactScalar jc = c * ExactScalar::imag_unit();
        out.add(i, Part::I, star ? -jc : jc);
    }
}

inline LinearForm parse_cell(const std::string& src) {
    LinearForm form;
    if (src == "0") return form;
    if (src.empty()) throw std::invalid_argument("empty code entry");
    std::size_t pos = 0;
    bool grouped = false;
    ExactScalar mult = ExactScalar::one();
    if (src[pos] == '-' && pos + 1 < src.size() && src[pos + 1] == '(') {
        mult = -mult;
        ++pos;
    }
    if (pos < src.size() && src[pos] == '(') {
        grouped = true;
        ++pos;
    }
    LinearForm seq;
    int sign = 1;
    if (pos < src.size() && src[pos] == '-') {
        sign = -1;
        ++pos;
    }
    parse_cell_atom(src, pos, sign, seq);
    while (pos < src.size() && (src[pos] == '+' || src[pos] == '-')) {
        sign = src[pos] == '+' ? 1 : -1;
        ++pos;
        parse_cell_atom(src, pos, sign, seq);
    }
    if (grouped) {
        if (pos >= src.size() || src[pos] != ')')
            throw std::invalid_argument("unterminated group in code entry: " + src);
        ++pos;
        mult = mult * parse_cell_div(src, pos);
    }
    if (pos != src.size())
        throw std::invalid_argument("trailing characters in code entry: " + src);
    for (const Term& t : seq.terms()) form.add(t.symbol, t.part, t.coeff * mult);
    return form;
}

inline SymbolicCode make_code(const std::string& label, std::size_t k,
                              const std::vector<std::string>& rows) {
    SymbolicCode code;
    code.label = label;
    code.k = k;
    code.p = rows.size();
    for (const std::string& row : rows) {
        std::vector<LinearForm> cells;
        std::size_t pos = 0;
        while (pos < row.size()) {
            while (pos < row.size() && row[pos] == ' ') ++pos;
            if (pos >= row.size()) break;
            std::size_t end = row.find(' ', pos);
            if (end == std::string::npos) end = row.size();
            cells.push_back(parse_cell(row.substr(pos, end - pos)));
            pos = end;
        }
        if (code.grid.empty()) code.nt = cells.size();
        if (cells.size() != code.nt)
            throw std::invalid_argument("ragged code grid for " + label);
        code.grid.push_back(std::move(cells));
    }
    for (const auto& row : code.grid)
        for (const LinearForm& f : row)
            for (const Term& t : f.terms())
                if (t.symbol >= k)
                    throw std::invalid_argument("symbol index out of range in " + label);
    return code;
}

} // namespace detail

inline std::vector<std::string> fixture_names() {
    return {"G8", "H8", "G4", "F8", "TH", "TS", "TJC", "GS"};
}

/// The literal published code matrices, transcribed row by row.
inline SymbolicCode fixture(const std::string& name) {
    if (name == "G8")
        return detail::make_code("G8", 4, {
            "x1* x1* x2 -x2 x3 -x3 x4 -x4",
            "x1 -x1 x2* x2* x3* x3* x4* x4*",
            "-x2 x2 x1* x1* x4* -x4* -x3* x3*",
            "-x2* -x2* x1 -x1 x4 x4 -x3 -x3",
            "-x3 x3 -x4* x4* x1* x1* x2* -x2*",
            "-x3* -x3* -x4 -x4 x1 -x1 x2 x2",
            "-x4 x4 x3* -x3* -x2* x2* x1* x1*",
            "-x4* -x4* x3 x3 -x2 -x2 x1 -x1",
        });
    if (name == "H8")
        return detail::make_code("H8", 4, {
            "x1* x1* x2 -x2 x3 -x3 x4 -x4",
            "jx1 -jx1 jx2* jx2* jx3* jx3* jx4* jx4*",
            "-x2 x2 x1* x1* x4* -x4* -x3* x3*",
            "-jx2* -jx2* jx1 -jx1 jx4 jx4 -jx3 -jx3",
            "-x3 x3 -x4* x4* x1* x1* x2* -x2*",
            "-jx3* -jx3* -jx4 -jx4 jx1 -jx1 jx2 jx2",
            "-x4 x4 x3* -x3* -x2* x2* x1* x1*",
            "-jx4* -jx4* jx3 jx3 -jx2 -jx2 jx1 -jx1",
        });
    if (name == "G4")
        return detail::make_code("G4", 3, {
            "x1-x2* x1+x2* x3 -x3",
            "x1*+x2 -x1*+x2 x3 x3",
            "-x3* x3* x1-x2 x1+x2",
            "-x3* -x3* x1*+x2* -x1*+x2*",
        });
    if (name == "F8")
        return detail::make_code("F8", 4, {
            "x1* x1* x2 -x2 x3 -x3 x4 -x4",
            "x1 -x1 x2* x2* x3* x3* x4* x4*",
            "-x2 x2 x1* x1* -x4* x4* x3* -x3*",
            "-x2* -x2* x1 -x1 -x4 -x4 x3 x3",
            "-x3 x3 x4* -x4* x1* x1* -x2* x2*",
            "-x3* -x3* x4 x4 x1 -x1 -x2 -x2",
            "-x4 x4 -x3* x3* x2* -x2* x1* x1*",
            "-x4* -x4* -x3 -x3 x2 x2 x1 -x1",
        });
    if (name == "TH")
        return detail::make_code("TH", 4, {
            "x1 x2 x3 0 x4 0 0 0",
            "-x2* x1* 0 -x3 0 -x4 0 0",
            "-x3* 0 x1* x2 0 0 -x4 0",
            "0 x3* -x2* x1 0 0 0 x4",
            "-x4* 0 0 0 x1* x2 x3 0",
            "0 x4* 0 0 -x2* x1 0 -x3",
            "0 0 x4* 0 -x3* 0 x1 x2",
            "0 0 0 -x4* 0 x3* -x2* x1*",
        });
    if (name == "TS")
        // Printed as two stacked half-width blocks; columns 5-8 come from
        // the continuation block. Validated by verify_ostbc.
        return detail::make_code("TS", 4, {
            "x1 0 x3R+jx2I x2R+jx3I x4/2 x4/2 x4/2 x4/2",
            "0 x1 -x2R+jx3I x3R-jx2I x4/2 -x4/2 x4/2 -x4/2",
            "-x3R+jx2I x2R+jx3I x1* 0 x4/2 x4/2 -x4/2 -x4/2",
            "-x2R+jx3I -x3R-jx2I 0 x1* x4/2 -x4/2 -x4/2 x4/2",
            "-x4*/2 -x4*/2 -x4*/2 -x4*/2 x1R-jx3I x2* x3R-jx1I 0",
            "-x4*/2 x4*/2 -x4*/2 x4*/2 -x2 x1R+jx3I 0 x3R-jx1I",
            "-x4*/2 -x4*/2 x4*/2 x4*/2 -x3R-jx1I 0 x1R+jx3I -x2*",
            "-x4*/2 x4*/2 x4*/2 -x4*/2 0 -x3R-jx1I x2 x1R-jx3I",
        });
    if (name == "TJC")
        return detail::make_code("TJC", 3, {
            "x1 x2 x3/r2 x3/r2",
            "-x2* x1* x3/r2 -x3/r2",
            "x3*/r2 x3*/r2 (-x1-x1*+x2-x2*)/2 (-x2-x2*+x1-x1*)/2",
            "x3*/r2 -x3*/r2 (x2+x2*+x1-x1*)/2 -(x1+x1*+x2-x2*)/2",
        });
    if (name == "GS")
        return detail::make_code("GS", 3, {
            "x1 0 x2 -x3",
            "0 x1 x3* x2*",
            "-x2* -x3 x1* 0",
            "x3* -x2 0 x1*",
        });
    throw UnknownNameError("unknown fixture name: " + name +
                           " (known: G8, H8, G4, F8, TH, TS, TJC, GS)");
}

/**
 * The frozen carrier assignments that lay the constructed families out as
 * the printed codes. Found once by exhaustive search (find_pairing) and
 * pinned: G8, H8 and F8 share symbol->slot map (4,1,2,3) on both sides,
 * G4 uses (3,2,1), all with positive imaginary carriers.
 */
inline SymbolPairing fixture_pairing(const std::string& name) {
    auto make = [](std::vector<std::size_t> slots) {
        SymbolPairing p;
        p.a_slot = slots;
        p.b_slot = std::move(slots);
        p.sign.assign(p.a_slot.size(), 1);
        return p;
    };
    if (name == "G8" || name == "H8" || name == "F8") return make({3, 0, 1, 2});
    if (name == "G4") return make({2, 1, 0});
    throw UnknownNameError("no documented pairing for fixture: " + name);
}

/// Exhaustive search over slot permutations (and imaginary-carrier signs,
/// which are forced per slot once the permutations are fixed) for an
/// assembly of fam matching target entry-for-entry. The candidate space is
/// the k! * k! * 2^k pairings; matching coefficient matrices directly
/// instead of building every grid keeps it instant for catalog sizes.
inline std::optional<SymbolPairing> find_pairing(const DispersionFamily& fam,
                                                 const SymbolicCode& target) {
    if (fam.s() != fam.t() || fam.s() != target.k || fam.order != target.p ||
        target.p != target.nt || fam.s() == 0)
        return std::nullopt;
    const std::size_t k = fam.s();
    auto [a_scaled, b_scaled] = detail::equal_power_scaled(fam);
    const DispersionFamily want = raw_dispersion(target);

    std::vector<std::size_t> aperm(k), bperm(k);
    for (std::size_t i = 0; i < k; ++i) aperm[i] = i;
    do {
        bool a_ok = true;
        for (std::size_t i = 0; i < k && a_ok; ++i)
            a_ok = a_scaled[aperm[i]] == want.a_mats[i];
        if (!a_ok) continue;
        for (std::size_t i = 0; i < k; ++i) bperm[i] = i;
        do {
            std::vector<int> signs(k, 1);
            bool b_ok = true;
            for (std::size_t i = 0; i < k && b_ok; ++i) {
                if (b_scaled[bperm[i]] == want.b_mats[i]) signs[i] = 1;
                else if (-b_scaled[bperm[i]] == want.b_mats[i]) signs[i] = -1;
                else b_ok = false;
            }
            if (b_ok) {
                SymbolPairing found;
                found.a_slot = aperm;
                found.b_slot = bperm;
                found.sign = std::move(signs);
                return found;
            }
        } while (std::next_permutation(bperm.begin(), bperm.end()));
    } while (std::next_permutation(aperm.begin(), aperm.end()));
    return std::nullopt;
}

} // namespace ostbc
