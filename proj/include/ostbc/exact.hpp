#pragma once

// Exact scalar and matrix arithmetic over Z[i, sqrt(2), 1/2]: every quantity
// appearing in an orthogonal design with QPSK-style constellations lives in
// this ring, so Gram products, amicability checks and power enumeration can
// be decided with no floating point at all.

#include <array>
#include <cassert>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ostbc {

using Int = std::int64_t;

namespace detail {

// Components of canonical scalars stay tiny for every in-scope computation
// (largest observed: low hundreds, from order-32 Gram sums). The debug assert
// documents that bound; the hard throw guards against genuine 64-bit overflow
// territory long before products could wrap.
constexpr Int component_soft_limit = 1000;
constexpr Int component_hard_limit = Int(1) << 31;

inline Int checked_mul(Int x, Int y) {
    __int128 p = static_cast<__int128>(x) * y;
    if (p > INT64_MAX || p < INT64_MIN)
        throw std::overflow_error("exact arithmetic: 64-bit overflow");
    return static_cast<Int>(p);
}

inline Int pow2(int e) {
    if (e < 0 || e > 62) throw std::overflow_error("exact arithmetic: exponent out of range");
    return Int(1) << e;
}

} // namespace detail

/** Reduced fraction of 64-bit integers, denominator always positive. */
class Rational {
public:
    Rational() = default;
    Rational(Int num, Int den = 1) : num_(num), den_(den) { reduce(); }

    Int num() const { return num_; }
    Int den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_ > 0 ? 1 : num_ < 0 ? -1 : 0; }

    Rational operator-() const { return Rational(-num_, den_); }
    Rational operator+(const Rational& o) const {
        return Rational(detail::checked_mul(num_, o.den_) + detail::checked_mul(o.num_, den_),
                        detail::checked_mul(den_, o.den_));
    }
    Rational operator-(const Rational& o) const { return *this + (-o); }
    Rational operator*(const Rational& o) const {
        return Rational(detail::checked_mul(num_, o.num_), detail::checked_mul(den_, o.den_));
    }
    Rational operator/(const Rational& o) const {
        if (o.num_ == 0) throw std::domain_error("Rational: division by zero");
        return Rational(detail::checked_mul(num_, o.den_), detail::checked_mul(den_, o.num_));
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const {
        return static_cast<__int128>(num_) * o.den_ < static_cast<__int128>(o.num_) * den_;
    }
    bool operator<=(const Rational& o) const { return *this == o || *this < o; }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator>=(const Rational& o) const { return o <= *this; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

private:
    Int num_ = 0;
    Int den_ = 1;

    void reduce() {
        if (den_ == 0) throw std::domain_error("Rational: zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        Int g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
    }
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

/**
 * Element of the real quadratic field Q(sqrt(2)), kept as a + b*sqrt(2) with
 * rational a, b. Closed under the four field operations; ordering is decided
 * exactly (sqrt(2) is irrational, so a + b*sqrt(2) = 0 only when a = b = 0).
 */
class Quad {
public:
    Quad() = default;
    Quad(Rational a, Rational b = Rational(0)) : a_(a), b_(b) {}
    Quad(Int a) : a_(Rational(a)) {}

    const Rational& rat() const { return a_; }
    const Rational& root2() const { return b_; }

    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
    bool is_rational() const { return b_.is_zero(); }

    Quad operator-() const { return Quad(-a_, -b_); }
    Quad operator+(const Quad& o) const { return Quad(a_ + o.a_, b_ + o.b_); }
    Quad operator-(const Quad& o) const { return Quad(a_ - o.a_, b_ - o.b_); }
    Quad operator*(const Quad& o) const {
        return Quad(a_ * o.a_ + Rational(2) * (b_ * o.b_), a_ * o.b_ + b_ * o.a_);
    }
    Quad operator/(const Quad& o) const {
        // 1/(a + b*sqrt2) = (a - b*sqrt2) / (a^2 - 2 b^2)
        Rational n = o.a_ * o.a_ - Rational(2) * (o.b_ * o.b_);
        if (n.is_zero()) throw std::domain_error("Quad: division by zero");
        Quad conj(o.a_, -o.b_);
        Quad p = *this * conj;
        return Quad(p.a_ / n, p.b_ / n);
    }
    Quad& operator+=(const Quad& o) { return *this = *this + o; }

    int sign() const {
        int sa = a_.sign(), sb = b_.sign();
        if (sb == 0) return sa;
        if (sa == 0) return sb;
        if (sa == sb) return sa;
        // signs differ: compare a^2 against 2 b^2
        Rational a2 = a_ * a_, b22 = Rational(2) * (b_ * b_);
        if (a2 == b22) throw std::domain_error("Quad: sqrt(2) cannot be rational");
        return a2 > b22 ? sa : sb;
    }

    bool operator==(const Quad& o) const { return a_ == o.a_ && b_ == o.b_; }
    bool operator!=(const Quad& o) const { return !(*this == o); }
    bool operator<(const Quad& o) const { return (*this - o).sign() < 0; }
    bool operator<=(const Quad& o) const { return (*this - o).sign() <= 0; }
    bool operator>(const Quad& o) const { return o < *this; }
    bool operator>=(const Quad& o) const { return o <= *this; }

    double to_double() const { return a_.to_double() + b_.to_double() * 1.4142135623730950488; }

    std::string str() const {
        if (b_.is_zero()) return a_.str();
        std::string s;
        if (!a_.is_zero()) s = a_.str();
        if (b_.sign() > 0 && !s.empty()) s += "+";
        if (b_ == Rational(-1)) s += "-";
        else if (b_ != Rational(1)) s += b_.str() + "*";
        s += "sqrt2";
        return s;
    }

private:
    Rational a_, b_;
};

inline std::ostream& operator<<(std::ostream& os, const Quad& q) { return os << q.str(); }

/**
 * Scalar of the ring Z[i, sqrt(2), 1/2], stored as
 *
 *     ((a_re + i a_im) + (b_re + i b_im) * sqrt(2)) / 2^e,   e >= 0.
 *
 * Canonical form: e = 0 or at least one component odd; equality of canonical
 * scalars is component-wise. Note 1/sqrt(2) = sqrt(2)/2 is (b_re=1, e=1), so
 * QPSK points (+-1 +- i)/sqrt(2) and 45-degree rotations are exact.
 */
class ExactScalar {
public:
    ExactScalar() = default;
    ExactScalar(Int a_re, Int a_im, Int b_re, Int b_im, int e)
        : a_re_(a_re), a_im_(a_im), b_re_(b_re), b_im_(b_im), e_(e) {
        if (e < 0) throw std::domain_error("ExactScalar: negative denominator exponent");
        canon();
    }
    ExactScalar(Int n) : a_re_(n) {}

    static ExactScalar zero() { return ExactScalar(); }
    static ExactScalar one() { return ExactScalar(1); }
    static ExactScalar imag_unit() { return ExactScalar(0, 1, 0, 0, 0); }
    static ExactScalar sqrt2() { return ExactScalar(0, 0, 1, 0, 0); }
    static ExactScalar half() { return ExactScalar(1, 0, 0, 0, 1); }
    static ExactScalar inv_sqrt2() { return ExactScalar(0, 0, 1, 0, 1); }

    // sqrt(2)^k for any integer k (k = -1 gives 1/sqrt(2)).
    static ExactScalar sqrt2_power(int k) {
        ExactScalar r = one();
        for (; k > 0; --k) r = r * sqrt2();
        for (; k < 0; ++k) r = r * inv_sqrt2();
        return r;
    }

    // e^(j k pi/4): the unit phases on the 45-degree lattice, all of which
    // live in the ring. k = 2 gives j, k = 1 gives (1+j)/sqrt(2).
    static ExactScalar unit_phase_eighth(int k) {
        k = ((k % 8) + 8) % 8;
        static const Int re[8] = {1, 1, 0, -1, -1, -1, 0, 1};
        static const Int im[8] = {0, 1, 1, 1, 0, -1, -1, -1};
        if (k % 2 == 0) return ExactScalar(re[k], im[k], 0, 0, 0);
        return ExactScalar(0, 0, re[k], im[k], 1);
    }

    Int a_re() const { return a_re_; }
    Int a_im() const { return a_im_; }
    Int b_re() const { return b_re_; }
    Int b_im() const { return b_im_; }
    int denom_exp() const { return e_; }

    bool is_zero() const { return a_re_ == 0 && a_im_ == 0 && b_re_ == 0 && b_im_ == 0; }
    bool is_real() const { return a_im_ == 0 && b_im_ == 0; }
    bool is_rational() const { return is_real() && b_re_ == 0; }

    ExactScalar conj() const { return ExactScalar(a_re_, -a_im_, b_re_, -b_im_, e_); }
    ExactScalar operator-() const { return ExactScalar(-a_re_, -a_im_, -b_re_, -b_im_, e_); }

    ExactScalar operator+(const ExactScalar& o) const {
        // align denominators to max(e, o.e)
        int e = e_ > o.e_ ? e_ : o.e_;
        Int s1 = detail::pow2(e - e_), s2 = detail::pow2(e - o.e_);
        return ExactScalar(a_re_ * s1 + o.a_re_ * s2, a_im_ * s1 + o.a_im_ * s2,
                           b_re_ * s1 + o.b_re_ * s2, b_im_ * s1 + o.b_im_ * s2, e);
    }
    ExactScalar operator-(const ExactScalar& o) const { return *this + (-o); }

    ExactScalar operator*(const ExactScalar& o) const {
        // (a1 + b1 s)(a2 + b2 s) = (a1 a2 + 2 b1 b2) + (a1 b2 + b1 a2) s,  s = sqrt(2)
        Int ar, ai, br, bi, t_re, t_im;
        gauss_mul(a_re_, a_im_, o.a_re_, o.a_im_, ar, ai);
        gauss_mul(b_re_, b_im_, o.b_re_, o.b_im_, t_re, t_im);
        ar += 2 * t_re; ai += 2 * t_im;
        gauss_mul(a_re_, a_im_, o.b_re_, o.b_im_, br, bi);
        gauss_mul(b_re_, b_im_, o.a_re_, o.a_im_, t_re, t_im);
        br += t_re; bi += t_im;
        return ExactScalar(ar, ai, br, bi, e_ + o.e_);
    }

    ExactScalar& operator+=(const ExactScalar& o) { return *this = *this + o; }
    ExactScalar& operator-=(const ExactScalar& o) { return *this = *this - o; }
    ExactScalar& operator*=(const ExactScalar& o) { return *this = *this * o; }

    bool operator==(const ExactScalar& o) const {
        return a_re_ == o.a_re_ && a_im_ == o.a_im_ && b_re_ == o.b_re_ && b_im_ == o.b_im_ && e_ == o.e_;
    }
    bool operator!=(const ExactScalar& o) const { return !(*this == o); }

    // |z|^2 = z * conj(z); real by construction.
    ExactScalar norm2() const { return *this * conj(); }

    Quad real_quad() const {
        Int d = detail::pow2(e_);
        return Quad(Rational(a_re_, d), Rational(b_re_, d));
    }
    Quad imag_quad() const {
        Int d = detail::pow2(e_);
        return Quad(Rational(a_im_, d), Rational(b_im_, d));
    }
    // |z|^2 as an element of Q(sqrt2).
    Quad abs2_quad() const { return norm2().real_quad(); }

    // Real part as a ring element (used when substituting x^R = Re(point)).
    ExactScalar real_part() const { return ExactScalar(a_re_, 0, b_re_, 0, e_); }
    ExactScalar imag_part() const { return ExactScalar(a_im_, 0, b_im_, 0, e_); }

    std::complex<double> to_complex() const {
        double d = static_cast<double>(detail::pow2(e_));
        constexpr double r2 = 1.4142135623730950488;
        return {(a_re_ + b_re_ * r2) / d, (a_im_ + b_im_ * r2) / d};
    }

    // Serialized canonical form: [a_re, a_im, b_re, b_im, e].
    std::array<Int, 5> to_array() const { return {a_re_, a_im_, b_re_, b_im_, Int(e_)}; }
    static ExactScalar from_array(const std::array<Int, 5>& v) {
        if (v[4] < 0) throw std::invalid_argument("ExactScalar: negative exponent in serialized form");
        ExactScalar s(v[0], v[1], v[2], v[3], static_cast<int>(v[4]));
        if (s.to_array() != v)
            throw std::invalid_argument("ExactScalar: serialized form is not canonical");
        return s;
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string num = numerator_str();
        if (e_ == 0) return num;
        bool atom = (a_re_ != 0) + (a_im_ != 0) + (b_re_ != 0) + (b_im_ != 0) == 1;
        if (!atom) num = "(" + num + ")";
        return num + "/" + std::to_string(detail::pow2(e_));
    }

private:
    Int a_re_ = 0, a_im_ = 0, b_re_ = 0, b_im_ = 0;
    int e_ = 0;

    static void gauss_mul(Int xr, Int xi, Int yr, Int yi, Int& zr, Int& zi) {
        zr = detail::checked_mul(xr, yr) - detail::checked_mul(xi, yi);
        zi = detail::checked_mul(xr, yi) + detail::checked_mul(xi, yr);
    }

    void canon() {
        while (e_ > 0 && a_re_ % 2 == 0 && a_im_ % 2 == 0 && b_re_ % 2 == 0 && b_im_ % 2 == 0) {
            a_re_ /= 2; a_im_ /= 2; b_re_ /= 2; b_im_ /= 2; --e_;
        }
        if (is_zero()) e_ = 0;
        auto big = [](Int v) { return v > detail::component_hard_limit || v < -detail::component_hard_limit; };
        if (big(a_re_) || big(a_im_) || big(b_re_) || big(b_im_))
            throw std::overflow_error("ExactScalar: component limit exceeded");
        assert(std::abs(a_re_) < detail::component_soft_limit &&
               std::abs(a_im_) < detail::component_soft_limit &&
               std::abs(b_re_) < detail::component_soft_limit &&
               std::abs(b_im_) < detail::component_soft_limit);
    }

    static std::string gauss_str(Int re, Int im) {
        if (im == 0) return std::to_string(re);
        std::string s;
        if (re != 0) { s += std::to_string(re); if (im > 0) s += "+"; }
        if (im == -1) s += "-";
        else if (im != 1) s += std::to_string(im);
        s += "j";
        return s;
    }

    std::string numerator_str() const {
        bool has_a = a_re_ != 0 || a_im_ != 0;
        bool has_b = b_re_ != 0 || b_im_ != 0;
        std::string s;
        if (has_a) s += gauss_str(a_re_, a_im_);
        if (has_b) {
            std::string b = gauss_str(b_re_, b_im_);
            bool simple = (b_re_ == 0) != (b_im_ == 0);  // single signed term
            if (has_a && !(simple && b[0] == '-')) s += "+";
            if (b == "1") s += "sqrt2";
            else if (b == "-1") s += "-sqrt2";
            else s += (simple ? b : "(" + b + ")") + "*sqrt2";
        }
        return s;
    }
};

inline std::ostream& operator<<(std::ostream& os, const ExactScalar& s) { return os << s.str(); }

/** Dense matrix over ExactScalar, row-major, 0-based. */
class ExactMatrix {
public:
    ExactMatrix() = default;
    ExactMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), m_(rows * cols) {}

    static ExactMatrix identity(std::size_t n) {
        ExactMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = ExactScalar::one();
        return m;
    }
    static ExactMatrix zero(std::size_t rows, std::size_t cols) { return ExactMatrix(rows, cols); }

    // Integer entries, e.g. from_ints({{0,1},{-1,0}}).
    static ExactMatrix from_ints(const std::vector<std::vector<Int>>& v) {
        ExactMatrix m(v.size(), v.empty() ? 0 : v[0].size());
        for (std::size_t r = 0; r < m.rows_; ++r) {
            if (v[r].size() != m.cols_) throw std::invalid_argument("ExactMatrix: ragged rows");
            for (std::size_t c = 0; c < m.cols_; ++c) m.at(r, c) = ExactScalar(v[r][c]);
        }
        return m;
    }
    // Gaussian-integer entries given as {re, im} pairs.
    static ExactMatrix from_gauss(const std::vector<std::vector<std::pair<Int, Int>>>& v) {
        ExactMatrix m(v.size(), v.empty() ? 0 : v[0].size());
        for (std::size_t r = 0; r < m.rows_; ++r) {
            if (v[r].size() != m.cols_) throw std::invalid_argument("ExactMatrix: ragged rows");
            for (std::size_t c = 0; c < m.cols_; ++c)
                m.at(r, c) = ExactScalar(v[r][c].first, v[r][c].second, 0, 0, 0);
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    ExactScalar& at(std::size_t r, std::size_t c) { return m_[r * cols_ + c]; }
    const ExactScalar& at(std::size_t r, std::size_t c) const { return m_[r * cols_ + c]; }

    bool is_zero() const {
        for (const auto& s : m_) if (!s.is_zero()) return false;
        return true;
    }

    bool operator==(const ExactMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && m_ == o.m_;
    }
    bool operator!=(const ExactMatrix& o) const { return !(*this == o); }

    ExactMatrix operator-() const {
        ExactMatrix r = *this;
        for (auto& s : r.m_) s = -s;
        return r;
    }
    ExactMatrix operator+(const ExactMatrix& o) const {
        check_same_shape(o);
        ExactMatrix r = *this;
        for (std::size_t i = 0; i < m_.size(); ++i) r.m_[i] += o.m_[i];
        return r;
    }
    ExactMatrix operator-(const ExactMatrix& o) const { return *this + (-o); }

    ExactMatrix scaled(const ExactScalar& s) const {
        ExactMatrix r = *this;
        for (auto& x : r.m_) x *= s;
        return r;
    }

    ExactMatrix conj() const {
        ExactMatrix r = *this;
        for (auto& x : r.m_) x = x.conj();
        return r;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<ExactScalar> m_;

    void check_same_shape(const ExactMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("ExactMatrix: shape mismatch");
    }
};

inline ExactMatrix mat_mul(const ExactMatrix& x, const ExactMatrix& y) {
    if (x.cols() != y.rows()) throw std::invalid_argument("mat_mul: inner dimension mismatch");
    ExactMatrix r(x.rows(), y.cols());
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t k = 0; k < x.cols(); ++k) {
            const ExactScalar& xik = x.at(i, k);
            if (xik.is_zero()) continue;
            for (std::size_t j = 0; j < y.cols(); ++j) {
                const ExactScalar& ykj = y.at(k, j);
                if (!ykj.is_zero()) r.at(i, j) += xik * ykj;
            }
        }
    return r;
}

inline ExactMatrix operator*(const ExactMatrix& x, const ExactMatrix& y) { return mat_mul(x, y); }

/** Conjugate transpose. */
inline ExactMatrix mat_hermitian(const ExactMatrix& x) {
    ExactMatrix r(x.cols(), x.rows());
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) r.at(j, i) = x.at(i, j).conj();
    return r;
}

/** Kronecker product; block (i, l) of the result is x[i,l] * y. */
inline ExactMatrix mat_kron(const ExactMatrix& x, const ExactMatrix& y) {
    ExactMatrix r(x.rows() * y.rows(), x.cols() * y.cols());
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t l = 0; l < x.cols(); ++l) {
            if (x.at(i, l).is_zero()) continue;
            for (std::size_t p = 0; p < y.rows(); ++p)
                for (std::size_t q = 0; q < y.cols(); ++q)
                    r.at(i * y.rows() + p, l * y.cols() + q) = x.at(i, l) * y.at(p, q);
        }
    return r;
}

/** Entry-wise (Hadamard) product; the disjointness test of amicable designs. */
inline ExactMatrix mat_hadamard(const ExactMatrix& x, const ExactMatrix& y) {
    if (x.rows() != y.rows() || x.cols() != y.cols())
        throw std::invalid_argument("mat_hadamard: shape mismatch");
    ExactMatrix r(x.rows(), x.cols());
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) r.at(i, j) = x.at(i, j) * y.at(i, j);
    return r;
}

/** True iff x == s * I. */
inline bool is_scalar_multiple_of_identity(const ExactMatrix& x, const ExactScalar& s) {
    if (x.rows() != x.cols()) return false;
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) {
            if (i == j ? x.at(i, j) != s : !x.at(i, j).is_zero()) return false;
        }
    return true;
}

inline std::ostream& operator<<(std::ostream& os, const ExactMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i == 0 ? "[" : " ") << "[";
        for (std::size_t j = 0; j < m.cols(); ++j)
            os << (j ? ", " : "") << m.at(i, j).str();
        os << "]" << (i + 1 == m.rows() ? "]" : "\n");
    }
    return os;
}

} // namespace ostbc
