#pragma once
// Monte Carlo bit-error-rate harness over iid Rayleigh block fading.
//
// The decoder exploits orthogonality: stacking the received slots (and
// receive antennas) as a real vector makes the map from the 2k real symbol
// coordinates a matrix with orthogonal columns of squared norm |h|_F^2, so
// maximum-likelihood detection decouples into independent nearest-point
// decisions per complex symbol. Templates are normalized so the average
// transmit power per slot and antenna is one, and the per-receive-antenna
// noise variance is N0 = n_t * 10^(-snr_db/10).
//
// Every trial derives its own generator from (seed, snr index, trial index),
// so results are bit-identical across reruns and independent of batching.

#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ostbc/code.hpp"
#include "ostbc/power.hpp"
#include "ostbc/rng.hpp"

namespace ostbc {

struct SimConfig {
    std::vector<Constellation> constellations;  // one per symbol, or one for all
    std::size_t n_rx = 1;
    std::vector<double> snr_db;
    std::uint64_t trials = 10000;
    std::uint64_t seed = 1;
    bool zero_noise = false;  // diagnostic: detector must then be error-free
};

struct BerPoint {
    double snr_db = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t bit_errors = 0;
    double ber = 0.0;
    double std_err = 0.0;  // sqrt(ber * (1 - ber) / total bits)
};

struct BerResult {
    std::string code_label;
    std::uint64_t seed = 0;
    std::uint64_t bits_per_codeword = 0;
    std::vector<BerPoint> points;
};

namespace detail {

// Grid coefficients as floating complex, divided by sqrt(gram scale) so the
// equivalent-channel columns land exactly on squared norm |h|^2. Symbol i's
// real part sits at column 2i, its imaginary part at 2i+1.
struct ScaledCoefficients {
    std::size_t p = 0, nt = 0, k = 0;
    double gram_scale = 1.0;
    std::vector<std::vector<std::complex<double>>> u;  // 2k matrices, row-major p x nt
};

inline ScaledCoefficients scaled_coefficients(const SymbolicCode& code) {
    if (code.k == 0)
        throw std::invalid_argument("equivalent_channel: template carries no symbols");
    VerifyReport rep = verify_ostbc(code);
    if (!rep.passed || !rep.gram_scale)
        throw std::invalid_argument(
            "equivalent_channel: template is not orthogonal, decoupled detection would be wrong");

    ScaledCoefficients sc;
    sc.p = code.p;
    sc.nt = code.nt;
    sc.k = code.k;
    sc.gram_scale = rep.gram_scale->to_double();
    const double root_c = std::sqrt(sc.gram_scale);
    sc.u.assign(2 * sc.k, std::vector<std::complex<double>>(sc.p * sc.nt));
    for (std::size_t i = 0; i < sc.k; ++i)
        for (std::size_t t = 0; t < sc.p; ++t)
            for (std::size_t m = 0; m < sc.nt; ++m) {
                const LinearForm& f = code.grid[t][m];
                sc.u[2 * i][t * sc.nt + m] = f.coeff(i, Part::R).to_complex() / root_c;
                sc.u[2 * i + 1][t * sc.nt + m] = f.coeff(i, Part::I).to_complex() / root_c;
            }
    return sc;
}

struct SimPrecomp {
    ScaledCoefficients sc;
    double scale = 1.0;  // maps constellation points to matched-filter means
    std::vector<std::vector<std::complex<double>>> eff_points;  // scale * points
    std::vector<unsigned> bits;  // log2(constellation size) per symbol
};

inline SimPrecomp make_precomp(const SymbolicCode& code,
                               const std::vector<Constellation>& constellations) {
    if (constellations.empty() ||
        (constellations.size() != 1 && constellations.size() != code.k))
        throw std::invalid_argument("run_ber: need one constellation, or one per symbol");

    SimPrecomp pre;
    pre.sc = scaled_coefficients(code);

    // Mean symbol energy fixes the power normalization: with column Gram
    // c*I the codeword energy is c * sum_i |x_i|^2, so the average power
    // per slot and antenna is c * E / p and the matched-filter gain works
    // out to sqrt(c / ave).
    double energy = 0.0;
    pre.eff_points.resize(pre.sc.k);
    pre.bits.resize(pre.sc.k);
    for (std::size_t i = 0; i < pre.sc.k; ++i) {
        const Constellation& cs = constellations[constellations.size() == 1 ? 0 : i];
        const std::size_t m = cs.size();
        if (m < 2 || (m & (m - 1)) != 0)
            throw std::invalid_argument("run_ber: constellation sizes must be powers of two");
        double e = 0.0;
        for (const auto& pt : cs.points) e += std::norm(pt);
        energy += e / double(m);
        pre.bits[i] = unsigned(std::countr_zero(m));
        pre.eff_points[i] = cs.points;
    }
    if (energy <= 0.0) throw std::invalid_argument("run_ber: constellations carry no energy");
    const double ave = pre.sc.gram_scale * energy / double(pre.sc.p);
    pre.scale = std::sqrt(pre.sc.gram_scale / ave);
    for (auto& pts : pre.eff_points)
        for (auto& pt : pts) pt *= pre.scale;
    return pre;
}

} // namespace detail

/// Average per-slot-per-antenna transmit power of the raw template under the
/// given constellations; the simulator scales symbols by 1/sqrt of this.
inline double average_cell_power(const SymbolicCode& code,
                                 const std::vector<Constellation>& constellations) {
    const detail::SimPrecomp pre = detail::make_precomp(code, constellations);
    return pre.sc.gram_scale / (pre.scale * pre.scale);
}

/// Stacked linear channel seen by the 2k real symbol coordinates for one
/// channel draw h (row-major n_t x n_r). Column col of the real model is
/// the real/imaginary stack of cols[col]; orthogonality of the template
/// makes those stacks mutually orthogonal with squared norm h_norm2.
struct EquivalentChannel {
    std::vector<std::vector<std::complex<double>>> cols;  // 2k vectors, length p*n_r
    double h_norm2 = 0.0;
};

namespace detail {

inline EquivalentChannel apply_channel(const ScaledCoefficients& sc,
                                       const std::vector<std::complex<double>>& h,
                                       std::size_t n_rx) {
    EquivalentChannel ec;
    ec.cols.assign(sc.u.size(), std::vector<std::complex<double>>(sc.p * n_rx));
    for (std::size_t col = 0; col < sc.u.size(); ++col)
        for (std::size_t t = 0; t < sc.p; ++t)
            for (std::size_t r = 0; r < n_rx; ++r) {
                std::complex<double> acc = 0.0;
                for (std::size_t m = 0; m < sc.nt; ++m)
                    acc += sc.u[col][t * sc.nt + m] * h[m * n_rx + r];
                ec.cols[col][t * n_rx + r] = acc;
            }
    for (const auto& v : h) ec.h_norm2 += std::norm(v);
    return ec;
}

} // namespace detail

inline EquivalentChannel equivalent_channel(const SymbolicCode& code,
                                            const std::vector<std::complex<double>>& h,
                                            std::size_t n_rx = 1) {
    if (n_rx == 0 || h.size() != code.nt * n_rx)
        throw std::invalid_argument("equivalent_channel: channel must be n_t * n_r entries");
    return detail::apply_channel(detail::scaled_coefficients(code), h, n_rx);
}

/// The 2*p*n_r x 2k real matrix whose column pairs (2i, 2i+1) carry symbol
/// i's real and imaginary coordinates.
inline std::vector<std::vector<double>> real_stack(const EquivalentChannel& ec) {
    const std::size_t n = ec.cols.empty() ? 0 : ec.cols.front().size();
    std::vector<std::vector<double>> m(2 * n, std::vector<double>(ec.cols.size()));
    for (std::size_t col = 0; col < ec.cols.size(); ++col)
        for (std::size_t row = 0; row < n; ++row) {
            m[row][col] = ec.cols[col][row].real();
            m[n + row][col] = ec.cols[col][row].imag();
        }
    return m;
}

/// Largest deviation of the real-stack column Gram from h_norm2 * I,
/// relative to h_norm2. Near machine epsilon for an orthogonal template.
inline double column_gram_deviation(const EquivalentChannel& ec) {
    const double ref = ec.h_norm2 > 0.0 ? ec.h_norm2 : 1.0;
    double worst = 0.0;
    for (std::size_t a = 0; a < ec.cols.size(); ++a)
        for (std::size_t b = a; b < ec.cols.size(); ++b) {
            double re = 0.0;
            for (std::size_t n = 0; n < ec.cols[a].size(); ++n)
                re += ec.cols[a][n].real() * ec.cols[b][n].real() +
                      ec.cols[a][n].imag() * ec.cols[b][n].imag();
            const double dev = std::abs(re - (a == b ? ec.h_norm2 : 0.0)) / ref;
            if (dev > worst) worst = dev;
        }
    return worst;
}

inline BerResult run_ber(const SymbolicCode& code, const SimConfig& cfg) {
    if (cfg.trials == 0) throw std::invalid_argument("run_ber: need at least one trial");
    if (cfg.n_rx == 0) throw std::invalid_argument("run_ber: need at least one receive antenna");
    if (cfg.snr_db.empty()) throw std::invalid_argument("run_ber: empty snr grid");
    for (double s : cfg.snr_db)
        if (!std::isfinite(s)) throw std::invalid_argument("run_ber: snr points must be finite");

    const detail::SimPrecomp pre = detail::make_precomp(code, cfg.constellations);
    const std::size_t k = pre.sc.k, nrx = cfg.n_rx, ylen = pre.sc.p * nrx;
    std::uint64_t bits_per_cw = 0;
    for (unsigned b : pre.bits) bits_per_cw += b;

    BerResult out;
    out.code_label = code.label;
    out.seed = cfg.seed;
    out.bits_per_codeword = bits_per_cw;

    const double inv_root2 = 0.70710678118654752440;
    std::vector<std::complex<double>> h(pre.sc.nt * nrx), y(ylen);
    std::vector<std::size_t> sent(k);

    for (std::size_t ptidx = 0; ptidx < cfg.snr_db.size(); ++ptidx) {
        const double snr_db = cfg.snr_db[ptidx];
        const double n0 = double(pre.sc.nt) * std::pow(10.0, -snr_db / 10.0);
        const double noise_dev = std::sqrt(n0 / 2.0);
        const std::uint64_t point_seed =
            mix64(cfg.seed ^ (0x9e3779b97f4a7c15ULL * (std::uint64_t(ptidx) + 1)));

        std::uint64_t bit_errors = 0;
        for (std::uint64_t trial = 0; trial < cfg.trials; ++trial) {
            SplitMix64 g(mix64(point_seed ^ (0xd1b54a32d192ed03ULL * (trial + 1))));

            for (auto& v : h) {
                auto [a, b] = gaussian_pair(g);
                v = {a * inv_root2, b * inv_root2};
            }
            EquivalentChannel ec = detail::apply_channel(pre.sc, h, nrx);
#ifdef NDEBUG
            const bool check = trial % 100 == 0;
#else
            const bool check = true;
#endif
            if (check && column_gram_deviation(ec) > 1e-9)
                throw std::runtime_error("run_ber: equivalent channel lost orthogonality");

            for (std::size_t i = 0; i < k; ++i)
                sent[i] = std::size_t(g.below(std::uint64_t(pre.eff_points[i].size())));

            for (auto& v : y) v = 0.0;
            for (std::size_t i = 0; i < k; ++i) {
                const std::complex<double> x = pre.eff_points[i][sent[i]];
                for (std::size_t n = 0; n < ylen; ++n)
                    y[n] += x.real() * ec.cols[2 * i][n] + x.imag() * ec.cols[2 * i + 1][n];
            }
            if (!cfg.zero_noise)
                for (auto& v : y) {
                    auto [a, b] = gaussian_pair(g);
                    v += std::complex<double>(a * noise_dev, b * noise_dev);
                }

            for (std::size_t i = 0; i < k; ++i) {
                double re = 0.0, im = 0.0;
                for (std::size_t n = 0; n < ylen; ++n) {
                    re += ec.cols[2 * i][n].real() * y[n].real() +
                          ec.cols[2 * i][n].imag() * y[n].imag();
                    im += ec.cols[2 * i + 1][n].real() * y[n].real() +
                          ec.cols[2 * i + 1][n].imag() * y[n].imag();
                }
                const std::complex<double> u =
                    ec.h_norm2 > 0.0 ? std::complex<double>(re / ec.h_norm2, im / ec.h_norm2)
                                     : std::complex<double>(0.0, 0.0);
                std::size_t best = 0;
                double best_d = std::norm(u - pre.eff_points[i][0]);
                for (std::size_t m = 1; m < pre.eff_points[i].size(); ++m) {
                    const double d = std::norm(u - pre.eff_points[i][m]);
                    if (d < best_d) {
                        best_d = d;
                        best = m;
                    }
                }
                bit_errors += std::uint64_t(std::popcount(sent[i] ^ best));
            }
        }

        BerPoint pt;
        pt.snr_db = snr_db;
        pt.trials = cfg.trials;
        pt.bit_errors = bit_errors;
        const double total_bits = double(cfg.trials) * double(bits_per_cw);
        pt.ber = double(bit_errors) / total_bits;
        pt.std_err = std::sqrt(pt.ber * (1.0 - pt.ber) / total_bits);
        out.points.push_back(pt);
    }
    return out;
}

} // namespace ostbc
