// Discrete approximation of û(ξ) = ∫ u(x) e^{-iξx} dx for functions sampled on
// [-L, L], backed by FFTW.
#pragma once

#include <complex>
#include <cstring>
#include <mutex>
#include <vector>

#include <fftw3.h>

#include "frac/core_numerics.hpp"

namespace frac {

using cplx = std::complex<double>;

/// Spectrum of a function sampled at x_j = x0 + j h, j = 0..N-1 (N a power of
/// two), on angular frequencies ξ_k = 2πk/(N h) with k wrapped to [-N/2, N/2).
struct Spectrum {
    std::vector<cplx> coeffs;  // û(ξ_k) ≈ h Σ u_j e^{-iξ_k x_j}
    std::vector<double> xi;
    double x0 = 0.0;
    double h = 0.0;
    bool decay_warning = false;

    std::size_t size() const { return coeffs.size(); }
    double dxi() const { return 2.0 * std::numbers::pi / (static_cast<double>(coeffs.size()) * h); }
};

namespace detail {

inline std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

/// Unnormalized DFT, sign -1 (forward) or +1 (backward). FFTW_ESTIMATE keeps
/// plans, and therefore results, identical from run to run.
inline std::vector<cplx> fft(const std::vector<cplx>& in, int sign) {
    const int n = static_cast<int>(in.size());
    std::vector<cplx> out(in.size());
    auto* buf_in = reinterpret_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * in.size()));
    auto* buf_out = reinterpret_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * in.size()));
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        plan = fftw_plan_dft_1d(n, buf_in, buf_out, sign, FFTW_ESTIMATE);
    }
    std::memcpy(buf_in, in.data(), sizeof(fftw_complex) * in.size());
    fftw_execute(plan);
    std::memcpy(static_cast<void*>(out.data()), buf_out, sizeof(fftw_complex) * in.size());
    {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        fftw_destroy_plan(plan);
    }
    fftw_free(buf_in);
    fftw_free(buf_out);
    return out;
}

}  // namespace detail

/// Forward transform of samples starting at x0 with spacing h. Inputs whose
/// length is not a power of two are zero-padded on the right.
inline Spectrum discrete_fourier(std::vector<double> values, double x0, double h) {
    if (values.empty()) throw DomainError("empty sample vector");
    const std::size_t n = next_power_of_two(values.size());
    values.resize(n, 0.0);

    double peak = 0.0;
    for (double v : values) peak = std::max(peak, std::abs(v));

    std::vector<cplx> in(values.begin(), values.end());
    auto raw = detail::fft(in, FFTW_FORWARD);

    Spectrum s;
    s.x0 = x0;
    s.h = h;
    s.coeffs.resize(n);
    s.xi.resize(n);
    const double dxi = 2.0 * std::numbers::pi / (static_cast<double>(n) * h);
    for (std::size_t k = 0; k < n; ++k) {
        const long kk = k < n / 2 ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(n);
        s.xi[k] = dxi * static_cast<double>(kk);
        s.coeffs[k] = h * std::polar(1.0, -s.xi[k] * x0) * raw[k];
    }
    s.decay_warning = std::max(std::abs(values.front()), std::abs(values.back())) > 1e-8 * peak;
    return s;
}

/// Transform of a function on [-L, L]: the N = n nodes x_0..x_{n-1} are used
/// (x_n = L is identified with -L, where the function has decayed). A pad
/// factor > 1 zero-extends the samples, refining the frequency grid.
inline Spectrum discrete_fourier(const LineFunction& u, int pad = 1) {
    if (pad < 1) throw DomainError("pad factor must be >= 1");
    std::vector<double> v(u.samples.values.begin(), u.samples.values.end() - 1);
    v.resize(next_power_of_two(v.size()) * static_cast<std::size_t>(pad), 0.0);
    Spectrum s = discrete_fourier(std::move(v), -u.half_width, u.grid().h());
    s.decay_warning = !u.decay_checked;
    return s;
}

/// Inverse of discrete_fourier: complex samples at x0 + j h.
inline std::vector<cplx> inverse_fourier_complex(const Spectrum& s) {
    const std::size_t n = s.size();
    std::vector<cplx> in(n);
    for (std::size_t k = 0; k < n; ++k) in[k] = s.coeffs[k] * std::polar(1.0, s.xi[k] * s.x0) / s.h;
    auto out = detail::fft(in, FFTW_BACKWARD);
    for (auto& z : out) z /= static_cast<double>(n);
    return out;
}

inline std::vector<double> inverse_fourier(const Spectrum& s) {
    auto z = inverse_fourier_complex(s);
    std::vector<double> out(z.size());
    for (std::size_t j = 0; j < z.size(); ++j) out[j] = z[j].real();
    return out;
}

/// (1/2π) Σ |ξ_k|^{2s} |û_k|² Δξ, the discrete form of (1/2π)∫|ξ|^{2s}|û|²dξ.
/// With s = 0 this is ‖u‖²_{L²} exactly (discrete Parseval).
inline double spectral_moment(const Spectrum& sp, double s) {
    double acc = 0.0;
    for (std::size_t k = 0; k < sp.size(); ++k) {
        const double w = (s == 0.0) ? 1.0 : std::pow(std::abs(sp.xi[k]), 2.0 * s);
        acc += w * std::norm(sp.coeffs[k]);
    }
    return acc * sp.dxi() / (2.0 * std::numbers::pi);
}

/// Fraction of spectral energy in the top quartile of |ξ|.
inline double high_frequency_fraction(const Spectrum& sp) {
    double total = 0.0, top = 0.0;
    const double cut = 0.75 * std::numbers::pi / sp.h;
    for (std::size_t k = 0; k < sp.size(); ++k) {
        const double e = std::norm(sp.coeffs[k]);
        total += e;
        if (std::abs(sp.xi[k]) >= cut) top += e;
    }
    return total > 0.0 ? top / total : 0.0;
}

}  // namespace frac

namespace frac {

/// Symbol of the left (iξ)^α or right (-iξ)^α derivative on the principal
/// branch: |ξ|^α e^{±iαπ sgn(ξ)/2}. At the Nyquist frequency only the real
/// part is kept so that real inputs map to real outputs.
inline cplx fractional_multiplier(double xi, double alpha, Side side, bool nyquist = false) {
    if (xi == 0.0) return {0.0, 0.0};
    const double mag = std::pow(std::abs(xi), alpha);
    const double sgn = (xi > 0.0 ? 1.0 : -1.0) * (side == Side::left ? 1.0 : -1.0);
    const double phase = sgn * alpha * std::numbers::pi / 2.0;
    if (nyquist) return {mag * std::cos(phase), 0.0};
    return std::polar(mag, phase);
}

}  // namespace frac
