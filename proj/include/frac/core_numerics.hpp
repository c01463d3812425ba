// Grids, sampled functions, Gamma, Grünwald weights and product-integration
// weights shared by every other part of the library.
#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace frac {

/// Raised for arguments outside an operation's domain (bad grids, αp guards,
/// unsupported function families, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised when Γ is evaluated at a pole.
class PoleError : public DomainError {
public:
    using DomainError::DomainError;
};

enum class Side { left, right };

inline const char* to_string(Side s) { return s == Side::left ? "left" : "right"; }

inline Side parse_side(const std::string& s) {
    if (s == "left" || s == "-") return Side::left;
    if (s == "right" || s == "+") return Side::right;
    throw DomainError("unknown side '" + s + "' (expected left|right)");
}

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// Grid

/// Uniform partition of [a, b] into n cells; nodes x_j = a + j h, j = 0..n.
class Grid {
public:
    Grid(double a, double b, int n) : a_(a), b_(b), n_(n) {
        if (!(a < b)) throw DomainError("grid requires a < b");
        if (n < 2) throw DomainError("grid requires n >= 2");
        h_ = (b - a) / n;
    }

    double a() const { return a_; }
    double b() const { return b_; }
    int cells() const { return n_; }
    std::size_t size() const { return static_cast<std::size_t>(n_) + 1; }
    double h() const { return h_; }
    double length() const { return b_ - a_; }

    double x(std::size_t j) const {
        // the last node is pinned to b so that x_n == b exactly
        return j == static_cast<std::size_t>(n_) ? b_ : a_ + static_cast<double>(j) * h_;
    }

    std::vector<double> nodes() const {
        std::vector<double> out(size());
        for (std::size_t j = 0; j < out.size(); ++j) out[j] = x(j);
        return out;
    }

    /// Same spacing, mirrored about the midpoint.
    double reflect(double x) const { return a_ + b_ - x; }

    bool operator==(const Grid& o) const { return a_ == o.a_ && b_ == o.b_ && n_ == o.n_; }

private:
    double a_;
    double b_;
    int n_;
    double h_;
};

inline Grid uniform_grid(double a, double b, int n) { return Grid(a, b, n); }

// ---------------------------------------------------------------------------
// Sampled functions

/// Grid plus nodal values, read as the piecewise-linear interpolant.
///
/// Values are finite except for explicit singular markers (±inf) at nodes
/// where the function has an integrable power singularity, e.g. the base
/// node of the kernel (x-a)^{α-1}. NaN is never a valid value.
struct SampledFunction {
    Grid grid;
    std::vector<double> values;

    SampledFunction(Grid g, std::vector<double> v) : grid(g), values(std::move(v)) {
        if (values.size() != grid.size())
            throw DomainError("sample count " + std::to_string(values.size()) +
                              " does not match node count " + std::to_string(grid.size()));
        for (double x : values)
            if (std::isnan(x)) throw DomainError("sampled values must not contain NaN");
    }

    explicit SampledFunction(Grid g) : grid(g), values(g.size(), 0.0) {}

    std::size_t size() const { return values.size(); }
    double operator[](std::size_t j) const { return values[j]; }

    bool is_flagged(std::size_t j) const { return !std::isfinite(values[j]); }

    bool has_flagged() const {
        for (std::size_t j = 0; j < values.size(); ++j)
            if (is_flagged(j)) return true;
        return false;
    }

    /// Values mirrored through x -> a + b - x on the same grid.
    SampledFunction reflected() const {
        return SampledFunction(grid, std::vector<double>(values.rbegin(), values.rend()));
    }

    /// Interpolant value at x; zero outside [a, b].
    double at(double x) const {
        if (x < grid.a() || x > grid.b()) return 0.0;
        double s = (x - grid.a()) / grid.h();
        auto j = static_cast<std::size_t>(s);
        if (j >= static_cast<std::size_t>(grid.cells())) return values.back();
        double t = s - static_cast<double>(j);
        if (t == 0.0) return values[j];
        return (1.0 - t) * values[j] + t * values[j + 1];
    }
};

inline SampledFunction operator+(const SampledFunction& u, const SampledFunction& v) {
    if (!(u.grid == v.grid)) throw DomainError("grid mismatch");
    std::vector<double> out(u.size());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = u[j] + v[j];
    return SampledFunction(u.grid, std::move(out));
}

inline SampledFunction operator-(const SampledFunction& u, const SampledFunction& v) {
    if (!(u.grid == v.grid)) throw DomainError("grid mismatch");
    std::vector<double> out(u.size());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = u[j] - v[j];
    return SampledFunction(u.grid, std::move(out));
}

inline SampledFunction operator*(double c, const SampledFunction& u) {
    std::vector<double> out(u.size());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = (c == 0.0) ? 0.0 : c * u[j];
    return SampledFunction(u.grid, std::move(out));
}

/// A function on the real line, truncated to [-L, L].
struct LineFunction {
    double half_width;
    SampledFunction samples;
    bool decay_checked = false;

    LineFunction(double L, int n, std::vector<double> values)
        : half_width(L), samples(Grid(-L, L, n), std::move(values)) {
        check_decay();
    }

    LineFunction(double L, SampledFunction s) : half_width(L), samples(std::move(s)) {
        if (samples.grid.a() != -L || samples.grid.b() != L)
            throw DomainError("line function grid must span [-L, L]");
        check_decay();
    }

    const Grid& grid() const { return samples.grid; }
    std::size_t size() const { return samples.size(); }
    double operator[](std::size_t j) const { return samples[j]; }

private:
    void check_decay() {
        double peak = 0.0;
        for (double v : samples.values) {
            if (!std::isfinite(v)) throw DomainError("line functions must be finite everywhere");
            peak = std::max(peak, std::abs(v));
        }
        double edge = std::max(std::abs(samples.values.front()), std::abs(samples.values.back()));
        decay_checked = edge <= 1e-8 * peak || peak == 0.0;
    }
};

/// α = m + σ with m = [α] and 0 <= σ < 1.
struct FracOrder {
    double alpha;
    int m;
    double sigma;

    explicit FracOrder(double a) : alpha(a) {
        if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("fractional order must be > 0");
        m = static_cast<int>(std::floor(a));
        sigma = a - m;
    }
};

// ---------------------------------------------------------------------------
// Special functions

/// Γ(x). Poles at the non-positive integers raise PoleError.
inline double gamma_fn(double x) {
    if (x <= 0.0 && x == std::floor(x)) throw PoleError("Gamma pole at x = " + std::to_string(x));
    return std::tgamma(x);
}

/// 1/Γ(x), which is entire: zero at the poles of Γ.
inline double rgamma(double x) {
    if (x <= 0.0 && x == std::floor(x)) return 0.0;
    return 1.0 / std::tgamma(x);
}

/// Signed binomial weights w_k = (-1)^k C(α, k) for the Grünwald–Letnikov sum.
inline std::vector<double> gl_weights(double alpha, int k_max) {
    if (k_max < 0) throw DomainError("k_max must be >= 0");
    std::vector<double> w(static_cast<std::size_t>(k_max) + 1);
    w[0] = 1.0;
    for (int k = 1; k <= k_max; ++k) w[k] = w[k - 1] * (k - 1 - alpha) / k;
    return w;
}

namespace detail {

/// Cell moments of the kernel s^{γ-1} on [q, q+1] (in units of h) against the
/// two hat functions of that cell.  near_{p} multiplies the node closer to the
/// target, far_{p} the node farther away; p = q + 1 is the far offset.
struct KernelMoments {
    std::vector<double> near;  // weight of the node at offset q
    std::vector<double> far;   // weight of the node at offset p = q + 1
};

/// Moments for offsets p = 1..n with order γ > 0, including the 1/Γ(γ) factor
/// but excluding the h^γ scale.
inline KernelMoments kernel_moments(double gamma, std::size_t n) {
    std::vector<double> pw(n + 1), pw1(n + 1);
    for (std::size_t s = 0; s <= n; ++s) {
        double sd = static_cast<double>(s);
        pw[s] = std::pow(sd, gamma);
        pw1[s] = std::pow(sd, gamma + 1.0);
    }
    const double g = gamma_fn(gamma);
    KernelMoments km{std::vector<double>(n + 1, 0.0), std::vector<double>(n + 1, 0.0)};
    for (std::size_t p = 1; p <= n; ++p) {
        const std::size_t q = p - 1;
        const double qd = static_cast<double>(q), pd = static_cast<double>(p);
        const double m1 = (pw1[p] - pw1[q]) / (gamma + 1.0);  // ∫ s^γ
        const double m0 = (pw[p] - pw[q]) / gamma;            // ∫ s^{γ-1}
        // f(y) = f_near (p - s) + f_far (s - q) with s = (x_target - y)/h
        km.far[p] = (m1 - qd * m0) / g;
        km.near[p] = (pd * m0 - m1) / g;
    }
    return km;
}

}  // namespace detail

/// Product-trapezoid weights W_0..W_j with Σ W_i f(x_i) equal to
/// ∫_a^{x_j} (x_j - y)^{α-1} f(y) dy / Γ(α) for every piecewise-linear f.
inline std::vector<double> singular_quadrature_weights(double alpha, const Grid& grid, std::size_t j) {
    if (!(alpha > 0.0)) throw DomainError("order must be positive");
    if (j < 1 || j > static_cast<std::size_t>(grid.cells()))
        throw DomainError("target index must satisfy 1 <= j <= n");
    auto km = detail::kernel_moments(alpha, j);
    const double scale = std::pow(grid.h(), alpha);
    std::vector<double> w(j + 1, 0.0);
    for (std::size_t k = 0; k < j; ++k) {
        const std::size_t p = j - k;  // node k sits at offset p, node k+1 at p-1
        w[k] += scale * km.far[p];
        w[k + 1] += scale * km.near[p];
    }
    return w;
}

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline std::size_t next_power_of_two(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

}  // namespace frac
