// Fractional integrals and derivatives of sampled functions: product
// integration (RL), L1 differentiation, Grünwald–Letnikov, Caputo, Marchaud
// and spectral realizations, plus the kernel κ and its endpoint constant.
#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "frac/core_numerics.hpp"
#include "frac/fourier.hpp"

namespace frac {

enum class Realization { product_rl, grunwald, caputo, marchaud, spectral };

inline const char* to_string(Realization r) {
    switch (r) {
        case Realization::product_rl: return "rl";
        case Realization::grunwald: return "gl";
        case Realization::caputo: return "caputo";
        case Realization::marchaud: return "marchaud";
        case Realization::spectral: return "spectral";
    }
    return "?";
}

inline Realization parse_realization(const std::string& s) {
    if (s == "rl" || s == "product_rl") return Realization::product_rl;
    if (s == "gl" || s == "grunwald") return Realization::grunwald;
    if (s == "caputo") return Realization::caputo;
    if (s == "marchaud") return Realization::marchaud;
    if (s == "spectral") return Realization::spectral;
    throw DomainError("unknown scheme '" + s + "' (expected rl|gl|caputo|marchaud|spectral)");
}

struct OperatorSpec {
    FracOrder alpha;
    Side side = Side::left;
    Realization realization = Realization::product_rl;

    bool line_only() const {
        return realization == Realization::marchaud || realization == Realization::spectral;
    }
};

/// Warnings raised while evaluating an operator (decay, aliasing, fits).
struct OperatorDiagnostics {
    std::vector<std::string> warnings;
    void warn(std::string w) {
        if (std::find(warnings.begin(), warnings.end(), w) == warnings.end()) warnings.push_back(std::move(w));
    }
};

struct KernelConstant {
    double c_value = 0.0;
    Side side = Side::left;
    double alpha = 0.0;
    int extrapolation_order = 0;
    double residual_estimate = 0.0;
    bool converged = true;
};

namespace detail {

inline void require_sigma(double alpha, bool allow_one = false) {
    const bool ok = alpha > 0.0 && (alpha < 1.0 || (allow_one && alpha == 1.0));
    if (!ok) throw DomainError(allow_one ? "order must satisfy 0 < alpha <= 1" : "order must satisfy 0 < alpha < 1");
}

/// u ≈ s (x - x_f)^β + c just right of a flagged node f.
struct SingularFit {
    std::size_t node = 0;
    double s = 0.0;
    double beta = 0.0;
    double c = 0.0;
};

/// Exact fit of s y^β + c through u_{f+1}, u_{f+2}, u_{f+3}.
inline std::optional<SingularFit> fit_singularity3(const std::vector<double>& u, std::size_t f, double h) {
    if (f + 3 >= u.size()) return std::nullopt;
    const double v1 = u[f + 1], v2 = u[f + 2], v3 = u[f + 3];
    if (!std::isfinite(v1) || !std::isfinite(v2) || !std::isfinite(v3)) return std::nullopt;
    const double d1 = v2 - v1, d2 = v3 - v2;
    if (d1 == 0.0) return std::nullopt;
    const double R = d2 / d1;
    auto ratio = [](double b) { return (std::pow(3.0, b) - std::pow(2.0, b)) / (std::pow(2.0, b) - 1.0); };
    // ratio() increases from 1/3 at β = -1 to log(3/2)/log 2 at β = 0
    double lo = -1.0 + 1e-15, hi = -1e-15;
    if (!(R > ratio(lo) && R < ratio(hi))) return std::nullopt;
    for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
        const double mid = 0.5 * (lo + hi);
        (ratio(mid) < R ? lo : hi) = mid;
    }
    SingularFit fit;
    fit.node = f;
    fit.beta = 0.5 * (lo + hi);
    fit.s = d1 / (std::pow(h, fit.beta) * (std::pow(2.0, fit.beta) - 1.0));
    fit.c = v1 - fit.s * std::pow(h, fit.beta);
    if (std::abs(fit.c) < 1e-10 * std::abs(v1)) fit.c = 0.0;
    return fit;
}

/// Exact fit of s y^β + c + d y^{β+1} through u_{f+1..f+4}. The extra term
/// is the next one in the expansion of a fractional derivative of a smooth
/// function, so outputs of the derivative are fitted without bias. Roots in
/// β are bracketed on a grid; ties go to the root nearest `hint`.
inline std::optional<SingularFit> fit_singularity4(const std::vector<double>& u, std::size_t f, double h,
                                                   std::optional<double> hint) {
    if (f + 4 >= u.size()) return std::nullopt;
    for (std::size_t k = 1; k <= 4; ++k)
        if (!std::isfinite(u[f + k])) return std::nullopt;
    // residual at node 4 of the model through nodes 1..3
    auto solve = [&](double b, std::array<double, 3>& x) {
        std::array<std::array<double, 4>, 3> A{};
        for (int r = 0; r < 3; ++r) {
            const double y = (r + 1) * h;
            A[r] = {std::pow(y, b), 1.0, std::pow(y, b + 1.0), u[f + 1 + static_cast<std::size_t>(r)]};
        }
        for (int c = 0; c < 3; ++c) {
            int piv = c;
            for (int r = c + 1; r < 3; ++r)
                if (std::abs(A[r][c]) > std::abs(A[piv][c])) piv = r;
            std::swap(A[c], A[piv]);
            for (int r = c + 1; r < 3; ++r) {
                const double m = A[r][c] / A[c][c];
                for (int k = c; k < 4; ++k) A[r][k] -= m * A[c][k];
            }
        }
        for (int r = 2; r >= 0; --r) {
            double t = A[r][3];
            for (int k = r + 1; k < 3; ++k) t -= A[r][k] * x[k];
            x[r] = t / A[r][r];
        }
        const double y = 4.0 * h;
        return u[f + 4] - (x[0] * std::pow(y, b) + x[1] + x[2] * std::pow(y, b + 1.0));
    };
    constexpr int N = 400;
    std::array<double, 3> x{};
    std::vector<double> roots;
    double pb = -1.0 + 0.5 / N, pr = solve(pb, x);
    for (int i = 1; i < N; ++i) {
        const double b = -1.0 + (i + 0.5) / N;
        const double r = solve(b, x);
        if (r == 0.0 || (r > 0.0) != (pr > 0.0)) {
            double lo = pb, hi = b, rlo = pr;
            for (int it = 0; it < 100 && hi - lo > 1e-15; ++it) {
                const double m = 0.5 * (lo + hi);
                const double rm = solve(m, x);
                if ((rm > 0.0) == (rlo > 0.0)) {
                    lo = m;
                    rlo = rm;
                } else {
                    hi = m;
                }
            }
            roots.push_back(0.5 * (lo + hi));
        }
        pb = b;
        pr = r;
    }
    if (roots.empty()) return std::nullopt;
    double best = roots.front();
    if (hint)
        for (double r : roots)
            if (std::abs(r - *hint) < std::abs(best - *hint)) best = r;
    solve(best, x);
    if (x[0] == 0.0 || !std::isfinite(x[0])) return std::nullopt;
    SingularFit fit;
    fit.node = f;
    fit.beta = best;
    fit.s = x[0];
    fit.c = std::abs(x[1]) < 1e-10 * std::abs(u[f + 1]) ? 0.0 : x[1];
    return fit;
}

/// Singular profile right of a flagged node: the four-point model when it
/// has a root, else the three-point one. An exact pure power (both fits
/// agreeing) keeps the three-point values.
inline std::optional<SingularFit> fit_singularity(const std::vector<double>& u, std::size_t f, double h) {
    const auto f3 = fit_singularity3(u, f, h);
    const auto f4 = fit_singularity4(u, f, h, f3 ? std::optional<double>(f3->beta) : std::nullopt);
    if (f3 && f4 && std::abs(f3->beta - f4->beta) < 1e-9) return f3;
    return f4 ? f4 : f3;
}

/// Finite nodal remainder plus the power singularities removed from it.
struct Decomposition {
    std::vector<double> remainder;
    std::vector<SingularFit> fits;
};

/// Splits flagged nodes off as exact power terms. Flagged nodes without three
/// finite nodes to their right are replaced by linear extrapolation from the
/// left.
inline Decomposition decompose(const std::vector<double>& u, double h, OperatorDiagnostics* diag = nullptr) {
    Decomposition d{u, {}};
    const std::size_t n1 = u.size();
    for (std::size_t f = 0; f < n1; ++f) {
        if (std::isfinite(u[f])) continue;
        if (auto fit = fit_singularity(u, f, h)) {
            d.fits.push_back(*fit);
            continue;
        }
        if (f + 3 < n1 && std::isfinite(u[f + 1])) {
            // not a clean power law: treat as bounded
            d.remainder[f] = u[f + 1];
            if (diag) diag->warn("singular node without power-law profile treated as bounded");
            continue;
        }
        if (f >= 2 && std::isfinite(u[f - 1]) && std::isfinite(u[f - 2])) {
            d.remainder[f] = 2.0 * u[f - 1] - u[f - 2];
        } else if (f + 1 < n1 && std::isfinite(u[f + 1])) {
            d.remainder[f] = u[f + 1];
        } else {
            throw DomainError("cannot resolve isolated singular node");
        }
        if (diag) diag->warn("singular node approached from the left replaced by extrapolation");
    }
    for (const auto& fit : d.fits) {
        d.remainder[fit.node] = fit.c;
        for (std::size_t j = fit.node + 1; j < n1; ++j)
            d.remainder[j] -= fit.s * std::pow(static_cast<double>(j - fit.node) * h, fit.beta);
    }
    for (double v : d.remainder)
        if (!std::isfinite(v)) throw DomainError("overlapping singular nodes cannot be separated");
    return d;
}

inline std::vector<std::size_t> all_indices(std::size_t n1) {
    std::vector<std::size_t> idx(n1);
    for (std::size_t j = 0; j < n1; ++j) idx[j] = j;
    return idx;
}

/// Left product-trapezoid I^γ of a finite piecewise-linear sample vector at
/// the requested node indices (γ > 0).
inline std::vector<double> left_integral_pl(const std::vector<double>& u, double h, double gamma,
                                            const std::vector<std::size_t>& idx) {
    const std::size_t n = u.size() - 1;
    std::size_t jmax = 0;
    for (auto j : idx) jmax = std::max(jmax, j);
    const auto km = kernel_moments(gamma, std::max<std::size_t>(jmax, 1));
    const double scale = std::pow(h, gamma);
    std::vector<double> out(idx.size(), 0.0);
    for (std::size_t i = 0; i < idx.size(); ++i) {
        const std::size_t j = idx[i];
        if (j > n) throw DomainError("node index out of range");
        double acc = 0.0;
        for (std::size_t k = 0; k < j; ++k) {
            const std::size_t p = j - k;
            acc += km.far[p] * u[k] + km.near[p] * u[k + 1];
        }
        out[i] = scale * acc;
    }
    return out;
}

/// Left RL derivative of order α of the piecewise-linear interpolant (L1
/// form). Node 0 is ±inf when u_0 != 0.
inline std::vector<double> left_l1_pl(const std::vector<double>& u, double h, double alpha,
                                      const std::vector<std::size_t>& idx) {
    std::size_t jmax = 0;
    for (auto j : idx) jmax = std::max(jmax, j);
    std::vector<double> phi(jmax + 1);
    for (std::size_t m = 0; m <= jmax; ++m) phi[m] = std::pow(static_cast<double>(m), 1.0 - alpha);
    const double pre = std::pow(h, -alpha) / gamma_fn(1.0 - alpha);
    std::vector<double> out(idx.size(), 0.0);
    for (std::size_t i = 0; i < idx.size(); ++i) {
        const std::size_t j = idx[i];
        if (j == 0) {
            out[i] = u[0] == 0.0 ? 0.0 : std::copysign(kInf, u[0]);
            continue;
        }
        double acc = u[0] * std::pow(static_cast<double>(j), -alpha);
        double sum = 0.0;
        for (std::size_t k = 0; k < j; ++k) sum += (u[k + 1] - u[k]) * (phi[j - k] - phi[j - k - 1]);
        acc += sum / (1.0 - alpha);
        out[i] = pre * acc;
    }
    return out;
}

inline double power_image(const SingularFit& fit, double order, std::size_t j, double h, bool derivative) {
    if (j < fit.node) return 0.0;
    // D^α y^β = Γ(β+1)/Γ(β+1-α) y^{β-α};  I^γ y^β = Γ(β+1)/Γ(β+1+γ) y^{β+γ}
    const double shift = derivative ? -order : order;
    const double e = fit.beta + shift;
    if (derivative && std::abs(fit.beta - (order - 1.0)) < 1e-10) return 0.0;
    const double coef = fit.s * gamma_fn(fit.beta + 1.0) * rgamma(fit.beta + 1.0 + shift);
    if (coef == 0.0) return 0.0;
    if (j == fit.node) {
        if (e > 1e-10) return 0.0;
        if (std::abs(e) <= 1e-10) return coef;
        return std::copysign(kInf, coef);
    }
    return coef * std::pow(static_cast<double>(j - fit.node) * h, e);
}

inline std::vector<double> left_integral_values(const std::vector<double>& u, double h, double gamma,
                                                const std::vector<std::size_t>& idx,
                                                OperatorDiagnostics* diag) {
    const auto d = decompose(u, h, diag);
    auto out = left_integral_pl(d.remainder, h, gamma, idx);
    for (const auto& fit : d.fits)
        for (std::size_t i = 0; i < idx.size(); ++i) out[i] += power_image(fit, gamma, idx[i], h, false);
    return out;
}

inline std::vector<double> left_rl_values(const std::vector<double>& u, double h, double alpha,
                                          const std::vector<std::size_t>& idx, OperatorDiagnostics* diag) {
    const auto d = decompose(u, h, diag);
    auto out = left_l1_pl(d.remainder, h, alpha, idx);
    for (const auto& fit : d.fits) {
        for (std::size_t i = 0; i < idx.size(); ++i) {
            const double v = power_image(fit, alpha, idx[i], h, true);
            if (idx[i] == 0 && std::isinf(out[i]) && v == 0.0) continue;
            out[i] = std::isinf(v) ? v : out[i] + v;
        }
    }
    return out;
}

/// Second-order finite-difference derivative of samples.
inline std::vector<double> fd_derivative(const std::vector<double>& u, double h) {
    const std::size_t n1 = u.size();
    std::vector<double> d(n1);
    if (n1 < 3) throw DomainError("need at least 3 nodes");
    d[0] = (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * h);
    d[n1 - 1] = (3.0 * u[n1 - 1] - 4.0 * u[n1 - 2] + u[n1 - 3]) / (2.0 * h);
    for (std::size_t j = 1; j + 1 < n1; ++j) d[j] = (u[j + 1] - u[j - 1]) / (2.0 * h);
    return d;
}

template <class F>
std::vector<double> sided(const std::vector<double>& u, Side side, F&& left) {
    if (side == Side::left) return left(u);
    std::vector<double> r(u.rbegin(), u.rend());
    auto out = left(r);
    std::reverse(out.begin(), out.end());
    return out;
}

inline std::vector<std::size_t> mirror_indices(const std::vector<std::size_t>& idx, std::size_t n) {
    std::vector<std::size_t> m(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) m[i] = n - idx[i];
    return m;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Finite-interval operators

/// I^α u at every node. Exact for piecewise-linear u; flagged power
/// singularities are integrated exactly.
inline SampledFunction frac_integral(const SampledFunction& u, double alpha, Side side,
                                     OperatorDiagnostics* diag = nullptr) {
    detail::require_sigma(alpha, true);
    const double h = u.grid.h();
    const auto idx = detail::all_indices(u.size());
    auto v = detail::sided(u.values, side, [&](const std::vector<double>& w) {
        return detail::left_integral_values(w, h, alpha, idx, diag);
    });
    return SampledFunction(u.grid, std::move(v));
}

/// RL derivative of the interpolant at the listed nodes (all nodes if empty).
inline std::vector<double> rl_derivative_at(const SampledFunction& u, double alpha, Side side,
                                            const std::vector<std::size_t>& nodes,
                                            OperatorDiagnostics* diag = nullptr) {
    detail::require_sigma(alpha);
    const double h = u.grid.h();
    const std::size_t n = u.size() - 1;
    if (side == Side::left) return detail::left_rl_values(u.values, h, alpha, nodes, diag);
    std::vector<double> r(u.values.rbegin(), u.values.rend());
    return detail::left_rl_values(r, h, alpha, detail::mirror_indices(nodes, n), diag);
}

/// RL derivative at every node; the base node is ±inf when the derivative
/// blows up there.
inline SampledFunction rl_derivative(const SampledFunction& u, double alpha, Side side,
                                     OperatorDiagnostics* diag = nullptr) {
    auto v = rl_derivative_at(u, alpha, side, detail::all_indices(u.size()), diag);
    return SampledFunction(u.grid, std::move(v));
}

/// Grünwald–Letnikov sum h^{-α} Σ w_k u(x - kh), u extended by zero.
inline std::vector<double> gl_values(const std::vector<double>& u, double h, double alpha, Side side) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("order must satisfy 0 < alpha <= 1");
    for (double v : u)
        if (!std::isfinite(v)) throw DomainError("Grunwald-Letnikov scheme needs finite samples");
    const auto w = gl_weights(alpha, static_cast<int>(u.size()) - 1);
    const double s = std::pow(h, -alpha);
    return detail::sided(u, side, [&](const std::vector<double>& x) {
        std::vector<double> out(x.size(), 0.0);
        for (std::size_t j = 0; j < x.size(); ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k <= j; ++k) acc += w[k] * x[j - k];
            out[j] = s * acc;
        }
        return out;
    });
}

inline SampledFunction gl_derivative(const SampledFunction& u, double alpha, Side side) {
    return SampledFunction(u.grid, gl_values(u.values, u.grid.h(), alpha, side));
}

inline LineFunction gl_derivative(const LineFunction& u, double alpha, Side side) {
    return LineFunction(u.half_width, gl_derivative(u.samples, alpha, side));
}

/// Caputo derivative I^{1-α}[u'] with u' from second-order differences.
inline SampledFunction caputo_derivative(const SampledFunction& u, double alpha, Side side) {
    detail::require_sigma(alpha);
    if (u.has_flagged()) throw DomainError("Caputo derivative needs a W^{1,1} function (finite samples)");
    const double h = u.grid.h();
    const auto idx = detail::all_indices(u.size());
    auto v = detail::sided(u.values, side, [&](const std::vector<double>& w) {
        auto d = detail::fd_derivative(w, h);
        return detail::left_integral_pl(d, h, 1.0 - alpha, idx);
    });
    // the right derivative is -d/dx in reflected coordinates; reflection of
    // samples flips the sign of fd_derivative, which is exactly that
    return SampledFunction(u.grid, std::move(v));
}

/// κ^α at the nodes; the singular base node is +inf for α < 1.
inline SampledFunction kappa(double alpha, Side side, const Grid& g) {
    detail::require_sigma(alpha, true);
    std::vector<double> v(g.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
        const double d = side == Side::left ? g.x(j) - g.a() : g.b() - g.x(j);
        if (alpha == 1.0) v[j] = 1.0;
        else v[j] = d == 0.0 ? kInf : std::pow(d, alpha - 1.0);
    }
    if (side == Side::left) v[0] = alpha == 1.0 ? 1.0 : kInf;
    else v.back() = alpha == 1.0 ? 1.0 : kInf;
    return SampledFunction(g, std::move(v));
}

/// c with u = c κ^α + I^α 𝒟^α u: the limit of I^{1-α}u at the base point,
/// divided by Γ(α). The limit comes from a generalized Richardson fit in
/// powers {1, y^{1-α}, y, y^{2-α}} of the distance y to the base point.
inline KernelConstant endpoint_constant(const SampledFunction& u, double alpha, Side side) {
    detail::require_sigma(alpha);
    if (u.grid.cells() < 5) throw DomainError("endpoint extrapolation needs at least 5 cells");
    const double h = u.grid.h();
    const std::vector<std::size_t> idx{1, 2, 3, 4};
    std::vector<double> g;
    if (side == Side::left) {
        g = detail::left_integral_values(u.values, h, 1.0 - alpha, idx, nullptr);
    } else {
        std::vector<double> r(u.values.rbegin(), u.values.rend());
        g = detail::left_integral_values(r, h, 1.0 - alpha, idx, nullptr);
    }
    const std::array<double, 4> ex{0.0, 1.0 - alpha, 1.0, 2.0 - alpha};
    auto solve = [&](int m) {
        // m-term fit through the first m nodes (Gaussian elimination)
        std::vector<std::vector<double>> A(m, std::vector<double>(m + 1));
        for (int r = 0; r < m; ++r) {
            const double y = static_cast<double>(r + 1) * h;
            for (int c = 0; c < m; ++c) A[r][c] = std::pow(y, ex[c]);
            A[r][m] = g[r];
        }
        for (int c = 0; c < m; ++c) {
            int piv = c;
            for (int r = c + 1; r < m; ++r)
                if (std::abs(A[r][c]) > std::abs(A[piv][c])) piv = r;
            std::swap(A[c], A[piv]);
            for (int r = c + 1; r < m; ++r) {
                const double f = A[r][c] / A[c][c];
                for (int k = c; k <= m; ++k) A[r][k] -= f * A[c][k];
            }
        }
        std::vector<double> x(m);
        for (int r = m - 1; r >= 0; --r) {
            double s = A[r][m];
            for (int k = r + 1; k < m; ++k) s -= A[r][k] * x[k];
            x[r] = s / A[r][r];
        }
        return x[0];
    };
    const double g4 = solve(4);
    const double g3 = solve(3);
    KernelConstant kc;
    kc.side = side;
    kc.alpha = alpha;
    kc.extrapolation_order = 4;
    kc.c_value = g4 / gamma_fn(alpha);
    kc.residual_estimate = std::abs(g4 - g3) / gamma_fn(alpha);
    // c is measured against ‖u‖_{L¹} (b-a)^{-α}, its natural size for bounded u
    double l1 = 0.0;
    for (std::size_t j = 0; j + 1 < u.size(); ++j)
        if (!u.is_flagged(j) && !u.is_flagged(j + 1)) l1 += 0.5 * h * (std::abs(u[j]) + std::abs(u[j + 1]));
    const double scale = l1 * std::pow(u.grid.length(), -alpha);
    kc.converged = kc.residual_estimate <= 1e-2 * std::max(std::abs(kc.c_value), scale) || kc.residual_estimate <= 1e-14;
    // a constant below its own error estimate is indistinguishable from zero
    if (std::abs(kc.c_value) <= std::max(kc.residual_estimate, 1e-12 * scale)) kc.c_value = 0.0;
    return kc;
}

// ---------------------------------------------------------------------------
// Operators on the real line

namespace detail {

/// Four-point Lagrange interpolation of samples at fractional index s.
inline double cubic_at(const std::vector<double>& v, double s) {
    const long n = static_cast<long>(v.size()) - 1;
    if (s < 0.0 || s > static_cast<double>(n)) return 0.0;
    long i = static_cast<long>(std::floor(s));
    if (i >= n) return v[n];
    const double t = s - static_cast<double>(i);
    if (t == 0.0) return v[i];
    auto at = [&](long k) { return (k < 0 || k > n) ? 0.0 : v[k]; };
    const double p0 = at(i - 1), p1 = at(i), p2 = at(i + 1), p3 = at(i + 2);
    return p0 * (-t * (t - 1.0) * (t - 2.0) / 6.0) + p1 * ((t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0) +
           p2 * (-(t + 1.0) * t * (t - 2.0) / 2.0) + p3 * ((t + 1.0) * t * (t - 1.0) / 6.0);
}

inline std::vector<double> left_marchaud(const std::vector<double>& u, double h, double alpha) {
    const std::size_t n1 = u.size();
    const double pre = alpha / gamma_fn(1.0 - alpha);
    constexpr std::size_t kNear = 64;   // offsets below kNear·h use log-spaced Simpson
    constexpr int kLogPanels = 256;     // even
    const double t0 = 0.5 * h;
    std::vector<double> out(n1, 0.0);
    for (std::size_t j = 0; j < n1; ++j) {
        const double uj = u[j];
        const double um = j > 0 ? u[j - 1] : 0.0, up = j + 1 < n1 ? u[j + 1] : 0.0;
        const double d1 = (up - um) / (2.0 * h), d2 = (up - 2.0 * uj + um) / (h * h);
        // t < h/2: u(x) - u(x-t) ≈ u' t - u'' t²/2
        double acc = d1 * std::pow(t0, 1.0 - alpha) / (1.0 - alpha) - 0.5 * d2 * std::pow(t0, 2.0 - alpha) / (2.0 - alpha);
        const double reach = static_cast<double>(j) * h;  // distance to -L
        const double t1 = std::min(static_cast<double>(kNear) * h, std::max(reach, t0));
        if (t1 > t0) {
            const double l0 = std::log(t0), l1 = std::log(t1), dl = (l1 - l0) / kLogPanels;
            double s = 0.0;
            for (int k = 0; k <= kLogPanels; ++k) {
                const double t = std::exp(l0 + k * dl);
                const double f = (uj - cubic_at(u, static_cast<double>(j) - t / h)) * std::pow(t, -alpha);
                s += f * ((k == 0 || k == kLogPanels) ? 1.0 : (k % 2 ? 4.0 : 2.0));
            }
            acc += s * dl / 3.0;
        }
        if (j > kNear) {
            // node-aligned trapezoid on t = kh, k = kNear..j
            double s = 0.0;
            for (std::size_t k = kNear; k <= j; ++k) {
                const double t = static_cast<double>(k) * h;
                const double f = (uj - u[j - k]) * std::pow(t, -1.0 - alpha);
                s += f * ((k == kNear || k == j) ? 0.5 : 1.0);
            }
            acc += s * h;
        }
        // beyond -L the function is taken as zero
        const double tend = std::max(reach, t0);
        acc += uj * std::pow(tend, -alpha) / alpha;
        out[j] = pre * acc;
    }
    return out;
}

}  // namespace detail

/// Marchaud form α/Γ(1-α) ∫_0^∞ (u(x) - u(x∓t)) t^{-1-α} dt.
inline LineFunction marchaud_derivative(const LineFunction& u, double alpha, Side side,
                                        OperatorDiagnostics* diag = nullptr) {
    detail::require_sigma(alpha);
    const double h = u.grid().h();
    auto v = detail::sided(u.samples.values, side,
                           [&](const std::vector<double>& w) { return detail::left_marchaud(w, h, alpha); });
    if (diag) {
        double peak = 0.0;
        for (double x : v) peak = std::max(peak, std::abs(x));
        const double edge = std::max(std::abs(u[0]), std::abs(u[u.size() - 1]));
        const double tail = alpha / gamma_fn(1.0 - alpha) * edge * std::pow(u.half_width, -alpha) / alpha;
        if (tail > 1e-6 * peak) diag->warn("decay: truncated tail exceeds 1e-6 of the result");
    }
    return LineFunction(u.half_width, SampledFunction(u.grid(), std::move(v)));
}

/// Full output of the spectral derivative on the zero-padded periodic box.
struct SpectralResult {
    std::vector<double> padded;  // samples at -L + j h on the padded box
    Spectrum spectrum;           // multiplied spectrum
    double imag_fraction = 0.0;
};

inline SpectralResult spectral_derivative_full(const LineFunction& u, double alpha, Side side, int pad = 16,
                                               OperatorDiagnostics* diag = nullptr) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("order must satisfy 0 < alpha <= 1");
    const std::size_t n = static_cast<std::size_t>(u.grid().cells());
    std::vector<double> v(u.samples.values.begin(), u.samples.values.end() - 1);
    v.resize(next_power_of_two(n) * static_cast<std::size_t>(pad), 0.0);
    Spectrum sp = discrete_fourier(std::move(v), -u.half_width, u.grid().h());
    if (!u.decay_checked && diag) diag->warn("decay: samples do not vanish at +-L");
    if (diag && high_frequency_fraction(sp) > 1e-8) diag->warn("aliasing: top-quartile spectral energy above 1e-8");
    const std::size_t N = sp.size();
    for (std::size_t k = 0; k < N; ++k) sp.coeffs[k] *= fractional_multiplier(sp.xi[k], alpha, side, k == N / 2);
    auto z = inverse_fourier_complex(sp);
    SpectralResult res;
    res.padded.resize(N);
    double re = 0.0, im = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
        res.padded[j] = z[j].real();
        re = std::max(re, std::abs(z[j].real()));
        im = std::max(im, std::abs(z[j].imag()));
    }
    res.imag_fraction = re > 0.0 ? im / re : 0.0;
    if (res.imag_fraction > 1e-8) throw DomainError("spectral derivative has a non-negligible imaginary part");
    res.spectrum = std::move(sp);
    return res;
}

/// F^{-1}[(±iξ)^α û] restricted to the original nodes.
inline LineFunction spectral_derivative(const LineFunction& u, double alpha, Side side,
                                        OperatorDiagnostics* diag = nullptr) {
    auto full = spectral_derivative_full(u, alpha, side, 16, diag);
    std::vector<double> v(full.padded.begin(), full.padded.begin() + static_cast<long>(u.size()));
    return LineFunction(u.half_width, SampledFunction(u.grid(), std::move(v)));
}

// ---------------------------------------------------------------------------
// Dispatch, including orders α = m + σ with m >= 1

namespace detail {

inline std::vector<double> apply_sigma(const SampledFunction& u, double sigma, Side side, Realization r) {
    switch (r) {
        case Realization::product_rl: return rl_derivative(u, sigma, side).values;
        case Realization::grunwald: return gl_derivative(u, sigma, side).values;
        case Realization::caputo: return caputo_derivative(u, sigma, side).values;
        default: throw DomainError("scheme needs a function on the real line");
    }
}

}  // namespace detail

/// Derivative of order α = m + σ on a finite interval: the σ-order operator
/// followed by m differences (each exact on the interpolant up to O(h²)).
/// Integer orders reduce to plain differences.
inline SampledFunction frac_derivative(const SampledFunction& u, const OperatorSpec& spec) {
    if (spec.line_only()) throw DomainError("marchaud and spectral schemes act on line functions only");
    const FracOrder& a = spec.alpha;
    std::vector<double> v = a.sigma > 0.0 ? detail::apply_sigma(u, a.sigma, spec.side, spec.realization) : u.values;
    for (int k = 0; k < a.m; ++k) {
        for (double x : v)
            if (!std::isfinite(x)) throw DomainError("integer-order differencing of a singular sample");
        v = detail::fd_derivative(v, u.grid.h());
        if (spec.side == Side::right)
            for (double& x : v) x = -x;
    }
    return SampledFunction(u.grid, std::move(v));
}

inline LineFunction frac_derivative(const LineFunction& u, const OperatorSpec& spec,
                                    OperatorDiagnostics* diag = nullptr) {
    const FracOrder& a = spec.alpha;
    if (a.m > 0) throw DomainError("line operators support 0 < alpha < 1");
    switch (spec.realization) {
        case Realization::marchaud: return marchaud_derivative(u, a.alpha, spec.side, diag);
        case Realization::spectral: return spectral_derivative(u, a.alpha, spec.side, diag);
        case Realization::grunwald: return gl_derivative(u, a.alpha, spec.side);
        default: {
            auto s = frac_derivative(u.samples, spec);
            return LineFunction(u.half_width, std::move(s));
        }
    }
}

}  // namespace frac
