// Approximation by mollified and by piecewise constant functions.
#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "frac/verifier/common.hpp"
#include "frac/verifier/inequalities.hpp"

namespace frac {

enum class DensityMode { smooth, piecewise_constant };

inline const char* to_string(DensityMode m) { return m == DensityMode::smooth ? "smooth" : "piecewise_constant"; }

inline DensityMode parse_density_mode(const std::string& s) {
    if (s == "smooth") return DensityMode::smooth;
    if (s == "piecewise_constant" || s == "piecewise") return DensityMode::piecewise_constant;
    throw DomainError("unknown density mode '" + s + "'");
}

namespace detail {

/// (η_ε * u)(c + (x - c)λ) with λ = (L/2)/(L/2 + ε), so only values of u on
/// [a, b] are needed. Sums of bumps and Gaussians live on the whole line
/// and are mollified without the dilation.
inline SampledFunction mollify(const ClosedFormFunction& f, const Grid& g, double eps) {
    const Interval dom{g.a(), g.b()};
    const double c = 0.5 * (g.a() + g.b()), half = 0.5 * g.length();
    const bool whole_line = !f.contains<PowerTerm>() && !f.contains<StepTerm>();
    const double lam = whole_line ? 1.0 : half / (half + eps);
    constexpr int pieces = 8;
    std::vector<double> v(g.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
        const double x = g.x(j);
        double acc = 0.0;
        for (int k = 0; k < pieces; ++k) {
            const double lo = -eps + 2.0 * eps * k / pieces, hi = lo + 2.0 * eps / pieces;
            acc += boost::math::quadrature::gauss<double, 20>::integrate(
                [&](double t) {
                    const double y = whole_line ? x - t : std::clamp(c + (x - t - c) * lam, dom.a, dom.b);
                    return mollifier(t, eps) * f(y, dom);
                },
                lo, hi);
        }
        v[j] = acc;
    }
    return SampledFunction(g, std::move(v));
}

/// Cell averages on nc equal cells; node x belongs to the cell (lo, hi],
/// node a to the first.
inline SampledFunction cell_average(const ClosedFormFunction& f, const Grid& g, int nc) {
    const Interval dom{g.a(), g.b()};
    const double w = g.length() / nc;
    std::vector<double> avg(static_cast<std::size_t>(nc));
    for (int k = 0; k < nc; ++k) {
        const double lo = g.a() + k * w;
        avg[static_cast<std::size_t>(k)] =
            boost::math::quadrature::gauss<double, 30>::integrate([&](double x) { return f(x, dom); }, lo, lo + w) / w;
    }
    std::vector<double> v(g.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
        const double t = (g.x(j) - g.a()) / w;
        int k = static_cast<int>(std::ceil(t - 1e-9)) - 1;
        v[j] = avg[static_cast<std::size_t>(std::clamp(k, 0, nc - 1))];
    }
    return SampledFunction(g, std::move(v));
}

inline SampledFunction difference(const SampledFunction& u, const SampledFunction& w) {
    std::vector<double> d(u.size());
    for (std::size_t j = 0; j < d.size(); ++j) d[j] = u[j] - w[j];
    return SampledFunction(u.grid, std::move(d));
}

}  // namespace detail

/// Smooth mode: errors ‖u - u_ε‖ for ε = (b-a)/2^k, k = 3..7, must be
/// non-increasing and end at ≤ 1e-2 ‖u‖. Piecewise mode (0 < α < 1, αp < 1):
/// errors ‖u - P u‖ for n_c = 8..128 cells must be non-increasing.
/// Ratios are consecutive error quotients (bound 1); the smooth mode adds
/// the final relative error over 1e-2 as a residual.
inline VerificationReport check_density(const ClosedFormFunction& f, double alpha, double p, DensityMode mode,
                                        const Grid& g, Side side = Side::left) {
    detail::require_sigma(alpha);
    require_p(p);
    if (mode == DensityMode::piecewise_constant && !(alpha * p < 1.0))
        throw DomainError("piecewise constant density requires alpha*p < 1");
    const auto u = f.sample(g);
    if (u.has_flagged()) throw DomainError("density probe needs finite samples");
    const NormSpec ns{side == Side::left ? SpaceFamily::one_sided_left : SpaceFamily::one_sided_right,
                      FracOrder(alpha), p};
    const double un = sobolev_norm(u, ns).value;

    VerificationReport r;
    r.theorem_id = mode == DensityMode::smooth ? "density_smooth" : "density_piecewise";
    r.inputs = detail::inputs_of({f.spec()}, alpha, p, side, {g.cells()});
    r.ratio_bound = 1.0;
    r.tolerance = 1.0;
    r.metric("norm", un);

    std::vector<double> errs;
    if (mode == DensityMode::smooth) {
        for (int k = 3; k <= 7; ++k) {
            const double eps = g.length() / std::ldexp(1.0, k);
            errs.push_back(sobolev_norm(detail::difference(u, detail::mollify(f, g, eps)), ns).value);
            r.metric("error_k" + std::to_string(k), errs.back());
        }
    } else {
        for (int nc = 8; nc <= 128; nc *= 2) {
            if (g.cells() % nc != 0) throw DomainError("grid cells must be a multiple of 128 in piecewise mode");
            errs.push_back(sobolev_norm(detail::difference(u, detail::cell_average(f, g, nc)), ns).value);
            r.metric("error_nc" + std::to_string(nc), errs.back());
        }
    }
    for (std::size_t i = 1; i < errs.size(); ++i) r.ratios.push_back(detail::safe_ratio(errs[i], errs[i - 1]));
    const double final_rel = detail::safe_ratio(errs.back(), un);
    r.metric("final_rel", final_rel);
    if (mode == DensityMode::smooth) {
        r.residuals.push_back(final_rel / 1e-2);
        r.note("residual: final error over 1e-2 |u|; ratios: consecutive errors");
    } else {
        r.note("ratios: consecutive errors");
    }
    r.finalize();
    return r;
}

}  // namespace frac
