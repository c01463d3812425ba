// Shared plumbing for the checks: test batteries, interior masks, relative
// errors, mollifiers and cutoffs.
#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "frac/analytic_oracle.hpp"
#include "frac/operators.hpp"
#include "frac/report.hpp"
#include "frac/spaces.hpp"

namespace frac {

struct TestBattery {
    std::vector<ClosedFormFunction> members;

    std::size_t size() const { return members.size(); }
    std::vector<std::string> specs() const {
        std::vector<std::string> s;
        for (const auto& f : members) s.push_back(f.spec());
        return s;
    }
};

inline std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

/// Ten bumps with centres spread over (a + 0.2L, a + 0.8L) and radii
/// 0.05L..0.15L, all compactly supported in (a, b).
inline TestBattery pairing_battery(const Interval& dom) {
    TestBattery b;
    const double L = dom.b - dom.a;
    for (int i = 0; i < 10; ++i) {
        const double c = dom.a + L * (0.2 + 0.6 * i / 9.0);
        const double r = L * (0.05 + 0.10 * ((i * 7) % 10) / 9.0);
        b.members.push_back(bump_function(c, r));
    }
    return b;
}

/// Smooth, kernel-type and step members on (a, b).
inline TestBattery default_battery(const Interval& dom, double alpha) {
    const double a = dom.a, L = dom.b - dom.a;
    TestBattery b;
    b.members = {
        constant_function(1.0),
        power_function({{1.0, 1.0}}, a),
        power_function({{1.0, 1.3}}, a),
        power_function({{1.0, 2.0}}, a),
        parse_function("const:1 + pow:a=" + fmt(a) + ";terms=1*1"),
        kappa_function(alpha, Side::left),
        step_function(a + 0.5 * L),
        bump_function(a + 0.5 * L, 0.2 * L),
        bump_function(a + 0.3 * L, 0.15 * L, 2.0),
        bump_function(a + 0.7 * L, 0.25 * L, 0.5),
        gaussian_function(a + 0.5 * L, 0.1 * L),
    };
    return b;
}

/// Decaying members on ℝ.
inline TestBattery line_battery() {
    TestBattery b;
    b.members = {
        gaussian_function(0.0, 1.0), gaussian_function(1.0, 0.5), gaussian_function(-2.0, 2.0),
        bump_function(0.0, 3.0), bump_function(1.0, 1.5, 2.0),
    };
    return b;
}

namespace detail {

/// Node indices with x in [a + f L, b - f L].
inline std::vector<std::size_t> interior_nodes(const Grid& g, double f = 0.1) {
    std::vector<std::size_t> idx;
    const double lo = g.a() + f * g.length(), hi = g.b() - f * g.length();
    for (std::size_t j = 0; j < g.size(); ++j)
        if (g.x(j) >= lo - 1e-12 && g.x(j) <= hi + 1e-12) idx.push_back(j);
    return idx;
}

/// max |x - y| / max |y| over the indices.
inline double rel_linf(const std::vector<double>& x, const std::vector<double>& y, const std::vector<std::size_t>& idx) {
    double num = 0.0, den = 0.0;
    for (auto j : idx) {
        num = std::max(num, std::abs(x[j] - y[j]));
        den = std::max(den, std::abs(y[j]));
    }
    if (den == 0.0) return num;
    return num / den;
}

inline std::vector<double> abs_values(const std::vector<double>& v) {
    std::vector<double> a(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) a[i] = std::abs(v[i]);
    return a;
}

inline double integrate_abs_product(const SampledFunction& u, const SampledFunction& w) {
    return integrate_product(SampledFunction(u.grid, abs_values(u.values)), SampledFunction(w.grid, abs_values(w.values)));
}

/// C^∞ step: 0 for t <= 0, 1 for t >= 1.
inline double smooth_step(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double f0 = std::exp(-1.0 / t), f1 = std::exp(-1.0 / (1.0 - t));
    return f0 / (f0 + f1);
}

/// 1 on [lo, hi], 0 outside (lo - w, hi + w), smooth in between.
inline double plateau(double x, double lo, double hi, double w) {
    if (x >= lo && x <= hi) return 1.0;
    if (x < lo) return smooth_step((x - (lo - w)) / w);
    return smooth_step(((hi + w) - x) / w);
}

/// Unit-mass standard mollifier η_ε(t) = Z/ε·exp(-1/(1-(t/ε)²)).
inline double mollifier(double t, double eps) {
    static const double Z = [] {
        // ∫_{-1}^{1} exp(-1/(1-s²)) ds
        auto f = [](double s) { return std::abs(s) >= 1.0 ? 0.0 : std::exp(-1.0 / (1.0 - s * s)); };
        return 1.0 / boost::math::quadrature::gauss<double, 30>::integrate(f, -1.0, 1.0);
    }();
    const double s = t / eps;
    if (std::abs(s) >= 1.0) return 0.0;
    return Z / eps * std::exp(-1.0 / (1.0 - s * s));
}

inline bool nearly_zero_ends(const SampledFunction& u, std::size_t k = 2) {
    double peak = 0.0;
    for (double v : u.values) peak = std::max(peak, std::abs(v));
    for (std::size_t j = 0; j < k; ++j)
        if (std::abs(u[j]) > 1e-12 * peak || std::abs(u[u.size() - 1 - j]) > 1e-12 * peak) return false;
    return true;
}

inline Side opposite(Side s) { return s == Side::left ? Side::right : Side::left; }

inline ReportInputs inputs_of(const std::vector<std::string>& fns, double alpha, std::optional<double> p, Side side,
                              std::vector<int> ns) {
    ReportInputs in;
    in.functions = fns;
    in.alpha = alpha;
    in.p = p;
    in.side = to_string(side);
    in.grid_sizes = std::move(ns);
    return in;
}

/// Samples u - c κ. Where u and κ share the singular base node, the base
/// value of the difference is extrapolated from its neighbours when u's
/// fitted singularity matches c κ to 1e-3, or when the difference no longer
/// has a power profile there; otherwise the flag stays.
inline SampledFunction subtract_kernel(const SampledFunction& u, double c, double alpha, Side side) {
    const auto k = kappa(alpha, side, u.grid);
    std::vector<double> w(u.size());
    for (std::size_t j = 0; j < w.size(); ++j) {
        if (c == 0.0 || (u.is_flagged(j) && k.is_flagged(j))) w[j] = u[j];
        else w[j] = u[j] - c * k[j];
    }
    const std::size_t base = side == Side::left ? 0 : w.size() - 1;
    if (c != 0.0 && u.is_flagged(base) && w.size() > 3) {
        std::vector<double> oriented = u.values, rest = w;
        if (side == Side::right) {
            std::reverse(oriented.begin(), oriented.end());
            std::reverse(rest.begin(), rest.end());
        }
        const auto fit = fit_singularity(oriented, 0, u.grid.h());
        const bool matched = fit && std::abs(fit->beta - (alpha - 1.0)) < 1e-4 && std::abs(fit->s - c) <= 1e-3 * std::abs(c);
        if (matched || !fit_singularity(rest, 0, u.grid.h())) w[base] = 2.0 * rest[1] - rest[2];
    }
    return SampledFunction(u.grid, std::move(w));
}

}  // namespace detail
}  // namespace frac
