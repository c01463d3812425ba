// Equality checks: weak pairing, the decomposition u = c κ + I^α 𝒟^α u,
// integration by parts, RL/Caputo consistency and the two-order formula.
#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "frac/verifier/common.hpp"

namespace frac {

namespace detail {

inline void require_compact_support(const TestBattery& battery, const Interval& dom) {
    for (const auto& f : battery.members) {
        for (const auto& t : f.terms()) {
            const auto* b = std::get_if<BumpTerm>(&t);
            if (!b || !(b->c - b->r > dom.a) || !(b->c + b->r < dom.b))
                throw DomainError("battery member '" + f.spec() + "' is not compactly supported in the open interval");
        }
    }
}

/// |L - R| relative to max(|L|, |R|). When the pairings cancel to below
/// 5% of the integrand scale, the integrand scale is used instead.
inline double balanced(double lhs, double rhs, double scale) {
    const double d = std::abs(lhs - rhs);
    const double m = std::max(std::abs(lhs), std::abs(rhs));
    const double den = m >= 0.05 * scale ? m : scale;
    if (den == 0.0) return d == 0.0 ? 0.0 : kInf;
    return d / den;
}

}  // namespace detail

/// ∫ v φ = ∫ u D^α_∓ φ̃ for every φ in the battery, where φ̃ is φ sampled on
/// an ambient grid three times as wide and the derivative has the opposite
/// orientation. residual_i = |∫vφ - ∫u Dφ̃| relative to the larger pairing.
inline VerificationReport check_weak_pairing(const SampledFunction& u, const SampledFunction& v, double alpha,
                                             Side side, const TestBattery& battery, double tol = 1e-3,
                                             std::vector<std::string> labels = {}) {
    detail::require_sigma(alpha);
    if (!(u.grid == v.grid)) throw DomainError("u and v must share a grid");
    const Grid& g = u.grid;
    const Interval dom{g.a(), g.b()};
    detail::require_compact_support(battery, dom);
    if (battery.size() == 0) throw DomainError("empty battery");

    const int n = g.cells();
    const Grid amb(g.a() - g.length(), g.b() + g.length(), 3 * n);
    std::vector<std::size_t> inner(static_cast<std::size_t>(n) + 1);
    for (std::size_t j = 0; j < inner.size(); ++j) inner[j] = static_cast<std::size_t>(n) + j;

    VerificationReport r;
    r.theorem_id = "weak_pairing";
    r.tolerance = tol;
    if (labels.empty()) labels = {"u", "v"};
    r.inputs = detail::inputs_of(labels, alpha, std::nullopt, side, {n});
    for (const auto& phi : battery.members) {
        const auto phi_amb = phi.sample(amb);
        const auto dphi = rl_derivative_at(phi_amb, alpha, detail::opposite(side), inner);
        const SampledFunction dphi_o(g, dphi);
        const auto phi_o = phi.sample(g);
        const double lhs = integrate_product(v, phi_o);
        const double rhs = integrate_product(u, dphi_o);
        const double scale = detail::integrate_abs_product(v, phi_o) + detail::integrate_abs_product(u, dphi_o);
        r.residuals.push_back(detail::balanced(lhs, rhs, scale));
    }
    r.metric("max_residual", r.max_residual());
    r.note("battery of " + std::to_string(battery.size()) + " bumps; ambient grid 3x wide");
    r.finalize();
    return r;
}

inline VerificationReport check_weak_pairing(const ClosedFormFunction& u, const ClosedFormFunction& v, double alpha,
                                             Side side, const TestBattery& battery, const Grid& g,
                                             double tol = 1e-3) {
    return check_weak_pairing(u.sample(g), v.sample(g), alpha, side, battery, tol, {u.spec(), v.spec()});
}

/// Reconstructs u from its endpoint constant and derivative. residual is the
/// relative L∞ error over the interior 80% of nodes.
inline VerificationReport check_ftwfc(const SampledFunction& u, double alpha, Side side, double tol = 1e-2,
                                      std::vector<std::string> labels = {}) {
    detail::require_sigma(alpha);
    const auto kc = endpoint_constant(u, alpha, side);
    if (!kc.converged)
        throw DomainError("endpoint extrapolation did not converge (spread " + fmt(kc.residual_estimate) + ")");
    const auto d = rl_derivative(u, alpha, side);
    const auto id = frac_integral(d, alpha, side);
    const auto k = kappa(alpha, side, u.grid);
    std::vector<double> rec(u.size());
    for (std::size_t j = 0; j < rec.size(); ++j) rec[j] = (kc.c_value == 0.0 ? 0.0 : kc.c_value * k[j]) + id[j];

    VerificationReport r;
    r.theorem_id = "ftwfc";
    r.tolerance = tol;
    if (labels.empty()) labels = {"u"};
    r.inputs = detail::inputs_of(labels, alpha, std::nullopt, side, {u.grid.cells()});
    r.residuals.push_back(detail::rel_linf(rec, u.values, detail::interior_nodes(u.grid)));
    r.metric("recovered_c", kc.c_value);
    r.metric("c_residual_estimate", kc.residual_estimate);
    r.finalize();
    return r;
}

inline VerificationReport check_ftwfc(const ClosedFormFunction& u, double alpha, Side side, const Grid& g,
                                      double tol = 1e-2) {
    return check_ftwfc(u.sample(g), alpha, side, tol, {u.spec()});
}

enum class IbpVariant { symmetric, one_sided_zero_trace };

inline const char* to_string(IbpVariant v) {
    return v == IbpVariant::symmetric ? "symmetric" : "one_sided_zero_trace";
}

inline IbpVariant parse_ibp_variant(const std::string& s) {
    if (s == "symmetric") return IbpVariant::symmetric;
    if (s == "one_sided_zero_trace" || s == "zero_trace") return IbpVariant::one_sided_zero_trace;
    throw DomainError("unknown IBP variant '" + s + "'");
}

/// symmetric: ∫ u D_± v = ∫ v D_∓ u for u, v continuous up to the boundary
/// (αp > 1, αq > 1), checked for both orientations.
/// one_sided_zero_trace: ∫ v D_side u = ∫ u D_opp v with v vanishing near
/// both endpoints.
inline VerificationReport check_ibp(const SampledFunction& u, const SampledFunction& v, double alpha, double p,
                                    double q, IbpVariant variant, Side side = Side::left, double tol = 1e-3,
                                    std::vector<std::string> labels = {}) {
    detail::require_sigma(alpha);
    require_p(p);
    require_p(q);
    if (!(u.grid == v.grid)) throw DomainError("u and v must share a grid");
    VerificationReport r;
    r.theorem_id = variant == IbpVariant::symmetric ? "ibp_symmetric" : "ibp_zero_trace";
    r.tolerance = tol;
    if (labels.empty()) labels = {"u", "v"};
    r.inputs = detail::inputs_of(labels, alpha, p, side, {u.grid.cells()});
    r.metric("q", q);

    auto pair = [&](const SampledFunction& f, const SampledFunction& g, Side s) {
        // ∫ f D_s g  vs  ∫ g D_opp f
        const auto dg = rl_derivative(g, alpha, s);
        const auto df = rl_derivative(f, alpha, detail::opposite(s));
        const double lhs = integrate_product(f, dg), rhs = integrate_product(g, df);
        const double scale = detail::integrate_abs_product(f, dg) + detail::integrate_abs_product(g, df);
        r.metric(std::string("lhs_") + to_string(s), lhs);
        r.metric(std::string("rhs_") + to_string(s), rhs);
        return detail::balanced(lhs, rhs, scale);
    };

    if (variant == IbpVariant::symmetric) {
        if (!(alpha * p > 1.0) || !(alpha * q > 1.0))
            throw DomainError("symmetric integration by parts requires alpha*p > 1 and alpha*q > 1");
        if (u.has_flagged() || v.has_flagged())
            throw DomainError("symmetric integration by parts needs functions continuous up to the boundary");
        r.residuals.push_back(pair(u, v, Side::left));
        r.residuals.push_back(pair(u, v, Side::right));
    } else {
        if (v.has_flagged() || !detail::nearly_zero_ends(v))
            throw DomainError("zero-trace integration by parts needs v compactly supported in the open interval");
        r.residuals.push_back(pair(v, u, side));
    }
    r.finalize();
    return r;
}

inline VerificationReport check_ibp(const ClosedFormFunction& u, const ClosedFormFunction& v, double alpha, double p,
                                    double q, IbpVariant variant, const Grid& g, Side side = Side::left,
                                    double tol = 1e-3) {
    return check_ibp(u.sample(g), v.sample(g), alpha, p, q, variant, side, tol, {u.spec(), v.spec()});
}

/// RL derivative against u(base)·dist^{-α}/Γ(1-α) + I^{1-α}[u'] with u' the
/// classical derivative, plus the inclusion probe: the derivative norm is
/// finite iff u(base) = 0 or αp < 1.
inline VerificationReport check_consistency_w1p(const ClosedFormFunction& u, double alpha, double p, const Grid& g,
                                                Side side = Side::left, double tol = 1e-3) {
    detail::require_sigma(alpha);
    require_p(p);
    if (u.contains<StepTerm>()) throw DomainError("consistency check needs a differentiable function (no steps)");
    for (const auto& t : u.terms())
        if (auto* pt = std::get_if<PowerTerm>(&t); pt && pt->beta != 0.0 && pt->beta < 1.0)
            throw DomainError("consistency check needs a W^{1,1} function (power exponents 0 or >= 1)");

    const auto us = u.sample(g);
    const auto lhs = rl_derivative(us, alpha, side);
    auto du = u.sample_derivative(g);
    if (side == Side::right) du = -1.0 * du;  // d/d(b-x)
    const auto idu = frac_integral(du, 1.0 - alpha, side);
    const double base = side == Side::left ? us.values.front() : us.values.back();
    std::vector<double> rhs(us.size());
    for (std::size_t j = 0; j < rhs.size(); ++j) {
        const double d = side == Side::left ? g.x(j) - g.a() : g.b() - g.x(j);
        const double sing = base == 0.0 ? 0.0 : (d == 0.0 ? std::copysign(kInf, base) : base * std::pow(d, -alpha) * rgamma(1.0 - alpha));
        rhs[j] = sing + idu[j];
    }

    VerificationReport r;
    r.theorem_id = "consistency_w1p";
    r.tolerance = tol;
    r.inputs = detail::inputs_of({u.spec()}, alpha, p, side, {g.cells()});
    r.residuals.push_back(detail::rel_linf(lhs.values, rhs, detail::interior_nodes(g)));

    NormSpec ns{side == Side::left ? SpaceFamily::one_sided_left : SpaceFamily::one_sided_right, FracOrder(alpha), p};
    const auto nr = sobolev_norm(u, g, ns);
    const bool expect_finite = base == 0.0 || alpha * p < 1.0;
    r.metric("base_value", base);
    r.metric("norm", nr.value);
    r.metric("norm_finite", nr.finite ? 1.0 : 0.0);
    r.metric("expected_finite", expect_finite ? 1.0 : 0.0);
    r.residuals.push_back(nr.finite == expect_finite ? 0.0 : 1.0);
    if (!nr.diagnostic.empty()) r.note(nr.diagnostic);
    r.finalize();
    return r;
}

/// D^α u = Γ(β)/Γ(β-α)·(u - I^β D^β u)·dist^{-α} + I^{β-α} D^β u for
/// 0 < α < β < 1, both sides computed numerically; relative L∞ over the
/// interior nodes.
inline VerificationReport check_inclusivity(const SampledFunction& u, double alpha, double beta, Side side = Side::left,
                                            double tol = 1e-2, std::vector<std::string> labels = {}) {
    detail::require_sigma(alpha);
    detail::require_sigma(beta);
    if (!(alpha < beta)) throw DomainError("inclusivity requires alpha < beta");
    const Grid& g = u.grid;
    const auto lhs = rl_derivative(u, alpha, side);
    const auto db = rl_derivative(u, beta, side);
    const auto ib = frac_integral(db, beta, side);
    const auto iba = frac_integral(db, beta - alpha, side);
    const double k = gamma_fn(beta) / gamma_fn(beta - alpha);
    std::vector<double> rhs(u.size());
    for (std::size_t j = 0; j < rhs.size(); ++j) {
        const double d = side == Side::left ? g.x(j) - g.a() : g.b() - g.x(j);
        if (d == 0.0) {
            rhs[j] = lhs[j];  // base node is not compared
            continue;
        }
        const double w = u[j] - ib[j];
        rhs[j] = k * w * std::pow(d, -alpha) + iba[j];
    }
    VerificationReport r;
    r.theorem_id = "inclusivity";
    r.tolerance = tol;
    if (labels.empty()) labels = {"u"};
    r.inputs = detail::inputs_of(labels, alpha, std::nullopt, side, {g.cells()});
    r.metric("beta", beta);
    r.residuals.push_back(detail::rel_linf(rhs, lhs.values, detail::interior_nodes(g)));
    r.finalize();
    return r;
}

inline VerificationReport check_inclusivity(const ClosedFormFunction& u, double alpha, double beta, const Grid& g,
                                            Side side = Side::left, double tol = 1e-2) {
    return check_inclusivity(u.sample(g), alpha, beta, side, tol, {u.spec()});
}

}  // namespace frac
