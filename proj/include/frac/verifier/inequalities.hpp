// Inequality checks. A constant is "verified" by ratio batteries that stay
// bounded, agree under grid doubling, and dominate a held-out function.
#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "frac/verifier/common.hpp"

namespace frac {

enum class PoincareVariant { kernel_subtracted, mathring, symmetric };

inline const char* to_string(PoincareVariant v) {
    switch (v) {
        case PoincareVariant::kernel_subtracted: return "kernel_subtracted";
        case PoincareVariant::mathring: return "mathring";
        case PoincareVariant::symmetric: return "symmetric";
    }
    return "?";
}

inline PoincareVariant parse_poincare_variant(const std::string& s) {
    for (auto v : {PoincareVariant::kernel_subtracted, PoincareVariant::mathring, PoincareVariant::symmetric})
        if (s == to_string(v)) return v;
    throw DomainError("unknown Poincare variant '" + s + "'");
}

/// Battery members suited to a variant: the default battery, without the
/// kernel for the variants that need a vanishing constant.
inline TestBattery poincare_battery(const Interval& dom, double alpha, PoincareVariant v) {
    auto b = default_battery(dom, alpha);
    if (v != PoincareVariant::kernel_subtracted)
        b.members.erase(std::remove_if(b.members.begin(), b.members.end(),
                                       [](const ClosedFormFunction& f) { return f.spec().rfind("kappa", 0) == 0; }),
                        b.members.end());
    return b;
}

inline ClosedFormFunction poincare_held_out(const Interval& dom, double alpha, PoincareVariant v) {
    const double L = dom.b - dom.a;
    auto f = power_function({{1.0, 1.5}}, dom.a) + bump_function(dom.a + 0.4 * L, 0.1 * L, 0.5);
    if (v == PoincareVariant::kernel_subtracted) f = kappa_function(alpha, Side::left).scaled(0.5) + f;
    f.set_spec("held_out:" + std::string(to_string(v)));
    return f;
}

namespace detail {

inline double safe_ratio(double num, double den) {
    if (num == 0.0 && den == 0.0) return 0.0;
    if (den == 0.0) return kInf;
    if (std::isinf(num) && std::isinf(den)) return kInf;
    return num / den;
}

inline double rel_drift(double a, double b) {
    if (a == b) return 0.0;
    if (!std::isfinite(a) || !std::isfinite(b)) return kInf;
    return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

/// ‖u - cκ‖_r / ‖D^α u‖_p (kernel_subtracted), ‖u‖_r / ‖D^α u‖_p otherwise.
inline double poincare_ratio(const SampledFunction& u, double alpha, double p, double r, PoincareVariant v, Side side) {
    const double scale = lp_norm(u, 1.0);
    double dn = lp_norm(rl_derivative(u, alpha, side), p);
    if (dn <= 1e-10 * scale) dn = 0.0;
    double ln = 0.0;
    switch (v) {
        case PoincareVariant::kernel_subtracted: {
            const auto kc = endpoint_constant(u, alpha, side);
            if (!kc.converged) throw DomainError("endpoint extrapolation did not converge");
            ln = lp_norm(subtract_kernel(u, kc.c_value, alpha, side), r);
            // roundoff of an annihilated kernel
            if (ln <= 1e-10 * scale) ln = 0.0;
            break;
        }
        case PoincareVariant::mathring:
            if (!is_regular(u, alpha, side, 1e-3)) throw DomainError("mathring variant needs a vanishing endpoint constant");
            ln = lp_norm(u, r);
            break;
        case PoincareVariant::symmetric:
            if (u.has_flagged()) throw DomainError("symmetric variant needs functions continuous up to both endpoints");
            ln = lp_norm(u, r);
            break;
    }
    return safe_ratio(ln, dn);
}

/// Ratios of a family at n and 2n plus the held-out ratio. residual is the
/// drift of the largest ratio; the held-out ratio must stay within 1.5x the
/// battery maximum.
template <class RatioFn>
void ratio_battery(VerificationReport& rep, const TestBattery& family, const ClosedFormFunction& held_out,
                   const Grid& g, RatioFn&& ratio) {
    if (family.size() < 10) throw DomainError("ratio battery needs at least 10 members");
    const Grid g2(g.a(), g.b(), 2 * g.cells());
    double m1 = 0.0, m2 = 0.0;
    std::vector<double> fine;
    for (const auto& f : family.members) {
        const double r1 = ratio(f.sample(g)), r2 = ratio(f.sample(g2));
        m1 = std::max(m1, r1);
        m2 = std::max(m2, r2);
        fine.push_back(r2);
    }
    const double h2 = ratio(held_out.sample(g2));
    rep.ratios = fine;
    rep.ratios.push_back(h2);
    rep.ratio_bound = 1.5 * m2;
    rep.residuals.push_back(rel_drift(m1, m2));
    rep.tolerance = 0.1;
    rep.metric("constant_n", m1);
    rep.metric("constant_2n", m2);
    rep.metric("held_out_ratio", h2);
    rep.inputs.grid_sizes = {g.cells(), g2.cells()};
}

}  // namespace detail

inline VerificationReport check_poincare(const TestBattery& family, double alpha, double p, PoincareVariant variant,
                                         const Grid& g, const ClosedFormFunction& held_out, Side side = Side::left) {
    detail::require_sigma(alpha);
    require_p(p);
    if (variant == PoincareVariant::symmetric && !(p > 1.0 && std::isfinite(p)))
        throw DomainError("symmetric variant requires 1 < p < inf");
    VerificationReport r;
    r.theorem_id = std::string("poincare_") + to_string(variant);
    auto specs = family.specs();
    specs.push_back(held_out.spec());
    r.inputs = detail::inputs_of(specs, alpha, p, side, {});
    detail::ratio_battery(r, family, held_out, g, [&](const SampledFunction& u) {
        return detail::poincare_ratio(u, alpha, p, p, variant, side);
    });
    r.finalize();
    return r;
}

inline VerificationReport check_poincare(double alpha, double p, PoincareVariant variant, const Grid& g,
                                         Side side = Side::left) {
    const Interval dom{g.a(), g.b()};
    return check_poincare(poincare_battery(dom, alpha, variant), alpha, p, variant, g,
                          poincare_held_out(dom, alpha, variant), side);
}

/// Sobolev inequality on an interval: ‖u - cκ‖_r / ‖D^α u‖_p as a ratio
/// battery, r <= p*.
inline VerificationReport check_sobolev_interval(const TestBattery& family, double alpha, double p, double r,
                                                 const Grid& g, const ClosedFormFunction& held_out,
                                                 Side side = Side::left) {
    detail::require_sigma(alpha);
    require_p(p);
    if (!(alpha * p < 1.0)) throw DomainError("Sobolev inequality requires alpha*p < 1");
    const double ps = sobolev_conjugate(p, alpha);
    if (!(r >= 1.0 && r <= ps * (1.0 + 1e-12))) throw DomainError("r must satisfy 1 <= r <= p* = " + fmt(ps));
    VerificationReport rep;
    rep.theorem_id = "sobolev_interval";
    auto specs = family.specs();
    specs.push_back(held_out.spec());
    rep.inputs = detail::inputs_of(specs, alpha, p, side, {});
    rep.metric("r", r);
    rep.metric("p_star", ps);
    detail::ratio_battery(rep, family, held_out, g, [&](const SampledFunction& u) {
        return detail::poincare_ratio(u, alpha, p, r, PoincareVariant::kernel_subtracted, side);
    });
    rep.finalize();
    return rep;
}

/// Sobolev inequality on ℝ: ‖u_λ‖_r / ‖D^α u_λ‖_p for u_λ(x) = u(λx),
/// λ ∈ {1, 2, 4, 8}. At r = p* the ratio must be λ-invariant within 5%;
/// at any other r it must drift monotonically by more than 5%, which pins
/// the exponent.
inline VerificationReport check_sobolev_line(const TestBattery& family, double alpha, double p, double r,
                                             double L = 16.0, int n = 8192, Side side = Side::left) {
    detail::require_sigma(alpha);
    require_p(p);
    if (!(alpha * p < 1.0)) throw DomainError("Sobolev inequality requires alpha*p < 1");
    if (!(r >= 1.0)) throw DomainError("r must be >= 1");
    const double ps = sobolev_conjugate(p, alpha);
    const bool critical = std::abs(r - ps) <= 1e-9 * ps;
    VerificationReport rep;
    rep.theorem_id = "sobolev_line";
    rep.inputs = detail::inputs_of(family.specs(), alpha, p, side, {n});
    rep.metric("r", r);
    rep.metric("p_star", ps);
    rep.tolerance = critical ? 0.05 : 0.5;
    const std::array<double, 4> lambdas{1.0, 2.0, 4.0, 8.0};
    int idx = 0;
    for (const auto& f : family.members) {
        std::vector<double> q;
        for (double lam : lambdas) {
            const auto u = f.dilated(lam).sample_line(L, n);
            const auto d = spectral_derivative_full(u, alpha, side);
            const double num = lp_norm(u, r);
            const double den = lp_norm_samples(d.padded, u.grid().h(), p);
            q.push_back(detail::safe_ratio(num, den));
        }
        const auto [lo, hi] = std::minmax_element(q.begin(), q.end());
        const double drift = (*hi - *lo) / *lo;
        bool inc = true, dec = true;
        for (std::size_t i = 1; i < q.size(); ++i) {
            inc = inc && q[i] > q[i - 1];
            dec = dec && q[i] < q[i - 1];
        }
        rep.ratios.push_back(q.front());
        rep.metric("drift_" + std::to_string(idx++), drift);
        if (critical) rep.residuals.push_back(drift);
        else rep.residuals.push_back((inc || dec) && drift > 0.05 ? 0.0 : 1.0);
    }
    rep.note(critical ? "scale invariance at r = p*" : "sharpness probe: r != p* must drift monotonically");
    rep.finalize();
    return rep;
}

inline TestBattery sobolev_line_battery() {
    TestBattery b;
    b.members = {gaussian_function(0.0, 1.0), gaussian_function(0.0, 0.5, 2.0), gaussian_function(0.5, 1.5),
                 bump_function(0.0, 2.0), bump_function(0.5, 1.0, 2.0)};
    return b;
}

/// Hölder quotients at exponent α - 1/p on [c, b] (left; [a, c] for the
/// right space) and trace ratios |Tu| / ‖u‖, each at n and 2n. A sharpness
/// probe checks that the quotient at exponent +0.1 grows under refinement
/// for a function that is exactly Hölder of order α - 1/p.
inline VerificationReport check_embedding_trace(const TestBattery& family, double alpha, double p, double c,
                                                const Grid& g, Side side = Side::left) {
    detail::require_sigma(alpha);
    require_p(p);
    if (!(alpha * p > 1.0)) throw DomainError("embedding and trace require alpha*p > 1");
    if (!(c > g.a() && c < g.b())) throw DomainError("c must lie strictly inside (a,b)");
    const double e = alpha - 1.0 / p;
    const double lo = side == Side::left ? c : g.a(), hi = side == Side::left ? g.b() : c;
    const Grid g2(g.a(), g.b(), 2 * g.cells());
    const NormSpec ns{side == Side::left ? SpaceFamily::one_sided_left : SpaceFamily::one_sided_right,
                      FracOrder(alpha), p};
    VerificationReport rep;
    rep.theorem_id = "embedding_trace";
    rep.inputs = detail::inputs_of(family.specs(), alpha, p, side, {g.cells(), g2.cells()});
    rep.tolerance = 0.1;
    double hmax = 0.0, tmax1 = 0.0, tmax2 = 0.0;
    for (const auto& f : family.members) {
        const auto u1 = f.sample(g), u2 = f.sample(g2);
        const double q1 = holder_quotient(u1, e, lo, hi), q2 = holder_quotient(u2, e, lo, hi);
        if (!std::isfinite(q1) || !std::isfinite(q2)) throw DomainError("member '" + f.spec() + "' is singular on the trace interval");
        hmax = std::max(hmax, q2);
        rep.residuals.push_back(detail::rel_drift(q1, q2));
        const double tv1 = side == Side::left ? u1.values.back() : u1.values.front();
        const double tv2 = side == Side::left ? u2.values.back() : u2.values.front();
        const double t1 = detail::safe_ratio(std::abs(tv1), sobolev_norm(u1, ns).value);
        const double t2 = detail::safe_ratio(std::abs(tv2), sobolev_norm(u2, ns).value);
        tmax1 = std::max(tmax1, t1);
        tmax2 = std::max(tmax2, t2);
        rep.ratios.push_back(t2);
    }
    rep.residuals.push_back(detail::rel_drift(tmax1, tmax2));
    rep.ratio_bound = 1.5 * tmax1;
    rep.metric("exponent", e);
    rep.metric("holder_constant", hmax);
    rep.metric("trace_constant", tmax2);

    // (x - x0)_+^e is exactly e-Hölder; at e + 0.1 its quotient grows like h^{-0.1}
    const double x0 = 0.5 * (lo + hi);
    const auto probe = side == Side::left ? power_function({{1.0, e}}, x0)
                                          : ClosedFormFunction(PowerTerm{1.0, e, x0, Side::right});
    const Grid g4(g.a(), g.b(), 4 * g.cells());
    const double ep = std::min(e + 0.1, 1.0);
    const double growth = holder_quotient(probe.sample(g4), ep, lo, hi) / holder_quotient(probe.sample(g), ep, lo, hi);
    rep.metric("sharpness_growth", growth);
    rep.residuals.push_back(growth > 1.05 ? 0.0 : 1.0);
    rep.finalize();
    return rep;
}

inline TestBattery embedding_battery(const Interval& dom, double alpha) {
    const double L = dom.b - dom.a;
    auto b = pairing_battery(dom);
    b.members.push_back(kappa_function(alpha, Side::left));
    b.members.push_back(constant_function(1.0));
    b.members.push_back(power_function({{1.0, 1.3}}, dom.a));
    b.members.push_back(bump_function(dom.a + 0.75 * L, 0.3 * L));
    return b;
}

/// Three comparisons on ℝ for a decaying family:
///  (1) ‖D^α u‖_{L¹} (Marchaud) against α/Γ(1-α)·[u]_{α,1}, ratio <= 1.05;
///  (2) ‖D^α u‖_{L²} against (1/2π ∫|ξ|^{2α}|û|²)^{1/2}, rel 1e-10;
///  (3) [u]²_{α,2} over the spectral moment, spread <= 2% across the family;
///  plus left and right H^α norms equal to rel 1e-10.
/// Residuals are measured in units of their own tolerance.
inline VerificationReport check_line_equivalences(const TestBattery& family, double alpha, double L = 16.0,
                                                  int n = 4096) {
    detail::require_sigma(alpha);
    VerificationReport rep;
    rep.theorem_id = "line_equivalences";
    rep.inputs = detail::inputs_of(family.specs(), alpha, std::nullopt, Side::left, {n});
    rep.tolerance = 1.0;
    rep.ratio_bound = 1.05;
    const double ca = alpha / gamma_fn(1.0 - alpha);
    const double K = gagliardo_fourier_constant(alpha);
    std::vector<double> band;
    double plancherel = 0.0, sides = 0.0;
    for (const auto& f : family.members) {
        const auto u = f.sample_line(L, n);
        if (!u.decay_checked) throw DomainError("member '" + f.spec() + "' does not decay inside the box");
        const double h = u.grid().h();

        // (1) the left derivative vanishes left of the box; to the right of
        // it, ∫_L^∞ |Du| <= 1/Γ(1-α) ∫ |u(t)| (L-t)^{-α} dt
        const auto md = marchaud_derivative(u, alpha, Side::left);
        double ext = 0.0;
        for (std::size_t j = 0; j + 1 < u.size(); ++j)
            ext += std::abs(u[j]) * std::pow(L - u.grid().x(j), -alpha) * h;
        const double lhs1 = lp_norm(md, 1.0) + ext * rgamma(1.0 - alpha);
        const double g1 = gagliardo_details(u, alpha, 1.0).value;
        rep.ratios.push_back(detail::safe_ratio(lhs1, ca * g1));

        // (2)
        const auto sd = spectral_derivative_full(u, alpha, Side::left);
        const double dn2 = lp_norm_samples(sd.padded, h, 2.0);
        const auto sp = discrete_fourier(u, 16);
        const double mom = spectral_moment(sp, alpha);
        plancherel = std::max(plancherel, detail::rel_drift(dn2, std::sqrt(mom)));

        // (3)
        const auto g2 = gagliardo_details(u, alpha, 2.0);
        band.push_back(detail::safe_ratio(g2.raw, mom) / K);

        const NormSpec nl{SpaceFamily::one_sided_left, FracOrder(alpha), 2.0};
        const NormSpec nr{SpaceFamily::one_sided_right, FracOrder(alpha), 2.0};
        sides = std::max(sides, detail::rel_drift(sobolev_norm(u, nl).value, sobolev_norm(u, nr).value));
    }
    const auto [lo, hi] = std::minmax_element(band.begin(), band.end());
    const double spread = *lo > 0.0 ? (*hi - *lo) / *lo : 0.0;
    rep.residuals = {plancherel / 1e-10, spread / 0.02, sides / 1e-10};
    rep.metric("plancherel_rel", plancherel);
    rep.metric("seminorm_band_min", *lo);
    rep.metric("seminorm_band_max", *hi);
    rep.metric("seminorm_band_spread", spread);
    rep.metric("left_right_rel", sides);
    rep.note("ratios: Marchaud L1 bound; residuals: Plancherel/1e-10, band spread/0.02, left-right/1e-10");
    rep.finalize();
    return rep;
}

}  // namespace frac
