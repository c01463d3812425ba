#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "frac/analytic_oracle.hpp"
#include "frac/operators.hpp"
#include "frac/spaces.hpp"

using namespace frac;

namespace {

const double inv_sqrt_pi = 1.0 / std::sqrt(std::numbers::pi);

/// max |u - f| / max |f| over nodes in the interior 80%.
double interior_rel(const SampledFunction& u, const ClosedFormFunction& f) {
    const Interval d{u.grid.a(), u.grid.b()};
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        const double x = u.grid.x(j);
        if (x < d.a + 0.1 * u.grid.length() || x > d.b - 0.1 * u.grid.length()) continue;
        num = std::max(num, std::abs(u[j] - f(x, d)));
        den = std::max(den, std::abs(f(x, d)));
    }
    return num / den;
}

double trapz(const std::vector<double>& v, double h) {
    double s = 0.5 * (v.front() + v.back());
    for (std::size_t j = 1; j + 1 < v.size(); ++j) s += v[j];
    return s * h;
}

}  // namespace

TEST(FracIntegral, ConstantIsExact) {
    const Grid g(0.0, 1.0, 256);
    const auto I = frac_integral(constant_function(1.0).sample(g), 0.5, Side::left);
    EXPECT_NEAR(I.values.back(), 1.1283791670955126, 1e-12);
}

TEST(FracIntegral, PowerAgainstOracle) {
    const Grid g(0.0, 1.0, 1024);
    const auto f = power_function({{1.0, 1.3}}, 0.0);
    const auto I = frac_integral(f.sample(g), 0.4, Side::left);
    double worst = 0.0;
    for (std::size_t j = 1; j < g.size(); ++j) {
        const double want = std::tgamma(2.3) / std::tgamma(2.7) * std::pow(g.x(j), 1.7);
        worst = std::max(worst, std::abs(I[j] - want) / std::tgamma(2.3) * std::tgamma(2.7));
    }
    EXPECT_LT(worst, 1e-4);
}

TEST(FracIntegral, ReflectionSymmetry) {
    const Grid g(-1.0, 2.0, 300);
    const auto u = parse_function("pow:a=-1;terms=1*1.3 + gauss:mu=0.2;s=0.4").sample(g);
    const auto right = frac_integral(u, 0.35, Side::right);
    const auto left = frac_integral(u.reflected(), 0.35, Side::left).reflected();
    for (std::size_t j = 0; j < g.size(); ++j) EXPECT_NEAR(right[j], left[j], 1e-14);
}

TEST(FracIntegral, Semigroup) {
    const Grid g(0.0, 1.0, 1024);
    const auto u = parse_function("gauss:mu=0.4;s=0.2 + pow:a=0;terms=1*1").sample(g);
    const auto two = frac_integral(frac_integral(u, 0.3, Side::left), 0.4, Side::left);
    const auto one = frac_integral(u, 0.7, Side::left);
    double worst = 0.0, sup = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
        worst = std::max(worst, std::abs(two[j] - one[j]));
        sup = std::max(sup, std::abs(u[j]));
    }
    EXPECT_LE(worst, 1e-3 * sup);
}

TEST(FracIntegral, LeftRightDuality) {
    const Grid g(0.0, 1.0, 2048);
    const auto u = bump_function(0.4, 0.25).sample(g);
    const auto v = bump_function(0.6, 0.3, 2.0).sample(g);
    const auto Iu = frac_integral(u, 0.4, Side::left), Iv = frac_integral(v, 0.4, Side::right);
    std::vector<double> a(g.size()), b(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) {
        a[j] = Iu[j] * v[j];
        b[j] = u[j] * Iv[j];
    }
    EXPECT_NEAR(trapz(a, g.h()), trapz(b, g.h()), 1e-6);
}

TEST(RlDerivative, ConstantSpotValue) {
    const Grid g(0.0, 1.0, 512);
    const auto D = rl_derivative(constant_function(1.0).sample(g), 0.5, Side::left);
    EXPECT_NEAR(D.values.back(), inv_sqrt_pi, 1e-3);
    EXPECT_TRUE(D.is_flagged(0));
}

TEST(RlDerivative, Linear) {
    const Grid g(0.0, 1.0, 1024);
    const auto D = rl_derivative(power_function({{1.0, 1.0}}, 0.0).sample(g), 0.5, Side::left);
    EXPECT_NEAR(D.values.back() / 1.1283791670955126, 1.0, 1e-4);
}

TEST(RlDerivative, KernelAnnihilated) {
    double prev = kInf;
    for (int n : {256, 512, 1024}) {
        const Grid g(0.0, 1.0, n);
        const auto D = rl_derivative(kappa(0.5, Side::left, g), 0.5, Side::left);
        double worst = 0.0;
        for (std::size_t j = 0; j < g.size(); ++j)
            if (g.x(j) >= 0.1) worst = std::max(worst, std::abs(D[j]));
        EXPECT_LE(worst, std::max(prev, 1e-12));
        EXPECT_LT(worst, 1e-6);
        prev = worst;
    }
}

TEST(RlDerivative, InvertsIntegral) {
    // I^α u is not piecewise linear, so the discrete composition carries the
    // O(h^{2-α}) error of the derivative scheme
    for (double a : {0.3, 0.5, 0.8}) {
        std::vector<double> errs;
        for (int n : {1024, 4096}) {
            const Grid g(0.0, 1.0, n);
            std::vector<double> v(g.size());
            for (std::size_t j = 0; j < v.size(); ++j) v[j] = std::min(g.x(j), 0.5) + 0.2;
            const SampledFunction u(g, v);
            const auto back = rl_derivative(frac_integral(u, a, Side::left), a, Side::left);
            double worst = 0.0;
            for (std::size_t j = 0; j < g.size(); ++j)
                if (g.x(j) >= 0.1 && g.x(j) <= 0.9) worst = std::max(worst, std::abs(back[j] / u[j] - 1.0));
            errs.push_back(worst);
        }
        EXPECT_LT(errs[1], 2e-4) << a;
        EXPECT_GT(std::log2(errs[0] / errs[1]) / 2.0, 0.8) << a;
    }
}

TEST(RlDerivative, RightSideByReflection) {
    const Grid g(0.0, 1.0, 512);
    const Interval d{0.0, 1.0};
    const auto f = parse_function("const:1 + pow:a=0;terms=1*1.3").reflected(d);
    const auto D = rl_derivative(f.sample(g), 0.4, Side::right);
    const auto want = oracle_frac_derivative(f, 0.4, Side::right, DerivativeKind::riemann_liouville, d);
    EXPECT_LT(interior_rel(D, want), 1e-3);
}

TEST(RlDerivative, HigherOrderByComposition) {
    const Grid g(0.0, 1.0, 2048);
    const auto u = power_function({{1.0, 2.0}}, 0.0).sample(g);
    const auto D = frac_derivative(u, OperatorSpec{FracOrder(1.5), Side::left, Realization::product_rl});
    // Γ(3)/Γ(1.5) x^{0.5}
    const double want = 2.0 / std::tgamma(1.5) * std::sqrt(0.5);
    EXPECT_NEAR(D[1024] / want, 1.0, 1e-3);
}

TEST(GlDerivative, AgreesWithRlOnBump) {
    std::vector<double> errs;
    for (int n : {1024, 2048}) {
        const Grid g(0.0, 1.0, n);
        const auto u = bump_function(0.5, 0.3).sample(g);
        const auto gl = gl_derivative(u, 0.5, Side::left);
        const auto rl = rl_derivative(u, 0.5, Side::left);
        double num = 0.0, den = 0.0;
        for (std::size_t j = 0; j < g.size(); ++j) {
            num = std::max(num, std::abs(gl[j] - rl[j]));
            den = std::max(den, std::abs(rl[j]));
        }
        errs.push_back(num / den);
    }
    EXPECT_LE(errs[1], 1e-2);
    const double order = std::log2(errs[0] / errs[1]);
    EXPECT_NEAR(order, 1.0, 0.2);
}

TEST(GlDerivative, ZeroAndIntegerLimit) {
    const Grid g(0.0, 1.0, 64);
    const auto z = gl_derivative(SampledFunction(g), 0.5, Side::left);
    for (double v : z.values) EXPECT_EQ(v, 0.0);
    std::vector<double> v(g.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = g.x(j) * g.x(j);
    const auto d1 = gl_derivative(SampledFunction(g, v), 1.0, Side::left);
    for (std::size_t j = 1; j < v.size(); ++j) EXPECT_NEAR(d1[j], (v[j] - v[j - 1]) / g.h(), 1e-12);
}

TEST(Caputo, KillsConstants) {
    const Grid g(0.0, 1.0, 256);
    const auto C = caputo_derivative(constant_function(3.0).sample(g), 0.5, Side::left);
    for (double v : C.values) EXPECT_EQ(v, 0.0);
}

TEST(Caputo, EqualsRlWhenBaseVanishes) {
    const Grid g(0.0, 1.0, 1024);
    const auto u = power_function({{1.0, 1.0}}, 0.0).sample(g);
    const auto C = caputo_derivative(u, 0.5, Side::left);
    const auto R = rl_derivative(u, 0.5, Side::left);
    for (std::size_t j = 16; j < g.size(); ++j) EXPECT_NEAR(C[j], R[j], 1e-3);
}

TEST(Caputo, RelationWithRl) {
    const Grid g(0.0, 1.0, 1024);
    const auto u = parse_function("const:1 + pow:a=0;terms=1*1").sample(g);
    const double c = caputo_derivative(u, 0.5, Side::left).values.back();
    const double r = rl_derivative(u, 0.5, Side::left).values.back();
    EXPECT_NEAR(c, r - inv_sqrt_pi, 1e-3);
}

TEST(Marchaud, GaussianAgainstSpectralReference) {
    const auto lf = gaussian_function(0.0, 1.0).sample_line(16.0, 4096);
    const auto ref = gaussian_spectral_reference(GaussianTerm{0.0, 1.0, 1.0}, 0.5, Side::left);
    const auto M = marchaud_derivative(lf, 0.5, Side::left);
    const std::size_t stride = (ref.size() - 1) / (lf.size() - 1);
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < lf.size(); ++j) {
        num = std::max(num, std::abs(M[j] - ref[stride * j]));
        den = std::max(den, std::abs(ref[stride * j]));
    }
    EXPECT_LT(num / den, 1e-3);
}

TEST(Marchaud, ZeroAndMirror) {
    const LineFunction zero(8.0, 512, std::vector<double>(513, 0.0));
    for (double v : marchaud_derivative(zero, 0.5, Side::left).samples.values) EXPECT_EQ(v, 0.0);
    const auto lf = gaussian_function(0.0, 1.0).sample_line(8.0, 1024);
    const auto L = marchaud_derivative(lf, 0.4, Side::left), R = marchaud_derivative(lf, 0.4, Side::right);
    for (std::size_t j = 0; j < lf.size(); ++j) EXPECT_NEAR(L[j], R[lf.size() - 1 - j], 1e-12);
}

TEST(Spectral, IntegerLimit) {
    const auto lf = gaussian_function(0.0, 1.0).sample_line(16.0, 4096);
    const auto D = spectral_derivative(lf, 1.0, Side::left);
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < lf.size(); ++j) {
        const double x = lf.grid().x(j), want = -x * std::exp(-0.5 * x * x);
        num = std::max(num, std::abs(D[j] - want));
        den = std::max(den, std::abs(want));
    }
    EXPECT_LT(num / den, 1e-6);
}

TEST(Spectral, Plancherel) {
    for (double mu : {0.0, 1.0, -2.0}) {
        const auto lf = gaussian_function(mu, 0.7).sample_line(16.0, 4096);
        const auto full = spectral_derivative_full(lf, 0.5, Side::left);
        const double lhs = lp_norm_samples(full.padded, lf.grid().h(), 2.0);
        const auto sp = discrete_fourier(lf, 16);
        const double rhs = std::sqrt(spectral_moment(sp, 0.5));
        EXPECT_NEAR(lhs / rhs, 1.0, 1e-10);
    }
}

TEST(Spectral, NearMonochromatic) {
    // sin(k x) under a wide envelope picks up |k|^α and a phase shift of απ/2
    const double L = 32.0, k = 4.0, a = 0.5;
    const Grid g(-L, L, 8192);
    std::vector<double> v(g.size());
    const auto env = bump_function(0.0, 28.0);
    const Interval d{-L, L};
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = std::sin(k * g.x(j)) * env(g.x(j), d) * std::exp(1.0);
    const auto D = spectral_derivative(LineFunction(L, SampledFunction(g, v)), a, Side::left);
    double worst = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) {
        const double x = g.x(j);
        if (std::abs(x) > 2.0) continue;
        const double want = std::pow(k, a) * std::sin(k * x + a * std::numbers::pi / 2) * env(x, d) * std::exp(1.0);
        worst = std::max(worst, std::abs(D[j] - want));
    }
    EXPECT_LT(worst / std::pow(k, a), 2e-2);
}

TEST(Spectral, RejectsIntervalInput) {
    const Grid g(0.0, 1.0, 64);
    EXPECT_THROW(frac_derivative(SampledFunction(g), OperatorSpec{FracOrder(0.5), Side::left, Realization::spectral}),
                 DomainError);
}

TEST(Kappa, Values) {
    const Grid g(0.0, 1.0, 4);
    const auto k = kappa(0.5, Side::left, g);
    EXPECT_NEAR(k[1], 2.0, 1e-15);
    EXPECT_TRUE(k.is_flagged(0));
    const auto k1 = kappa(1.0, Side::left, g);
    for (double v : k1.values) EXPECT_EQ(v, 1.0);
    const auto kr = kappa(0.5, Side::right, g);
    EXPECT_EQ(kr[3], k[1]);
}

TEST(EndpointConstant, Cases) {
    const Grid g(0.0, 1.0, 2048);
    const auto ck = endpoint_constant(kappa(0.5, Side::left, g), 0.5, Side::left);
    EXPECT_NEAR(ck.c_value, 1.0, 1e-6);
    EXPECT_TRUE(ck.converged);
    EXPECT_GE(ck.residual_estimate, 0.0);
    const auto cs = endpoint_constant(parse_function("gauss:mu=0.3;s=0.2").sample(g), 0.5, Side::left);
    EXPECT_NEAR(cs.c_value, 0.0, 1e-8);
    const auto c3 = endpoint_constant(parse_function("3*kappa:alpha=0.4;side=left + bump:c=0.5;r=0.2").sample(g), 0.4,
                                      Side::left);
    EXPECT_NEAR(c3.c_value, 3.0, 1e-2);
    const auto cr = endpoint_constant(parse_function("2*kappa:alpha=0.6;side=right").sample(g), 0.6, Side::right);
    EXPECT_NEAR(cr.c_value, 2.0, 1e-2);
}

TEST(Operators, Linearity) {
    const Grid g(0.0, 1.0, 512);
    const auto u = parse_function("pow:a=0;terms=1*1.3 + gauss:mu=0.5;s=0.2").sample(g);
    const auto v = parse_function("const:1 + bump:c=0.3;r=0.2").sample(g);
    const double a = 1.7, b = -0.6;
    const auto w = a * u + b * v;
    for (auto r : {Realization::product_rl, Realization::grunwald, Realization::caputo}) {
        const OperatorSpec s{FracOrder(0.45), Side::left, r};
        const auto lhs = frac_derivative(w, s), ru = frac_derivative(u, s), rv = frac_derivative(v, s);
        for (std::size_t j = 1; j < g.size(); ++j) {
            const double want = a * ru[j] + b * rv[j];
            EXPECT_NEAR(lhs[j], want, 1e-12 * std::max(1.0, std::abs(want))) << to_string(r);
        }
    }
    const auto Iw = frac_integral(w, 0.45, Side::right), Iu = frac_integral(u, 0.45, Side::right),
               Iv = frac_integral(v, 0.45, Side::right);
    for (std::size_t j = 0; j < g.size(); ++j) EXPECT_NEAR(Iw[j], a * Iu[j] + b * Iv[j], 1e-12);
}

TEST(Operators, OracleAgreementOrder) {
    const Interval d{0.0, 1.0};
    const auto f = parse_function("const:1 + pow:a=0;terms=1*1.3");
    const auto want = oracle_frac_derivative(f, 0.5, Side::left, DerivativeKind::riemann_liouville, d);
    const double e1 = interior_rel(rl_derivative(f.sample(Grid(0, 1, 512)), 0.5, Side::left), want);
    const double e2 = interior_rel(rl_derivative(f.sample(Grid(0, 1, 1024)), 0.5, Side::left), want);
    EXPECT_GE(std::log2(e1 / e2), 0.8);
}
