// Half-order derivative and integral of 1 on [0,1], numeric vs closed form.
#include <cmath>
#include <cstdio>
#include <numbers>

#include "frac/frac.hpp"

int main() {
    using namespace frac;
    const double alpha = 0.5;
    const auto one = constant_function(1.0);
    std::printf("%8s %12s %22s %22s\n", "n", "scheme", "D^a 1 (x=1)", "I^a 1 (x=1)");
    for (int n : {64, 256, 1024, 4096}) {
        const Grid g(0.0, 1.0, n);
        const auto u = one.sample(g);
        const double i = frac_integral(u, alpha, Side::left).values.back();
        for (auto r : {Realization::product_rl, Realization::grunwald, Realization::caputo}) {
            const double d = frac_derivative(u, OperatorSpec{FracOrder(alpha), Side::left, r}).values.back();
            std::printf("%8d %12s %22.16f %22.16f\n", n, to_string(r), d, i);
        }
    }
    std::printf("%8s %12s %22.16f %22.16f\n", "exact", "", 1.0 / std::sqrt(std::numbers::pi),
                2.0 / std::sqrt(std::numbers::pi));
    std::printf("(Caputo of a constant is 0)\n");
}
