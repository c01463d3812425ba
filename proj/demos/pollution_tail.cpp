// Zero extension of a bump: the derivative leaks into the exterior with a
// slope of -1-a on a log-log plot.
#include <cmath>
#include <cstdio>

#include "frac/frac.hpp"

int main() {
    using namespace frac;
    const auto f = bump_function(0.5, 0.2);
    for (double alpha : {0.25, 0.5, 0.75}) {
        const auto e = extend_trivial(f, alpha, 2.0, Grid(0.0, 1.0, 256));
        const auto d = rl_derivative(e.extension, alpha, Side::left);
        std::printf("alpha = %.2f  fitted slope %.4f (expected %.2f)\n", alpha,
                    e.report.get("tail_slope").value_or(NAN), -1.0 - alpha);
        std::printf("%12s %16s\n", "x - 1", "|D^a u|");
        for (double dist : {1.0, 2.0, 4.0, 8.0, 16.0, 32.0}) {
            const auto& g = d.grid;
            const auto j = static_cast<std::size_t>(std::lround((1.0 + dist - g.a()) / g.h()));
            if (j >= d.size()) break;
            std::printf("%12.1f %16.6e\n", g.x(j) - 1.0, std::abs(d[j]));
        }
        std::printf("\n");
    }
}
