// Named checks with default inputs, and the `all` run.
#pragma once

#include <functional>
#include <future>
#include <string>
#include <utility>
#include <vector>

#include "frac/verifier/density.hpp"
#include "frac/verifier/extensions.hpp"
#include "frac/verifier/identities.hpp"
#include "frac/verifier/inequalities.hpp"

namespace frac {

struct SuiteOptions {
    int n = 2048;
    bool parallel = true;
};

struct SuiteEntry {
    std::string name;
    std::function<VerificationReport(const SuiteOptions&)> run;
};

/// Fixed order; `all` reports in this order whatever the scheduling.
inline const std::vector<SuiteEntry>& suite_entries() {
    static const std::vector<SuiteEntry> entries = [] {
        const Interval dom{0.0, 1.0};
        auto grid = [](const SuiteOptions& o) { return Grid(0.0, 1.0, o.n); };
        std::vector<SuiteEntry> e;
        e.push_back({"weak_pairing", [=](const SuiteOptions& o) {
                         const auto u = constant_function(1.0);
                         auto v = oracle_frac_derivative(u, 0.5, Side::left, DerivativeKind::riemann_liouville, dom);
                         v.set_spec("oracle D^0.5 const:1");
                         return check_weak_pairing(u, v, 0.5, Side::left, pairing_battery(dom), grid(o));
                     }});
        e.push_back({"ftwfc", [=](const SuiteOptions& o) {
                         const auto u = parse_function("2*kappa:alpha=0.5;side=left + bump:c=0.5;r=0.2");
                         return check_ftwfc(u, 0.5, Side::left, grid(o));
                     }});
        e.push_back({"ibp_symmetric", [=](const SuiteOptions& o) {
                         const auto u = parse_function("const:1 + pow:a=0;terms=1*1.3");
                         const auto v = gaussian_function(0.4, 0.2);
                         return check_ibp(u, v, 0.75, 2.0, 2.0, IbpVariant::symmetric, grid(o));
                     }});
        e.push_back({"ibp_zero_trace", [=](const SuiteOptions& o) {
                         return check_ibp(kappa_function(0.5, Side::left), bump_function(0.5, 0.2), 0.5, 1.5, 3.0,
                                          IbpVariant::one_sided_zero_trace, grid(o));
                     }});
        e.push_back({"consistency_w1p", [=](const SuiteOptions& o) {
                         return check_consistency_w1p(parse_function("const:1 + pow:a=0;terms=1*1"), 0.5, 1.5, grid(o));
                     }});
        e.push_back({"inclusivity", [=](const SuiteOptions& o) {
                         return check_inclusivity(bump_function(0.5, 0.2), 0.4, 0.7, grid(o));
                     }});
        for (auto v : {PoincareVariant::kernel_subtracted, PoincareVariant::mathring, PoincareVariant::symmetric})
            e.push_back({std::string("poincare_") + to_string(v),
                         [=](const SuiteOptions& o) { return check_poincare(0.3, 2.0, v, grid(o)); }});
        e.push_back({"sobolev_interval", [=](const SuiteOptions& o) {
                         const auto v = PoincareVariant::kernel_subtracted;
                         return check_sobolev_interval(poincare_battery(dom, 0.3, v), 0.3, 2.0,
                                                       sobolev_conjugate(2.0, 0.3), grid(o),
                                                       poincare_held_out(dom, 0.3, v));
                     }});
        e.push_back({"sobolev_line", [](const SuiteOptions&) {
                         return check_sobolev_line(sobolev_line_battery(), 0.5, 1.5, sobolev_conjugate(1.5, 0.5));
                     }});
        e.push_back({"sobolev_line_subcritical", [](const SuiteOptions&) {
                         return check_sobolev_line(sobolev_line_battery(), 0.5, 1.5, 0.7 * sobolev_conjugate(1.5, 0.5));
                     }});
        e.push_back({"extension_trivial", [](const SuiteOptions& o) {
                         // the ambient is 42 times wider, so the inner grid is coarser
                         return extend_trivial(bump_function(0.5, 0.2), 0.5, 2.0, Grid(0.0, 1.0, std::max(64, o.n / 8)))
                             .report;
                     }});
        e.push_back({"extension_interior", [=](const SuiteOptions& o) {
                         return extend_interior(constant_function(1.0), 0.3, 2.0, grid(o), 0.25, 0.75).report;
                     }});
        e.push_back({"extension_exterior", [=](const SuiteOptions& o) {
                         return extend_exterior(constant_function(1.0), 0.25, 2.0, 5.0, grid(o)).report;
                     }});
        e.push_back({"embedding_trace", [=](const SuiteOptions& o) {
                         return check_embedding_trace(embedding_battery(dom, 0.75), 0.75, 2.0, 0.25, grid(o));
                     }});
        e.push_back({"line_equivalences",
                     [](const SuiteOptions&) { return check_line_equivalences(line_battery(), 0.5); }});
        e.push_back({"density_smooth", [=](const SuiteOptions& o) {
                         return check_density(bump_function(0.5, 0.3), 0.5, 2.0, DensityMode::smooth, grid(o));
                     }});
        e.push_back({"density_piecewise", [=](const SuiteOptions& o) {
                         return check_density(step_function(0.5), 0.3, 2.0, DensityMode::piecewise_constant, grid(o));
                     }});
        return e;
    }();
    return entries;
}

inline std::vector<std::string> suite_names() {
    std::vector<std::string> s;
    for (const auto& e : suite_entries()) s.push_back(e.name);
    return s;
}

/// Runs one named check, or every check for "all".
inline std::vector<VerificationReport> run_suite(const std::string& name, const SuiteOptions& opts = {}) {
    const auto& entries = suite_entries();
    if (name != "all") {
        for (const auto& e : entries)
            if (e.name == name) return {e.run(opts)};
        throw DomainError("unknown suite '" + name + "'");
    }
    std::vector<VerificationReport> out;
    if (!opts.parallel) {
        for (const auto& e : entries) out.push_back(e.run(opts));
        return out;
    }
    std::vector<std::future<VerificationReport>> jobs;
    for (const auto& e : entries) jobs.push_back(std::async(std::launch::async, e.run, opts));
    for (auto& j : jobs) out.push_back(j.get());
    return out;
}

}  // namespace frac
