// The `frac` command line: argument parsing and dispatch.
//
//   frac compute deriv|integral --fn SPEC | --csv PATH  [--grid a,b,n | --line L,n] ...
//   frac norm --space NAME --alpha A --p P ...
//   frac verify CHECK ...
//   frac suite NAME|all [--json PATH]
//
// Exit status: 0 success, 1 a verification failed, 2 usage, 3 I/O.
#pragma once

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "frac/io.hpp"
#include "frac/verifier/suite.hpp"

namespace frac {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GridArg {
    double a = 0.0, b = 1.0;
    int n = 2048;
};

struct LineArg {
    double L = 16.0;
    int n = 4096;
};

struct RunConfig {
    std::string command;
    std::string target;
    std::vector<std::string> fns;
    std::vector<std::string> csvs;
    double alpha = 0.5;
    std::optional<double> beta, p, q, r, mu, c;
    std::optional<std::pair<double, double>> inner;
    std::string side = "left";
    std::string scheme = "rl";
    std::string space = "one_sided_left";
    std::string variant;
    std::string mode = "smooth";
    std::string domain = "interval";
    GridArg grid;
    std::optional<LineArg> line;
    std::string out;
    std::string json;
    std::string format = "csv";
    std::optional<double> tol;
    bool serial = false;
    bool help = false;
    std::string help_text;
};

inline constexpr int kExitPass = 0, kExitFail = 1, kExitUsage = 2, kExitIo = 3;

inline const std::vector<std::string>& verify_checks() {
    static const std::vector<std::string> v = {
        "weak_pairing", "ftwfc",      "ibp",       "poincare",          "sobolev",   "extend_trivial",
        "extend_interior", "extend_exterior", "embedding", "consistency", "line_equivalences", "density",
        "inclusivity"};
    return v;
}

namespace detail {

inline std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(trim(item));
    return out;
}

inline double number_arg(const std::string& flag, const std::string& s) {
    try {
        return parse_number(s);
    } catch (const std::exception&) {
        throw UsageError(flag + ": '" + s + "' is not a number");
    }
}

inline int count_arg(const std::string& flag, const std::string& s) {
    const double v = number_arg(flag, s);
    if (v != std::floor(v) || v < 2 || v > 1e8) throw UsageError(flag + ": '" + s + "' is not a valid node count");
    return static_cast<int>(v);
}

inline int default_n() {
    if (const char* e = std::getenv("FRAC_DEFAULT_N")) return count_arg("FRAC_DEFAULT_N", e);
    return 2048;
}

inline bool contains(const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace detail

/// Parses and validates the command line. --help sets `help` instead of
/// throwing; every other problem raises UsageError naming the flag.
inline RunConfig parse_args(int argc, const char* const* argv) {
    RunConfig cfg;
    CLI::App app{"fractional calculus toolkit", "frac"};
    app.set_config("--config", "", "read flags from a TOML/INI file");
    std::vector<std::string> pos;
    std::string grid_s, line_s, inner_s;
    std::optional<double> beta, p, q, r, mu, c, tol;
    std::optional<int> n;
    app.add_option("args", pos, "command, then its target (compute deriv|integral, verify CHECK, suite NAME|all)");
    app.add_option("--fn", cfg.fns, "function spec, repeatable (u then v)");
    app.add_option("--csv", cfg.csvs, "sampled input as x,value CSV, repeatable");
    app.add_option("--alpha", cfg.alpha, "order");
    app.add_option("--beta", beta, "second order (inclusivity)");
    app.add_option("--p", p, "integrability exponent");
    app.add_option("--q", q, "conjugate exponent (ibp)");
    app.add_option("--r", r, "target exponent (sobolev)");
    app.add_option("--mu", mu, "auxiliary exponent (extend_exterior)");
    app.add_option("--c", c, "left end of the Hölder window (embedding)");
    app.add_option("--inner", inner_s, "inner interval c,d (extend_interior)");
    app.add_option("--side", cfg.side, "left|right");
    app.add_option("--scheme", cfg.scheme, "rl|gl|caputo|marchaud|spectral|oracle");
    app.add_option("--space", cfg.space, "norm family");
    app.add_option("--variant", cfg.variant, "check variant");
    app.add_option("--mode", cfg.mode, "smooth|piecewise_constant (density)");
    app.add_option("--domain", cfg.domain, "interval|line (sobolev)");
    app.add_option("--grid", grid_s, "a,b,n");
    app.add_option("--line", line_s, "L,n for functions on [-L,L]");
    app.add_option("--n", n, "grid cells for suite runs");
    app.add_option("--out", cfg.out, "output path");
    app.add_option("--json", cfg.json, "JSON report path");
    app.add_option("--format", cfg.format, "csv|json");
    app.add_option("--tol", tol, "tolerance override");
    app.add_flag("--serial", cfg.serial, "run suite checks one at a time");
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        cfg.help = true;
        cfg.help_text = app.help();
        return cfg;
    } catch (const CLI::FileError& e) {
        throw IoError(e.what());
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }
    cfg.beta = beta;
    cfg.p = p;
    cfg.q = q;
    cfg.r = r;
    cfg.mu = mu;
    cfg.c = c;
    cfg.tol = tol;

    if (pos.empty()) throw UsageError("missing command (compute|norm|verify|suite)");
    cfg.command = pos[0];
    const bool wants_target = cfg.command != "norm";
    if (wants_target && pos.size() < 2) throw UsageError("'" + cfg.command + "' needs a target");
    if (pos.size() > (wants_target ? 2u : 1u)) throw UsageError("unexpected argument '" + pos.back() + "'");
    if (wants_target) cfg.target = pos[1];

    cfg.grid.n = detail::default_n();
    if (!grid_s.empty()) {
        const auto parts = detail::split_commas(grid_s);
        if (parts.size() != 3) throw UsageError("--grid expects a,b,n");
        cfg.grid = {detail::number_arg("--grid", parts[0]), detail::number_arg("--grid", parts[1]),
                    detail::count_arg("--grid", parts[2])};
        if (!(cfg.grid.a < cfg.grid.b)) throw UsageError("--grid needs a < b");
    }
    if (n) {
        if (*n < 2) throw UsageError("--n must be at least 2");
        cfg.grid.n = *n;
    }
    if (!line_s.empty()) {
        const auto parts = detail::split_commas(line_s);
        if (parts.size() != 2) throw UsageError("--line expects L,n");
        cfg.line = LineArg{detail::number_arg("--line", parts[0]), detail::count_arg("--line", parts[1])};
        if (!(cfg.line->L > 0.0)) throw UsageError("--line needs L > 0");
    }
    if (!inner_s.empty()) {
        const auto parts = detail::split_commas(inner_s);
        if (parts.size() != 2) throw UsageError("--inner expects c,d");
        cfg.inner = std::pair{detail::number_arg("--inner", parts[0]), detail::number_arg("--inner", parts[1])};
    }

    if (!(cfg.alpha > 0.0) || !std::isfinite(cfg.alpha)) throw UsageError("--alpha must be positive");
    for (auto [flag, v] : {std::pair{"--p", p}, std::pair{"--q", q}, std::pair{"--r", r}})
        if (v && !(*v >= 1.0)) throw UsageError(std::string(flag) + " must be >= 1");
    if (tol && !(*tol > 0.0)) throw UsageError("--tol must be positive");
    if (cfg.side != "left" && cfg.side != "right") throw UsageError("--side must be left or right");
    if (cfg.format != "csv" && cfg.format != "json") throw UsageError("--format must be csv or json");

    const std::size_t sources = cfg.fns.size() + cfg.csvs.size();
    if (cfg.command == "compute") {
        if (cfg.target != "deriv" && cfg.target != "integral")
            throw UsageError("compute target must be deriv or integral");
        if (sources != 1) throw UsageError("compute needs exactly one of --fn or --csv");
        static const std::vector<std::string> schemes = {"rl", "product_rl", "gl", "grunwald", "caputo",
                                                         "marchaud", "spectral", "oracle"};
        if (!detail::contains(schemes, cfg.scheme)) throw UsageError("--scheme: unknown scheme '" + cfg.scheme + "'");
        if (cfg.scheme == "oracle" && cfg.fns.empty()) throw UsageError("--scheme oracle needs --fn");
    } else if (cfg.command == "norm") {
        if (sources != 1) throw UsageError("norm needs exactly one of --fn or --csv");
        try {
            parse_space(cfg.space);
        } catch (const DomainError& e) {
            throw UsageError(std::string("--space: ") + e.what());
        }
    } else if (cfg.command == "verify") {
        if (!detail::contains(verify_checks(), cfg.target)) throw UsageError("unknown check '" + cfg.target + "'");
    } else if (cfg.command == "suite") {
        if (cfg.target != "all" && !detail::contains(suite_names(), cfg.target))
            throw UsageError("unknown suite '" + cfg.target + "'");
    } else {
        throw UsageError("unknown command '" + cfg.command + "'");
    }
    for (const auto& f : cfg.fns) {
        try {
            parse_function(f);
        } catch (const DomainError& e) {
            throw UsageError(std::string("--fn: ") + e.what());
        }
    }
    return cfg;
}

inline RunConfig parse_args(const std::vector<std::string>& args) {
    std::vector<const char*> argv{"frac"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return parse_args(static_cast<int>(argv.size()), argv.data());
}

namespace detail {

struct Input {
    std::optional<ClosedFormFunction> fn;
    std::optional<SampledFunction> sampled;
    std::string label;
};

inline Input input_slot(const RunConfig& cfg, std::size_t k) {
    if (k < cfg.fns.size()) return {parse_function(cfg.fns[k]), std::nullopt, cfg.fns[k]};
    const std::size_t j = k - cfg.fns.size();
    if (j < cfg.csvs.size()) return {std::nullopt, read_csv(cfg.csvs[j]), cfg.csvs[j]};
    throw UsageError("input " + std::to_string(k + 1) + " missing (--fn or --csv)");
}

inline Grid grid_of(const RunConfig& cfg) { return Grid(cfg.grid.a, cfg.grid.b, cfg.grid.n); }

inline SampledFunction on_grid(const Input& in, const Grid& g) { return in.fn ? in.fn->sample(g) : *in.sampled; }

inline ClosedFormFunction need_fn(const Input& in, const std::string& check) {
    if (!in.fn) throw UsageError(check + " needs --fn (closed-form input)");
    return *in.fn;
}

inline LineFunction on_line(const RunConfig& cfg, const Input& in) {
    if (in.fn) {
        const LineArg l = cfg.line.value_or(LineArg{});
        return in.fn->sample_line(l.L, l.n);
    }
    const auto& s = *in.sampled;
    if (s.grid.a() != -s.grid.b()) throw UsageError("line input csv must span [-L, L]");
    return LineFunction(s.grid.b(), s);
}

inline std::string json_dump(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

inline std::string format_json(const SampledFunction& u) {
    nlohmann::ordered_json j;
    j["x"] = u.grid.nodes();
    j["value"] = nums(u.values);
    return json_dump(j);
}

inline void emit(const RunConfig& cfg, const SampledFunction& u, std::ostream& out) {
    const std::string text = cfg.format == "json" ? format_json(u) : format_csv(u);
    if (cfg.out.empty()) out << text;
    else write_file_atomic(cfg.out, text);
}

inline int run_compute(const RunConfig& cfg, std::ostream& out) {
    const auto in = input_slot(cfg, 0);
    const Side side = parse_side(cfg.side);
    const bool line = cfg.line.has_value() || cfg.scheme == "marchaud" || cfg.scheme == "spectral";
    if (cfg.scheme == "oracle") {
        const Grid g = line ? Grid(-cfg.line.value_or(LineArg{}).L, cfg.line.value_or(LineArg{}).L,
                                   cfg.line.value_or(LineArg{}).n)
                            : grid_of(cfg);
        const Interval dom{g.a(), g.b()};
        const auto f = cfg.target == "deriv"
                           ? oracle_frac_derivative(*in.fn, cfg.alpha, side, DerivativeKind::riemann_liouville, dom)
                           : oracle_frac_integral(*in.fn, cfg.alpha, side, dom);
        emit(cfg, f.sample(g), out);
        return kExitPass;
    }
    if (cfg.target == "integral") {
        if (cfg.scheme != "rl" && cfg.scheme != "product_rl")
            throw UsageError("--scheme: integrals use rl or oracle");
        const auto u = line ? on_line(cfg, in).samples : on_grid(in, grid_of(cfg));
        emit(cfg, frac_integral(u, cfg.alpha, side), out);
        return kExitPass;
    }
    const OperatorSpec spec{FracOrder(cfg.alpha), side, parse_realization(cfg.scheme)};
    if (line) {
        emit(cfg, frac_derivative(on_line(cfg, in), spec).samples, out);
    } else {
        emit(cfg, frac_derivative(on_grid(in, grid_of(cfg)), spec), out);
    }
    return kExitPass;
}

inline int run_norm(const RunConfig& cfg, std::ostream& out) {
    const auto in = input_slot(cfg, 0);
    const NormSpec spec{parse_space(cfg.space), FracOrder(cfg.alpha), cfg.p.value_or(2.0)};
    NormResult res;
    if (cfg.line) res = sobolev_norm(on_line(cfg, in), spec);
    else if (in.fn) res = sobolev_norm(*in.fn, grid_of(cfg), spec);
    else res = sobolev_norm(*in.sampled, spec);
    out << detail::g17(res.value) << "\n";
    if (!cfg.json.empty()) {
        nlohmann::ordered_json j;
        j["space"] = to_string(spec.family);
        j["function"] = in.label;
        j["alpha"] = cfg.alpha;
        j["p"] = num(spec.p);
        j["value"] = num(res.value);
        j["finite"] = res.finite;
        j["refinement_n"] = res.refinement_n;
        j["refinement_value"] = nums(res.refinement_value);
        j["diagnostic"] = res.diagnostic;
        j["version"] = kVersion;
        write_file_atomic(cfg.json, json_dump(j));
    }
    return kExitPass;
}

inline VerificationReport run_check(const RunConfig& cfg) {
    const std::string& t = cfg.target;
    const Side side = parse_side(cfg.side);
    const Grid g = grid_of(cfg);
    const Interval dom{g.a(), g.b()};
    const double alpha = cfg.alpha;
    const double p = cfg.p.value_or(2.0);
    auto first_fn = [&] { return need_fn(input_slot(cfg, 0), t); };

    if (t == "weak_pairing") {
        const auto u = input_slot(cfg, 0);
        const auto battery = pairing_battery(dom);
        const double tol = cfg.tol.value_or(1e-3);
        if (cfg.fns.size() + cfg.csvs.size() >= 2) {
            const auto v = input_slot(cfg, 1);
            return check_weak_pairing(on_grid(u, g), on_grid(v, g), alpha, side, battery, tol, {u.label, v.label});
        }
        const auto f = need_fn(u, t);
        auto v = oracle_frac_derivative(f, alpha, side, DerivativeKind::riemann_liouville, dom);
        v.set_spec("oracle D^" + fmt(alpha) + " " + f.spec());
        return check_weak_pairing(f, v, alpha, side, battery, g, tol);
    }
    if (t == "ftwfc") {
        const auto u = input_slot(cfg, 0);
        return check_ftwfc(on_grid(u, g), alpha, side, cfg.tol.value_or(1e-2), {u.label});
    }
    if (t == "ibp") {
        const auto u = input_slot(cfg, 0), v = input_slot(cfg, 1);
        const auto variant = parse_ibp_variant(cfg.variant.empty() ? "symmetric" : cfg.variant);
        const double q = cfg.q.value_or(p / (p - 1.0));
        return check_ibp(on_grid(u, g), on_grid(v, g), alpha, p, q, variant, side, cfg.tol.value_or(1e-3),
                         {u.label, v.label});
    }
    if (t == "poincare") {
        return check_poincare(alpha, p, parse_poincare_variant(cfg.variant.empty() ? "kernel_subtracted" : cfg.variant),
                              g, side);
    }
    if (t == "sobolev") {
        if (cfg.domain == "line") {
            const double r = cfg.r.value_or(sobolev_conjugate(p, alpha));
            const LineArg l = cfg.line.value_or(LineArg{16.0, 8192});
            return check_sobolev_line(sobolev_line_battery(), alpha, p, r, l.L, l.n, side);
        }
        if (cfg.domain != "interval") throw UsageError("--domain must be interval or line");
        const auto v = PoincareVariant::kernel_subtracted;
        const double r = cfg.r.value_or(sobolev_conjugate(p, alpha));
        return check_sobolev_interval(poincare_battery(dom, alpha, v), alpha, p, r, g, poincare_held_out(dom, alpha, v),
                                      side);
    }
    if (t == "extend_trivial") {
        const auto u = input_slot(cfg, 0);
        if (u.fn) return extend_trivial(*u.fn, alpha, p, g, 1.0, 40.0, side).report;
        const double L = g.length();
        return side == Side::left ? extend_trivial(*u.sampled, alpha, p, L, 40.0 * L, side).report
                                  : extend_trivial(*u.sampled, alpha, p, 40.0 * L, L, side).report;
    }
    if (t == "extend_interior") {
        if (!cfg.inner) throw UsageError("extend_interior needs --inner c,d");
        return extend_interior(first_fn(), alpha, p, g, cfg.inner->first, cfg.inner->second, side).report;
    }
    if (t == "extend_exterior") {
        if (!cfg.mu) throw UsageError("extend_exterior needs --mu");
        return extend_exterior(first_fn(), alpha, p, *cfg.mu, g, side).report;
    }
    if (t == "embedding") {
        const double c = cfg.c.value_or(dom.a + 0.25 * g.length());
        return check_embedding_trace(embedding_battery(dom, alpha), alpha, p, c, g, side);
    }
    if (t == "consistency") return check_consistency_w1p(first_fn(), alpha, p, g, side, cfg.tol.value_or(1e-3));
    if (t == "line_equivalences") {
        const LineArg l = cfg.line.value_or(LineArg{});
        return check_line_equivalences(line_battery(), alpha, l.L, l.n);
    }
    if (t == "density") return check_density(first_fn(), alpha, p, parse_density_mode(cfg.mode), g, side);
    if (t == "inclusivity") {
        if (!cfg.beta) throw UsageError("inclusivity needs --beta");
        const auto u = input_slot(cfg, 0);
        return check_inclusivity(on_grid(u, g), alpha, *cfg.beta, side, cfg.tol.value_or(1e-2), {u.label});
    }
    throw UsageError("unknown check '" + t + "'");
}

inline std::string summary_line(const VerificationReport& r) {
    double mr = 0.0;
    for (double x : r.ratios) mr = std::isnan(x) ? kInf : std::max(mr, x);
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-4s %-28s max_residual=%-11.4g tol=%-9.3g max_ratio=%-11.4g bound=%.4g",
                  r.passed ? "PASS" : "FAIL", r.theorem_id.c_str(), r.max_residual(), r.tolerance, mr, r.ratio_bound);
    return buf;
}

inline int run_verify(const RunConfig& cfg, std::ostream& out) {
    const auto rep = run_check(cfg);
    out << summary_line(rep) << "\n";
    if (!cfg.json.empty()) write_file_atomic(cfg.json, json_dump(to_json(rep)));
    return rep.passed ? kExitPass : kExitFail;
}

inline int run_suite_cmd(const RunConfig& cfg, std::ostream& out) {
    SuiteOptions o;
    o.n = cfg.grid.n;
    o.parallel = !cfg.serial;
    const auto reps = run_suite(cfg.target, o);
    std::size_t ok = 0;
    for (const auto& r : reps) {
        out << summary_line(r) << "\n";
        ok += r.passed ? 1 : 0;
    }
    out << ok << "/" << reps.size() << " passed\n";
    if (!cfg.json.empty()) write_file_atomic(cfg.json, json_dump(to_json(reps)));
    return ok == reps.size() ? kExitPass : kExitFail;
}

}  // namespace detail

/// Runs a parsed configuration; messages for failures go to err.
inline int run(const RunConfig& cfg, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    if (cfg.help) {
        out << cfg.help_text;
        return kExitPass;
    }
    try {
        if (cfg.command == "compute") return detail::run_compute(cfg, out);
        if (cfg.command == "norm") return detail::run_norm(cfg, out);
        if (cfg.command == "verify") return detail::run_verify(cfg, out);
        if (cfg.command == "suite") return detail::run_suite_cmd(cfg, out);
        err << "frac: unknown command '" << cfg.command << "'\n";
        return kExitUsage;
    } catch (const IoError& e) {
        err << "frac: " << e.what() << "\n";
        return kExitIo;
    } catch (const UsageError& e) {
        err << "frac: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "frac: " << e.what() << "\n";
        return kExitUsage;
    }
}

inline int main_entry(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    RunConfig cfg;
    try {
        cfg = parse_args(argc, argv);
    } catch (const UsageError& e) {
        err << "frac: " << e.what() << "\nrun 'frac --help' for usage\n";
        return kExitUsage;
    } catch (const IoError& e) {
        err << "frac: " << e.what() << "\n";
        return kExitIo;
    } catch (const CLI::Error& e) {
        err << "frac: " << e.what() << "\n";
        return e.get_exit_code() == 0 ? kExitPass : kExitUsage;
    }
    return run(cfg, out, err);
}

}  // namespace frac
