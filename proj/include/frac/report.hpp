// Verification reports and their JSON form.
#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "frac/core_numerics.hpp"

namespace frac {

inline constexpr const char* kVersion = "1.0.0";

struct ReportInputs {
    std::vector<std::string> functions;
    double alpha = 0.0;
    std::optional<double> p;
    std::string side = "left";
    std::vector<int> grid_sizes;
};

/// Outcome of one check. passed holds iff every residual is within
/// tolerance and every ratio within ratio_bound (and at least one of the two
/// arrays is non-empty).
struct VerificationReport {
    std::string theorem_id;
    ReportInputs inputs;
    std::vector<double> residuals;
    std::vector<double> ratios;
    double tolerance = 1e-3;
    double ratio_bound = kInf;
    bool passed = false;
    std::string notes;
    std::vector<std::pair<std::string, double>> metrics;

    void metric(const std::string& key, double v) {
        for (auto& [k, x] : metrics)
            if (k == key) {
                x = v;
                return;
            }
        metrics.emplace_back(key, v);
    }

    std::optional<double> get(const std::string& key) const {
        for (const auto& [k, x] : metrics)
            if (k == key) return x;
        return std::nullopt;
    }

    void note(const std::string& s) {
        if (!notes.empty()) notes += "; ";
        notes += s;
    }

    double max_residual() const {
        double m = 0.0;
        for (double r : residuals) m = std::isnan(r) ? kInf : std::max(m, r);
        return m;
    }

    bool finalize() {
        bool ok = !(residuals.empty() && ratios.empty());
        for (double r : residuals) ok = ok && r <= tolerance;
        for (double r : ratios) ok = ok && r <= ratio_bound;
        passed = ok;
        return passed;
    }
};

namespace detail {

inline nlohmann::ordered_json num(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
}

inline nlohmann::ordered_json nums(const std::vector<double>& v) {
    auto a = nlohmann::ordered_json::array();
    for (double x : v) a.push_back(num(x));
    return a;
}

}  // namespace detail

/// Non-finite numbers are written as the strings "inf", "-inf", "nan".
inline nlohmann::ordered_json to_json(const VerificationReport& r) {
    nlohmann::ordered_json j;
    j["theorem_id"] = r.theorem_id;
    nlohmann::ordered_json in;
    in["functions"] = r.inputs.functions;
    in["alpha"] = detail::num(r.inputs.alpha);
    in["p"] = r.inputs.p ? detail::num(*r.inputs.p) : nlohmann::ordered_json(nullptr);
    in["side"] = r.inputs.side;
    in["grid_sizes"] = r.inputs.grid_sizes;
    j["inputs"] = in;
    j["residuals"] = detail::nums(r.residuals);
    j["ratios"] = detail::nums(r.ratios);
    j["tolerance"] = detail::num(r.tolerance);
    j["ratio_bound"] = detail::num(r.ratio_bound);
    j["passed"] = r.passed;
    j["notes"] = r.notes;
    j["version"] = kVersion;
    for (const auto& [k, v] : r.metrics) j[k] = detail::num(v);
    return j;
}

/// Several reports as {"version", "passed", "reports": [...]}, in the given
/// order.
inline nlohmann::ordered_json to_json(const std::vector<VerificationReport>& rs) {
    nlohmann::ordered_json j;
    j["version"] = kVersion;
    bool ok = true;
    for (const auto& r : rs) ok = ok && r.passed;
    j["passed"] = ok;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : rs) arr.push_back(to_json(r));
    j["reports"] = arr;
    return j;
}

}  // namespace frac
