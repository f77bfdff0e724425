#pragma once

#include <json.hpp>

#include <vector>

#include "detect.hpp"

namespace microlocal {

// [{x0, omega, verdict, rate, r2}], plus the diagnostics behind each verdict.
inline nlohmann::json wfa_report(const std::vector<WfaVerdict>& verdicts) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& v : verdicts) {
        nlohmann::json j;
        j["x0"] = v.x0;
        j["omega"] = v.omega;
        j["verdict"] = to_string(v.status);
        j["rate"] = v.rate;
        j["r2"] = v.fit.r_squared;
        j["model"] = to_string(v.fit.model);
        j["kappa"] = std::isfinite(v.kappa) ? nlohmann::json(v.kappa) : nlohmann::json(nullptr);
        j["resolved_samples"] = v.resolved;
        j["scope"] = "single ray";
        if (!v.note.empty()) j["note"] = v.note;
        out.push_back(std::move(j));
    }
    return out;
}

} // namespace microlocal
