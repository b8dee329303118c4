#include "involution/trajectory_io.hpp"

#include <fmt/core.h>

namespace involution::dyn {

void write_trajectory_csv(std::ostream& out, const Trajectory& traj, const std::vector<Observable>& observables)
{
    const std::size_t n = traj.n();
    std::string line = "t";
    for (std::size_t i = 1; i <= n; ++i) line += fmt::format(",x{}", i);
    for (std::size_t i = 1; i <= n; ++i) line += fmt::format(",p{}", i);
    for (const auto& obs : observables) line += ",obs_" + obs.name();
    out << line << '\n';

    for (std::size_t s = 0; s < traj.states.size(); ++s) {
        const PhasePoint& st = traj.states[s];
        line = fmt::format("{:.17g}", traj.times[s]);
        for (double v : st.x) line += fmt::format(",{:.17g}", v);
        for (double v : st.p) line += fmt::format(",{:.17g}", v);
        for (const auto& obs : observables) line += fmt::format(",{:.17g}", obs(st));
        out << line << '\n';
    }
}

nlohmann::ordered_json drift_report_json(const DriftReport& report)
{
    nlohmann::ordered_json j;
    j["observables"] = nlohmann::ordered_json::array();
    for (const auto& e : report.entries) {
        j["observables"].push_back({{"name", e.name},
                                    {"initial", e.initial},
                                    {"max_abs_drift", e.max_abs_drift},
                                    {"relative_drift", e.relative_drift}});
    }
    j["max_relative_drift"] = report.max_relative_drift();
    j["max_constraint_violation"] = report.max_constraint_violation;
    j["max_tangency_violation"] = report.max_tangency_violation;
    if (report.drift_ratio) j["drift_ratio"] = *report.drift_ratio;
    if (report.order_estimate) j["order_estimate"] = *report.order_estimate;
    return j;
}

}  // namespace involution::dyn
