#pragma once

#include "involution/integrators.hpp"

#include "json.hpp"

#include <ostream>
#include <vector>

namespace involution::dyn {

// Header t,x1..xN,p1..pN,obs_<name>...; one row per stored state, every value
// printed with 17 significant digits.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj, const std::vector<Observable>& observables = {});

nlohmann::ordered_json drift_report_json(const DriftReport& report);

}  // namespace involution::dyn
