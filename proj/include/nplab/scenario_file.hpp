#pragma once

#include <iosfwd>
#include <string>

#include "nplab/harness.hpp"

namespace nplab::io {

// Plain-text scenario format: one `key = value` per line, `#` comments,
// blank lines ignored. Recognized keys (all optional, defaults below):
//
//   mode             simulate | theory_closed | theory_ode   (simulate)
//   rule             snp | dnp                               (dnp)
//   N                1000      input dimension
//   M                1         number of outputs
//   eta              0.1       learning step size
//   sigma_xi_sq      0.01      perturbation-noise variance
//   sigma_zeta_sq    0.01      baseline-noise variance
//   seed             12345     master seed
//   replications     20        simulated runs to average
//   t_max            10        learning-time horizon
//   record_interval  0.25      record grid spacing in t
//   q0, r0           1, 0      initial diagonal overlaps (theory modes)
//   q_kl0, r_kl0     0, 0      initial cross overlaps
//   t_kl             0         teacher cross overlap
//
// Unknown keys are a hard error naming the line, never silently ignored.
ScenarioConfig parse_scenario(std::istream& in);
ScenarioConfig read_scenario_file(const std::string& path);

ScenarioConfig default_scenario();

Mode parse_mode(const std::string& text);
Rule parse_rule(const std::string& text);

}  // namespace nplab::io
