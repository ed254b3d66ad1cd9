// Copyright 2026 The jcmsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef JCMSIM_APP_COMMANDS_HPP
#define JCMSIM_APP_COMMANDS_HPP

#include <ostream>
#include <vector>

#include "jcmsim/app/config.hpp"
#include "jcmsim/ensemble.hpp"
#include "jcmsim/fit.hpp"

namespace jcmsim::app {

// Every command validates `cfg`, writes its CSV to `csv` and a short human
// summary to `log`. CSV bytes depend only on the echoed config.

/// Ensemble CSV columns. one_minus_F keeps 1 - F resolvable where F rounds to 1.
inline const std::vector<std::string> kEnsembleColumns{"n",  "t_over_T", "F",  "stderr_F",     "Sx",
                                                       "Sy", "Sz",       "norm_sq", "one_minus_F"};

EnsembleStats cmd_run(const RunConfig& cfg, std::ostream& csv, std::ostream& log);

/// Reads cfg.input (an ensemble CSV) and fits over [window_lo, window_hi].
FitResult cmd_fit(const RunConfig& cfg, std::ostream& csv, std::ostream& log);

/// Moment table to `csv`, histogram at cfg.histogram_step to `histogram`.
void cmd_noise_stats(const RunConfig& cfg, std::ostream& csv, std::ostream& histogram, std::ostream& log);

std::vector<SweepPoint> cmd_sweep(const RunConfig& cfg, std::ostream& csv, std::ostream& log);

/// Refuses the g012 preset, which has no second-order prediction.
EnsembleStats cmd_perturb_compare(const RunConfig& cfg, std::ostream& csv, std::ostream& log);

std::vector<ConvergenceRow> cmd_convergence(const RunConfig& cfg, std::ostream& csv, std::ostream& log);

EngineOptions engine_options(const RunConfig& cfg);

}  // namespace jcmsim::app

#endif  // JCMSIM_APP_COMMANDS_HPP
