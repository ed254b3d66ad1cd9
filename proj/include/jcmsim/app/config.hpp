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

#ifndef JCMSIM_APP_CONFIG_HPP
#define JCMSIM_APP_CONFIG_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "jcmsim/field.hpp"
#include "jcmsim/jcm.hpp"
#include "jcmsim/state.hpp"

namespace jcmsim::app {

/// Bad key, bad value or failed validation. `line` is 0 when not from a file.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& message, std::string source = {}, int line = 0);

  const std::string& source() const { return source_; }
  int line() const { return line_; }

 private:
  std::string source_;
  int line_;
};

/// Everything a command needs. Mode flags (threads, bitrepro) are not part
/// of the echoed config since they never change the numbers.
struct RunConfig {
  JcmParams jcm;
  NoiseParams noise;
  InitialPreset initial = InitialPreset::equal_superposition_g012;
  std::int64_t record_stride = 100;
  std::string output = "-";

  // sweep
  std::vector<double> p_list;
  std::vector<double> delta_e_list;
  // noise-stats
  std::vector<std::int64_t> checkpoints{1000, 10000, 100000};
  std::int64_t histogram_step = 10000;
  std::string histogram_output;
  // convergence
  std::vector<std::int64_t> sample_counts{1000, 2000, 4000, 8000, 16000};
  // fit
  std::string input;
  double window_lo = 0.002;
  double window_hi = 0.05;
  std::string label = "fit";
  bool weighted = false;

  // mode flags
  int threads = 0;  // 0: hardware concurrency
  bool bitrepro = true;

  RunConfig();

  /// Re-checks every parameter invariant. Throws ConfigError.
  void validate() const;
  /// validate() without the checks that couple two keys.
  void validate_fields() const;
};

/// Sets one key from its textual value. Throws ConfigError for unknown keys
/// or unparsable values.
void set_key(RunConfig& cfg, std::string_view key, std::string_view value);

/// "key=value" from the command line.
void apply_override(RunConfig& cfg, std::string_view assignment);

/// Parses `key = value` lines; '#' starts a comment. Text beginning with
/// "# jcmsim" is a CSV written by this tool: its "# key = value" header lines
/// are read and the rest ignored.
void parse_config_text(RunConfig& cfg, std::string_view text, const std::string& source = "<config>");
void load_config_file(RunConfig& cfg, const std::string& path);

/// Every key in canonical order with its value formatted for reloading.
/// Output destinations are left out unless `with_destinations`, so that CSV
/// bytes do not depend on where they were written.
std::vector<std::pair<std::string, std::string>> effective_config(const RunConfig& cfg, bool with_destinations = true);

/// Known keys in canonical order.
std::vector<std::string> config_keys();

/// "a,b,c" or "lo:hi:count" (inclusive, evenly spaced).
std::vector<double> parse_real_list(std::string_view text);

}  // namespace jcmsim::app

#endif  // JCMSIM_APP_CONFIG_HPP
