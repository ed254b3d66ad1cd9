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

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "jcmsim/app/commands.hpp"
#include "jcmsim/app/config.hpp"
#include "jcmsim/app/csv.hpp"
#include "jcmsim/fit.hpp"

namespace {

using namespace jcmsim;
using namespace jcmsim::app;

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct Flags {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string output;
  std::string histogram_output;
  std::string input;
  int threads = -1;
  bool bitrepro = true;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("-c,--config", f.config_path, "key = value config file, or a CSV written by jcmsim");
  cmd->add_option("-s,--set", f.overrides, "override one key, key=value (repeatable)");
  cmd->add_option("-o,--output", f.output, "output CSV path, - for stdout");
  cmd->add_option("-j,--threads", f.threads, "worker threads (default: $JCMSIM_THREADS or all cores)");
  cmd->add_flag("--bitrepro,!--no-bitrepro", f.bitrepro, "merge in a fixed order (default on)");
}

RunConfig build_config(const Flags& f) {
  RunConfig cfg;
  if (!f.config_path.empty()) load_config_file(cfg, f.config_path);
  for (const auto& o : f.overrides) apply_override(cfg, o);
  if (!f.output.empty()) cfg.output = f.output;
  if (!f.histogram_output.empty()) cfg.histogram_output = f.histogram_output;
  if (!f.input.empty()) cfg.input = f.input;
  if (f.threads >= 0) {
    cfg.threads = f.threads;
  } else if (const char* env = std::getenv("JCMSIM_THREADS")) {
    const std::string_view text(env);
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), cfg.threads);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
      throw ConfigError(std::string("JCMSIM_THREADS='") + env + "' is not an integer");
    }
  }
  cfg.bitrepro = f.bitrepro;
  cfg.validate();
  return cfg;
}

/// Opens `path` for writing, or binds stdout for "-" / empty.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_.open(path, std::ios::binary | std::ios::trunc);
    if (!file_) throw std::runtime_error("cannot write '" + path + "'");
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }
  bool is_stdout() const { return !file_.is_open(); }
  void close(const std::string& path) {
    if (!file_.is_open()) {
      std::cout.flush();
      return;
    }
    file_.close();
    if (!file_) throw std::runtime_error("error writing '" + path + "'");
  }

 private:
  std::ofstream file_;
};

std::string derived_histogram_path(const RunConfig& cfg) {
  if (!cfg.histogram_output.empty()) return cfg.histogram_output;
  if (cfg.output.empty() || cfg.output == "-") return {};
  auto base = cfg.output;
  if (base.size() > 4 && base.ends_with(".csv")) base.resize(base.size() - 4);
  return base + "_hist.csv";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo simulator of a Jaynes-Cummings nonlinear sign gate under a random-walk field"};
  app.require_subcommand(1);
  Flags flags;

  using Runner = std::function<void(const RunConfig&, std::ostream&, std::ostream&)>;
  std::map<CLI::App*, Runner> runners;

  auto* run = app.add_subcommand("run", "ensemble average of F(t) and the Bloch vector");
  auto* fit = app.add_subcommand("fit", "log-log fit of 1-F against t/T from an ensemble CSV");
  auto* noise = app.add_subcommand("noise-stats", "moments and histogram of the random-walk field");
  auto* sweep = app.add_subcommand("sweep", "F(T) on a (p, dE) grid");
  auto* perturb = app.add_subcommand("perturb-compare", "Monte Carlo 1-F against the second-order prediction");
  auto* conv = app.add_subcommand("convergence", "F(T) against the number of samples");
  for (auto* cmd : {run, fit, noise, sweep, perturb, conv}) add_common(cmd, flags);
  fit->add_option("-i,--input", flags.input, "ensemble CSV to fit");
  noise->add_option("--histogram-output", flags.histogram_output, "histogram CSV path");

  runners[run] = [](const RunConfig& c, std::ostream& o, std::ostream& l) { cmd_run(c, o, l); };
  runners[fit] = [](const RunConfig& c, std::ostream& o, std::ostream& l) { cmd_fit(c, o, l); };
  runners[sweep] = [](const RunConfig& c, std::ostream& o, std::ostream& l) { cmd_sweep(c, o, l); };
  runners[perturb] = [](const RunConfig& c, std::ostream& o, std::ostream& l) { cmd_perturb_compare(c, o, l); };
  runners[conv] = [](const RunConfig& c, std::ostream& o, std::ostream& l) { cmd_convergence(c, o, l); };

  CLI11_PARSE(app, argc, argv);

  CLI::App* chosen = app.get_subcommands().front();
  try {
    const RunConfig cfg = build_config(flags);
    Sink out(cfg.output);
    std::ostream& log = out.is_stdout() ? std::cerr : std::cout;
    if (chosen == noise) {
      const auto hist_path = derived_histogram_path(cfg);
      if (hist_path.empty()) throw ConfigError("noise-stats writing to stdout needs histogram_output");
      Sink hist(hist_path);
      cmd_noise_stats(cfg, out.stream(), hist.stream(), log);
      hist.close(hist_path);
    } else {
      runners.at(chosen)(cfg, out.stream(), log);
    }
    out.close(cfg.output);
  } catch (const ConfigError& e) {
    std::cerr << "jcmsim: config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "jcmsim: error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
