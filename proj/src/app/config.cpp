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

#include "jcmsim/app/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

namespace jcmsim::app {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string compose(const std::string& message, const std::string& source, int line) {
  if (source.empty()) return message;
  if (line <= 0) return source + ": " + message;
  return source + ":" + std::to_string(line) + ": " + message;
}

double parse_plain_real(std::string_view text) {
  text = trim(text);
  double value = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw ConfigError("'" + std::string(text) + "' is not a finite number");
  }
  return value;
}

// Accepts "x" or "x/y" so that g can be written 1e6/70.
double parse_real(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_plain_real(text);
  const double den = parse_plain_real(text.substr(slash + 1));
  if (den == 0.0) throw ConfigError("division by zero in '" + std::string(trim(text)) + "'");
  return parse_plain_real(text.substr(0, slash)) / den;
}

std::int64_t parse_int(std::string_view text) {
  text = trim(text);
  std::int64_t value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (!text.empty() && ec == std::errc() && ptr == end) return value;
  // 1e5 style
  const double x = parse_plain_real(text);
  if (x != std::floor(x) || std::abs(x) > 9.007199254740992e15) {
    throw ConfigError("'" + std::string(text) + "' is not an integer");
  }
  return static_cast<std::int64_t>(x);
}

std::uint64_t parse_uint(std::string_view text) {
  text = trim(text);
  std::uint64_t value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw ConfigError("'" + std::string(text) + "' is not a non-negative integer");
  }
  return value;
}

bool parse_bool(std::string_view text) {
  text = trim(text);
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw ConfigError("'" + std::string(text) + "' is not a boolean");
}

std::vector<std::string_view> split_commas(std::string_view text) {
  std::vector<std::string_view> out;
  text = trim(text);
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    out.push_back(trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<std::int64_t> parse_int_list(std::string_view text) {
  std::vector<std::int64_t> out;
  for (auto item : split_commas(text)) out.push_back(parse_int(item));
  return out;
}

std::string format_real(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

template <typename T>
std::string join(const std::vector<T>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    if constexpr (std::is_floating_point_v<T>) {
      out += format_real(xs[i]);
    } else {
      out += std::to_string(xs[i]);
    }
  }
  return out;
}

struct KeySpec {
  const char* name;
  bool destination;
  std::function<void(RunConfig&, std::string_view)> set;
  std::function<std::string(const RunConfig&)> get;
};

const std::vector<KeySpec>& key_table() {
  static const std::vector<KeySpec> table = {
      {"g", false, [](RunConfig& c, std::string_view v) { c.jcm.g = parse_real(v); },
       [](const RunConfig& c) { return format_real(c.jcm.g); }},
      {"truncation", false, [](RunConfig& c, std::string_view v) { c.jcm.truncation = static_cast<int>(parse_int(v)); },
       [](const RunConfig& c) { return std::to_string(c.jcm.truncation); }},
      {"gate_index", false, [](RunConfig& c, std::string_view v) { c.jcm.gate_index = static_cast<int>(parse_int(v)); },
       [](const RunConfig& c) { return std::to_string(c.jcm.gate_index); }},
      {"steps", false, [](RunConfig& c, std::string_view v) { c.jcm.steps = parse_int(v); },
       [](const RunConfig& c) { return std::to_string(c.jcm.steps); }},
      {"transition_frequency_hz", false, [](RunConfig& c, std::string_view v) { c.jcm.transition_frequency_hz = parse_real(v); },
       [](const RunConfig& c) { return format_real(c.jcm.transition_frequency_hz); }},
      {"wavelength_m", false, [](RunConfig& c, std::string_view v) { c.jcm.wavelength_m = parse_real(v); },
       [](const RunConfig& c) { return format_real(c.jcm.wavelength_m); }},
      {"p", false, [](RunConfig& c, std::string_view v) { c.noise.p = parse_real(v); },
       [](const RunConfig& c) { return format_real(c.noise.p); }},
      {"delta_e", false, [](RunConfig& c, std::string_view v) { c.noise.delta_e = parse_real(v); },
       [](const RunConfig& c) { return format_real(c.noise.delta_e); }},
      {"master_seed", false, [](RunConfig& c, std::string_view v) { c.noise.master_seed = parse_uint(v); },
       [](const RunConfig& c) { return std::to_string(c.noise.master_seed); }},
      {"samples", false, [](RunConfig& c, std::string_view v) { c.noise.samples = parse_int(v); },
       [](const RunConfig& c) { return std::to_string(c.noise.samples); }},
      {"initial", false,
       [](RunConfig& c, std::string_view v) {
         try {
           c.initial = parse_preset(trim(v));
         } catch (const std::invalid_argument& e) {
           throw ConfigError(e.what());
         }
       },
       [](const RunConfig& c) { return std::string(preset_name(c.initial)); }},
      {"record_stride", false, [](RunConfig& c, std::string_view v) { c.record_stride = parse_int(v); },
       [](const RunConfig& c) { return std::to_string(c.record_stride); }},
      {"output", true, [](RunConfig& c, std::string_view v) { c.output = std::string(trim(v)); },
       [](const RunConfig& c) { return c.output; }},
      {"p_list", false, [](RunConfig& c, std::string_view v) { c.p_list = parse_real_list(v); },
       [](const RunConfig& c) { return join(c.p_list); }},
      {"delta_e_list", false, [](RunConfig& c, std::string_view v) { c.delta_e_list = parse_real_list(v); },
       [](const RunConfig& c) { return join(c.delta_e_list); }},
      {"checkpoints", false, [](RunConfig& c, std::string_view v) { c.checkpoints = parse_int_list(v); },
       [](const RunConfig& c) { return join(c.checkpoints); }},
      {"histogram_step", false, [](RunConfig& c, std::string_view v) { c.histogram_step = parse_int(v); },
       [](const RunConfig& c) { return std::to_string(c.histogram_step); }},
      {"histogram_output", true, [](RunConfig& c, std::string_view v) { c.histogram_output = std::string(trim(v)); },
       [](const RunConfig& c) { return c.histogram_output; }},
      {"sample_counts", false, [](RunConfig& c, std::string_view v) { c.sample_counts = parse_int_list(v); },
       [](const RunConfig& c) { return join(c.sample_counts); }},
      {"input", false, [](RunConfig& c, std::string_view v) { c.input = std::string(trim(v)); },
       [](const RunConfig& c) { return c.input; }},
      {"window_lo", false, [](RunConfig& c, std::string_view v) { c.window_lo = parse_real(v); },
       [](const RunConfig& c) { return format_real(c.window_lo); }},
      {"window_hi", false, [](RunConfig& c, std::string_view v) { c.window_hi = parse_real(v); },
       [](const RunConfig& c) { return format_real(c.window_hi); }},
      {"label", false, [](RunConfig& c, std::string_view v) { c.label = std::string(trim(v)); },
       [](const RunConfig& c) { return c.label; }},
      {"weighted", false, [](RunConfig& c, std::string_view v) { c.weighted = parse_bool(v); },
       [](const RunConfig& c) { return std::string(c.weighted ? "true" : "false"); }},
  };
  return table;
}

}  // namespace

ConfigError::ConfigError(const std::string& message, std::string source, int line)
    : std::runtime_error(compose(message, source, line)), source_(std::move(source)), line_(line) {}

RunConfig::RunConfig() : p_list(parse_real_list("0:0.3:13")), delta_e_list(parse_real_list("0:100:11")) {}

void RunConfig::validate() const {
  validate_fields();
  if (!(window_lo < window_hi)) throw ConfigError("window_lo must be below window_hi");
}

void RunConfig::validate_fields() const {
  try {
    jcm.validate();
    noise.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (jcm.truncation < 2) throw ConfigError("truncation must be at least 2 for the initial presets");
  if (record_stride < 1) throw ConfigError("record_stride must be at least 1");
  for (double p : p_list) {
    if (!(p >= 0.0 && p <= 0.5)) throw ConfigError("p_list entry " + format_real(p) + " outside [0, 1/2]");
  }
  for (double d : delta_e_list) {
    if (!(d >= 0.0)) throw ConfigError("delta_e_list entry " + format_real(d) + " is negative");
  }
  std::int64_t prev = 0;
  for (auto n : checkpoints) {
    if (n <= prev) throw ConfigError("checkpoints must be positive and strictly increasing");
    prev = n;
  }
  if (histogram_step < 1) throw ConfigError("histogram_step must be at least 1");
  for (auto m : sample_counts) {
    if (m < 1) throw ConfigError("sample_counts entries must be at least 1");
  }
  if (threads < 0) throw ConfigError("threads must be non-negative");
}

void set_key(RunConfig& cfg, std::string_view key, std::string_view value) {
  key = trim(key);
  for (const auto& spec : key_table()) {
    if (key == spec.name) {
      try {
        spec.set(cfg, value);
        cfg.validate_fields();
      } catch (const ConfigError& e) {
        throw ConfigError("key '" + std::string(key) + "': " + e.what());
      }
      return;
    }
  }
  throw ConfigError("unknown key '" + std::string(key) + "'");
}

void apply_override(RunConfig& cfg, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError("override '" + std::string(assignment) + "' is not key=value");
  }
  set_key(cfg, assignment.substr(0, eq), assignment.substr(eq + 1));
}

void parse_config_text(RunConfig& cfg, std::string_view text, const std::string& source) {
  const bool echoed = text.starts_with("# jcmsim");
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (echoed) {
      if (!line.starts_with('#')) break;
      line.remove_prefix(1);
      if (line_no == 1 || line.find('=') == std::string_view::npos) continue;
    } else {
      const auto hash = line.find('#');
      if (hash != std::string_view::npos) line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("expected 'key = value', got '" + std::string(line) + "'", source, line_no);
    }
    try {
      set_key(cfg, line.substr(0, eq), line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(e.what(), source, line_no);
    }
  }
}

void load_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file", path);
  std::ostringstream buf;
  buf << in.rdbuf();
  parse_config_text(cfg, buf.str(), path);
}

std::vector<std::pair<std::string, std::string>> effective_config(const RunConfig& cfg, bool with_destinations) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& spec : key_table()) {
    if (spec.destination && !with_destinations) continue;
    out.emplace_back(spec.name, spec.get(cfg));
  }
  return out;
}

std::vector<std::string> config_keys() {
  std::vector<std::string> out;
  for (const auto& spec : key_table()) out.emplace_back(spec.name);
  return out;
}

std::vector<double> parse_real_list(std::string_view text) {
  text = trim(text);
  if (text.find(':') != std::string_view::npos) {
    const auto c1 = text.find(':');
    const auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string_view::npos) throw ConfigError("range '" + std::string(text) + "' is not lo:hi:count");
    const double lo = parse_real(text.substr(0, c1));
    const double hi = parse_real(text.substr(c1 + 1, c2 - c1 - 1));
    const auto count = parse_int(text.substr(c2 + 1));
    if (count < 1) throw ConfigError("range count must be at least 1");
    std::vector<double> out(static_cast<std::size_t>(count));
    for (std::int64_t i = 0; i < count; ++i) {
      const double x = count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
      // 12 digits drop the representation noise of the division (0.3/12 -> 0.025)
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.12g", x);
      out[static_cast<std::size_t>(i)] = std::strtod(buf, nullptr);
    }
    return out;
  }
  std::vector<double> out;
  for (auto item : split_commas(text)) out.push_back(parse_real(item));
  return out;
}

}  // namespace jcmsim::app
