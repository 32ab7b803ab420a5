// Copyright 2026 The prefdyn Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "prefdyn/manifest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace prefdyn {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

// --- scalar parsing --------------------------------------------------------

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_double(const std::string& s) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || s.empty()) {
    throw ConfigError("expected a number, got '" + s + "'");
  }
  return v;
}

template <typename Int>
Int parse_int(const std::string& s) {
  Int v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || s.empty()) {
    throw ConfigError("expected an integer, got '" + s + "'");
  }
  return v;
}

bool parse_bool(const std::string& s) {
  if (s == "true") return true;
  if (s == "false") return false;
  throw ConfigError("expected true or false, got '" + s + "'");
}

template <typename Enum>
Enum parse_enum(const std::string& s,
                std::initializer_list<std::pair<const char*, Enum>> options) {
  std::string allowed;
  for (const auto& [name, value] : options) {
    if (s == name) return value;
    allowed += allowed.empty() ? name : std::string(" | ") + name;
  }
  throw ConfigError("expected one of " + allowed + ", got '" + s + "'");
}

template <typename Enum>
std::string enum_name(Enum v,
                      std::initializer_list<std::pair<const char*, Enum>> options) {
  for (const auto& [name, value] : options) {
    if (v == value) return name;
  }
  return "?";
}

const std::initializer_list<std::pair<const char*, SurpriseSign>> kSigns{
    {"narrative", SurpriseSign::narrative}, {"literal", SurpriseSign::literal}};
const std::initializer_list<std::pair<const char*, SurpriseScale>> kScales{
    {"scaled_arctan", SurpriseScale::scaled_arctan},
    {"raw_arctan", SurpriseScale::raw_arctan}};
const std::initializer_list<std::pair<const char*, MomentumDirection>> kMomentum{
    {"raw", MomentumDirection::raw}, {"normalized", MomentumDirection::normalized}};
const std::initializer_list<std::pair<const char*, EstimatorMode>> kModes{
    {"ogd", EstimatorMode::ogd}, {"oracle", EstimatorMode::oracle}};
const std::initializer_list<std::pair<const char*, EstimateInit>> kInits{
    {"sampled", EstimateInit::sampled}, {"truth", EstimateInit::truth}};

// --- key registry ----------------------------------------------------------

struct ConfigKey {
  std::function<void(SimulationConfig&, const std::string&)> set;
  std::function<std::string(const SimulationConfig&)> get;
};

std::string baseline_text(const SimulationConfig& c) {
  switch (c.baseline_mode) {
    case BaselineMode::initial: return "initial";
    case BaselineMode::origin: return "origin";
    case BaselineMode::given: break;
  }
  std::string out;
  for (double x : c.baseline) out += (out.empty() ? "" : " ") + format_double(x);
  return out;
}

void set_baseline(SimulationConfig& c, const std::string& v) {
  if (v == "initial") {
    c.baseline_mode = BaselineMode::initial;
    c.baseline.clear();
  } else if (v == "origin") {
    c.baseline_mode = BaselineMode::origin;
    c.baseline.clear();
  } else {
    Vector vec;
    std::istringstream in(v);
    std::string tok;
    while (in >> tok) vec.push_back(parse_double(tok));
    if (vec.empty()) throw ConfigError("baseline must be initial, origin, or numbers");
    c.baseline_mode = BaselineMode::given;
    c.baseline = std::move(vec);
  }
}

// Ordered: serialization follows this order.
const std::vector<std::pair<std::string, ConfigKey>>& registry() {
  using C = SimulationConfig;
  using S = const std::string&;
  static const std::vector<std::pair<std::string, ConfigKey>> keys = {
      {"simulation.n", {[](C& c, S v) { c.n = parse_int<std::size_t>(v); },
                        [](const C& c) { return std::to_string(c.n); }}},
      {"simulation.d", {[](C& c, S v) { c.d = parse_int<std::size_t>(v); },
                        [](const C& c) { return std::to_string(c.d); }}},
      {"simulation.sigma", {[](C& c, S v) { c.sigma = parse_double(v); },
                            [](const C& c) { return format_double(c.sigma); }}},
      {"simulation.steps", {[](C& c, S v) { c.steps = parse_int<std::int64_t>(v); },
                            [](const C& c) { return std::to_string(c.steps); }}},
      {"simulation.rating_noise_std",
       {[](C& c, S v) { c.rating_noise_std = parse_double(v); },
        [](const C& c) { return format_double(c.rating_noise_std); }}},
      {"simulation.baseline", {set_baseline, baseline_text}},
      {"dynamics.gamma_me", {[](C& c, S v) { c.dynamics.gamma_me = parse_double(v); },
                             [](const C& c) { return format_double(c.dynamics.gamma_me); }}},
      {"dynamics.gamma_oc", {[](C& c, S v) { c.dynamics.gamma_oc = parse_double(v); },
                             [](const C& c) { return format_double(c.dynamics.gamma_oc); }}},
      {"dynamics.gamma_ha", {[](C& c, S v) { c.dynamics.gamma_ha = parse_double(v); },
                             [](const C& c) { return format_double(c.dynamics.gamma_ha); }}},
      {"dynamics.discount_delta",
       {[](C& c, S v) { c.dynamics.discount_delta = parse_double(v); },
        [](const C& c) { return format_double(c.dynamics.discount_delta); }}},
      {"dynamics.pref_noise_std",
       {[](C& c, S v) { c.dynamics.pref_noise_std = parse_double(v); },
        [](const C& c) { return format_double(c.dynamics.pref_noise_std); }}},
      {"dynamics.surprise_sign",
       {[](C& c, S v) { c.dynamics.surprise_sign = parse_enum(v, kSigns); },
        [](const C& c) { return enum_name(c.dynamics.surprise_sign, kSigns); }}},
      {"dynamics.surprise_scale",
       {[](C& c, S v) { c.dynamics.surprise_scale = parse_enum(v, kScales); },
        [](const C& c) { return enum_name(c.dynamics.surprise_scale, kScales); }}},
      {"policy.kind", {[](C& c, S v) { c.policy.kind = policy_kind_from_string(v); },
                       [](const C& c) { return std::string(to_string(c.policy.kind)); }}},
      {"policy.beta", {[](C& c, S v) { c.policy.beta = parse_double(v); },
                       [](const C& c) { return format_double(c.policy.beta); }}},
      {"policy.constant_index",
       {[](C& c, S v) { c.policy.constant_index = parse_int<std::size_t>(v); },
        [](const C& c) { return std::to_string(c.policy.constant_index); }}},
      {"policy.persistent_norm_scaling",
       {[](C& c, S v) { c.policy.persistent_norm_scaling = parse_bool(v); },
        [](const C& c) {
          return std::string(c.policy.persistent_norm_scaling ? "true" : "false");
        }}},
      {"policy.momentum", {[](C& c, S v) { c.policy.momentum = parse_enum(v, kMomentum); },
                           [](const C& c) { return enum_name(c.policy.momentum, kMomentum); }}},
      {"estimator.mode", {[](C& c, S v) { c.estimator.mode = parse_enum(v, kModes); },
                          [](const C& c) { return enum_name(c.estimator.mode, kModes); }}},
      {"estimator.alpha", {[](C& c, S v) { c.estimator.alpha = parse_double(v); },
                           [](const C& c) { return format_double(c.estimator.alpha); }}},
      {"estimator.eta", {[](C& c, S v) { c.estimator.eta = parse_double(v); },
                         [](const C& c) { return format_double(c.estimator.eta); }}},
      {"estimator.init", {[](C& c, S v) { c.estimator.init = parse_enum(v, kInits); },
                          [](const C& c) { return enum_name(c.estimator.init, kInits); }}},
  };
  return keys;
}

const ConfigKey* find_key(std::string_view name) {
  for (const auto& [k, entry] : registry()) {
    if (k == name) return &entry;
  }
  return nullptr;
}

struct OutputKey {
  std::function<void(OutputOptions&, const std::string&)> set;
  std::function<std::string(const OutputOptions&)> get;
};

const std::vector<std::pair<std::string, OutputKey>>& output_registry() {
  using O = OutputOptions;
  using S = const std::string&;
  auto flag = [](bool b) { return std::string(b ? "true" : "false"); };
  static const std::vector<std::pair<std::string, OutputKey>> keys = {
      {"trajectory", {[](O& o, S v) { o.trajectory = parse_bool(v); },
                      [flag](const O& o) { return flag(o.trajectory); }}},
      {"summary", {[](O& o, S v) { o.summary = parse_bool(v); },
                   [flag](const O& o) { return flag(o.summary); }}},
      {"plot_data", {[](O& o, S v) { o.plot_data = parse_bool(v); },
                     [flag](const O& o) { return flag(o.plot_data); }}},
      {"entropy_window",
       {[](O& o, S v) { o.metrics.entropy_window = parse_int<std::size_t>(v); },
        [](const O& o) { return std::to_string(o.metrics.entropy_window); }}},
      {"engagement_window",
       {[](O& o, S v) { o.metrics.engagement_window = parse_int<std::size_t>(v); },
        [](const O& o) { return std::to_string(o.metrics.engagement_window); }}},
      {"prominence",
       {[](O& o, S v) { o.metrics.prominence_fraction = parse_double(v); },
        [](const O& o) { return format_double(o.metrics.prominence_fraction); }}},
      {"plot_stride", {[](O& o, S v) { o.plot_stride = parse_int<std::size_t>(v); },
                       [](const O& o) { return std::to_string(o.plot_stride); }}},
  };
  return keys;
}

void validate_outputs(const OutputOptions& o) {
  if (o.metrics.entropy_window == 0) throw ConfigError("entropy_window must be >= 1");
  if (o.metrics.engagement_window == 0) throw ConfigError("engagement_window must be >= 1");
  if (!(o.metrics.prominence_fraction > 0.0 && o.metrics.prominence_fraction < 1.0)) {
    throw ConfigError("prominence must be in (0, 1)");
  }
  if (o.plot_stride == 0) throw ConfigError("plot_stride must be >= 1");
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  for (const auto& item : split(text, ',')) {
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      seeds.push_back(parse_int<std::uint64_t>(item));
      continue;
    }
    const auto lo = parse_int<std::uint64_t>(trim(item.substr(0, dots)));
    const auto hi = parse_int<std::uint64_t>(trim(item.substr(dots + 2)));
    if (hi < lo) throw ConfigError("seed range '" + item + "' is empty");
    if (hi - lo > 1000000) throw ConfigError("seed range '" + item + "' is too large");
    for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
  }
  if (seeds.empty()) throw ConfigError("seeds must not be empty");
  return seeds;
}

std::string seeds_text(const std::vector<std::uint64_t>& seeds) {
  std::string out;
  for (std::size_t i = 0; i < seeds.size();) {
    std::size_t j = i;
    while (j + 1 < seeds.size() && seeds[j + 1] == seeds[j] + 1) ++j;
    if (!out.empty()) out += ", ";
    if (j - i >= 2) {
      out += std::to_string(seeds[i]) + ".." + std::to_string(seeds[j]);
    } else {
      for (std::size_t k = i; k <= j; ++k) {
        out += std::to_string(seeds[k]) + (k < j ? ", " : "");
      }
    }
    i = j + 1;
  }
  return out;
}

[[noreturn]] void fail_at(std::size_t line, const std::string& key,
                          const std::string& message) {
  std::string where = "line " + std::to_string(line);
  if (!key.empty()) where += ", key '" + key + "'";
  throw ManifestError(where + ": " + message);
}

bool is_config_section(const std::string& s) {
  return s == "simulation" || s == "dynamics" || s == "policy" || s == "estimator";
}

}  // namespace

std::vector<std::string> config_keys() {
  std::vector<std::string> out;
  for (const auto& [k, _] : registry()) out.push_back(k);
  return out;
}

ExperimentManifest parse_manifest(std::string_view text) {
  ExperimentManifest m;
  std::string section;
  std::set<std::string> seen;
  std::set<std::string> seen_variants;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(std::string_view(raw).substr(0, hash));
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') fail_at(line_no, "", "malformed section header");
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      const bool ok = is_config_section(section) || section == "output" ||
                      section == "sweep" ||
                      (section.rfind("variant.", 0) == 0 && section.size() > 8);
      if (!ok) fail_at(line_no, section, "unknown section");
      if (section.rfind("variant.", 0) == 0) {
        const std::string label = section.substr(8);
        if (!seen_variants.insert(label).second) {
          fail_at(line_no, section, "duplicate variant");
        }
        m.variants.push_back({label, {}});
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) fail_at(line_no, "", "expected 'key = value'");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    const std::string path = section.empty() ? key : section + "." + key;
    if (key.empty()) fail_at(line_no, "", "missing key");
    if (!seen.insert(path).second) fail_at(line_no, path, "duplicate key");

    try {
      if (section.empty()) {
        if (key == "name") {
          if (value.empty()) throw ConfigError("name must not be empty");
          m.name = value;
        } else if (key == "seeds") {
          m.seeds = parse_seeds(value);
        } else if (key == "max_runs") {
          m.max_runs = parse_int<std::size_t>(value);
        } else {
          fail_at(line_no, path, "unknown key");
        }
      } else if (is_config_section(section)) {
        const ConfigKey* entry = find_key(path);
        if (entry == nullptr) fail_at(line_no, path, "unknown key");
        entry->set(m.base, value);
      } else if (section == "output") {
        const auto& reg = output_registry();
        const auto it = std::find_if(reg.begin(), reg.end(),
                                     [&](const auto& kv) { return kv.first == key; });
        if (it == reg.end()) fail_at(line_no, path, "unknown key");
        it->second.set(m.outputs, value);
      } else if (section == "sweep") {
        const ConfigKey* entry = find_key(key);
        if (entry == nullptr) fail_at(line_no, path, "unknown sweep key (use section.key)");
        SweepAxis axis{key, split(value, ',')};
        SimulationConfig scratch = m.base;
        for (const auto& v : axis.values) entry->set(scratch, v);
        m.sweep.push_back(std::move(axis));
      } else {
        const ConfigKey* entry = find_key(key);
        if (entry == nullptr) fail_at(line_no, path, "unknown variant key (use section.key)");
        SimulationConfig scratch = m.base;
        entry->set(scratch, value);
        m.variants.back().assignments.push_back({key, value});
      }
    } catch (const ManifestError&) {
      throw;
    } catch (const ConfigError& e) {
      fail_at(line_no, path, e.what());
    }
  }

  try {
    validate_outputs(m.outputs);
  } catch (const ConfigError& e) {
    throw ManifestError(std::string("output: ") + e.what());
  }
  if (m.max_runs == 0) throw ManifestError("max_runs must be >= 1");
  return m;
}

std::string serialize_manifest(const ExperimentManifest& m) {
  std::ostringstream out;
  out << "name = " << m.name << '\n';
  out << "seeds = " << seeds_text(m.seeds) << '\n';
  out << "max_runs = " << m.max_runs << '\n';
  std::string current;
  for (const auto& [path, entry] : registry()) {
    const auto dot = path.find('.');
    const std::string section = path.substr(0, dot);
    if (section != current) {
      out << "\n[" << section << "]\n";
      current = section;
    }
    out << path.substr(dot + 1) << " = " << entry.get(m.base) << '\n';
  }
  out << "\n[output]\n";
  for (const auto& [key, entry] : output_registry()) {
    out << key << " = " << entry.get(m.outputs) << '\n';
  }
  if (!m.sweep.empty()) {
    out << "\n[sweep]\n";
    for (const auto& axis : m.sweep) {
      out << axis.key << " = ";
      for (std::size_t i = 0; i < axis.values.size(); ++i) {
        out << (i ? ", " : "") << axis.values[i];
      }
      out << '\n';
    }
  }
  for (const auto& v : m.variants) {
    out << "\n[variant." << v.label << "]\n";
    for (const auto& a : v.assignments) out << a.key << " = " << a.value << '\n';
  }
  return out.str();
}

std::vector<GridCell> expand_grid(const ExperimentManifest& m) {
  std::vector<Variant> variants = m.variants;
  if (variants.empty()) variants.push_back({"", {}});

  std::vector<GridCell> cells;
  for (const auto& variant : variants) {
    SimulationConfig cfg = m.base;
    for (const auto& a : variant.assignments) find_key(a.key)->set(cfg, a.value);

    std::vector<std::size_t> pos(m.sweep.size(), 0);
    while (true) {
      GridCell cell{variant.label, cfg};
      for (std::size_t k = 0; k < m.sweep.size(); ++k) {
        const auto& axis = m.sweep[k];
        find_key(axis.key)->set(cell.config, axis.values[pos[k]]);
        if (!cell.label.empty()) cell.label += ';';
        cell.label += axis.key + "=" + axis.values[pos[k]];
      }
      if (cell.label.empty()) cell.label = "base";
      try {
        cell.config.validate();
      } catch (const ConfigError& e) {
        throw ManifestError("grid cell '" + cell.label + "': " + e.what());
      }
      cells.push_back(std::move(cell));

      // Odometer step; the last axis varies fastest.
      std::size_t k = m.sweep.size();
      bool advanced = false;
      while (k > 0 && !advanced) {
        --k;
        if (++pos[k] < m.sweep[k].values.size()) {
          advanced = true;
        } else {
          pos[k] = 0;
        }
      }
      if (!advanced) break;
    }
  }
  if (cells.size() * m.seeds.size() > m.max_runs) {
    throw ManifestError("grid has " + std::to_string(cells.size() * m.seeds.size()) +
                        " runs, above max_runs = " + std::to_string(m.max_runs));
  }
  return cells;
}

void override_steps(ExperimentManifest& m, std::int64_t steps) {
  m.base.steps = steps;
  const std::string value = std::to_string(steps);
  for (auto& v : m.variants) {
    for (auto& a : v.assignments) {
      if (a.key == "simulation.steps") a.value = value;
    }
  }
  for (auto& axis : m.sweep) {
    if (axis.key == "simulation.steps") axis.values = {value};
  }
}

ExperimentManifest single_run_manifest(const ExperimentManifest& parent,
                                       const GridCell& cell, std::uint64_t seed) {
  ExperimentManifest m;
  m.name = parent.name;
  m.base = cell.config;
  m.base.seed = 0;
  m.seeds = {seed};
  m.outputs = parent.outputs;
  m.max_runs = 1;
  return m;
}

}  // namespace prefdyn
