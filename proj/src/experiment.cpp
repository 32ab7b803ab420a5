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

#include "prefdyn/experiment.hpp"

#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "prefdyn/sweep.hpp"

namespace prefdyn {

namespace fs = std::filesystem;

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string echo(const ExperimentManifest& m) {
  std::string out;
  std::istringstream in(serialize_manifest(m));
  std::string line;
  while (std::getline(in, line)) out += line.empty() ? "#\n" : "# " + line + "\n";
  return out;
}

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << contents;
  if (!out.flush()) throw std::runtime_error("failed writing " + path.string());
}

void plot_series(std::ostringstream& out, const std::string& prefix,
                 const char* panel, const char* series, const Vector& values,
                 std::size_t t0, std::size_t stride) {
  for (std::size_t i = 0; i < values.size(); i += stride) {
    out << panel << ',' << prefix << ',' << (t0 + i) << ',' << series << ','
        << format_double(values[i]) << '\n';
  }
}

std::string plot_rows(std::size_t config_id, const std::string& label,
                      std::uint64_t seed, const TrajectoryLog& log,
                      const MetricSummary& s, const OutputOptions& opts) {
  std::ostringstream out;
  const std::string prefix =
      std::to_string(config_id) + ',' + csv_field(label) + ',' + std::to_string(seed);
  const std::size_t stride = opts.plot_stride;

  for (std::size_t t = 0; t < log.pi.size(); t += stride) {
    for (std::size_t j = 0; j < log.pi[t].size(); ++j) {
      out << "trajectory," << prefix << ',' << t << ",pi_" << j << ','
          << format_double(log.pi[t][j]) << '\n';
    }
    for (std::size_t j = 0; j < log.u[t].size(); ++j) {
      out << "trajectory," << prefix << ',' << t << ",u_" << j << ','
          << format_double(log.u[t][j]) << '\n';
    }
  }
  plot_series(out, prefix, "magnitude", "pi_norm", s.magnitude_series, 0, stride);

  const std::size_t steps = log.steps();
  if (steps > 0) {
    // Window i covers interactions i+1 .. i+w; it is plotted at its last step.
    const std::size_t ew = std::min(opts.metrics.engagement_window, steps);
    plot_series(out, prefix, "engagement", "rating", s.engagement_series, ew, stride);
    const std::size_t hw = std::min(opts.metrics.entropy_window, steps);
    plot_series(out, prefix, "entropy", "consumption", s.entropy_series, hw, stride);
  }
  return out.str();
}

}  // namespace

std::string trajectory_header(std::size_t d) {
  std::string h = "t,item_index,rating,noiseless_rating";
  for (std::size_t j = 0; j < d; ++j) h += ",pi_" + std::to_string(j);
  for (std::size_t j = 0; j < d; ++j) h += ",u_" + std::to_string(j);
  return h + ",pi_norm";
}

std::string trajectory_csv(const TrajectoryLog& log) {
  std::ostringstream out;
  out << trajectory_header(log.config.d) << '\n';
  for (std::size_t t = 0; t < log.pi.size(); ++t) {
    out << t;
    if (t == 0) {
      out << ",,,";
    } else {
      out << ',' << log.items[t - 1] << ',' << format_double(log.ratings[t - 1]) << ','
          << format_double(log.noiseless_ratings[t - 1]);
    }
    for (double x : log.pi[t]) out << ',' << format_double(x);
    for (double x : log.u[t]) out << ',' << format_double(x);
    out << ',' << format_double(log.pi_norm[t]) << '\n';
  }
  return out.str();
}

ExperimentReport run_experiment(const ExperimentManifest& manifest,
                                const ExperimentOptions& options) {
  const std::vector<GridCell> cells = expand_grid(manifest);
  std::vector<SimulationConfig> grid;
  for (const auto& c : cells) grid.push_back(c.config);
  const OutputOptions& outputs = manifest.outputs;

  ExperimentReport report;
  report.directory = options.out_dir / manifest.name;
  const fs::path traj_dir = report.directory / "trajectories";
  fs::create_directories(report.directory);
  if (outputs.trajectory) fs::create_directories(traj_dir);

  if (options.log != nullptr) {
    std::ostream& log = *options.log;
    log << "experiment " << manifest.name << ": " << cells.size() << " config(s) x "
        << manifest.seeds.size() << " seed(s)\nseeds:";
    for (auto s : manifest.seeds) log << ' ' << s;
    log << "\n" << echo(manifest);
    for (std::size_t i = 0; i < cells.size(); ++i) {
      log << "# config " << i << ": " << cells[i].label << '\n';
    }
    log.flush();
  }

  const std::size_t total = cells.size() * manifest.seeds.size();
  std::vector<std::string> plot_chunks(total);
  std::vector<std::string> write_errors(total);

  RunObserver observer = [&](std::size_t k, std::size_t config_id, std::uint64_t seed,
                             const TrajectoryLog& log, const MetricSummary& summary) {
    if (outputs.trajectory) {
      const fs::path path = traj_dir / ("cfg" + std::to_string(config_id) + "_seed" +
                                        std::to_string(seed) + ".csv");
      try {
        write_file(path, echo(single_run_manifest(manifest, cells[config_id], seed)) +
                             trajectory_csv(log));
      } catch (const std::exception& e) {
        write_errors[k] = e.what();
      }
    }
    if (outputs.plot_data) {
      plot_chunks[k] = plot_rows(config_id, cells[config_id].label, seed, log, summary,
                                 outputs);
    }
  };

  const auto results =
      run_sweep(grid, manifest.seeds, options.parallelism, outputs.metrics, observer);

  std::ostringstream summary;
  summary << echo(manifest) << kSummaryHeader << '\n';
  for (std::size_t k = 0; k < results.size(); ++k) {
    const auto& r = results[k];
    std::string error = r.error.empty() ? write_errors[k] : r.error;
    const bool ok = r.summary.has_value() && error.empty();
    ++report.runs;
    if (!ok) ++report.failures;
    if (!ok && options.log != nullptr) {
      *options.log << "run failed: config " << r.config_id << " seed " << r.seed << ": "
                   << error << '\n';
    }
    if (outputs.trajectory && r.summary) {
      report.files.push_back(traj_dir / ("cfg" + std::to_string(r.config_id) + "_seed" +
                                         std::to_string(r.seed) + ".csv"));
    }
    summary << r.config_id << ',' << csv_field(cells[r.config_id].label) << ',' << r.seed
            << ',' << (ok ? "ok" : "failed");
    if (r.summary) {
      const auto& s = *r.summary;
      summary << ',' << format_double(s.mean_engagement) << ','
              << format_double(s.mean_noiseless_engagement) << ','
              << format_double(s.consumption_entropy) << ','
              << format_double(s.mean_magnitude) << ','
              << format_double(s.final_magnitude) << ',' << s.peak_count << ','
              << format_double(s.median_period) << ',' << format_double(s.amplitude);
    } else {
      summary << ",,,,,,,,";
    }
    summary << ',' << csv_field(error) << '\n';
  }

  if (outputs.summary) {
    const fs::path path = report.directory / "summary.csv";
    write_file(path, summary.str());
    report.files.push_back(path);
  }
  if (outputs.plot_data) {
    const fs::path path = report.directory / "plot_data.csv";
    std::string contents = echo(manifest) + kPlotDataHeader + "\n";
    for (const auto& chunk : plot_chunks) contents += chunk;
    write_file(path, contents);
    report.files.push_back(path);
  }
  if (options.log != nullptr) {
    *options.log << "finished: " << report.runs - report.failures << "/" << report.runs
                 << " runs ok, output in " << report.directory.string() << '\n';
  }
  return report;
}

}  // namespace prefdyn
