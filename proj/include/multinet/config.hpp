#pragma once

#include <string>

#include "multinet/pipeline.hpp"

namespace multinet {

// Benchmark configuration as a JSON document.  Every field is checked: wrong
// types, out-of-range values and unknown keys all raise ValidationError with
// the offending key path.  See README for the schema.
BenchmarkConfig parse_benchmark_config(const std::string& json_text);

// The same document with an additional `sweep` section holding the detection
// grid (mu, omega, rules, runs, coupling).
struct SweepConfig {
  BenchmarkConfig base;
  SweepGrid grid;
};
SweepConfig parse_sweep_config(const std::string& json_text);

// Canonical JSON rendering of a config (keys sorted, 2-space indent, LF).
// parse(render(config)) == config.
std::string render_benchmark_config(const BenchmarkConfig& config);

// Manifest document for an output directory: tool name and version, the full
// config, and the effective master seed.  Byte-identical for equal inputs.
std::string render_manifest(const BenchmarkConfig& config);
std::string render_manifest(const BenchmarkConfig& config,
                            const SweepGrid& grid);

}  // namespace multinet
