#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "multinet/core.hpp"
#include "multinet/dependency.hpp"
#include "multinet/detection.hpp"
#include "multinet/edge_sampler.hpp"
#include "multinet/network.hpp"
#include "multinet/nulldist.hpp"
#include "multinet/partition_sampler.hpp"

namespace multinet {

// Which layer-dependency builder a benchmark uses, plus its parameters.
// Unused fields are ignored by the builders that do not read them.
struct DependencySpec {
  enum class Type { temporal, multiplex, temporal_multiplex, block_multiplex };
  Type type = Type::temporal;

  // temporal / multiplex / temporal_multiplex scalar probability.
  double p = 0;
  // temporal: per-transition probabilities (length l - 1); overrides `p`.
  std::vector<double> p_per_transition;
  // temporal: 1-based transition indexes forced to zero (change points);
  // transition t severs layers t and t + 1.
  std::vector<int> changepoints;
  // temporal_multiplex: per-(other-aspect-pair) probability table; overrides
  // `p`.  Empty means uniform.
  std::vector<std::vector<double>> coupling_table;
  // block_multiplex: block id per layer (0-based, contiguous ids).
  std::vector<int> blocks;
  // block_multiplex: per-block copy mass; overrides `p`.
  std::vector<double> block_p;
};

struct NullSpec {
  int communities = 0;  // n_c; ignored by the birth/death support process
  double theta = 1.0;
  SupportProcessSpec support = SupportProcessSpec::full();
  bool shared_probabilities = false;
};

// Intralayer degree-corrected edge model: expected degrees from a truncated
// power law (density ~ k^exponent on [k_min, k_max]) and community mixing mu.
struct EdgeSpec {
  double exponent = -2.0;
  double k_min = 3.0;
  double k_max = 30.0;
  double mu = 0.1;
};

// Everything needed to generate one benchmark instance deterministically.
struct BenchmarkConfig {
  int nodes = 0;
  std::vector<AspectSpec> aspects;
  DependencySpec dependency;
  NullSpec null_model;
  SamplerConfig sampler;  // sampler.seed is ignored; `seed` below rules
  EdgeSpec edges;
  std::uint64_t seed = 0;

  MultilayerShape shape() const { return MultilayerShape(nodes, aspects); }
};

// Instantiates the configured layer-dependency builder and checks that the
// aspect list matches what the builder produces.
LayerDependencyTensor build_dependency(const DependencySpec& spec,
                                       const std::vector<AspectSpec>& aspects);

struct GeneratedBenchmark {
  MultilayerPartition partition;
  MultilayerNetwork network;
  std::vector<double> expected_degrees;
};

// Full generation pipeline: null distributions, one partition chain, expected
// degrees, and a sampled network.  Every random stage draws from a stream
// derived from config.seed, so equal configs give equal outputs.
GeneratedBenchmark generate_benchmark(const BenchmarkConfig& config);

// Detection sweep over mixing and coupling grids.  The benchmark instance for
// a given mu is generated once (its seed depends only on the mu index) and
// shared by all omega values and rules, so comparisons along omega are
// paired.  Each detector run draws from its own derived stream.
struct SweepGrid {
  std::vector<double> mu_values;
  std::vector<double> omega_values;
  std::vector<MoveRule> rules;
  int runs = 10;
  CouplingTopology topology = CouplingTopology::ordinal;
};

struct SweepRow {
  double mu = 0;
  double omega = 0;
  MoveRule rule = MoveRule::max_gain;
  int run = 0;  // 1-based within the grid point
  double mean_nmi = 0;
};

std::vector<SweepRow> nmi_sweep(const BenchmarkConfig& base,
                                const SweepGrid& grid);

// CSV rendering of sweep rows: header `mu,omega,rule,run,mean_nmi`.
std::string sweep_csv(const std::vector<SweepRow>& rows);

inline const char* move_rule_name(MoveRule rule) {
  return rule == MoveRule::max_gain ? "max_gain" : "proportional_gain";
}

}  // namespace multinet
