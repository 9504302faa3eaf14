#pragma once

#include <vector>

#include "multinet/core.hpp"
#include "multinet/rng.hpp"

namespace multinet {

// Per-layer categorical distribution over community labels.  Labels are
// 0-based indices into a global label space of size n_c; labels outside the
// layer's support carry probability zero.
struct CategoricalNull {
  std::vector<double> probabilities;  // length n_c, sums to 1
  std::vector<int> support;           // labels with nonzero probability
  std::vector<double> cumulative;     // running sum over `support`

  static CategoricalNull from_probabilities(std::vector<double> probabilities);
};

// The null distributions for every layer of a shape, sharing one label space.
class NullSet {
 public:
  NullSet(int label_count, std::vector<CategoricalNull> layers);

  int label_count() const { return label_count_; }
  int layer_count() const { return static_cast<int>(layers_.size()); }
  const CategoricalNull& layer(int flat_layer) const {
    return layers_.at(flat_layer);
  }

  // One label drawn from layer `flat_layer`'s distribution, consuming a
  // single uniform variate.
  int draw(int flat_layer, RngStream& rng) const;
  // Same draw driven by an externally supplied uniform in [0, 1).
  int draw_with_uniform(int flat_layer, double u) const;

 private:
  int label_count_;
  std::vector<CategoricalNull> layers_;
};

// How each layer's set of available labels is chosen.
struct SupportProcessSpec {
  enum class Variant { full, temporal_birth_death, multiplex_presence };
  Variant variant = Variant::full;

  // temporal_birth_death: walking the layers in temporal order, each label in
  // the previous support dies with probability death_rate and a
  // Poisson(birth_rate) number of never-before-seen labels is added.  The
  // label space grows as needed; supports of size zero are redrawn.
  double death_rate = 0;
  double birth_rate = 0;
  int initial_size = 0;

  // multiplex_presence: each of the n_c labels is present in each layer
  // independently with probability presence_probability; empty supports are
  // redrawn.
  double presence_probability = 1.0;

  static SupportProcessSpec full();
  static SupportProcessSpec temporal_birth_death(double death_rate,
                                                 double birth_rate,
                                                 int initial_size);
  static SupportProcessSpec multiplex_presence(double presence_probability);
};

// A symmetric Dirichlet draw with concentration theta in `dimension`
// categories (via normalized gamma variates).  All entries are positive.
std::vector<double> sample_dirichlet(double theta, int dimension,
                                     RngStream& rng);

// Builds one categorical null per layer: the support process fixes each
// layer's label set, then the probabilities on that set are a symmetric
// Dirichlet draw with concentration theta.  With shared_probabilities (full
// support only) a single Dirichlet draw is reused for every layer.
// For temporal_birth_death, n_c is ignored and determined by the process;
// the shape must have exactly one aspect and it must be ordered.
NullSet build_null_set(const MultilayerShape& shape, int n_c, double theta,
                       const SupportProcessSpec& support, RngStream& rng,
                       bool shared_probabilities = false);

}  // namespace multinet
