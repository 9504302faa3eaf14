#include "multinet/nulldist.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace multinet {

namespace {

constexpr int kEmptySupportRetries = 1000;

}  // namespace

CategoricalNull CategoricalNull::from_probabilities(
    std::vector<double> probabilities) {
  CategoricalNull null;
  null.probabilities = std::move(probabilities);
  double total = 0;
  for (std::size_t s = 0; s < null.probabilities.size(); ++s) {
    const double p = null.probabilities[s];
    if (!(p >= 0.0)) {
      throw std::invalid_argument("null distribution: negative probability");
    }
    total += p;
    if (p > 0) {
      null.support.push_back(static_cast<int>(s));
      null.cumulative.push_back(total);
    }
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw std::invalid_argument("null distribution: probabilities must sum to 1");
  }
  if (null.support.empty()) {
    throw std::invalid_argument("null distribution: empty support");
  }
  // Guard the final bucket against accumulated rounding.
  null.cumulative.back() = 1.0;
  return null;
}

NullSet::NullSet(int label_count, std::vector<CategoricalNull> layers)
    : label_count_(label_count), layers_(std::move(layers)) {
  if (label_count_ <= 0) {
    throw std::invalid_argument("null set: label count must be positive");
  }
  if (layers_.empty()) {
    throw std::invalid_argument("null set: at least one layer required");
  }
  for (const CategoricalNull& null : layers_) {
    if (static_cast<int>(null.probabilities.size()) != label_count_) {
      throw std::invalid_argument(
          "null set: every layer needs one probability per label");
    }
  }
}

int NullSet::draw(int flat_layer, RngStream& rng) const {
  return draw_with_uniform(flat_layer, rng.uniform());
}

int NullSet::draw_with_uniform(int flat_layer, double u) const {
  const CategoricalNull& null = layers_.at(flat_layer);
  const auto it =
      std::upper_bound(null.cumulative.begin(), null.cumulative.end(), u);
  const std::size_t idx =
      std::min(static_cast<std::size_t>(it - null.cumulative.begin()),
               null.support.size() - 1);
  return null.support[idx];
}

SupportProcessSpec SupportProcessSpec::full() {
  SupportProcessSpec spec;
  spec.variant = Variant::full;
  return spec;
}

SupportProcessSpec SupportProcessSpec::temporal_birth_death(double death_rate,
                                                            double birth_rate,
                                                            int initial_size) {
  if (!(death_rate >= 0.0 && death_rate <= 1.0)) {
    throw std::invalid_argument("support: death rate must lie in [0, 1]");
  }
  if (birth_rate < 0) {
    throw std::invalid_argument("support: birth rate must be >= 0");
  }
  if (initial_size <= 0) {
    throw std::invalid_argument("support: initial size must be positive");
  }
  SupportProcessSpec spec;
  spec.variant = Variant::temporal_birth_death;
  spec.death_rate = death_rate;
  spec.birth_rate = birth_rate;
  spec.initial_size = initial_size;
  return spec;
}

SupportProcessSpec SupportProcessSpec::multiplex_presence(
    double presence_probability) {
  if (!(presence_probability > 0.0 && presence_probability <= 1.0)) {
    throw std::invalid_argument("support: presence probability must be in (0, 1]");
  }
  SupportProcessSpec spec;
  spec.variant = Variant::multiplex_presence;
  spec.presence_probability = presence_probability;
  return spec;
}

std::vector<double> sample_dirichlet(double theta, int dimension,
                                     RngStream& rng) {
  if (theta <= 0) {
    throw std::invalid_argument("dirichlet: concentration must be positive");
  }
  if (dimension <= 0) {
    throw std::invalid_argument("dirichlet: dimension must be positive");
  }
  std::vector<double> draw(dimension);
  for (int attempt = 0; attempt < kEmptySupportRetries; ++attempt) {
    double total = 0;
    for (int i = 0; i < dimension; ++i) {
      draw[i] = rng.gamma(theta);
      total += draw[i];
    }
    bool positive = total > 0;
    for (int i = 0; i < dimension && positive; ++i) {
      draw[i] /= total;
      positive = draw[i] > 0;
    }
    if (positive) return draw;
    // A zero coordinate (gamma underflow at tiny theta) would silently
    // shrink the support; redraw instead.
  }
  throw std::runtime_error("dirichlet: could not draw a strictly positive vector");
}

namespace {

std::vector<std::vector<int>> birth_death_supports(const MultilayerShape& shape,
                                                   const SupportProcessSpec& spec,
                                                   RngStream& rng,
                                                   int* label_count_out) {
  if (shape.aspect_count() != 1 ||
      shape.aspects()[0].ordering != AspectOrdering::ordered) {
    throw std::invalid_argument(
        "support: the birth/death process needs a single ordered aspect");
  }
  const int l = shape.layer_count();
  std::vector<std::vector<int>> supports(l);
  int next_label = spec.initial_size;
  supports[0].resize(spec.initial_size);
  for (int s = 0; s < spec.initial_size; ++s) supports[0][s] = s;
  for (int layer = 1; layer < l; ++layer) {
    int attempts = 0;
    for (;;) {
      std::vector<int> current;
      for (int label : supports[layer - 1]) {
        if (rng.uniform() >= spec.death_rate) current.push_back(label);
      }
      const int births = rng.poisson(spec.birth_rate);
      for (int b = 0; b < births; ++b) current.push_back(next_label + b);
      if (!current.empty()) {
        next_label += births;  // fresh labels burned only on acceptance
        supports[layer] = std::move(current);
        break;
      }
      if (++attempts >= kEmptySupportRetries) {
        throw std::runtime_error(
            "support: birth/death produced an empty support repeatedly");
      }
    }
  }
  *label_count_out = next_label;
  return supports;
}

std::vector<std::vector<int>> presence_supports(const MultilayerShape& shape,
                                                int n_c,
                                                const SupportProcessSpec& spec,
                                                RngStream& rng) {
  const int l = shape.layer_count();
  std::vector<std::vector<int>> supports(l);
  for (int layer = 0; layer < l; ++layer) {
    int attempts = 0;
    for (;;) {
      std::vector<int> current;
      for (int s = 0; s < n_c; ++s) {
        if (rng.uniform() < spec.presence_probability) current.push_back(s);
      }
      if (!current.empty()) {
        supports[layer] = std::move(current);
        break;
      }
      if (++attempts >= kEmptySupportRetries) {
        throw std::runtime_error(
            "support: presence sampling produced an empty support repeatedly");
      }
    }
  }
  return supports;
}

}  // namespace

NullSet build_null_set(const MultilayerShape& shape, int n_c, double theta,
                       const SupportProcessSpec& support, RngStream& rng,
                       bool shared_probabilities) {
  const int l = shape.layer_count();
  int label_count = n_c;
  std::vector<std::vector<int>> supports;
  switch (support.variant) {
    case SupportProcessSpec::Variant::full: {
      if (n_c <= 0) {
        throw std::invalid_argument("null set: n_c must be positive");
      }
      supports.assign(l, {});
      for (int layer = 0; layer < l; ++layer) {
        supports[layer].resize(n_c);
        for (int s = 0; s < n_c; ++s) supports[layer][s] = s;
      }
      break;
    }
    case SupportProcessSpec::Variant::temporal_birth_death:
      supports = birth_death_supports(shape, support, rng, &label_count);
      break;
    case SupportProcessSpec::Variant::multiplex_presence:
      if (n_c <= 0) {
        throw std::invalid_argument("null set: n_c must be positive");
      }
      supports = presence_supports(shape, n_c, support, rng);
      break;
  }

  if (shared_probabilities &&
      support.variant != SupportProcessSpec::Variant::full) {
    throw std::invalid_argument(
        "null set: shared probabilities require the full support process");
  }

  std::vector<CategoricalNull> layers;
  layers.reserve(l);
  std::vector<double> shared;
  if (shared_probabilities) shared = sample_dirichlet(theta, label_count, rng);
  for (int layer = 0; layer < l; ++layer) {
    const std::vector<int>& sup = supports[layer];
    std::vector<double> on_support =
        shared_probabilities ? shared
                             : sample_dirichlet(theta,
                                                static_cast<int>(sup.size()),
                                                rng);
    std::vector<double> probs(label_count, 0.0);
    for (std::size_t k = 0; k < sup.size(); ++k) probs[sup[k]] = on_support[k];
    layers.push_back(CategoricalNull::from_probabilities(std::move(probs)));
  }
  return NullSet(label_count, std::move(layers));
}

}  // namespace multinet
