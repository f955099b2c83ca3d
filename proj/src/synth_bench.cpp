#include "advcurate/synth_bench.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <unordered_set>

#include "advcurate/errors.hpp"

namespace advcurate::synth {

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw DomainError("Rng::below: bound must be positive");
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = engine_();
    if (r >= threshold) return r % bound;
  }
}

std::size_t Rng::categorical(const std::vector<double>& probs) {
  const double u = uniform();
  double acc = 0.0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    acc += probs[k];
    if (u < acc) return k;
  }
  return probs.size() - 1;
}

void SynthConfig::validate() const {
  if (num_samples == 0) throw ConfigError("num_samples must be positive");
  if (num_classes < 2) throw ConfigError("num_classes must be at least 2");
  if (!class_prior.empty()) {
    if (class_prior.size() != static_cast<std::size_t>(num_classes)) {
      throw ConfigError("class_prior must have one entry per class");
    }
    for (double p : class_prior) {
      if (!(p >= 0.0)) throw ConfigError("class_prior entries must be non-negative");
    }
    const double total = std::accumulate(class_prior.begin(), class_prior.end(), 0.0);
    if (std::fabs(total - 1.0) > 1e-9) throw ConfigError("class_prior must sum to 1");
  }
  if (lfs.empty()) throw ConfigError("at least one labeling function spec is required");
  if (!(hard_fraction >= 0.0 && hard_fraction <= 1.0)) throw ConfigError("hard_fraction must lie in [0, 1]");
  std::unordered_set<std::string> names;
  for (std::size_t j = 0; j < lfs.size(); ++j) {
    const auto& lf = lfs[j];
    const std::string tag = "lf spec " + std::to_string(j) + ": ";
    if (!lf.name.empty() && !names.insert(lf.name).second) throw ConfigError(tag + "duplicate name");
    if (lf.duplicate_of) {
      if (*lf.duplicate_of >= j) throw ConfigError(tag + "duplicate_of must reference an earlier spec");
      continue;
    }
    if (!(lf.accuracy > 0.0 && lf.accuracy < 1.0)) throw ConfigError(tag + "accuracy must lie in (0, 1)");
    if (!(lf.abstain_rate >= 0.0 && lf.abstain_rate < 1.0)) {
      throw ConfigError(tag + "abstain_rate must lie in [0, 1)");
    }
    if (lf.hard_stratum_accuracy && !(*lf.hard_stratum_accuracy > 0.0 && *lf.hard_stratum_accuracy < 1.0)) {
      throw ConfigError(tag + "hard_stratum_accuracy must lie in (0, 1)");
    }
  }
}

namespace {

int wrong_label(Rng& rng, int truth, int num_classes) {
  int w = static_cast<int>(rng.below(static_cast<std::uint64_t>(num_classes - 1))) + 1;
  return w >= truth ? w + 1 : w;
}

}  // namespace

SynthCorpus generate(const SynthConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  const std::size_t n = cfg.num_samples;
  const int k = cfg.num_classes;
  std::vector<double> prior = cfg.class_prior;
  if (prior.empty()) prior.assign(static_cast<std::size_t>(k), 1.0 / k);

  GroundTruth truth;
  truth.labels.resize(n);
  std::vector<bool> hard(n);
  for (std::size_t i = 0; i < n; ++i) {
    truth.labels[i] = static_cast<int>(rng.categorical(prior)) + 1;
    hard[i] = rng.bernoulli(cfg.hard_fraction);
  }

  const std::size_t p = cfg.lfs.size();
  std::vector<std::vector<int>> columns(p, std::vector<int>(n));
  for (std::size_t j = 0; j < p; ++j) {
    const auto& spec = cfg.lfs[j];
    auto& col = columns[j];
    if (spec.duplicate_of) {
      const auto& parent = columns[*spec.duplicate_of];
      for (std::size_t i = 0; i < n; ++i) {
        int v = parent[i];
        if (v != kAbstain && rng.bernoulli(kDuplicateFlipRate)) v = wrong_label(rng, v, k);
        col[i] = v;
      }
      continue;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (rng.bernoulli(spec.abstain_rate)) {
        col[i] = kAbstain;
        continue;
      }
      const double acc = (hard[i] && spec.hard_stratum_accuracy) ? *spec.hard_stratum_accuracy : spec.accuracy;
      col[i] = rng.bernoulli(acc) ? truth.labels[i] : wrong_label(rng, truth.labels[i], k);
    }
  }

  std::vector<std::string> names(p);
  for (std::size_t j = 0; j < p; ++j) {
    names[j] = cfg.lfs[j].name.empty() ? "lf_" + std::to_string(j) : cfg.lfs[j].name;
  }
  std::vector<int> entries(n * p);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < p; ++j) entries[i * p + j] = columns[j][i];
  }
  return SynthCorpus{LabelMatrix(std::move(names), k, std::move(entries)), std::move(truth), std::move(hard)};
}

SynthConfig benchmark_config(std::uint64_t seed, std::size_t num_samples) {
  SynthConfig cfg;
  cfg.num_samples = num_samples;
  cfg.num_classes = 2;
  cfg.hard_fraction = 0.3;
  cfg.seed = seed;
  auto base = [](std::string name, double abstain) {
    return LfSpec{std::move(name), 0.9, abstain, std::nullopt, 0.55};
  };
  auto dup = [](std::string name, std::size_t parent) {
    return LfSpec{std::move(name), 0.9, 0.0, parent, std::nullopt};
  };
  cfg.lfs = {
      base("lf_a", 0.2),  dup("lf_a_dup1", 0), dup("lf_a_dup2", 0),
      base("lf_b", 0.3),  dup("lf_b_dup1", 3), dup("lf_b_dup2", 3),
      base("lf_c", 0.1),  base("lf_d", 0.25), base("lf_e", 0.4),
      base("lf_f", 0.5),  base("lf_g", 0.35), base("lf_h", 0.2),
  };
  return cfg;
}

SynthConfig independent_config(std::uint64_t seed, std::size_t num_samples) {
  SynthConfig cfg;
  cfg.num_samples = num_samples;
  cfg.num_classes = 2;
  cfg.hard_fraction = 0.3;
  cfg.seed = seed;
  const double acc[] = {0.9, 0.85, 0.8, 0.75, 0.85, 0.9};
  const double abstain[] = {0.1, 0.3, 0.2, 0.4, 0.25, 0.5};
  for (std::size_t j = 0; j < 6; ++j) {
    cfg.lfs.push_back(LfSpec{"lf_" + std::to_string(j), acc[j], abstain[j], std::nullopt, 0.55});
  }
  return cfg;
}

SynthConfig recovery_config(std::uint64_t seed, std::size_t num_samples) {
  SynthConfig cfg;
  cfg.num_samples = num_samples;
  cfg.num_classes = 2;
  cfg.seed = seed;
  const double acc[] = {0.9, 0.8, 0.7, 0.6, 0.55};
  for (std::size_t j = 0; j < 5; ++j) {
    cfg.lfs.push_back(LfSpec{"lf_" + std::to_string(j), acc[j], 0.0, std::nullopt, std::nullopt});
  }
  return cfg;
}

}  // namespace advcurate::synth
