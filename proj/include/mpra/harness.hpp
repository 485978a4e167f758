// SPDX-License-Identifier: Apache-2.0
//
// Monte Carlo engine: selection draw -> channel -> correlation block ->
// detection -> estimation -> per-trial scoring, aggregated into rates.

#pragma once

#include "mpra/bounds.hpp"
#include "mpra/channel.hpp"
#include "mpra/detector.hpp"
#include "mpra/estimator.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mpra {

enum class ChannelModel { iid, correlated };

std::string to_string(ChannelModel m);
ChannelModel parse_channel_model(const std::string& s);

struct ExperimentConfig {
  int K = 16;
  int L = 2;
  int N = 1;
  int M = 128;
  double snr_db = 0.0;  ///< +inf for a noiseless link
  ChannelModel channel = ChannelModel::iid;
  CorrelatedGeometry geometry;
  double th = 0.4;        ///< pair threshold; energy threshold when L = 1
  double prune_th = 0.5;  ///< minimum estimated-channel norm kept after estimation
  std::int64_t trials = 10'000;
  std::uint64_t seed = 1;
  /// Skip the physical layer and score only selection solvability.
  bool solvability_only = false;
  std::int64_t search_cap = kDefaultSearchCap;

  void validate() const;
};

/// Everything one trial produces. Success of UE n is solvable[n] &&
/// detected[n]; `errors` covers UEs that are solvable and survive pruning.
struct TrialOutcome {
  std::vector<bool> solvable;
  std::vector<bool> detected;
  bool full_row_rank = false;
  int detected_tuples = 0;
  int false_tuples = 0;
  std::vector<MatchedError> errors;

  int solvable_count() const;
  int success_count() const;
  bool all_success() const;
};

/// Deterministic in (cfg, trial_index).
TrialOutcome run_trial(const ExperimentConfig& cfg, std::int64_t trial_index);

struct RateEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

struct Metrics {
  RateEstimate p_single_solvable;
  RateEstimate p_all_solvable;
  std::optional<RateEstimate> p_single_success;  ///< absent in solvability-only runs
  std::optional<RateEstimate> p_all_success;
  /// Fraction of detected tuples that no UE sent.
  std::optional<RateEstimate> false_detect_rate;
  std::optional<double> nmse;
  std::int64_t nmse_samples = 0;
  std::int64_t trials_run = 0;
};

/// Runs trials 0 .. cfg.trials-1 on `threads` workers (0 = hardware
/// concurrency). Results are bit-identical for any thread count.
Metrics run_experiment(const ExperimentConfig& cfg, int threads = 0);

enum class SweepVariable { N, snr_db, L, K };

std::string to_string(SweepVariable v);

struct SweepRow {
  double value = 0.0;
  ExperimentConfig cfg;
  Metrics metrics;
  BoundSet single_user;
  BoundSet all_user;
};

/// One experiment per value of `variable`. With `kl_budget` set, sweeping L
/// sets K = budget / L and sweeping K sets L = budget / K; a value that does
/// not divide the budget is rejected with InvalidParameter.
std::vector<SweepRow> sweep(const ExperimentConfig& base, SweepVariable variable, const std::vector<double>& values,
                            std::optional<int> kl_budget = std::nullopt, int threads = 0);

/// The configuration `sweep` would run for one value.
ExperimentConfig sweep_point(const ExperimentConfig& base, SweepVariable variable, double value,
                             std::optional<int> kl_budget = std::nullopt);

}  // namespace mpra
