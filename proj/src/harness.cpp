// SPDX-License-Identifier: Apache-2.0

#include "mpra/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

namespace mpra {

std::string to_string(ChannelModel m) { return m == ChannelModel::iid ? "iid" : "correlated"; }

ChannelModel parse_channel_model(const std::string& s) {
  if (s == "iid") return ChannelModel::iid;
  if (s == "correlated") return ChannelModel::correlated;
  throw InvalidParameter("unknown channel model '" + s + "' (expected iid or correlated)");
}

std::string to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::N: return "N";
    case SweepVariable::snr_db: return "snr_db";
    case SweepVariable::L: return "L";
    case SweepVariable::K: return "K";
  }
  return "?";
}

void ExperimentConfig::validate() const {
  require(K >= 1 && L >= 1 && N >= 1 && M >= 1, "K, L, N and M must be >= 1");
  require(trials >= 1, "trials must be >= 1");
  require(!std::isnan(snr_db) && snr_db > -std::numeric_limits<double>::infinity(), "SNR must be finite or +inf");
  require(th > 0.0, "detection threshold must be > 0");
  require(prune_th >= 0.0, "prune threshold must be >= 0");
  if (channel == ChannelModel::correlated) geometry.validate();
}

int TrialOutcome::solvable_count() const {
  return static_cast<int>(std::count(solvable.begin(), solvable.end(), true));
}

int TrialOutcome::success_count() const {
  int s = 0;
  for (std::size_t n = 0; n < solvable.size(); ++n) s += (solvable[n] && n < detected.size() && detected[n]) ? 1 : 0;
  return s;
}

bool TrialOutcome::all_success() const {
  return full_row_rank && detected.size() == solvable.size() &&
         std::all_of(detected.begin(), detected.end(), [](bool d) { return d; });
}

TrialOutcome run_trial(const ExperimentConfig& cfg, std::int64_t trial_index) {
  Rng rng = trial_stream(cfg.seed, static_cast<std::uint64_t>(trial_index));
  const SelectionMatrix A = draw_selection(cfg.K, cfg.L, cfg.N, rng);
  const RankReport rank = solvability(A);

  TrialOutcome out;
  out.solvable = rank.solvable_mask;
  out.full_row_rank = rank.full_row_rank;
  if (cfg.solvability_only) return out;

  const ChannelMatrix H = cfg.channel == ChannelModel::iid
                              ? iid_rayleigh(cfg.M, cfg.N, rng)
                              : correlated_rayleigh(cfg.M, cfg.N, cfg.geometry, rng);
  const CorrelationBlock B =
      synthesize_correlation_fast(H, A, NoiseSpec::from_snr_db(cfg.snr_db, cfg.M, cfg.K), rng);
  const DetectionResult det =
      cfg.L == 1 ? detect_single_phase(B, cfg.th) : detect(cross_correlations(B), cfg.th, cfg.search_cap);

  out.detected.assign(cfg.N, false);
  out.detected_tuples = det.count();
  for (int c = 0; c < det.count(); ++c) {
    bool sent = false;
    for (int n = 0; n < cfg.N; ++n) {
      if (A.row_equals(n, det.A_hat, c)) {
        out.detected[n] = true;
        sent = true;
      }
    }
    out.false_tuples += sent ? 0 : 1;
  }

  const ChannelEstimate est = prune_false(estimate_channels(B, det), cfg.prune_th);
  out.errors = matched_errors(est, H, A, out.solvable);
  return out;
}

namespace {

/// Per-trial reduction record; integer counts keep the aggregate exact.
struct TrialSummary {
  int solvable = 0;
  int success = 0;
  bool full_rank = false;
  bool all_success = false;
  int detected_tuples = 0;
  int false_tuples = 0;
  int matched = 0;
  double err = 0.0;
  double pow = 0.0;
};

TrialSummary summarize(const TrialOutcome& t) {
  TrialSummary s;
  s.solvable = t.solvable_count();
  s.success = t.success_count();
  s.full_rank = t.full_row_rank;
  s.all_success = t.all_success();
  s.detected_tuples = t.detected_tuples;
  s.false_tuples = t.false_tuples;
  s.matched = static_cast<int>(t.errors.size());
  for (const auto& e : t.errors) {
    s.err += e.squared_error;
    s.pow += e.power;
  }
  return s;
}

/// Mean of per-trial fractions k_t / n with the standard error of that mean.
RateEstimate fraction_estimate(std::int64_t sum_k, std::int64_t sum_k2, std::int64_t trials, int n) {
  const double T = static_cast<double>(trials);
  const double mean_k = static_cast<double>(sum_k) / T;
  RateEstimate r;
  r.value = mean_k / n;
  if (trials > 1) {
    const double var_k = std::max(0.0, (static_cast<double>(sum_k2) - T * mean_k * mean_k) / (T - 1.0));
    r.std_error = std::sqrt(var_k / T) / n;
  }
  return r;
}

}  // namespace

Metrics run_experiment(const ExperimentConfig& cfg, int threads) {
  cfg.validate();
  const std::int64_t T = cfg.trials;
  std::vector<TrialSummary> summaries(static_cast<std::size_t>(T));

  int workers = threads > 0 ? threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = static_cast<int>(std::min<std::int64_t>(workers, T));
  constexpr std::int64_t kChunk = 64;
  std::atomic<std::int64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto work = [&] {
    try {
      for (;;) {
        const std::int64_t begin = next.fetch_add(kChunk);
        if (begin >= T) return;
        const std::int64_t end = std::min(T, begin + kChunk);
        for (std::int64_t i = begin; i < end; ++i) summaries[static_cast<std::size_t>(i)] = summarize(run_trial(cfg, i));
      }
    } catch (...) {
      std::lock_guard lock(failure_mu);
      if (!failure) failure = std::current_exception();
      next.store(T);
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  // Serial reduction in trial order, independent of scheduling.
  std::int64_t solv = 0, solv2 = 0, succ = 0, succ2 = 0, full = 0, all_succ = 0;
  std::int64_t tuples = 0, false_tuples = 0, matched = 0;
  double err = 0.0, pow = 0.0;
  for (const auto& s : summaries) {
    solv += s.solvable;
    solv2 += static_cast<std::int64_t>(s.solvable) * s.solvable;
    succ += s.success;
    succ2 += static_cast<std::int64_t>(s.success) * s.success;
    full += s.full_rank ? 1 : 0;
    all_succ += s.all_success ? 1 : 0;
    tuples += s.detected_tuples;
    false_tuples += s.false_tuples;
    matched += s.matched;
    err += s.err;
    pow += s.pow;
  }

  Metrics m;
  m.trials_run = T;
  m.p_single_solvable = fraction_estimate(solv, solv2, T, cfg.N);
  m.p_all_solvable = fraction_estimate(full, full, T, 1);
  if (!cfg.solvability_only) {
    m.p_single_success = fraction_estimate(succ, succ2, T, cfg.N);
    m.p_all_success = fraction_estimate(all_succ, all_succ, T, 1);
    RateEstimate f;
    if (tuples > 0) {
      f.value = static_cast<double>(false_tuples) / static_cast<double>(tuples);
      f.std_error = std::sqrt(f.value * (1.0 - f.value) / static_cast<double>(tuples));
    }
    m.false_detect_rate = f;
    m.nmse_samples = matched;
    if (matched > 0 && pow > 0.0) m.nmse = err / pow;
  }
  return m;
}

ExperimentConfig sweep_point(const ExperimentConfig& base, SweepVariable variable, double value,
                             std::optional<int> kl_budget) {
  ExperimentConfig cfg = base;
  auto as_int = [&](const char* name) {
    const double r = std::round(value);
    if (r != value || r < 1) {
      throw InvalidParameter(std::string("sweep value ") + std::to_string(value) + " is not a positive integer " + name);
    }
    return static_cast<int>(r);
  };
  auto split_budget = [&](int part, const char* name) {
    if (*kl_budget % part != 0) {
      throw InvalidParameter(std::string("sweep value ") + name + "=" + std::to_string(part) +
                             " does not divide the K*L budget " + std::to_string(*kl_budget));
    }
    return *kl_budget / part;
  };
  switch (variable) {
    case SweepVariable::N: cfg.N = as_int("N"); break;
    case SweepVariable::snr_db: cfg.snr_db = value; break;
    case SweepVariable::L:
      cfg.L = as_int("L");
      if (kl_budget) cfg.K = split_budget(cfg.L, "L");
      break;
    case SweepVariable::K:
      cfg.K = as_int("K");
      if (kl_budget) cfg.L = split_budget(cfg.K, "K");
      break;
  }
  cfg.validate();
  return cfg;
}

std::vector<SweepRow> sweep(const ExperimentConfig& base, SweepVariable variable, const std::vector<double>& values,
                            std::optional<int> kl_budget, int threads) {
  require(!values.empty(), "sweep needs at least one value");
  std::vector<ExperimentConfig> cfgs;
  cfgs.reserve(values.size());
  for (double v : values) cfgs.push_back(sweep_point(base, variable, v, kl_budget));

  std::vector<SweepRow> rows;
  rows.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto& c = cfgs[i];
    rows.push_back({values[i], c, run_experiment(c, threads), single_user_bounds(c.K, c.L, c.N),
                    all_user_bounds(c.K, c.L, c.N)});
  }
  return rows;
}

}  // namespace mpra
