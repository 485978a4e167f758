// SPDX-License-Identifier: Apache-2.0
//
// mpra-sim: bound tables, single experiments and figure presets as CSV.

#include "mpra/report.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <limits>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitResource = 3;

double parse_snr(const std::string& s) {
  if (s == "inf" || s == "+inf" || s == "Inf") return std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || used == 0) throw mpra::InvalidParameter("malformed --snr-db value '" + s + "'");
  return v;
}

std::string fmt_rate(const std::optional<mpra::RateEstimate>& r) {
  return r ? mpra::format_cell(r->value) : std::string("-");
}

void print_summary(std::ostream& os, const mpra::ExperimentConfig& c, const mpra::Metrics& m) {
  os << "K=" << c.K << " L=" << c.L << " N=" << c.N << " P'solv=" << mpra::format_cell(m.p_single_solvable.value)
            << " Psolv=" << mpra::format_cell(m.p_all_solvable.value) << " P'succ=" << fmt_rate(m.p_single_success)
            << " Psucc=" << fmt_rate(m.p_all_success)
            << " nmse=" << (m.nmse ? mpra::format_cell(*m.nmse) : std::string("-")) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo simulator for multi-preamble grant-free random access with massive MIMO"};

  std::string preset;
  int K = 16, L = 2, N = 1, M = 128, Q = 50, threads = 0;
  std::optional<int> n_max;
  std::string snr = "0";
  std::string channel = "iid";
  double omega = 0.5, spread_deg = 40.0, th = 0.4, prune_th = 0.5;
  std::int64_t trials = 10'000;
  std::uint64_t seed = 1;
  std::string out_path;
  bool dry_run = false;

  app.add_option("--preset", preset, "Named experiment grid")
      ->check(CLI::IsMember(mpra::preset_names()));
  auto* k_opt = app.add_option("--K", K, "Pool size (sequences per phase)")->check(CLI::PositiveNumber);
  auto* l_opt = app.add_option("--L", L, "Preamble phases per super preamble")->check(CLI::PositiveNumber);
  app.add_option("--N", N, "Simultaneous UEs")->check(CLI::PositiveNumber);
  app.add_option("--N-max", n_max, "Sweep N = 1 .. N-max")->check(CLI::PositiveNumber);
  auto* m_opt = app.add_option("--M", M, "BS antennas")->check(CLI::PositiveNumber);
  auto* snr_opt = app.add_option("--snr-db", snr, "SNR in dB per antenna port, or 'inf'");
  app.add_option("--channel", channel, "Channel model")->check(CLI::IsMember({"iid", "correlated"}));
  auto* q_opt = app.add_option("--Q", Q, "Paths of the correlated model")->check(CLI::PositiveNumber);
  auto* omega_opt = app.add_option("--omega", omega, "Antenna spacing in wavelengths")->check(CLI::PositiveNumber);
  auto* spread_opt = app.add_option("--angle-spread-deg", spread_deg, "Angle spread in degrees")
                         ->check(CLI::Range(0.0, 360.0));
  auto* th_opt = app.add_option("--th", th, "Detection threshold")->check(CLI::PositiveNumber);
  auto* prune_opt = app.add_option("--prune-th", prune_th, "False-UE pruning norm threshold")
                        ->check(CLI::NonNegativeNumber);
  auto* trials_opt = app.add_option("--trials", trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
  auto* seed_opt = app.add_option("--seed", seed, "Base seed");
  app.add_option("--threads", threads, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
  app.add_option("--out", out_path, "CSV output path (stdout when omitted)");
  app.add_flag("--dry-run", dry_run, "Print the expanded configurations and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    // Summaries share stdout only when the CSV goes to a file.
    std::ostream& log = out_path.empty() ? std::cerr : std::cout;
    auto emit = [&](const mpra::CsvTable& table) {
      if (out_path.empty()) {
        mpra::write_csv(table, std::cout);
      } else {
        mpra::emit_csv(table, out_path);
      }
    };

    if (preset == "bounds-only") {
      const int n_hi = n_max.value_or(20);
      if (dry_run) {
        std::cout << "bounds K=" << K << " L=" << L << " N=1.." << n_hi << '\n';
        return kExitOk;
      }
      const auto table = mpra::bounds_csv(K, L, n_hi);
      for (const auto& r : mpra::bound_table(K, L, n_hi)) {
        log << "N=" << r.single_user.N << " P'U=" << mpra::format_cell(r.single_user.upper)
                  << " P'L=" << mpra::format_cell(r.single_user.lower) << " PU=" << mpra::format_cell(r.all_user.upper)
                  << " PL=" << mpra::format_cell(r.all_user.lower) << '\n';
      }
      emit(table);
      return kExitOk;
    }

    std::vector<mpra::ExperimentConfig> cfgs;
    if (!preset.empty()) {
      if (*k_opt || *l_opt) throw mpra::InvalidParameter("--K/--L are fixed by preset " + preset);
      mpra::PresetOverrides over;
      if (*trials_opt) over.trials = trials;
      if (*seed_opt) over.seed = seed;
      if (*m_opt) over.M = M;
      if (*snr_opt) over.snr_db = parse_snr(snr);
      if (*th_opt) over.th = th;
      if (*prune_opt) over.prune_th = prune_th;
      if (*q_opt) over.paths = Q;
      if (*omega_opt) over.spacing = omega;
      if (*spread_opt) over.angle_spread_deg = spread_deg;
      cfgs = mpra::expand_preset(preset, over);
    } else {
      mpra::ExperimentConfig c;
      c.K = K;
      c.L = L;
      c.N = N;
      c.M = M;
      c.snr_db = parse_snr(snr);
      c.channel = mpra::parse_channel_model(channel);
      c.geometry.paths = Q;
      c.geometry.spacing = omega;
      c.geometry.angle_spread = mpra::deg_to_rad(spread_deg);
      c.th = th;
      c.prune_th = prune_th;
      c.trials = trials;
      c.seed = seed;
      if (n_max) {
        for (int n = 1; n <= *n_max; ++n) cfgs.push_back(mpra::sweep_point(c, mpra::SweepVariable::N, n));
      } else {
        c.validate();
        cfgs.push_back(c);
      }
    }

    if (dry_run) {
      for (const auto& c : cfgs) std::cout << mpra::describe(c) << '\n';
      return kExitOk;
    }

    std::vector<mpra::Metrics> metrics;
    metrics.reserve(cfgs.size());
    for (const auto& c : cfgs) {
      metrics.push_back(mpra::run_experiment(c, threads));
      print_summary(log, c, metrics.back());
    }
    auto table = mpra::experiments_csv(cfgs, metrics);
    if (!preset.empty()) table.metadata.insert(table.metadata.begin() + 1, "preset: " + preset);
    emit(table);
    return kExitOk;
  } catch (const mpra::InvalidParameter& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const mpra::ResourceLimit& e) {
    std::cerr << "resource limit: " << e.what() << '\n';
    return kExitResource;
  } catch (const mpra::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitResource;
  }
}
