// SPDX-License-Identifier: Apache-2.0

#include "mpra/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace mpra {

std::string format_cell(const Cell& c) {
  struct Visitor {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const {
      if (std::isnan(v)) return {};
      if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.6g", v);
      return buf;
    }
    std::string operator()(const std::string& s) const { return s; }
  };
  return std::visit(Visitor{}, c);
}

void write_csv(const CsvTable& table, std::ostream& os) {
  for (const auto& m : table.metadata) os << "# " << m << '\n';
  for (std::size_t i = 0; i < table.header.size(); ++i) os << (i ? "," : "") << table.header[i];
  os << '\n';
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size()) throw InvalidParameter("CSV row width differs from header");
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_cell(row[i]);
    os << '\n';
  }
}

void emit_csv(const CsvTable& table, const std::string& path) {
  std::ostringstream buf;
  write_csv(table, buf);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << buf.str();
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

std::string describe(const ExperimentConfig& c) {
  std::ostringstream os;
  os << "K=" << c.K << " L=" << c.L << " N=" << c.N << " M=" << c.M << " snr_db=" << format_cell(c.snr_db)
     << " channel=" << to_string(c.channel);
  if (c.channel == ChannelModel::correlated) {
    os << " Q=" << c.geometry.paths << " omega=" << format_cell(c.geometry.spacing)
       << " angle_spread_deg=" << format_cell(c.geometry.angle_spread * 180.0 / std::numbers::pi);
  }
  os << " th=" << format_cell(c.th) << " prune_th=" << format_cell(c.prune_th) << " trials=" << c.trials
     << " seed=" << c.seed << " mode=" << (c.solvability_only ? "solvability" : "full");
  return os.str();
}

namespace {

Cell opt(const std::optional<double>& v) { return v ? Cell(*v) : Cell(); }

}  // namespace

CsvTable bounds_csv(int K, int L, int N_max) {
  CsvTable t;
  t.metadata = {std::string("mpra-sim ") + kVersion, "preset: bounds-only",
                "config: K=" + std::to_string(K) + " L=" + std::to_string(L) + " N_max=" + std::to_string(N_max)};
  t.header = {"N", "single_exact", "single_upper", "single_lower", "all_exact", "all_upper", "all_lower"};
  for (const auto& r : bound_table(K, L, N_max)) {
    t.rows.push_back({std::int64_t{r.single_user.N}, opt(r.single_user.exact), r.single_user.upper,
                      r.single_user.lower, opt(r.all_user.exact), r.all_user.upper, r.all_user.lower});
  }
  return t;
}

CsvTable experiments_csv(const std::vector<ExperimentConfig>& cfgs, const std::vector<Metrics>& metrics) {
  require(cfgs.size() == metrics.size(), "one Metrics per configuration required");
  CsvTable t;
  t.metadata.push_back(std::string("mpra-sim ") + kVersion);
  for (const auto& c : cfgs) t.metadata.push_back("config: " + describe(c));
  t.header = {"K", "L", "N", "M", "snr_db", "channel", "trials", "seed",
              "p_single_solvable", "se_single_solvable", "p_all_solvable", "se_all_solvable",
              "p_single_success", "se_single_success", "p_all_success", "se_all_success",
              "false_detect_rate", "se_false_detect_rate", "nmse", "nmse_db",
              "single_exact", "single_upper", "single_lower", "all_exact", "all_upper", "all_lower"};
  auto rate = [](const std::optional<RateEstimate>& r, std::vector<Cell>& row) {
    row.push_back(r ? Cell(r->value) : Cell());
    row.push_back(r ? Cell(r->std_error) : Cell());
  };
  for (std::size_t i = 0; i < cfgs.size(); ++i) {
    const auto& c = cfgs[i];
    const auto& m = metrics[i];
    std::vector<Cell> row{std::int64_t{c.K}, std::int64_t{c.L}, std::int64_t{c.N}, std::int64_t{c.M},
                          c.solvability_only ? Cell() : Cell(c.snr_db),
                          c.solvability_only ? Cell() : Cell(to_string(c.channel)),
                          std::int64_t{m.trials_run}, static_cast<std::int64_t>(c.seed)};
    rate(m.p_single_solvable, row);
    rate(m.p_all_solvable, row);
    rate(m.p_single_success, row);
    rate(m.p_all_success, row);
    rate(m.false_detect_rate, row);
    row.push_back(opt(m.nmse));
    row.push_back(m.nmse && *m.nmse > 0 ? Cell(10.0 * std::log10(*m.nmse)) : Cell());
    const BoundSet s = single_user_bounds(c.K, c.L, c.N);
    const BoundSet a = all_user_bounds(c.K, c.L, c.N);
    for (const Cell& v : {opt(s.exact), Cell(s.upper), Cell(s.lower), opt(a.exact), Cell(a.upper), Cell(a.lower)}) {
      row.push_back(v);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::vector<std::string> preset_names() {
  return {"solvable-vs-n", "solvable-budget48", "success-iid", "success-correlated", "nmse-vs-snr", "bounds-only"};
}

namespace {

ExperimentConfig preset_base(const PresetOverrides& o, std::int64_t trials) {
  ExperimentConfig c;
  c.M = o.M.value_or(128);
  c.snr_db = o.snr_db.value_or(0.0);
  c.th = o.th.value_or(0.4);
  c.prune_th = o.prune_th.value_or(0.5);
  c.trials = o.trials.value_or(trials);
  c.seed = o.seed.value_or(1);
  c.geometry.paths = o.paths.value_or(50);
  c.geometry.spacing = o.spacing.value_or(0.5);
  c.geometry.angle_spread = deg_to_rad(o.angle_spread_deg.value_or(40.0));
  return c;
}

void add_n_range(std::vector<ExperimentConfig>& out, ExperimentConfig c, int K, int L, int n_max) {
  c.K = K;
  c.L = L;
  for (int N = 1; N <= n_max; ++N) {
    c.N = N;
    c.validate();
    out.push_back(c);
  }
}

}  // namespace

std::vector<ExperimentConfig> expand_preset(const std::string& name, const PresetOverrides& over) {
  std::vector<ExperimentConfig> out;
  if (name == "bounds-only") return out;
  if (name == "solvable-vs-n") {
    ExperimentConfig c = preset_base(over, 100'000);
    c.solvability_only = true;
    for (const auto& [K, L] : {std::pair{8, 2}, {8, 3}, {16, 1}, {16, 2}, {16, 3}}) add_n_range(out, c, K, L, 20);
    return out;
  }
  if (name == "solvable-budget48") {
    ExperimentConfig c = preset_base(over, 100'000);
    c.solvability_only = true;
    for (int L : {1, 2, 3, 4, 6}) add_n_range(out, c, 48 / L, L, 20);
    return out;
  }
  if (name == "success-iid" || name == "success-correlated") {
    ExperimentConfig c = preset_base(over, 10'000);
    c.channel = name == "success-iid" ? ChannelModel::iid : ChannelModel::correlated;
    for (int L : {1, 2, 3}) add_n_range(out, c, 48 / L, L, 20);
    return out;
  }
  if (name == "nmse-vs-snr") {
    ExperimentConfig c = preset_base(over, 10'000);
    c.channel = ChannelModel::correlated;
    c.K = 16;
    c.L = 3;
    for (int N : {1, 4, 7, 10}) {
      for (double snr : {0.0, 5.0, 10.0, 15.0, 20.0}) {
        c.N = N;
        c.snr_db = snr;
        c.validate();
        out.push_back(c);
      }
    }
    return out;
  }
  throw InvalidParameter("unknown preset '" + name + "'");
}

}  // namespace mpra
