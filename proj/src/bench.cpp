#include "upmine/bench.hpp"

#include <algorithm>
#include <cstdio>

namespace upmine {

std::vector<BenchResult> run_bench(const TransactionDatabase& db, const std::string& dataset,
                                   const std::vector<BenchCell>& cells, int repeats,
                                   const MinerConfig& toggles) {
  if (repeats < 1) throw std::invalid_argument("repeats must be at least 1");
  std::vector<BenchResult> results;
  results.reserve(cells.size());
  for (const auto& cell : cells) {
    MinerConfig config = toggles;
    config.variant = cell.variant;

    BenchResult row;
    row.dataset = dataset;
    row.variant = cell.variant;
    row.policy = cell.policy;
    for (int r = 0; r < repeats; ++r) {
      MineResult mined = mine(db, cell.policy, config);
      VerifyStats vstats;
      const auto huis = verify(mined.phuis, db, mined.stats.resolved_min_util, &vstats);
      if (r == 0) {
        row.min_util = mined.stats.resolved_min_util;
        row.phui_count = mined.stats.phui_count;
        row.hui_count = huis.size();
        row.tree_nodes = mined.stats.global_tree_nodes;
        row.peak_candidate_memory_estimate = mined.stats.peak_candidate_bytes;
        row.phase1_seconds = mined.stats.phase1_seconds();
        row.phase2_seconds = vstats.seconds;
      } else {
        row.phase1_seconds = std::min(row.phase1_seconds, mined.stats.phase1_seconds());
        row.phase2_seconds = std::min(row.phase2_seconds, vstats.seconds);
      }
    }
    results.push_back(std::move(row));
  }
  return results;
}

std::string_view variant_name(Variant v) { return v == Variant::iupg ? "iupg" : "upg"; }

std::string_view policy_kind_name(ThresholdPolicy::Kind kind) {
  switch (kind) {
    case ThresholdPolicy::Kind::absolute:
      return "absolute";
    case ThresholdPolicy::Kind::fraction_of_total_utility:
      return "total";
    case ThresholdPolicy::Kind::fraction_of_mtwu:
      return "mtwu";
  }
  return "?";
}

std::string policy_value_string(const ThresholdPolicy& policy) {
  if (policy.value.den == 1) return std::to_string(policy.value.num);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g",
                static_cast<double>(policy.value.num) / static_cast<double>(policy.value.den));
  return buf;
}

std::string bench_csv(const std::vector<BenchResult>& results) {
  std::string csv =
      "dataset,variant,policy_kind,policy_value,min_util,phase1_s,phase2_ms,"
      "phui_count,hui_count,tree_nodes\n";
  char buf[128];
  for (const auto& r : results) {
    csv += r.dataset;
    csv += ',';
    csv += variant_name(r.variant);
    csv += ',';
    csv += policy_kind_name(r.policy.kind);
    csv += ',';
    csv += policy_value_string(r.policy);
    csv += ',';
    csv += std::to_string(r.min_util);
    std::snprintf(buf, sizeof(buf), ",%.6f,%.3f,", r.phase1_seconds,
                  r.phase2_seconds * 1000.0);
    csv += buf;
    csv += std::to_string(r.phui_count);
    csv += ',';
    csv += std::to_string(r.hui_count);
    csv += ',';
    csv += std::to_string(r.tree_nodes);
    csv += '\n';
  }
  return csv;
}

}  // namespace upmine
