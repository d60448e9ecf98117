#pragma once

#include <string>
#include <vector>

#include "upmine/database.hpp"
#include "upmine/miner.hpp"
#include "upmine/verifier.hpp"

namespace upmine {

/// One benchmark cell: a variant mined at one threshold, with the two phases
/// timed separately.
struct BenchResult {
  std::string dataset;
  Variant variant{Variant::iupg};
  ThresholdPolicy policy;
  Utility min_util{0};
  double phase1_seconds{0.0};
  double phase2_seconds{0.0};
  std::uint64_t phui_count{0};
  std::uint64_t hui_count{0};
  std::uint64_t tree_nodes{0};
  std::uint64_t peak_candidate_memory_estimate{0};  // bytes
};

struct BenchCell {
  Variant variant{Variant::iupg};
  ThresholdPolicy policy;
};

// Runs every cell sequentially, repeating each `repeats` times and keeping
// the minimum of each phase duration (counts are identical across repeats).
std::vector<BenchResult> run_bench(const TransactionDatabase& db, const std::string& dataset,
                                   const std::vector<BenchCell>& cells, int repeats = 3,
                                   const MinerConfig& toggles = {});

std::string_view variant_name(Variant v);
std::string_view policy_kind_name(ThresholdPolicy::Kind kind);
std::string policy_value_string(const ThresholdPolicy& policy);

// Header plus one row per result:
// dataset,variant,policy_kind,policy_value,min_util,phase1_s,phase2_ms,phui_count,hui_count,tree_nodes
std::string bench_csv(const std::vector<BenchResult>& results);

}  // namespace upmine
