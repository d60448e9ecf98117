#pragma once

#include <cstdint>
#include <vector>

#include "upmine/database.hpp"
#include "upmine/up_tree.hpp"
#include "upmine/utility.hpp"

namespace upmine {

enum class Variant { upg, iupg };

/// Pipeline toggles. The global strategies (discarding unpromising items
/// from transactions and descendant utilities from node increments) are
/// always applied; the local discounts can be switched off for ablation.
struct MinerConfig {
  Variant variant{Variant::iupg};
  bool enable_dlu{true};  // discount removed local-unpromising items from path utilities
  bool enable_dln{true};  // discount descendant items during local tree insertion
};

struct MinerStats {
  Utility resolved_min_util{0};
  std::uint64_t global_tree_nodes{0};
  std::uint64_t local_trees_built{0};
  std::uint64_t local_tree_nodes{0};
  std::uint64_t phui_count{0};
  std::uint64_t peak_candidate_bytes{0};
  double scan_seconds{0.0};    // TWU pass + threshold resolution
  double build_seconds{0.0};   // reorganization + global tree + MIU
  double growth_seconds{0.0};  // recursive candidate generation

  double phase1_seconds() const { return scan_seconds + build_seconds + growth_seconds; }
};

/// Phase-I candidate: itemset plus its overestimated utility.
struct Phui {
  Itemset items;
  Utility estimated_utility{};
  bool operator==(const Phui&) const = default;
};

struct MineResult {
  std::vector<Phui> phuis;
  MinerStats stats;
};

// Local tree over a conditional pattern base. Local item weight = sum of
// path utilities over paths containing the item; items below min_util are
// removed from every path, discounting the path utility by their minimum
// item utility per occurrence when enable_dlu is set. Surviving paths are
// re-ranked locally and inserted with per-node increments of the path
// utility minus the miu of the items below (enable_dln), clamped at zero.
UpTree build_local_tree(const std::vector<PathEntry>& cpb, const MiuTable& miu,
                        Utility min_util, const MinerConfig& config = {});

// Phase I: TWU scan, threshold resolution, transaction reorganization,
// global tree, then recursive growth over conditional pattern bases. Emits
// a candidate for header entry a in suffix tree X whenever a's accumulated
// node utility reaches min_util, recursing into the local tree of X + a.
// Candidates come out in emission order (header bottom-up, suffix-first).
MineResult mine(const TransactionDatabase& db, const ThresholdPolicy& policy,
                const MinerConfig& config = {});

// Default threshold base when the user gives a bare fraction: the classic
// variant reads it against the database total utility, the improved variant
// against the maximum transaction-weighted utilization.
ThresholdPolicy default_policy_for(Variant variant, Rational threshold);

}  // namespace upmine
