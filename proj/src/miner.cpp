#include "upmine/miner.hpp"

#include <algorithm>
#include <chrono>
#include <unordered_map>

namespace upmine {

namespace {

class StopWatch {
 public:
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double s = std::chrono::duration<double>(now - last_).count();
    last_ = now;
    return s;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

Utility saturating_sub(Utility a, Utility b) { return a > b ? a - b : 0; }

struct GrowthContext {
  const MiuTable& miu;
  Utility min_util;
  const MinerConfig& config;
  std::vector<Phui>& out;
  MinerStats& stats;
  std::vector<ItemId> suffix;
};

void grow(const UpTree& tree, GrowthContext& ctx) {
  const auto& header = tree.header();
  // Bottom of the header table first (lowest-ranked item upward).
  for (auto it = header.rbegin(); it != header.rend(); ++it) {
    if (it->node_utility < ctx.min_util) continue;

    ctx.suffix.push_back(it->item);
    Itemset items(ctx.suffix);
    std::sort(items.begin(), items.end());
    ctx.out.push_back(Phui{std::move(items), it->node_utility});
    ++ctx.stats.phui_count;

    const auto cpb = extract_cpb(tree, it->item);
    UpTree local = build_local_tree(cpb, ctx.miu, ctx.min_util, ctx.config);
    ++ctx.stats.local_trees_built;
    ctx.stats.local_tree_nodes += local.node_count();
    if (!local.empty()) grow(local, ctx);
    ctx.suffix.pop_back();
  }
}

}  // namespace

UpTree build_local_tree(const std::vector<PathEntry>& cpb, const MiuTable& miu,
                        Utility min_util, const MinerConfig& config) {
  // Local item weight: sum of path utilities over paths containing the item.
  std::unordered_map<ItemId, Utility> local_twu;
  for (const auto& path : cpb) {
    for (const ItemId item : path.prefix) local_twu[item] += path.path_utility;
  }

  std::vector<std::pair<ItemId, Utility>> weights;
  for (const auto& [item, weight] : local_twu) {
    if (weight >= min_util) weights.emplace_back(item, weight);
  }
  UpTree tree(std::move(weights));

  std::vector<ItemId> items;
  std::vector<Utility> increments;
  for (const auto& path : cpb) {
    items.clear();
    Utility pu = path.path_utility;
    for (const ItemId item : path.prefix) {
      if (local_twu[item] >= min_util) {
        items.push_back(item);
      } else if (config.enable_dlu) {
        pu = saturating_sub(pu, miu[item] * path.path_count);
      }
    }
    if (items.empty()) continue;
    std::sort(items.begin(), items.end(), [&](ItemId a, ItemId b) {
      return tree.rank_of(a) < tree.rank_of(b);
    });

    increments.assign(items.size(), pu);
    if (config.enable_dln) {
      // Walking leaf-to-root, each node's increment drops the minimum item
      // utilities of everything below it on this path.
      Utility below = 0;
      for (std::size_t k = items.size(); k-- > 0;) {
        increments[k] = saturating_sub(pu, below);
        below += miu[items[k]] * path.path_count;
      }
    }
    tree.insert(items, path.path_count, increments);
  }
  return tree;
}

MineResult mine(const TransactionDatabase& db, const ThresholdPolicy& policy,
                const MinerConfig& config) {
  MineResult result;
  MinerStats& stats = result.stats;
  StopWatch watch;

  const TwuTable twu = compute_twu(db);
  const Utility min_util = resolve_threshold(policy, db, twu);
  stats.resolved_min_util = min_util;
  stats.scan_seconds = watch.lap();

  const auto reorganized = reorganize(db, twu, min_util);
  const MiuTable miu = compute_miu(db);
  const UpTree tree = build_global_tree(reorganized, twu, min_util);
  stats.global_tree_nodes = tree.node_count();
  stats.build_seconds = watch.lap();

  GrowthContext ctx{miu, min_util, config, result.phuis, stats, {}};
  grow(tree, ctx);
  stats.growth_seconds = watch.lap();

  std::uint64_t bytes = 0;
  for (const auto& p : result.phuis)
    bytes += sizeof(Phui) + p.items.capacity() * sizeof(ItemId);
  stats.peak_candidate_bytes = bytes;
  return result;
}

ThresholdPolicy default_policy_for(Variant variant, Rational threshold) {
  return variant == Variant::iupg ? ThresholdPolicy::fraction_of_mtwu(threshold)
                                  : ThresholdPolicy::fraction_of_total(threshold);
}

}  // namespace upmine
