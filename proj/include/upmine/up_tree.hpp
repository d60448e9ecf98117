#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "upmine/database.hpp"
#include "upmine/utility.hpp"

namespace upmine {

// One transaction after unpromising items are discarded: surviving items
// with their exact per-transaction utilities, sorted by header rank.
struct WeightedItem {
  ItemId item{};
  Utility utility{};
  bool operator==(const WeightedItem&) const = default;
};

struct ReorganizedTransaction {
  std::vector<WeightedItem> items;
  Utility rtu{};  // sum of the surviving items' utilities
  bool operator==(const ReorganizedTransaction&) const = default;
};

// Drops items with twu < min_util, re-sorts the rest by descending twu
// (ties: ascending id), recomputes the transaction utility over survivors.
// Transactions left empty are dropped.
std::vector<ReorganizedTransaction> reorganize(const TransactionDatabase& db,
                                               const TwuTable& twu, Utility min_util);

struct UpNode {
  ItemId item{};                 // meaningless for the root
  std::uint64_t count{0};        // support; 0 only at the root
  Utility node_utility{0};
  UpNode* parent{nullptr};
  UpNode* node_link{nullptr};    // next node of the same item
  std::map<std::uint32_t, std::unique_ptr<UpNode>> children;  // keyed by item rank
};

struct HeaderEntry {
  ItemId item{};
  Utility weight{};          // ordering weight: global twu, or local path-utility sum
  Utility node_utility{0};   // accumulated over the node-link chain
  UpNode* head{nullptr};
  UpNode* tail{nullptr};
};

// Prefix path above one node of the extracted item (root-to-leaf order),
// with that node's utility and support.
struct PathEntry {
  std::vector<ItemId> prefix;
  Utility path_utility{};
  std::uint64_t path_count{};
};

/// Prefix tree over rank-ordered item lists. Nodes carry support counts and
/// utilities accumulated from caller-supplied per-node increments; same-item
/// nodes are chained through node-links rooted in the header table.
class UpTree {
 public:
  // Header order: descending weight, ties by ascending item id.
  explicit UpTree(std::vector<std::pair<ItemId, Utility>> item_weights);

  UpTree(UpTree&&) noexcept = default;
  UpTree& operator=(UpTree&&) noexcept = default;

  // Inserts one rank-ordered path. increments[k] is added to the k-th node's
  // utility; count is added to every node on the path. Throws
  // std::invalid_argument if items are not strictly increasing in rank.
  void insert(std::span<const ItemId> items, std::uint64_t count,
              std::span<const Utility> increments);

  const UpNode& root() const { return *root_; }
  const std::vector<HeaderEntry>& header() const { return header_; }
  const HeaderEntry* find_header(ItemId item) const;
  std::uint32_t rank_of(ItemId item) const;  // kNoRank if absent
  bool empty() const { return root_->children.empty(); }
  std::uint64_t node_count() const { return node_count_; }

  static constexpr std::uint32_t kNoRank = ~0u;

 private:
  std::unique_ptr<UpNode> root_;
  std::vector<HeaderEntry> header_;      // rank order
  std::vector<std::uint32_t> rank_;      // dense id -> rank
  std::uint64_t node_count_{0};          // root excluded
};

// Global tree over the reorganized database: inserting a transaction adds,
// at its k-th node, the utility of items 1..k of that transaction
// (descendants excluded). Header holds every item with twu >= min_util.
UpTree build_global_tree(const std::vector<ReorganizedTransaction>& reorganized,
                         const TwuTable& twu, Utility min_util);

// Conditional pattern base of `item`: one entry per node in its node-link
// chain. Throws std::invalid_argument if the item is not in the header.
std::vector<PathEntry> extract_cpb(const UpTree& tree, ItemId item);

// Debug dumps for golden tests. Tree: preorder `depth item count
// node_utility` lines, root omitted. Header: `item weight acc_nu` lines.
// Items are printed as external ids.
std::string dump_tree(const UpTree& tree, const TransactionDatabase& db);
std::string dump_header(const UpTree& tree, const TransactionDatabase& db);

}  // namespace upmine
