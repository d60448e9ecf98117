#include "upmine/up_tree.hpp"

#include <algorithm>

namespace upmine {

std::vector<ReorganizedTransaction> reorganize(const TransactionDatabase& db,
                                               const TwuTable& twu, Utility min_util) {
  // Promising items keep their global rank: descending twu, ties ascending id.
  std::vector<ReorganizedTransaction> out;
  out.reserve(db.num_transactions());
  for (const auto& t : db.transactions()) {
    ReorganizedTransaction rt;
    for (const auto& e : t.entries) {
      if (twu[e.item] < min_util) continue;
      const Utility u = static_cast<Utility>(e.quantity) * db.external_utility(e.item);
      rt.items.push_back({e.item, u});
      rt.rtu += u;
    }
    if (rt.items.empty()) continue;
    std::sort(rt.items.begin(), rt.items.end(), [&](const WeightedItem& a, const WeightedItem& b) {
      if (twu[a.item] != twu[b.item]) return twu[a.item] > twu[b.item];
      return a.item < b.item;
    });
    out.push_back(std::move(rt));
  }
  return out;
}

UpTree::UpTree(std::vector<std::pair<ItemId, Utility>> item_weights)
    : root_(std::make_unique<UpNode>()) {
  std::sort(item_weights.begin(), item_weights.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  header_.reserve(item_weights.size());
  ItemId max_item = 0;
  for (const auto& [item, weight] : item_weights) max_item = std::max(max_item, item);
  rank_.assign(item_weights.empty() ? 0 : max_item + 1, kNoRank);
  for (const auto& [item, weight] : item_weights) {
    if (rank_[item] != kNoRank) throw std::invalid_argument("duplicate header item");
    rank_[item] = static_cast<std::uint32_t>(header_.size());
    header_.push_back(HeaderEntry{item, weight});
  }
}

std::uint32_t UpTree::rank_of(ItemId item) const {
  return item < rank_.size() ? rank_[item] : kNoRank;
}

const HeaderEntry* UpTree::find_header(ItemId item) const {
  const auto r = rank_of(item);
  return r == kNoRank ? nullptr : &header_[r];
}

void UpTree::insert(std::span<const ItemId> items, std::uint64_t count,
                    std::span<const Utility> increments) {
  if (items.size() != increments.size())
    throw std::invalid_argument("one utility increment per path item required");
  UpNode* node = root_.get();
  std::uint32_t prev_rank = kNoRank;
  for (std::size_t k = 0; k < items.size(); ++k) {
    const std::uint32_t rank = rank_of(items[k]);
    if (rank == kNoRank) throw std::invalid_argument("path item missing from header");
    if (prev_rank != kNoRank && rank <= prev_rank)
      throw std::invalid_argument("path items out of header order");
    prev_rank = rank;

    auto [it, inserted] = node->children.try_emplace(rank);
    if (inserted) {
      it->second = std::make_unique<UpNode>();
      it->second->item = items[k];
      it->second->parent = node;
      ++node_count_;
      HeaderEntry& h = header_[rank];
      if (h.tail) {
        h.tail->node_link = it->second.get();
      } else {
        h.head = it->second.get();
      }
      h.tail = it->second.get();
    }
    node = it->second.get();
    node->count += count;
    node->node_utility += increments[k];
    header_[rank].node_utility += increments[k];
  }
}

UpTree build_global_tree(const std::vector<ReorganizedTransaction>& reorganized,
                         const TwuTable& twu, Utility min_util) {
  std::vector<std::pair<ItemId, Utility>> weights;
  for (ItemId i = 0; i < twu.size(); ++i) {
    if (twu[i] != 0 && twu[i] >= min_util) weights.emplace_back(i, twu[i]);
  }
  UpTree tree(std::move(weights));

  std::vector<ItemId> items;
  std::vector<Utility> increments;
  for (const auto& rt : reorganized) {
    items.clear();
    increments.clear();
    Utility prefix = 0;
    for (const auto& wi : rt.items) {
      prefix += wi.utility;
      items.push_back(wi.item);
      increments.push_back(prefix);  // utilities of descendants excluded
    }
    tree.insert(items, 1, increments);
  }
  return tree;
}

std::vector<PathEntry> extract_cpb(const UpTree& tree, ItemId item) {
  const HeaderEntry* entry = tree.find_header(item);
  if (!entry) throw std::invalid_argument("item not in header table");
  std::vector<PathEntry> cpb;
  for (const UpNode* node = entry->head; node; node = node->node_link) {
    PathEntry path;
    path.path_utility = node->node_utility;
    path.path_count = node->count;
    for (const UpNode* up = node->parent; up && up->parent; up = up->parent)
      path.prefix.push_back(up->item);
    std::reverse(path.prefix.begin(), path.prefix.end());
    cpb.push_back(std::move(path));
  }
  return cpb;
}

namespace {

void dump_node(const UpNode& node, std::size_t depth, const TransactionDatabase& db,
               std::string& out) {
  for (const auto& [rank, child] : node.children) {
    out += std::to_string(depth);
    out += ' ';
    out += std::to_string(db.external_id(child->item));
    out += ' ';
    out += std::to_string(child->count);
    out += ' ';
    out += std::to_string(child->node_utility);
    out += '\n';
    dump_node(*child, depth + 1, db, out);
  }
}

}  // namespace

std::string dump_tree(const UpTree& tree, const TransactionDatabase& db) {
  std::string out;
  dump_node(tree.root(), 0, db, out);
  return out;
}

std::string dump_header(const UpTree& tree, const TransactionDatabase& db) {
  std::string out;
  for (const auto& h : tree.header()) {
    out += std::to_string(db.external_id(h.item));
    out += ' ';
    out += std::to_string(h.weight);
    out += ' ';
    out += std::to_string(h.node_utility);
    out += '\n';
  }
  return out;
}

}  // namespace upmine
