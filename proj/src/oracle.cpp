#include "upmine/oracle.hpp"

#include <algorithm>
#include <bit>

namespace upmine {

BruteForceIndex::BruteForceIndex(const TransactionDatabase& db, std::size_t max_items)
    : db_(db) {
  item_bits_.assign(db.num_items(), kAbsent);
  for (const auto& t : db.transactions()) {
    for (const auto& e : t.entries) {
      if (item_bits_[e.item] == kAbsent) {
        item_bits_[e.item] = static_cast<std::uint32_t>(bit_items_.size());
        bit_items_.push_back(e.item);
      }
    }
  }
  if (bit_items_.size() > max_items)
    throw std::invalid_argument("too many distinct items for exhaustive enumeration");

  const std::size_t k = bit_items_.size();
  utility_by_mask_.assign(std::size_t{1} << k, 0);
  std::vector<Utility> bit_utility(k, 0);
  for (const auto& t : db.transactions()) {
    std::uint64_t tmask = 0;
    for (const auto& e : t.entries) {
      const auto bit = item_bits_[e.item];
      tmask |= std::uint64_t{1} << bit;
      bit_utility[bit] = static_cast<Utility>(e.quantity) * db.external_utility(e.item);
    }
    // Every non-empty sub-itemset of this transaction gains its items'
    // utilities here.
    for (std::uint64_t sub = tmask; sub != 0; sub = (sub - 1) & tmask) {
      Utility u = 0;
      for (std::uint64_t bits = sub; bits != 0; bits &= bits - 1) {
        u += bit_utility[std::countr_zero(bits)];
      }
      utility_by_mask_[sub] += u;
    }
  }
}

Utility BruteForceIndex::utility_of(const Itemset& x) const {
  std::uint64_t mask = 0;
  for (const ItemId item : x) {
    if (item >= item_bits_.size() || item_bits_[item] == kAbsent) return 0;
    mask |= std::uint64_t{1} << item_bits_[item];
  }
  return mask == 0 ? 0 : utility_by_mask_[mask];
}

std::vector<Hui> BruteForceIndex::all_huis(Utility min_util) const {
  std::vector<std::pair<Hui, std::vector<ExternalId>>> keyed;
  for (std::uint64_t mask = 1; mask < utility_by_mask_.size(); ++mask) {
    const Utility u = utility_by_mask_[mask];
    if (u == 0 || u < min_util) continue;  // unsupported itemsets never qualify
    Itemset items;
    for (std::uint64_t bits = mask; bits != 0; bits &= bits - 1)
      items.push_back(bit_items_[std::countr_zero(bits)]);
    std::sort(items.begin(), items.end());
    std::vector<ExternalId> key;
    for (const ItemId i : items) key.push_back(db_.external_id(i));
    std::sort(key.begin(), key.end());
    keyed.emplace_back(Hui{std::move(items), u}, std::move(key));
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    if (a.first.utility != b.first.utility) return a.first.utility > b.first.utility;
    return a.second < b.second;
  });
  std::vector<Hui> huis;
  huis.reserve(keyed.size());
  for (auto& [hui, key] : keyed) huis.push_back(std::move(hui));
  return huis;
}

std::vector<Hui> brute_force_huis(const TransactionDatabase& db, Utility min_util,
                                  std::size_t max_items) {
  return BruteForceIndex(db, max_items).all_huis(min_util);
}

TwuTable brute_force_twu(const TransactionDatabase& db) {
  TwuTable twu(db.num_items(), 0);
  for (ItemId item = 0; item < db.num_items(); ++item) {
    for (const auto& t : db.transactions()) {
      bool contains = false;
      for (const auto& e : t.entries) {
        if (e.item == item) contains = true;
      }
      if (!contains) continue;
      Utility tu = 0;
      for (const auto& e : t.entries)
        tu += static_cast<Utility>(e.quantity) * db.external_utility(e.item);
      twu[item] += tu;
    }
  }
  return twu;
}

}  // namespace upmine
