#include "upmine/verifier.hpp"

#include <algorithm>
#include <chrono>

namespace upmine {

namespace {

// Sort key shared by pipeline output and golden files: descending utility,
// ties by ascending external-id sequence.
std::vector<ExternalId> external_key(const Itemset& items, const TransactionDatabase& db) {
  std::vector<ExternalId> key;
  key.reserve(items.size());
  for (const ItemId i : items) key.push_back(db.external_id(i));
  std::sort(key.begin(), key.end());
  return key;
}

}  // namespace

std::vector<Hui> verify(const std::vector<Phui>& phuis, const TransactionDatabase& db,
                        Utility min_util, VerifyStats* stats) {
  const auto start = std::chrono::steady_clock::now();
  VerifyStats local_stats;

  // Distinct candidate itemsets.
  std::vector<Itemset> candidates;
  candidates.reserve(phuis.size());
  for (const auto& p : phuis) candidates.push_back(p.items);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  // Per-transaction sorted (item, quantity) arrays and an inverted index.
  const std::size_t n = db.num_transactions();
  std::vector<std::vector<ItemQuantity>> sorted_txn(n);
  std::vector<std::vector<std::uint32_t>> postings(db.num_items());
  for (std::size_t t = 0; t < n; ++t) {
    sorted_txn[t] = db.transaction(t).entries;
    std::sort(sorted_txn[t].begin(), sorted_txn[t].end(),
              [](const ItemQuantity& a, const ItemQuantity& b) { return a.item < b.item; });
    for (const auto& e : sorted_txn[t]) postings[e.item].push_back(static_cast<std::uint32_t>(t));
  }

  // Group candidates by their rarest item to skip transactions cheaply.
  std::vector<std::vector<std::uint32_t>> groups(db.num_items());
  std::vector<Utility> utilities(candidates.size(), 0);
  for (std::uint32_t c = 0; c < candidates.size(); ++c) {
    ItemId rarest = 0;
    std::size_t best = ~std::size_t{0};
    for (const ItemId item : candidates[c]) {
      if (item >= postings.size()) {  // item never occurs: utility stays 0
        best = 0;
        break;
      }
      if (postings[item].size() < best) {
        best = postings[item].size();
        rarest = item;
      }
    }
    if (best != 0 && best != ~std::size_t{0}) groups[rarest].push_back(c);
  }

  for (ItemId rare = 0; rare < groups.size(); ++rare) {
    if (groups[rare].empty()) continue;
    for (const std::uint32_t t : postings[rare]) {
      const auto& txn = sorted_txn[t];
      for (const std::uint32_t c : groups[rare]) {
        ++local_stats.containment_tests;
        // Merge-style subset walk, accumulating the candidate's utility.
        const Itemset& x = candidates[c];
        Utility u = 0;
        std::size_t i = 0;
        for (std::size_t j = 0; i < x.size() && j < txn.size(); ++j) {
          if (txn[j].item < x[i]) continue;
          if (txn[j].item > x[i]) break;
          u += static_cast<Utility>(txn[j].quantity) * db.external_utility(x[i]);
          ++i;
        }
        if (i == x.size()) utilities[c] += u;
      }
    }
  }

  std::vector<std::pair<Hui, std::vector<ExternalId>>> keyed;
  for (std::uint32_t c = 0; c < candidates.size(); ++c) {
    // Itemsets with no supporting transaction are never reported.
    if (utilities[c] == 0 || utilities[c] < min_util) continue;
    keyed.emplace_back(Hui{candidates[c], utilities[c]}, external_key(candidates[c], db));
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    if (a.first.utility != b.first.utility) return a.first.utility > b.first.utility;
    return a.second < b.second;
  });

  std::vector<Hui> huis;
  huis.reserve(keyed.size());
  for (auto& [hui, key] : keyed) huis.push_back(std::move(hui));

  if (stats) {
    local_stats.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    *stats = local_stats;
  }
  return huis;
}

std::string format_huis(const std::vector<Hui>& huis, const TransactionDatabase& db) {
  std::string out;
  for (const auto& h : huis) {
    const auto key = external_key(h.items, db);
    for (std::size_t i = 0; i < key.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(key[i]);
    }
    out += " #UTIL: ";
    out += std::to_string(h.utility);
    out += '\n';
  }
  return out;
}

}  // namespace upmine
