#include "upmine/generator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_set>

namespace upmine {

namespace {

// Hand-rolled draws on top of mt19937_64 keep the output stream independent
// of the standard library's unspecified distribution algorithms.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint64_t uniform_int(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
  return lo + rng() % (hi - lo + 1);
}

std::uint64_t poisson(std::mt19937_64& rng, double mean) {
  std::uint64_t total = 0;
  while (mean > 400.0) {  // keep exp(-mean) in normal double range
    total += poisson(rng, 400.0);
    mean -= 400.0;
  }
  const double limit = std::exp(-mean);
  std::uint64_t k = 0;
  double p = 1.0;
  do {
    ++k;
    p *= uniform01(rng);
  } while (p > limit);
  return total + k - 1;
}

double normal(std::mt19937_64& rng) {
  // Box-Muller; consumes exactly two draws.
  const double u1 = std::max(uniform01(rng), 0x1.0p-60);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
}

struct PatternPool {
  std::vector<std::vector<ItemId>> patterns;
  std::vector<double> cumulative_weight;

  const std::vector<ItemId>& pick(std::mt19937_64& rng) const {
    const double target = uniform01(rng) * cumulative_weight.back();
    const auto it =
        std::upper_bound(cumulative_weight.begin(), cumulative_weight.end(), target);
    const std::size_t idx = std::min<std::size_t>(
        it - cumulative_weight.begin(), patterns.size() - 1);
    return patterns[idx];
  }
};

PatternPool make_pattern_pool(std::mt19937_64& rng, const DatasetSpec& spec) {
  PatternPool pool;
  const std::size_t count =
      std::clamp<std::size_t>(spec.num_items / 5, 1, 2000);
  pool.patterns.reserve(count);
  double running = 0.0;
  for (std::size_t p = 0; p < count; ++p) {
    const auto size = static_cast<std::size_t>(std::clamp<std::uint64_t>(
        poisson(rng, spec.avg_pattern_size), 1, spec.num_items));
    std::vector<ItemId> items;
    std::unordered_set<ItemId> used;
    const std::vector<ItemId>* previous = p ? &pool.patterns[p - 1] : nullptr;
    std::size_t attempts = 0;
    while (items.size() < size && attempts < 20 * size + 20) {
      ++attempts;
      ItemId candidate;
      if (previous && !previous->empty() && uniform01(rng) < 0.5) {
        candidate = (*previous)[uniform_int(rng, 0, previous->size() - 1)];
      } else {
        candidate = static_cast<ItemId>(uniform_int(rng, 0, spec.num_items - 1));
      }
      if (used.insert(candidate).second) items.push_back(candidate);
    }
    if (items.empty()) items.push_back(static_cast<ItemId>(p % spec.num_items));
    pool.patterns.push_back(std::move(items));
    running += -std::log(std::max(uniform01(rng), 0x1.0p-60));  // exponential weight
    pool.cumulative_weight.push_back(running);
  }
  return pool;
}

}  // namespace

TransactionDatabase generate_synthetic(const DatasetSpec& spec) {
  if (spec.num_items == 0) throw std::invalid_argument("N must be positive");
  if (!(spec.avg_transaction_size > 0)) throw std::invalid_argument("T must be positive");
  if (!(spec.avg_pattern_size > 0)) throw std::invalid_argument("I must be positive");
  if (spec.avg_transaction_size > spec.num_items)
    throw std::invalid_argument("T must not exceed N");
  if (spec.avg_pattern_size > spec.avg_transaction_size)
    throw std::invalid_argument("I must not exceed T");
  if (spec.max_quantity == 0) throw std::invalid_argument("max quantity must be positive");
  if (spec.max_external_utility == 0)
    throw std::invalid_argument("max external utility must be positive");

  std::mt19937_64 rng(spec.seed);
  TransactionDatabase db;

  // Utility table and pattern pool are drawn before any transaction, so a
  // shorter run is a prefix of a longer one under the same seed.
  for (ItemId i = 0; i < spec.num_items; ++i) {
    Utility u;
    if (spec.log_normal_utilities) {
      const double v = std::exp(normal(rng));
      u = std::clamp<Utility>(static_cast<Utility>(std::llround(v)), 1,
                              spec.max_external_utility);
    } else {
      u = uniform_int(rng, 1, spec.max_external_utility);
    }
    db.add_item(i, u);
  }
  const PatternPool pool = make_pattern_pool(rng, spec);

  std::vector<ItemId> items;
  std::unordered_set<ItemId> used;
  for (std::uint64_t t = 0; t < spec.num_transactions; ++t) {
    const auto target = static_cast<std::size_t>(std::clamp<std::uint64_t>(
        poisson(rng, spec.avg_transaction_size), 1, spec.num_items));
    items.clear();
    used.clear();
    while (items.size() < target) {
      const auto& pattern = pool.pick(rng);
      const std::size_t before = items.size();
      for (const ItemId item : pattern) {
        if (items.size() == target) break;
        if (used.insert(item).second) items.push_back(item);
      }
      if (items.size() == before) {
        // Pattern added nothing; probe linearly from a random start so the
        // loop always terminates.
        auto candidate = static_cast<ItemId>(uniform_int(rng, 0, spec.num_items - 1));
        while (!used.insert(candidate).second)
          candidate = static_cast<ItemId>((candidate + 1) % spec.num_items);
        items.push_back(candidate);
      }
    }
    std::sort(items.begin(), items.end());
    std::vector<ItemQuantity> entries;
    entries.reserve(items.size());
    for (const ItemId item : items) {
      entries.push_back(
          {item, static_cast<std::uint32_t>(uniform_int(rng, 1, spec.max_quantity))});
    }
    db.add_transaction(std::move(entries));
  }
  return db;
}

}  // namespace upmine
