#include "upmine/utility.hpp"

#include <algorithm>
#include <charconv>
#include <limits>

namespace upmine {

namespace {

Utility checked_add(Utility a, Utility b) {
  Utility out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("utility sum overflow");
  return out;
}

Utility checked_mul(Utility a, Utility b) {
  Utility out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("utility product overflow");
  return out;
}

}  // namespace

Rational parse_decimal_fraction(std::string_view text) {
  const std::size_t dot = text.find('.');
  const std::string_view whole = text.substr(0, dot);
  const std::string_view frac = dot == std::string_view::npos ? "" : text.substr(dot + 1);
  if (whole.empty() && frac.empty()) throw std::invalid_argument("malformed fraction");

  auto digits_value = [](std::string_view s) -> std::uint64_t {
    std::uint64_t v = 0;
    if (s.empty()) return 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
      throw std::invalid_argument("malformed fraction");
    return v;
  };

  const std::uint64_t whole_v = digits_value(whole);
  std::uint64_t den = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) {
    den = checked_mul(den, 10);
  }
  const std::uint64_t frac_v = digits_value(frac);
  return {checked_add(checked_mul(whole_v, den), frac_v), den};
}

Utility ceil_fraction(Utility value, Rational f) {
  if (f.den == 0) throw std::invalid_argument("zero denominator");
  using u128 = unsigned __int128;
  const u128 prod = static_cast<u128>(value) * f.num;
  const u128 result = (prod + f.den - 1) / f.den;
  if (result > std::numeric_limits<Utility>::max())
    throw std::overflow_error("threshold overflow");
  return static_cast<Utility>(result);
}

ThresholdPolicy ThresholdPolicy::fraction_of_total(Rational f) {
  if (f.den == 0 || f.num > f.den)
    throw std::invalid_argument("fraction must lie in [0, 1]");
  return {Kind::fraction_of_total_utility, f};
}

ThresholdPolicy ThresholdPolicy::fraction_of_mtwu(Rational f) {
  if (f.den == 0 || f.num > f.den)
    throw std::invalid_argument("fraction must lie in [0, 1]");
  return {Kind::fraction_of_mtwu, f};
}

Utility transaction_utility(const Transaction& t, std::span<const Utility> external_utility) {
  Utility sum = 0;
  for (const auto& e : t.entries) {
    if (e.item >= external_utility.size())
      throw std::out_of_range("item has no utility entry");
    sum = checked_add(sum, checked_mul(e.quantity, external_utility[e.item]));
  }
  return sum;
}

Utility total_utility(const TransactionDatabase& db) {
  Utility sum = 0;
  for (const auto& t : db.transactions())
    sum = checked_add(sum, transaction_utility(t, db.external_utilities()));
  return sum;
}

TwuTable compute_twu(const TransactionDatabase& db) {
  TwuTable twu(db.num_items(), 0);
  for (const auto& t : db.transactions()) {
    const Utility tu = transaction_utility(t, db.external_utilities());
    for (const auto& e : t.entries) twu[e.item] = checked_add(twu[e.item], tu);
  }
  return twu;
}

Utility compute_mtwu(const TwuTable& twu) {
  const auto it = std::max_element(twu.begin(), twu.end());
  if (it == twu.end() || *it == 0)
    throw std::invalid_argument("MTWU undefined: no item occurs in the database");
  return *it;
}

MiuTable compute_miu(const TransactionDatabase& db) {
  MiuTable miu(db.num_items(), 0);
  for (const auto& t : db.transactions()) {
    for (const auto& e : t.entries) {
      const Utility u = checked_mul(e.quantity, db.external_utility(e.item));
      if (miu[e.item] == 0 || u < miu[e.item]) miu[e.item] = u;
    }
  }
  return miu;
}

Utility exact_utility(const Itemset& x, const TransactionDatabase& db) {
  if (x.empty()) throw std::invalid_argument("itemset must be non-empty");
  Utility sum = 0;
  for (const auto& t : db.transactions()) {
    Utility in_transaction = 0;
    std::size_t found = 0;
    for (const auto& e : t.entries) {
      if (std::binary_search(x.begin(), x.end(), e.item)) {
        ++found;
        in_transaction =
            checked_add(in_transaction, checked_mul(e.quantity, db.external_utility(e.item)));
      }
    }
    if (found == x.size()) sum = checked_add(sum, in_transaction);
  }
  return sum;
}

Utility resolve_threshold(const ThresholdPolicy& policy, const TransactionDatabase& db,
                          const TwuTable& twu) {
  switch (policy.kind) {
    case ThresholdPolicy::Kind::absolute:
      if (policy.value.den != 1) throw std::invalid_argument("absolute threshold must be integer");
      return policy.value.num;
    case ThresholdPolicy::Kind::fraction_of_total_utility:
      if (db.num_transactions() == 0)
        throw std::invalid_argument("fractional threshold on empty database");
      return ceil_fraction(total_utility(db), policy.value);
    case ThresholdPolicy::Kind::fraction_of_mtwu:
      if (db.num_transactions() == 0)
        throw std::invalid_argument("fractional threshold on empty database");
      return ceil_fraction(compute_mtwu(twu), policy.value);
  }
  throw std::logic_error("unreachable");
}

}  // namespace upmine
