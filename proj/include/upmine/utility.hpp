#pragma once

#include <cstdint>
#include <string_view>

#include "upmine/database.hpp"

namespace upmine {

// Per-item tables indexed by dense id. A zero entry means the item occurs in
// no transaction (real values are always >= 1 since quantities and external
// utilities are positive).
using TwuTable = std::vector<Utility>;  // transaction-weighted utilization
using MiuTable = std::vector<Utility>;  // minimum per-transaction item utility

// Exact non-negative rational, used for fractional thresholds so that
// ceil(value * base) never suffers floating-point drift.
struct Rational {
  std::uint64_t num{0};
  std::uint64_t den{1};
  bool operator==(const Rational&) const = default;
};

// Parses "0.8", "1", ".25" into an exact rational. Throws
// std::invalid_argument on malformed input.
Rational parse_decimal_fraction(std::string_view text);

// ceil(value * f), computed in 128-bit intermediate arithmetic.
Utility ceil_fraction(Utility value, Rational f);

/// How a user-facing threshold resolves to an absolute minimum utility.
struct ThresholdPolicy {
  enum class Kind { absolute, fraction_of_total_utility, fraction_of_mtwu };

  Kind kind{Kind::absolute};
  Rational value;

  static ThresholdPolicy absolute(Utility v) { return {Kind::absolute, {v, 1}}; }
  static ThresholdPolicy fraction_of_total(Rational f);
  static ThresholdPolicy fraction_of_mtwu(Rational f);
};

// TU(T): sum over entries of quantity * external utility. Throws
// std::out_of_range on an item without a utility entry, std::overflow_error
// if the sum leaves the 64-bit range.
Utility transaction_utility(const Transaction& t, std::span<const Utility> external_utility);

// Sum of TU over all transactions.
Utility total_utility(const TransactionDatabase& db);

// One database pass; twu[i] = sum of TU(T) over transactions T containing i.
TwuTable compute_twu(const TransactionDatabase& db);

// Max twu over items that occur. Throws std::invalid_argument when no item
// occurs (empty database).
Utility compute_mtwu(const TwuTable& twu);

// miu[i] = min over occurrences of quantity * external utility.
MiuTable compute_miu(const TransactionDatabase& db);

// Exact utility of x: sum over transactions containing all of x of the
// x-items' utilities there. Items absent from every transaction yield 0.
Utility exact_utility(const Itemset& x, const TransactionDatabase& db);

// absolute -> value; fraction kinds -> ceil(value * base) where base is the
// database total utility or the MTWU. Fraction kinds throw
// std::invalid_argument on an empty database.
Utility resolve_threshold(const ThresholdPolicy& policy, const TransactionDatabase& db,
                          const TwuTable& twu);

}  // namespace upmine
