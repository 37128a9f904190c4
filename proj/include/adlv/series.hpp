#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "adlv/finite_field.hpp"

namespace adlv {

/// A Laurent series sum_e c_e t^e over F_{q^r} known modulo t^precision, or
/// exactly. Stored canonically: coeffs[0] is the coefficient of t^start and is
/// non-zero, the last stored coefficient is non-zero, and the zero series has
/// no coefficients and start = 0.
class TruncatedSeries {
 public:
  using Elem = FiniteField::Elem;
  static constexpr int64_t kExact = std::numeric_limits<int64_t>::max();

  TruncatedSeries() = default;
  TruncatedSeries(int64_t start, std::vector<Elem> coeffs, int64_t precision = kExact);

  static TruncatedSeries zero(int64_t precision = kExact) { return TruncatedSeries(0, {}, precision); }
  static TruncatedSeries monomial(Elem c, int64_t e, int64_t precision = kExact);

  bool exact() const { return precision_ == kExact; }
  int64_t precision() const { return precision_; }
  int64_t start() const { return start_; }
  const std::vector<Elem>& coeffs() const { return coeffs_; }

  /// Coefficient of t^e; throws PrecisionExhausted beyond the precision.
  Elem coefficient(int64_t e) const;

  /// Valuation if some known coefficient is non-zero.
  std::optional<int64_t> valuation() const;
  /// Lower bound on the valuation (precision when nothing non-zero is known).
  int64_t valuation_bound() const;
  bool is_exact_zero() const { return coeffs_.empty() && exact(); }
  bool known_zero() const { return coeffs_.empty(); }

  TruncatedSeries add(const FiniteField& F, const TruncatedSeries& o) const;
  TruncatedSeries sub(const FiniteField& F, const TruncatedSeries& o) const;
  TruncatedSeries mul(const FiniteField& F, const TruncatedSeries& o) const;
  TruncatedSeries scale(const FiniteField& F, Elem c) const;
  /// Multiplication by t^k.
  TruncatedSeries shifted(int64_t k) const;
  TruncatedSeries frobenius(const FiniteField& F) const;
  /// Inverse of a series with known valuation; PrecisionExhausted otherwise. The
  /// inverse of an exact non-monomial is truncated to relative_cap terms.
  TruncatedSeries inverse(const FiniteField& F, int64_t relative_cap = 64) const;
  TruncatedSeries with_precision(int64_t precision) const;

  friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;
  std::string to_string() const;

 private:
  void canonicalize();

  int64_t start_ = 0;
  std::vector<Elem> coeffs_;
  int64_t precision_ = kExact;
};

}  // namespace adlv
