#include "adlv/series.hpp"

#include <algorithm>

#include "adlv/error.hpp"

namespace adlv {

namespace {

int64_t add_precision(int64_t a, int64_t b) {
  if (a == TruncatedSeries::kExact || b == TruncatedSeries::kExact) return TruncatedSeries::kExact;
  return a + b;
}

}  // namespace

TruncatedSeries::TruncatedSeries(int64_t start, std::vector<Elem> coeffs, int64_t precision)
    : start_(start), coeffs_(std::move(coeffs)), precision_(precision) {
  canonicalize();
}

TruncatedSeries TruncatedSeries::monomial(Elem c, int64_t e, int64_t precision) {
  return TruncatedSeries(e, {c}, precision);
}

void TruncatedSeries::canonicalize() {
  if (!exact() && start_ + static_cast<int64_t>(coeffs_.size()) > precision_)
    coeffs_.resize(static_cast<std::size_t>(std::max<int64_t>(0, precision_ - start_)));
  auto first = std::find_if(coeffs_.begin(), coeffs_.end(), [](Elem c) { return c != 0; });
  start_ += first - coeffs_.begin();
  coeffs_.erase(coeffs_.begin(), first);
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  if (coeffs_.empty()) start_ = 0;
}

TruncatedSeries::Elem TruncatedSeries::coefficient(int64_t e) const {
  if (e >= precision_) fail(ErrorKind::PrecisionExhausted, "coefficient of t^" + std::to_string(e) + " beyond O(t^" +
                                                               std::to_string(precision_) + ")");
  if (e < start_ || e >= start_ + static_cast<int64_t>(coeffs_.size())) return 0;
  return coeffs_[static_cast<std::size_t>(e - start_)];
}

std::optional<int64_t> TruncatedSeries::valuation() const {
  if (coeffs_.empty()) return std::nullopt;
  return start_;
}

int64_t TruncatedSeries::valuation_bound() const { return coeffs_.empty() ? precision_ : start_; }

TruncatedSeries TruncatedSeries::add(const FiniteField& F, const TruncatedSeries& o) const {
  const int64_t prec = std::min(precision_, o.precision_);
  if (coeffs_.empty()) return o.with_precision(prec);
  if (o.coeffs_.empty()) return with_precision(prec);
  const int64_t lo = std::min(start_, o.start_);
  const int64_t hi = std::max(start_ + static_cast<int64_t>(coeffs_.size()),
                              o.start_ + static_cast<int64_t>(o.coeffs_.size()));
  std::vector<Elem> out(static_cast<std::size_t>(hi - lo), 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out[start_ - lo + i] = coeffs_[i];
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) {
    auto& c = out[o.start_ - lo + i];
    c = F.add(c, o.coeffs_[i]);
  }
  return TruncatedSeries(lo, std::move(out), prec);
}

TruncatedSeries TruncatedSeries::scale(const FiniteField& F, Elem c) const {
  if (c == 0) return zero(precision_);
  std::vector<Elem> out(coeffs_);
  for (auto& x : out) x = F.mul(x, c);
  return TruncatedSeries(start_, std::move(out), precision_);
}

TruncatedSeries TruncatedSeries::sub(const FiniteField& F, const TruncatedSeries& o) const {
  std::vector<Elem> negated(o.coeffs_);
  for (auto& x : negated) x = F.neg(x);
  return add(F, TruncatedSeries(o.start_, std::move(negated), o.precision_));
}

TruncatedSeries TruncatedSeries::mul(const FiniteField& F, const TruncatedSeries& o) const {
  // a = t^va (...) + O(t^pa): the product is known below min(va + pb, vb + pa)
  if (is_exact_zero() || o.is_exact_zero()) return zero();
  const int64_t prec = std::min(add_precision(valuation_bound(), o.precision_),
                                add_precision(o.valuation_bound(), precision_));
  if (coeffs_.empty() || o.coeffs_.empty()) return zero(prec);
  std::vector<Elem> out(coeffs_.size() + o.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
      if (o.coeffs_[j] != 0) out[i + j] = F.add(out[i + j], F.mul(coeffs_[i], o.coeffs_[j]));
  }
  return TruncatedSeries(start_ + o.start_, std::move(out), prec);
}

TruncatedSeries TruncatedSeries::shifted(int64_t k) const {
  TruncatedSeries out(*this);
  if (!out.coeffs_.empty()) out.start_ += k;
  if (!exact()) out.precision_ += k;
  return out;
}

TruncatedSeries TruncatedSeries::frobenius(const FiniteField& F) const {
  std::vector<Elem> out(coeffs_);
  for (auto& x : out) x = F.frobenius(x);
  return TruncatedSeries(start_, std::move(out), precision_);
}

TruncatedSeries TruncatedSeries::inverse(const FiniteField& F, int64_t relative_cap) const {
  if (coeffs_.empty())
    fail(is_exact_zero() ? ErrorKind::RankDeficient : ErrorKind::PrecisionExhausted, "inverse of a series " +
                                                                                          to_string());
  const int64_t v = start_;
  const Elem lead_inv = F.inv(coeffs_[0]);
  if (exact() && coeffs_.size() == 1) return TruncatedSeries(-v, {lead_inv}, kExact);
  // relative precision of the unit part; exact non-monomials get a working precision
  const int64_t terms = exact() ? relative_cap : precision_ - v;
  std::vector<Elem> inv(static_cast<std::size_t>(terms), 0);
  if (terms > 0) inv[0] = lead_inv;
  for (int64_t k = 1; k < terms; ++k) {
    Elem acc = 0;
    for (int64_t i = 1; i <= k && i < static_cast<int64_t>(coeffs_.size()); ++i)
      acc = F.add(acc, F.mul(coeffs_[i], inv[k - i]));
    inv[k] = F.neg(F.mul(acc, lead_inv));
  }
  return TruncatedSeries(-v, std::move(inv), -v + terms);
}

TruncatedSeries TruncatedSeries::with_precision(int64_t precision) const {
  TruncatedSeries out(*this);
  out.precision_ = std::min(precision_, precision);
  out.canonicalize();
  return out;
}

std::string TruncatedSeries::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    if (!out.empty()) out += " + ";
    out += std::to_string(coeffs_[i]) + "*t^" + std::to_string(start_ + static_cast<int64_t>(i));
  }
  if (out.empty()) out = "0";
  if (!exact()) out += " + O(t^" + std::to_string(precision_) + ")";
  return out;
}

}  // namespace adlv
