#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace adlv {

/// The field F_{q^r}, realized as F_p[x]/(g) for a primitive polynomial g of
/// degree e*r where q = p^e. Elements are integers whose base-p digits are the
/// coefficients of 1, x, x^2, ...; 0 and 1 are the field's zero and one.
class FiniteField {
 public:
  using Elem = uint32_t;

  /// Fields up to 2^20 elements.
  static FiniteField make(int q, int r);

  int p() const { return t_->p; }
  int q() const { return t_->q; }
  int r() const { return t_->r; }
  uint32_t size() const { return t_->size; }

  Elem add(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem pow(Elem a, uint64_t e) const;

  /// a -> a^q and its inverse a -> a^{q^{r-1}}.
  Elem frobenius(Elem a) const { return pow(a, static_cast<uint64_t>(t_->q)); }
  Elem frobenius_inverse(Elem a) const;
  /// a lies in F_{q^s} (s must divide r for this to be a subfield).
  bool in_subfield(Elem a, int s) const;

  /// The defining polynomial, lowest coefficient first.
  const std::vector<int>& modulus() const { return t_->modulus; }

  friend bool operator==(const FiniteField& a, const FiniteField& b) {
    return a.t_ == b.t_ || (a.q() == b.q() && a.r() == b.r());
  }

  std::string to_string() const;

 private:
  struct Tables {
    int p = 2, e = 1, q = 2, r = 1, degree = 1;
    uint32_t size = 2;
    std::vector<int> modulus;
    std::vector<uint32_t> exp;  // exp[i] = x^i, i < size - 1
    std::vector<uint32_t> log;  // log[a] for a != 0
    std::vector<uint32_t> negation;
  };
  std::shared_ptr<const Tables> t_;
};

}  // namespace adlv
