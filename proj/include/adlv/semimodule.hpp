#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "adlv/context.hpp"
#include "adlv/coweight.hpp"

namespace adlv {

/// A semi-module A in Z_d x Z, stored as its table of coset minima Abar
/// (one entry b_c per coset c of nZ). A = union of b_c + n Z_{>=0}.
///
/// Instances are always valid: construction goes through validate(), which checks
/// that every coset is present and that f(b_c) - b_{f(c)} is a non-negative
/// multiple of n.
class SemiModule {
 public:
  static SemiModule validate(const IsocrystalContext& ctx, std::span<const OPoint> mins);
  /// mins[c] is the i-coordinate of the minimum in coset c.
  static SemiModule from_table(const IsocrystalContext& ctx, std::vector<int64_t> mins);

  const IsocrystalContext& context() const { return ctx_; }
  const std::vector<int64_t>& table() const { return mins_; }

  OPoint min_of_coset(int coset) const { return {ctx_.coset_tau(coset), mins_[coset]}; }
  bool contains(OPoint a) const { return a.i >= mins_[ctx_.coset_of(a)]; }
  bool is_generator(OPoint a) const { return a.i == mins_[ctx_.coset_of(a)]; }

  /// Abar sorted by (tau, i).
  std::vector<OPoint> generators() const;
  /// Abar^k_tau sorted by i.
  std::vector<OPoint> generators(int tau, int piece) const;

  int64_t phi(OPoint b) const { return phi_[ctx_.coset_of(b)]; }
  int64_t phi_of_coset(int coset) const { return phi_[coset]; }
  /// r_A(b) = f(b) - n phi_A(b), a permutation of Abar.
  OPoint r(OPoint b) const { return min_of_coset(ctx_.f_coset(ctx_.coset_of(b))); }
  OPoint r_inverse(OPoint b) const;

  /// Smallest H with {(tau, j) : j >= H} contained in A.
  int64_t conductor(int tau) const;
  /// max over tau of (largest minus smallest coset minimum in line tau).
  int64_t max_coset_gap() const;

  SemiModule shifted(int64_t k) const;

  friend bool operator==(const SemiModule& a, const SemiModule& b) {
    return a.ctx_.same_frame(b.ctx_) && a.mins_ == b.mins_;
  }
  friend bool operator<(const SemiModule& a, const SemiModule& b) { return a.mins_ < b.mins_; }

  /// Coset minima as "(tau,i)" tuples sorted by (piece, tau, i).
  std::string to_string() const;

 private:
  SemiModule(IsocrystalContext ctx, std::vector<int64_t> mins);

  IsocrystalContext ctx_;
  std::vector<int64_t> mins_;
  std::vector<int64_t> phi_;
  std::vector<int> r_inv_coset_;
};

struct PhiAndR {
  std::map<OPoint, int64_t> phi;
  std::map<OPoint, OPoint> r;
};

PhiAndR phi_and_r(const SemiModule& a);

/// Hodge type of A; requires phi_A to take values in {0, 1} (NonMinusculePhi).
HodgeType hodge_type(const SemiModule& a);
bool is_hodge_type(const SemiModule& a, const HodgeType& mu);

}  // namespace adlv
