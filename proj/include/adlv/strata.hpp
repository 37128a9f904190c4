#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "adlv/context.hpp"
#include "adlv/coweight.hpp"
#include "adlv/enumeration.hpp"
#include "adlv/semimodule.hpp"

namespace adlv {

/// (b, j) with b in Abar and j >= 0; refers to the index b + j.
struct IndexPair {
  OPoint b;
  int64_t j = 0;

  OPoint target() const { return b + j; }
  friend auto operator<=>(const IndexPair&, const IndexPair&) = default;
  std::string to_string() const;
};

/// The order on Abar generated by r^{-1}(b) < b for b outside Y, together with a
/// fixed linear extension. Pairs are compared by j first, then by their points.
class PrecedenceOrder {
 public:
  PrecedenceOrder() = default;
  PrecedenceOrder(std::vector<OPoint> linear, std::vector<std::vector<bool>> closure);

  /// Abar listed in a linear extension.
  const std::vector<OPoint>& linear_extension() const { return linear_; }
  int rank(OPoint b) const;

  /// Reflexive order on Abar.
  bool precedes(OPoint x, OPoint y) const;
  bool precedes(const IndexPair& x, const IndexPair& y) const;

  /// Sorts pairs along the linear extension (j, then rank of b).
  std::vector<IndexPair> sorted(std::vector<IndexPair> pairs) const;

 private:
  std::vector<OPoint> linear_;
  std::vector<std::vector<bool>> closure_;  // closure_[rank x][rank y] = x precedes y
};

PrecedenceOrder precedence_order(const SemiModule& a, int iota);

/// Sets of a stratum cl(A, iota).
struct StratumIndex {
  int iota = 0;
  std::vector<OPoint> Y;  // Y[k-1] = max Abar^k_iota
  std::vector<IndexPair> V;
  std::vector<IndexPair> W;
  PrecedenceOrder precedence;

  bool in_Y(OPoint b) const;
  bool in_V(const IndexPair& p) const;
  bool in_W(const IndexPair& p) const;
  /// V and W merged along the precedence linear extension.
  std::vector<IndexPair> D() const;
};

std::vector<IndexPair> v_pairs(const SemiModule& a);
StratumIndex index_sets(const SemiModule& a, int iota);

int64_t stratum_dimension(const SemiModule& a);

/// -(n-h)/2 + sum_tau (n - m_tau) m_tau / 2.
int64_t adlv_dimension(const IsocrystalContext& ctx, const HodgeType& mu);

/// Rigid semi-modules of top dimension, grouped modulo A ~ A + kh.
std::vector<SemiModuleClass> top_filter(const IsocrystalContext& ctx, const HodgeType& mu,
                                        std::span<const SemiModule> candidates,
                                        SetOrder order = SetOrder::MaxMin);

}  // namespace adlv
