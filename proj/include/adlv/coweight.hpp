#pragma once

#include <compare>
#include <string>
#include <vector>

#include "adlv/context.hpp"

namespace adlv {

/// A cocharacter of prod_{tau in Z_d} GL_n, stored as one integer vector per tau.
/// HodgeType values are the dominant minuscule ones (entries 0/1, non-increasing).
class Coweight {
 public:
  Coweight() = default;
  explicit Coweight(std::vector<std::vector<int>> parts);

  /// (1^{m_tau} 0^{n - m_tau}) for every tau.
  static Coweight minuscule(int n, const std::vector<int>& m_tau);

  int d() const { return static_cast<int>(parts_.size()); }
  int n() const { return parts_.empty() ? 0 : static_cast<int>(parts_.front().size()); }
  const std::vector<int>& operator[](int tau) const { return parts_[tau]; }
  const std::vector<std::vector<int>>& parts() const { return parts_; }

  int m_tau(int tau) const;
  std::vector<int> m_taus() const;
  int total() const;

  bool is_dominant() const;
  bool is_minuscule() const;  // dominant with entries in {0, 1}

  friend auto operator<=>(const Coweight&, const Coweight&) = default;
  std::string to_string() const;

 private:
  std::vector<std::vector<int>> parts_;
};

using HodgeType = Coweight;

/// Subtracts the per-tau minimum so every part has minimum 0, and lowers m by n
/// times the removed central part. Throws NonMinusculePhi if the result is not
/// minuscule.
struct NormalizedHodge {
  HodgeType mu;
  int m = 0;
};
NormalizedHodge normalize_central_shift(const Coweight& raw, int m);

/// Rejects a Hodge type that cannot belong to the context (KottwitzMismatch when
/// the coordinate sum differs from m).
void check_hodge_for_context(const IsocrystalContext& ctx, const HodgeType& mu);

}  // namespace adlv
