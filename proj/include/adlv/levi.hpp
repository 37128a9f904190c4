#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "adlv/context.hpp"
#include "adlv/coweight.hpp"
#include "adlv/enumeration.hpp"
#include "adlv/semimodule.hpp"

namespace adlv {

/// The graded pieces A^1, ..., A^h of a semi-module, each rewritten as a
/// semi-module for the factor Res GL_{n'} via j -> floor(j / h).
struct LeviSemiModule {
  IsocrystalContext factor;
  std::vector<SemiModule> components;
};

/// One Hodge type per Levi factor; entry k-1 belongs to A^k.
using LeviCoweight = std::vector<HodgeType>;

std::string to_string(const LeviCoweight& lambda);

LeviSemiModule split_semimodule(const SemiModule& a);
SemiModule reassemble(const IsocrystalContext& ctx, const LeviSemiModule& split);

LeviCoweight lambda_A(const SemiModule& a);

/// M-dominant lambda with per-tau totals m_tau and per-factor totals m'.
std::vector<LeviCoweight> I_mu_gamma(const IsocrystalContext& ctx, const HodgeType& mu);

int64_t levi_adlv_dimension(const IsocrystalContext& ctx, const LeviCoweight& lambda);

struct DimensionIdentityReport {
  int64_t stratum = 0;        // |V(A)|
  int64_t adlv = 0;           // dim X_mu
  int64_t levi_adlv = 0;      // dim X^M_{lambda_A}
  std::vector<int64_t> factor_strata;  // |V(A^k)|
  /// (i, j) -> (|V_{i,j}(A)|, predicted count) for i < j.
  std::map<std::pair<int, int>, std::pair<int64_t, int64_t>> cross_terms;
  bool is_top = false;         // |V(A)| = dim X_mu
  bool factors_top = false;    // sum |V(A^k)| = dim X^M_{lambda_A}
};

/// Checks |V(A)| = dim X_mu - dim X^M_{lambda_A} + sum_k |V(A^k)| and the cross-term
/// counts for an ordered A. Throws IdentityViolation with the operands on failure.
DimensionIdentityReport dimension_identity_check(const SemiModule& a);

/// Number of top-dimensional M-semi-module classes of type lambda modulo the
/// per-factor shifts. The window applies to each factor (standard if absent).
int64_t levi_class_count(const IsocrystalContext& ctx, const LeviCoweight& lambda,
                         std::optional<EnumerationWindow> window = std::nullopt);

}  // namespace adlv
