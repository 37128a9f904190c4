#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "adlv/context.hpp"
#include "adlv/coweight.hpp"
#include "adlv/semimodule.hpp"

namespace adlv {

/// Coset minima are enumerated in [-bound, bound] once the anchor
/// min(A cap O^h_0) has been pinned to 0.
struct EnumerationWindow {
  int64_t bound = 0;

  static int64_t minimum(const IsocrystalContext& ctx) { return ctx.n() + ctx.h(); }
  static EnumerationWindow standard(const IsocrystalContext& ctx) {
    return {static_cast<int64_t>(ctx.n()) * (ctx.d() + 1) + ctx.h()};
  }
};

void validate_window(const IsocrystalContext& ctx, const EnumerationWindow& window);

/// phi-sequences along each f-orbit (orbit order of IsocrystalContext::orbits()).
/// per_orbit[k][p] is the p-th admissible sequence for orbit k.
struct OrbitPatterns {
  std::vector<std::vector<std::vector<int>>> per_orbit;
};

OrbitPatterns orbit_patterns(const IsocrystalContext& ctx, const HodgeType& mu);

/// Builds the coset-minimum table of one orbit from its phi-sequence and the
/// value of the minimum in the orbit's first coset.
std::vector<int64_t> orbit_minima(const IsocrystalContext& ctx, int orbit, std::span<const int> phi_sequence,
                                  int64_t base);

std::vector<SemiModule> enumerate_hodge_semimodules(const IsocrystalContext& ctx, const HodgeType& mu,
                                                    const EnumerationWindow& window);

/// Comparison of two integer sets of equal size.
enum class SetOrder {
  MaxMin,            // every element of X is <= every element of X'
  SortedElementwise  // k-th smallest of X <= k-th smallest of X'
};

bool set_leq(std::span<const int64_t> x, std::span<const int64_t> y, SetOrder order);

bool is_ordered(const SemiModule& a, SetOrder order = SetOrder::MaxMin);
bool is_rigid(const SemiModule& a, SetOrder order = SetOrder::MaxMin);

/// k with b = a + k h, if any.
std::optional<int64_t> shift_equivalent(const SemiModule& a, const SemiModule& b);

/// Shifts the graded piece A^k by p[k-1] * h.
SemiModule omega_shift(const SemiModule& a, std::span<const int64_t> p);

/// Representative of A modulo A ~ A + kh with min(A cap O^h_0) = 0.
SemiModule canonical_representative(const SemiModule& a);

struct SemiModuleClass {
  SemiModule representative;
  /// Members of the input list that fell into this class.
  std::size_t multiplicity = 1;
};

}  // namespace adlv
