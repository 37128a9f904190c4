#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "adlv/context.hpp"
#include "adlv/coweight.hpp"

namespace adlv {

using Rational = boost::rational<int64_t>;
using RationalVector = std::vector<Rational>;
/// A weight of the dual torus of GL_n; not necessarily dominant.
using WeightVector = std::vector<int>;
/// Highest weight of a polynomial GL_n representation: n non-increasing entries >= 0.
using Partition = std::vector<int>;

std::string to_string(const RationalVector& v);
std::string to_string(const std::vector<int>& v);

/// v <= w iff w - v has non-negative prefix sums and total 0.
bool dominance_leq(const RationalVector& v, const RationalVector& w);
bool dominance_leq(const WeightVector& v, const WeightVector& w);

struct NewtonLambda {
  RationalVector nu;
  WeightVector lambda;
};

/// nu = (m/n, ..., m/n) and lambda_i = floor(i m / n) - floor((i-1) m / n). For n <= 8
/// the formula is compared against a search for the maximal element.
NewtonLambda newton_and_lambda(const IsocrystalContext& ctx);

/// Unique maximum of {integral lambda : sum = m, lambda <= nu} among vectors with
/// entries in [-1, ceil(m/n) + 1]. Throws InternalInvariant if it is not unique.
WeightVector best_integral_approximation_search(int n, int m);

/// Dimension of the lambda-weight space of the tensor product over tau of the
/// exterior powers Lambda^{m_tau}.
uint64_t weight_multiplicity(const HodgeType& mu, const WeightVector& lambda);

/// Lambda^{k_1} (x) ... (x) Lambda^{k_r} of GL_n decomposed by iterated Pieri.
std::map<Partition, uint64_t> tensor_decomposition(int n, std::span<const int> fundamentals);

/// Number of semistandard tableaux of the given shape and content (weight
/// multiplicity of V_shape), by peeling horizontal strips.
uint64_t kostka(const Partition& shape, const WeightVector& content);

/// dim V_shape as the sum of weight multiplicities over all contents.
uint64_t weyl_dimension_by_weights(const Partition& shape);

struct MultiplicityTerm {
  Partition chi;
  uint64_t multiplicity = 0;  // a^chi
  uint64_t weight_dim = 0;    // dim V_chi(lambda)
};

struct MultiplicityIdentityReport {
  uint64_t lhs = 0;
  uint64_t rhs = 0;
  std::vector<MultiplicityTerm> terms;
};

/// dim V_{mu.}(lambda) = sum_chi a^chi dim V_chi(lambda); IdentityViolation otherwise.
MultiplicityIdentityReport multiplicity_identity_check(int n, std::span<const int> fundamentals,
                                                       const WeightVector& lambda);

}  // namespace adlv
