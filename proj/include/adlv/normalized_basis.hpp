#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "adlv/finite_field.hpp"
#include "adlv/lattice.hpp"
#include "adlv/semimodule.hpp"
#include "adlv/strata.hpp"

namespace adlv {

/// A point x of the affine space with coordinates indexed by D(A, iota).
using Coordinates = std::map<IndexPair, FiniteField::Elem>;

/// 4 (n + max coset gap of A).
int64_t default_precision(const SemiModule& a);
/// Smallest truncation for which the stratum equations are certified.
int64_t minimum_precision(const SemiModule& a);

/// The vectors v(a), a in A, of a point x, truncated to v(b) = sum_{j < N} alpha_{b,j} e_{b+j}.
class NormalizedBasis {
 public:
  using Elem = FiniteField::Elem;

  NormalizedBasis(SemiModule a, StratumIndex index, FiniteField field, int64_t precision, Coordinates x,
                  std::map<OPoint, std::vector<Elem>> alpha);

  const SemiModule& semimodule() const { return a_; }
  const StratumIndex& index() const { return index_; }
  const FiniteField& field() const { return field_; }
  int64_t precision() const { return precision_; }
  const Coordinates& point() const { return x_; }

  /// alpha_{b,j} for b in Abar and 0 <= j < precision.
  Elem alpha(OPoint b, int64_t j) const;
  const std::vector<Elem>& alphas(OPoint b) const { return alpha_.at(b); }

  /// v(a) for a in A, known below a + precision.
  LatticeVector vector(OPoint a) const;
  /// Lambda(x), spanned by v(b) for b in Abar.
  TruncatedLattice lattice() const;

 private:
  SemiModule a_;
  StratumIndex index_;
  FiniteField field_;
  int64_t precision_;
  Coordinates x_;
  std::map<OPoint, std::vector<Elem>> alpha_;
};

/// Runs the recursion for alpha along the precedence order. x must have exactly
/// the keys D(A, iota). precision 0 selects default_precision(A).
NormalizedBasis normalized_basis(const SemiModule& a, int iota, const Coordinates& x, const FiniteField& field,
                                 int64_t precision = 0);

/// beta_{y,j} for (y, j) in W: the components of t^{-phi(b')} gamma sigma v(b'), b' = r^{-1}(y),
/// outside A modulo Lambda(x).
std::map<IndexPair, FiniteField::Elem> beta_residuals(const NormalizedBasis& basis);

bool stratum_membership(const NormalizedBasis& basis);
bool stratum_membership(const SemiModule& a, int iota, const Coordinates& x, const FiniteField& field,
                        int64_t precision = 0);

/// All points of cl(A, iota) over the given values on V(A), solving the Artin-Schreier
/// equations along the precedence order. Sorted lexicographically by the W values.
std::vector<Coordinates> solve_stratum_fiber(const SemiModule& a, int iota, const Coordinates& v_coords,
                                             const FiniteField& field, int64_t precision = 0);

/// The unique x in cl(A(Lambda), iota) with Lambda(x) = Lambda.
Coordinates recover_coordinates(const TruncatedLattice& lattice, int iota);

}  // namespace adlv
