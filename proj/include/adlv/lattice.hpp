#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "adlv/context.hpp"
#include "adlv/coweight.hpp"
#include "adlv/finite_field.hpp"
#include "adlv/semimodule.hpp"
#include "adlv/series.hpp"

namespace adlv {

/// A vector sum_j c_j e_{tau,j} of N_tau in flat index form. Coefficients are
/// stored for indices lo, lo+1, ...; indices at or beyond hi are unknown
/// unless hi == kExact.
struct LatticeVector {
  using Elem = FiniteField::Elem;
  static constexpr int64_t kExact = TruncatedSeries::kExact;

  int tau = 0;
  int64_t lo = 0;
  std::vector<Elem> coeffs;
  int64_t hi = kExact;

  bool exact() const { return hi == kExact; }
  /// Coefficient of e_{tau,i}; PrecisionExhausted at or beyond hi.
  Elem at(int64_t i) const;

  static LatticeVector basis(OPoint a) { return {a.tau, a.i, {1}, kExact}; }
};

/// eta(v): the index of the leading term.
OPoint eta(const LatticeVector& v);

LatticeVector t_shift(const IsocrystalContext& ctx, const LatticeVector& v, int64_t k);
/// gamma sigma: coefficients raised to the q-th power, e_a -> e_{f(a)}.
LatticeVector gamma_sigma(const IsocrystalContext& ctx, const FiniteField& F, const LatticeVector& v);

/// Coordinates in the basis e_{tau,0}, ..., e_{tau,n-1} of the standard lattice,
/// using e_{tau,j} = t^{floor(j/n)} e_{tau, j mod n}.
std::vector<TruncatedSeries> to_coordinates(int n, const LatticeVector& v);
LatticeVector from_coordinates(int tau, int n, const std::vector<TruncatedSeries>& coords);

/// A d-tuple of lattices, each given by n generators.
class TruncatedLattice {
 public:
  TruncatedLattice(IsocrystalContext ctx, FiniteField field, int64_t precision,
                   std::vector<std::vector<LatticeVector>> generators);

  /// The standard lattice: e_{tau,0}, ..., e_{tau,n-1} in every line.
  static TruncatedLattice standard(const IsocrystalContext& ctx, const FiniteField& field, int64_t precision = 0);

  const IsocrystalContext& context() const { return ctx_; }
  const FiniteField& field() const { return field_; }
  int64_t precision() const { return precision_; }
  const std::vector<LatticeVector>& generators(int tau) const { return gens_[tau]; }

  TruncatedLattice t_shift(int64_t k) const;
  TruncatedLattice gamma_sigma() const;

  nlohmann::json to_json() const;
  static TruncatedLattice from_json(const nlohmann::json& doc);

 private:
  IsocrystalContext ctx_;
  FiniteField field_;
  int64_t precision_;
  std::vector<std::vector<LatticeVector>> gens_;
};

/// Per line, one generator for each coset of nZ with leading coefficient 1 and
/// leading index the coset minimum of A(Lambda_tau).
struct LineEchelon {
  int tau = 0;
  std::vector<LatticeVector> by_residue;
  std::vector<int64_t> leads;  // leads[rho]

  /// w modulo Lambda_tau, as its components on indices outside A(Lambda_tau).
  /// valid_below is the first index where the answer is not certified.
  struct Residual {
    std::map<int64_t, LatticeVector::Elem> entries;
    int64_t valid_below = LatticeVector::kExact;
    bool is_zero() const { return entries.empty(); }
  };
  Residual reduce(const FiniteField& F, const LatticeVector& w, int64_t cap = LatticeVector::kExact) const;
  /// Largest index outside A(Lambda_tau), plus one.
  int64_t conductor() const;
  /// Smallest index at which some generator is no longer known.
  int64_t known_below() const;
};

/// Echelon form of the span of arbitrary generators of one line. Generators that
/// reduce to zero are dropped when the drop is certified (the unknown tail lies
/// above the conductor); otherwise RankDeficient or PrecisionExhausted.
LineEchelon line_echelon(const FiniteField& F, int n, int tau, const std::vector<LatticeVector>& gens,
                         bool allow_dependent = false);
std::vector<LineEchelon> echelon(const TruncatedLattice& lattice);

/// Coset minima of A(Lambda) in the SemiModule table layout (no f-stability check).
std::vector<int64_t> coset_leads(const TruncatedLattice& lattice);
/// A(Lambda); fails with FStabilityViolation if it is not a semi-module.
SemiModule a_of_lattice(const TruncatedLattice& lattice);
/// phi_Lambda on Abar(Lambda).
std::map<OPoint, int64_t> phi_of_lattice(const TruncatedLattice& lattice);

struct LatticePredicate {
  bool in_variety = false;
  std::optional<SemiModule> a;
  std::optional<HodgeType> mu;
  std::string reason;
};
/// Lambda lies in X_mu(gamma) for mu = the Hodge type of A(Lambda) iff A(Lambda) is a
/// semi-module with phi in {0, 1} and phi_Lambda = phi_A(Lambda).
LatticePredicate lattice_predicate(const TruncatedLattice& lattice);

/// Elementary divisors of Lambda' relative to Lambda per line, sorted non-increasing.
Coweight relative_position(const TruncatedLattice& lattice, const TruncatedLattice& other);

/// Containment of other in lattice, certified within precision.
bool contains(const TruncatedLattice& lattice, const TruncatedLattice& other);
bool same_lattice(const TruncatedLattice& a, const TruncatedLattice& b);

}  // namespace adlv
