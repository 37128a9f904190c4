#include "adlv/normalized_basis.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "adlv/error.hpp"

namespace adlv {

namespace {

using Elem = FiniteField::Elem;

int64_t max_level(const StratumIndex& idx) {
  int64_t out = 0;
  for (const auto& p : idx.V) out = std::max(out, p.j);
  for (const auto& p : idx.W) out = std::max(out, p.j);
  return out;
}

void check_precision(const SemiModule& a, const StratumIndex& idx, int64_t precision) {
  require(precision > max_level(idx), ErrorKind::PrecisionExhausted,
          "precision " + std::to_string(precision) + " does not reach every parameter");
  for (const auto& b : a.generators())
    require(b.i + precision >= a.conductor(b.tau), ErrorKind::PrecisionExhausted,
            "precision " + std::to_string(precision) + " does not reach the conductor of line " +
                std::to_string(b.tau));
}

void check_coordinates(const FiniteField& F, const Coordinates& x, const std::vector<IndexPair>& keys) {
  std::set<IndexPair> expected(keys.begin(), keys.end());
  for (const auto& [p, value] : x) {
    require(expected.count(p) == 1, ErrorKind::InvalidArgument, "unexpected parameter " + p.to_string());
    require(value < F.size(), ErrorKind::InvalidArgument, "parameter " + p.to_string() + " outside the field");
  }
  for (const auto& p : keys) require(x.count(p) == 1, ErrorKind::InvalidArgument, "missing parameter " + p.to_string());
}

LatticeVector truncated(OPoint start, const std::vector<Elem>& coeffs, std::size_t count) {
  LatticeVector v;
  v.tau = start.tau;
  v.lo = start.i;
  v.coeffs.assign(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(count));
  v.hi = start.i + static_cast<int64_t>(count);
  return v;
}

// Residual coefficient of w at index, certified.
Elem residual_at(const FiniteField& F, const LineEchelon& line, const LatticeVector& w, int64_t index) {
  const auto res = line.reduce(F, w);
  require(res.valid_below > index, ErrorKind::PrecisionExhausted,
          "residual at " + std::to_string(index) + " is not determined");
  auto it = res.entries.find(index);
  return it == res.entries.end() ? 0 : it->second;
}

std::vector<Elem> frobenius_all(const FiniteField& F, const std::vector<Elem>& xs) {
  std::vector<Elem> out;
  out.reserve(xs.size());
  for (Elem c : xs) out.push_back(F.frobenius(c));
  return out;
}

}  // namespace

int64_t default_precision(const SemiModule& a) { return 4 * (a.context().n() + a.max_coset_gap()); }

int64_t minimum_precision(const SemiModule& a) {
  int64_t out = 1;
  for (const auto& b : a.generators()) out = std::max(out, a.conductor(b.tau) - b.i);
  for (int tau = 0; tau < a.context().d(); ++tau)
    for (const auto& p : index_sets(a, tau).W) out = std::max(out, p.j + 1);
  for (const auto& p : v_pairs(a)) out = std::max(out, p.j + 1);
  return out;
}

NormalizedBasis::NormalizedBasis(SemiModule a, StratumIndex index, FiniteField field, int64_t precision, Coordinates x,
                                 std::map<OPoint, std::vector<Elem>> alpha)
    : a_(std::move(a)),
      index_(std::move(index)),
      field_(std::move(field)),
      precision_(precision),
      x_(std::move(x)),
      alpha_(std::move(alpha)) {}

FiniteField::Elem NormalizedBasis::alpha(OPoint b, int64_t j) const {
  const auto& row = alpha_.at(b);
  require(j >= 0, ErrorKind::InvalidArgument, "negative level");
  if (j >= static_cast<int64_t>(row.size()))
    fail(ErrorKind::PrecisionExhausted, "alpha level " + std::to_string(j) + " beyond precision");
  return row[static_cast<std::size_t>(j)];
}

LatticeVector NormalizedBasis::vector(OPoint a) const {
  require(a_.contains(a), ErrorKind::InvalidArgument, a.to_string() + " is not in A");
  const OPoint b = a_.min_of_coset(a_.context().coset_of(a));
  const auto& row = alpha_.at(b);
  LatticeVector v = truncated(a, row, row.size());
  while (!v.coeffs.empty() && v.coeffs.back() == 0) v.coeffs.pop_back();
  return v;
}

TruncatedLattice NormalizedBasis::lattice() const {
  const auto& ctx = a_.context();
  std::vector<std::vector<LatticeVector>> gens(ctx.d());
  for (const auto& b : a_.generators()) gens[b.tau].push_back(vector(b));
  return TruncatedLattice(ctx, field_, precision_, std::move(gens));
}

NormalizedBasis normalized_basis(const SemiModule& a, int iota, const Coordinates& x, const FiniteField& F,
                                 int64_t precision) {
  const auto& ctx = a.context();
  require(F.q() == ctx.q(), ErrorKind::ContextMismatch, "field does not extend F_" + std::to_string(ctx.q()));
  if (precision == 0) precision = default_precision(a);
  auto idx = index_sets(a, iota);
  check_precision(a, idx, precision);
  check_coordinates(F, x, idx.D());

  const auto N = static_cast<std::size_t>(precision);
  std::map<OPoint, std::vector<Elem>> alpha;
  for (const auto& b : a.generators()) {
    alpha[b].assign(N, 0);
    alpha[b][0] = 1;
  }
  // level by level, and inside a level along the linear extension
  for (std::size_t j = 1; j < N; ++j) {
    const auto jj = static_cast<int64_t>(j);
    for (const auto& b : idx.precedence.linear_extension()) {
      Elem acc = 0;
      for (int64_t i = 1; i <= jj; ++i) {
        auto it = x.find({b, i});
        if (it == x.end() || !idx.in_V({b, i})) continue;
        acc = F.add(acc, F.mul(it->second, alpha.at(b + i)[j - static_cast<std::size_t>(i)]));
      }
      if (idx.in_Y(b)) {
        if (idx.in_W({b, jj})) acc = F.add(acc, x.at({b, jj}));
      } else {
        acc = F.add(acc, F.frobenius(alpha.at(a.r_inverse(b))[j]));
      }
      alpha[b][j] = acc;
    }
  }
  return NormalizedBasis(a, std::move(idx), F, precision, x, std::move(alpha));
}

std::map<IndexPair, FiniteField::Elem> beta_residuals(const NormalizedBasis& basis) {
  const auto& a = basis.semimodule();
  const auto& F = basis.field();
  const auto& idx = basis.index();
  const auto lattice = basis.lattice();
  const auto ech = echelon(lattice);
  std::map<IndexPair, Elem> out;
  for (const auto& p : idx.W) out[p] = 0;
  for (const auto& y : idx.Y) {
    const OPoint prev = a.r_inverse(y);
    const auto u = truncated(y, frobenius_all(F, basis.alphas(prev)), basis.alphas(prev).size());
    const auto& line = ech[y.tau];
    const auto res = line.reduce(F, u);
    require(res.valid_below >= a.conductor(y.tau), ErrorKind::PrecisionExhausted,
            "residual of " + y.to_string() + " is not determined up to the conductor");
    for (const auto& [index, value] : res.entries) {
      const IndexPair p{y, index - y.i};
      require(idx.in_W(p), ErrorKind::InternalInvariant, "residual outside W at " + p.to_string());
      out[p] = value;
    }
  }
  return out;
}

bool stratum_membership(const NormalizedBasis& basis) {
  for (const auto& [p, value] : beta_residuals(basis))
    if (value != 0) return false;
  return true;
}

bool stratum_membership(const SemiModule& a, int iota, const Coordinates& x, const FiniteField& field,
                        int64_t precision) {
  return stratum_membership(normalized_basis(a, iota, x, field, precision));
}

std::vector<Coordinates> solve_stratum_fiber(const SemiModule& a, int iota, const Coordinates& v_coords,
                                             const FiniteField& F, int64_t precision) {
  const auto& ctx = a.context();
  const auto idx = index_sets(a, iota);
  check_coordinates(F, v_coords, idx.V);
  const int s = ctx.s();
  require(idx.W.empty() || F.r() % s == 0, ErrorKind::FieldTooSmall,
          F.to_string() + " does not contain F_{q^" + std::to_string(s) + "}");
  const auto w_order = idx.precedence.sorted(idx.W);
  const double fibre = std::pow(static_cast<double>(ctx.q()), static_cast<double>(s * w_order.size()));
  require(fibre <= static_cast<double>(1 << 20), ErrorKind::InvalidArgument, "fibre too large to list");

  // X^{q^s} - X is additive; bucket the field by its value
  uint64_t qs = 1;
  for (int i = 0; i < s; ++i) qs *= static_cast<uint64_t>(ctx.q());
  std::vector<std::vector<Elem>> roots(F.size());
  for (Elem X = 0; X < F.size(); ++X) roots[F.sub(F.pow(X, qs), X)].push_back(X);

  std::vector<Coordinates> partial{v_coords};
  for (auto& x : partial)
    for (const auto& p : w_order) x[p] = 0;
  for (const auto& p : w_order) {
    std::vector<Coordinates> next;
    for (auto& x : partial) {
      x[p] = 0;
      const Elem delta = beta_residuals(normalized_basis(a, iota, x, F, precision)).at(p);
      const auto& rs = roots[F.neg(delta)];
      require(!rs.empty(), ErrorKind::FieldTooSmall,
              "X^{q^s} - X = " + std::to_string(F.neg(delta)) + " has no root in " + F.to_string());
      for (Elem root : rs) {
        Coordinates y = x;
        y[p] = root;
        next.push_back(std::move(y));
      }
    }
    partial = std::move(next);
  }
  std::sort(partial.begin(), partial.end());
  return partial;
}

Coordinates recover_coordinates(const TruncatedLattice& lattice, int iota) {
  const auto pred = lattice_predicate(lattice);
  if (!pred.in_variety) fail(ErrorKind::NotInVariety, pred.reason);
  const SemiModule& a = *pred.a;
  const auto& F = lattice.field();
  const auto idx = index_sets(a, iota);
  const auto ech = echelon(lattice);
  const auto levels = static_cast<std::size_t>(max_level(idx) + 1);

  Coordinates x;
  std::map<OPoint, std::vector<Elem>> alpha;
  for (const auto& b : a.generators()) {
    alpha[b].assign(levels, 0);
    alpha[b][0] = 1;
  }
  for (std::size_t j = 1; j < levels; ++j) {
    const auto jj = static_cast<int64_t>(j);
    for (const auto& b : idx.precedence.linear_extension()) {
      Elem acc = 0;
      for (int64_t i = 1; i < jj; ++i)
        if (idx.in_V({b, i})) acc = F.add(acc, F.mul(x.at({b, i}), alpha.at(b + i)[j - static_cast<std::size_t>(i)]));
      if (!idx.in_Y(b)) acc = F.add(acc, F.frobenius(alpha.at(a.r_inverse(b))[j]));
      auto& row = alpha[b];
      if (idx.in_W({b, jj})) {
        // v(b) must lie in Lambda modulo higher terms
        row[j] = acc;
        const Elem r0 = residual_at(F, ech[b.tau], truncated(b, row, j + 1), b.i + jj);
        x[{b, jj}] = F.neg(r0);
        acc = F.add(acc, x[{b, jj}]);
      } else if (idx.in_V({b, jj})) {
        // t^{-phi(b)} gamma sigma v(b) must lie in Lambda modulo higher terms
        row[j] = acc;
        const OPoint rb = a.r(b);
        const auto u = truncated(rb, frobenius_all(F, row), j + 1);
        const Elem r0 = residual_at(F, ech[rb.tau], u, rb.i + jj);
        const Elem target = F.frobenius_inverse(F.sub(F.frobenius(acc), r0));
        x[{b, jj}] = F.sub(target, acc);
        acc = target;
      }
      row[j] = acc;
    }
  }

  const auto basis = normalized_basis(a, iota, x, F, std::max(lattice.precision(), minimum_precision(a)));
  require(stratum_membership(basis) && same_lattice(basis.lattice(), lattice), ErrorKind::InternalInvariant,
          "recovered coordinates do not reproduce the lattice");
  return x;
}

}  // namespace adlv
