#include "adlv/strata.hpp"

#include <algorithm>
#include <boost/rational.hpp>
#include <queue>

#include "adlv/error.hpp"

namespace adlv {

std::string IndexPair::to_string() const { return "(" + b.to_string() + "," + std::to_string(j) + ")"; }

PrecedenceOrder::PrecedenceOrder(std::vector<OPoint> linear, std::vector<std::vector<bool>> closure)
    : linear_(std::move(linear)), closure_(std::move(closure)) {}

int PrecedenceOrder::rank(OPoint b) const {
  auto it = std::find(linear_.begin(), linear_.end(), b);
  require(it != linear_.end(), ErrorKind::InvalidArgument, b.to_string() + " is not a coset minimum");
  return static_cast<int>(it - linear_.begin());
}

bool PrecedenceOrder::precedes(OPoint x, OPoint y) const { return closure_[rank(x)][rank(y)]; }

bool PrecedenceOrder::precedes(const IndexPair& x, const IndexPair& y) const {
  if (x.j != y.j) return x.j < y.j;
  return precedes(x.b, y.b);
}

std::vector<IndexPair> PrecedenceOrder::sorted(std::vector<IndexPair> pairs) const {
  std::sort(pairs.begin(), pairs.end(), [&](const IndexPair& x, const IndexPair& y) {
    if (x.j != y.j) return x.j < y.j;
    return rank(x.b) < rank(y.b);
  });
  return pairs;
}

namespace {

std::vector<OPoint> y_set(const SemiModule& a, int iota) {
  const auto& ctx = a.context();
  require(iota >= 0 && iota < ctx.d(), ErrorKind::InvalidArgument,
          "iota = " + std::to_string(iota) + " outside Z_" + std::to_string(ctx.d()));
  std::vector<OPoint> y;
  for (int k = 1; k <= ctx.h(); ++k) y.push_back(a.generators(iota, k).back());
  return y;
}

}  // namespace

PrecedenceOrder precedence_order(const SemiModule& a, int iota) {
  const std::vector<OPoint> nodes = a.generators();
  const std::vector<OPoint> y = y_set(a, iota);
  const std::size_t count = nodes.size();
  auto index_of = [&](OPoint p) {
    return static_cast<std::size_t>(std::lower_bound(nodes.begin(), nodes.end(), p) - nodes.begin());
  };

  std::vector<std::vector<std::size_t>> succ(count);
  std::vector<int> indegree(count, 0);
  for (const OPoint& b : nodes) {
    if (std::find(y.begin(), y.end(), b) != y.end()) continue;
    succ[index_of(a.r_inverse(b))].push_back(index_of(b));
    ++indegree[index_of(b)];
  }

  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t v = 0; v < count; ++v)
    if (indegree[v] == 0) ready.push(v);
  std::vector<std::size_t> topo;
  while (!ready.empty()) {
    const std::size_t v = ready.top();
    ready.pop();
    topo.push_back(v);
    for (std::size_t w : succ[v])
      if (--indegree[w] == 0) ready.push(w);
  }
  if (topo.size() != count)
    fail(ErrorKind::CyclicPrecedence, "precedence on " + a.to_string() + " has a cycle for iota = " +
                                          std::to_string(iota));

  std::vector<OPoint> linear;
  std::vector<std::size_t> rank_of(count);
  for (std::size_t r = 0; r < count; ++r) {
    linear.push_back(nodes[topo[r]]);
    rank_of[topo[r]] = r;
  }
  std::vector<std::vector<bool>> closure(count, std::vector<bool>(count, false));
  for (std::size_t r = count; r-- > 0;) {
    const std::size_t v = topo[r];
    closure[r][r] = true;
    for (std::size_t w : succ[v])
      for (std::size_t c = 0; c < count; ++c)
        if (closure[rank_of[w]][c]) closure[r][c] = true;
  }
  return PrecedenceOrder(std::move(linear), std::move(closure));
}

bool StratumIndex::in_Y(OPoint b) const { return std::find(Y.begin(), Y.end(), b) != Y.end(); }
bool StratumIndex::in_V(const IndexPair& p) const { return std::binary_search(V.begin(), V.end(), p); }
bool StratumIndex::in_W(const IndexPair& p) const { return std::binary_search(W.begin(), W.end(), p); }

std::vector<IndexPair> StratumIndex::D() const {
  std::vector<IndexPair> all(V);
  all.insert(all.end(), W.begin(), W.end());
  return precedence.sorted(std::move(all));
}

std::vector<IndexPair> v_pairs(const SemiModule& a) {
  std::vector<IndexPair> out;
  const auto gens = a.generators();
  for (const OPoint& b : gens)
    for (const OPoint& c : gens)
      if (c.tau == b.tau && c.i > b.i && a.phi(b) > a.phi(c)) out.push_back({b, c.i - b.i});
  std::sort(out.begin(), out.end());
  return out;
}

StratumIndex index_sets(const SemiModule& a, int iota) {
  StratumIndex out;
  out.iota = iota;
  out.Y = y_set(a, iota);
  out.V = v_pairs(a);
  for (const OPoint& y : out.Y) {
    const int64_t stop = a.conductor(y.tau) - y.i;
    for (int64_t j = 1; j < stop; ++j)
      if (!a.contains(y + j)) out.W.push_back({y, j});
  }
  std::sort(out.W.begin(), out.W.end());
  out.precedence = precedence_order(a, iota);
  for (const IndexPair& p : out.V)
    if (out.in_W(p)) fail(ErrorKind::InternalInvariant, "V and W intersect at " + p.to_string());
  return out;
}

int64_t stratum_dimension(const SemiModule& a) { return static_cast<int64_t>(v_pairs(a).size()); }

int64_t adlv_dimension(const IsocrystalContext& ctx, const HodgeType& mu) {
  check_hodge_for_context(ctx, mu);
  using R = boost::rational<int64_t>;
  R value(-(ctx.n() - ctx.h()), 2);
  for (int m_tau : mu.m_taus()) value += R(static_cast<int64_t>(ctx.n() - m_tau) * m_tau, 2);
  if (value.denominator() != 1)
    fail(ErrorKind::InternalInvariant, "dimension of X_mu is not an integer for " + ctx.to_string());
  return value.numerator();
}

std::vector<SemiModuleClass> top_filter(const IsocrystalContext& ctx, const HodgeType& mu,
                                        std::span<const SemiModule> candidates, SetOrder order) {
  const int64_t top = adlv_dimension(ctx, mu);
  std::vector<SemiModule> kept;
  for (const SemiModule& a : candidates)
    if (is_rigid(a, order) && stratum_dimension(a) == top) kept.push_back(canonical_representative(a));
  std::sort(kept.begin(), kept.end());
  std::vector<SemiModuleClass> out;
  for (const SemiModule& a : kept) {
    if (!out.empty() && out.back().representative == a)
      ++out.back().multiplicity;
    else
      out.push_back({a, 1});
  }
  return out;
}

}  // namespace adlv
