#include "adlv/enumeration.hpp"

#include <algorithm>
#include <functional>

#include "adlv/error.hpp"

namespace adlv {

namespace {

// Per-tau count of phi = 1 contributed by a sequence on one orbit, indexed by the
// tau of mu (the sequence entry at a coset in line tau+1 counts towards mu_tau).
std::vector<int> hodge_counts(const IsocrystalContext& ctx, int orbit, std::span<const int> seq) {
  std::vector<int> counts(ctx.d(), 0);
  const auto& cosets = ctx.orbits()[orbit];
  for (std::size_t l = 0; l < cosets.size(); ++l)
    counts[floor_mod(ctx.coset_tau(cosets[l]) - 1, ctx.d())] += seq[l];
  return counts;
}

std::vector<std::vector<int>> all_sequences(int length, int ones) {
  std::vector<std::vector<int>> out;
  std::vector<int> seq(length, 0);
  std::fill(seq.end() - ones, seq.end(), 1);
  do out.push_back(seq);
  while (std::next_permutation(seq.begin(), seq.end()));
  return out;
}

int64_t anchor_of(const SemiModule& a) {
  const auto& ctx = a.context();
  auto pts = a.generators(0, ctx.h());
  return pts.front().i;
}

}  // namespace

void validate_window(const IsocrystalContext& ctx, const EnumerationWindow& window) {
  require(window.bound >= EnumerationWindow::minimum(ctx), ErrorKind::InvalidArgument,
          "window bound " + std::to_string(window.bound) + " is below n + h = " +
              std::to_string(EnumerationWindow::minimum(ctx)));
}

OrbitPatterns orbit_patterns(const IsocrystalContext& ctx, const HodgeType& mu) {
  require(mu.d() == ctx.d() && mu.n() == ctx.n(), ErrorKind::LengthMismatch, "Hodge type does not fit context");
  require(mu.is_minuscule(), ErrorKind::NonMinusculePhi, "Hodge type " + mu.to_string() + " is not minuscule");
  if (mu.total() != ctx.m())
    fail(ErrorKind::InfeasibleHodgeType, "sum of m_tau = " + std::to_string(mu.total()) + " differs from m = " +
                                             std::to_string(ctx.m()));

  const int h = ctx.h();
  const auto candidates = all_sequences(ctx.s(), ctx.m_prime());
  std::vector<std::vector<std::vector<int>>> counts(h);
  for (int k = 0; k < h; ++k)
    for (const auto& seq : candidates) counts[k].push_back(hodge_counts(ctx, k, seq));

  // reachable[k] = per-tau partial sums achievable by orbits k..h-1
  const std::vector<int> target = mu.m_taus();
  std::vector<std::vector<std::vector<int>>> suffix(h + 1);
  suffix[h].push_back(std::vector<int>(ctx.d(), 0));
  for (int k = h - 1; k >= 0; --k) {
    for (const auto& tail : suffix[k + 1])
      for (const auto& c : counts[k]) {
        std::vector<int> sum(ctx.d());
        bool ok = true;
        for (int t = 0; t < ctx.d(); ++t) {
          sum[t] = tail[t] + c[t];
          ok = ok && sum[t] <= target[t];
        }
        if (ok) suffix[k].push_back(std::move(sum));
      }
    std::sort(suffix[k].begin(), suffix[k].end());
    suffix[k].erase(std::unique(suffix[k].begin(), suffix[k].end()), suffix[k].end());
  }
  if (!std::binary_search(suffix[0].begin(), suffix[0].end(), target))
    fail(ErrorKind::InfeasibleHodgeType, "no phi assignment realizes " + mu.to_string());

  // forward pass: keep sequences lying on some complete assignment
  OrbitPatterns out;
  out.per_orbit.resize(h);
  std::vector<std::vector<int>> prefixes{std::vector<int>(ctx.d(), 0)};
  for (int k = 0; k < h; ++k) {
    std::vector<std::vector<int>> next;
    for (std::size_t p = 0; p < candidates.size(); ++p) {
      bool used = false;
      for (const auto& pre : prefixes) {
        std::vector<int> rest(ctx.d());
        std::vector<int> cur(ctx.d());
        bool ok = true;
        for (int t = 0; t < ctx.d(); ++t) {
          cur[t] = pre[t] + counts[k][p][t];
          rest[t] = target[t] - cur[t];
          ok = ok && rest[t] >= 0;
        }
        if (ok && std::binary_search(suffix[k + 1].begin(), suffix[k + 1].end(), rest)) {
          used = true;
          next.push_back(cur);
        }
      }
      if (used) out.per_orbit[k].push_back(candidates[p]);
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    prefixes = std::move(next);
  }
  return out;
}

std::vector<int64_t> orbit_minima(const IsocrystalContext& ctx, int orbit, std::span<const int> phi_sequence,
                                  int64_t base) {
  const auto& cosets = ctx.orbits()[orbit];
  std::vector<int64_t> out(cosets.size());
  OPoint b{ctx.coset_tau(cosets[0]), base};
  for (std::size_t l = 0; l < cosets.size(); ++l) {
    out[l] = b.i;
    b = ctx.f(b) - static_cast<int64_t>(ctx.n()) * phi_sequence[l];
  }
  return out;
}

std::vector<SemiModule> enumerate_hodge_semimodules(const IsocrystalContext& ctx, const HodgeType& mu,
                                                    const EnumerationWindow& window) {
  validate_window(ctx, window);
  const OrbitPatterns patterns = orbit_patterns(ctx, mu);
  const int h = ctx.h();
  const int n = ctx.n();
  const int64_t lo = -window.bound, hi = window.bound;

  struct Candidate {
    std::vector<int64_t> minima;
    std::vector<int> counts;
  };
  std::vector<std::vector<Candidate>> per_orbit(h);
  for (int k = 0; k < h; ++k) {
    const auto& cosets = ctx.orbits()[k];
    const int residue = ctx.coset_residue(cosets[0]);
    int64_t first = lo + floor_mod(residue - lo, n);
    for (const auto& seq : patterns.per_orbit[k]) {
      const auto counts = hodge_counts(ctx, k, seq);
      for (int64_t base = first; base <= hi; base += n) {
        auto minima = orbit_minima(ctx, k, seq, base);
        if (!std::all_of(minima.begin(), minima.end(), [&](int64_t v) { return v >= lo && v <= hi; })) continue;
        if (k == h - 1) {
          // anchor: smallest minimum of O^h in line 0 sits at 0
          int64_t anchor = hi + 1;
          for (std::size_t l = 0; l < cosets.size(); ++l)
            if (ctx.coset_tau(cosets[l]) == 0) anchor = std::min(anchor, minima[l]);
          if (anchor != 0) continue;
        }
        per_orbit[k].push_back({std::move(minima), counts});
      }
    }
  }

  const std::vector<int> target = mu.m_taus();
  std::vector<SemiModule> out;
  std::vector<int64_t> table(ctx.num_cosets());
  std::vector<int> running(ctx.d(), 0);
  std::function<void(int)> descend = [&](int k) {
    if (k == h) {
      if (running == target) out.push_back(SemiModule::from_table(ctx, table));
      return;
    }
    const auto& cosets = ctx.orbits()[k];
    for (const Candidate& cand : per_orbit[k]) {
      bool ok = true;
      for (int t = 0; t < ctx.d(); ++t) ok = ok && running[t] + cand.counts[t] <= target[t];
      if (!ok) continue;
      for (int t = 0; t < ctx.d(); ++t) running[t] += cand.counts[t];
      for (std::size_t l = 0; l < cosets.size(); ++l) table[cosets[l]] = cand.minima[l];
      descend(k + 1);
      for (int t = 0; t < ctx.d(); ++t) running[t] -= cand.counts[t];
    }
  };
  descend(0);

  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool set_leq(std::span<const int64_t> x, std::span<const int64_t> y, SetOrder order) {
  require(x.size() == y.size(), ErrorKind::LengthMismatch, "set comparison needs equal sizes");
  if (x.empty()) return true;
  if (order == SetOrder::MaxMin) return *std::max_element(x.begin(), x.end()) <= *std::min_element(y.begin(), y.end());
  std::vector<int64_t> xs(x.begin(), x.end()), ys(y.begin(), y.end());
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  for (std::size_t k = 0; k < xs.size(); ++k)
    if (xs[k] > ys[k]) return false;
  return true;
}

namespace {

std::vector<int64_t> piece_values(const SemiModule& a, int tau, int piece, int64_t shift = 0) {
  std::vector<int64_t> out;
  for (const OPoint& p : a.generators(tau, piece)) out.push_back(p.i + shift);
  return out;
}

// Abar^k + shift <= Abar^{k+1} in every line.
bool pieces_leq(const SemiModule& a, int k, int64_t shift, SetOrder order) {
  for (int t = 0; t < a.context().d(); ++t)
    if (!set_leq(piece_values(a, t, k, shift), piece_values(a, t, k + 1), order)) return false;
  return true;
}

}  // namespace

bool is_ordered(const SemiModule& a, SetOrder order) {
  for (int k = 1; k < a.context().h(); ++k)
    if (!pieces_leq(a, k, 0, order)) return false;
  return true;
}

bool is_rigid(const SemiModule& a, SetOrder order) {
  if (!is_ordered(a, order)) return false;
  const int h = a.context().h();
  for (int k = 1; k < h; ++k)
    if (pieces_leq(a, k, h, order)) return false;
  return true;
}

std::optional<int64_t> shift_equivalent(const SemiModule& a, const SemiModule& b) {
  require(a.context().same_frame(b.context()), ErrorKind::ContextMismatch,
          a.context().to_string() + " vs " + b.context().to_string());
  const int64_t delta = b.generators().front().i - a.generators().front().i;
  const int h = a.context().h();
  if (floor_mod(delta, h) != 0) return std::nullopt;
  if (a.shifted(delta) != b) return std::nullopt;
  return delta / h;
}

SemiModule omega_shift(const SemiModule& a, std::span<const int64_t> p) {
  const auto& ctx = a.context();
  require(static_cast<int>(p.size()) == ctx.h(), ErrorKind::LengthMismatch,
          "omega shift needs h = " + std::to_string(ctx.h()) + " exponents");
  std::vector<int64_t> table(ctx.num_cosets());
  for (int c = 0; c < ctx.num_cosets(); ++c) {
    const OPoint b = a.min_of_coset(c);
    const OPoint moved = b + p[ctx.piece(b) - 1] * ctx.h();
    table[ctx.coset_of(moved)] = moved.i;
  }
  return SemiModule::from_table(ctx, std::move(table));
}

SemiModule canonical_representative(const SemiModule& a) { return a.shifted(-anchor_of(a)); }

}  // namespace adlv
