#include "adlv/levi.hpp"

#include <algorithm>
#include <boost/rational.hpp>
#include <functional>

#include "adlv/error.hpp"
#include "adlv/strata.hpp"

namespace adlv {

std::string to_string(const LeviCoweight& lambda) {
  std::string out = "[";
  for (std::size_t k = 0; k < lambda.size(); ++k) out += (k ? "," : "") + lambda[k].to_string();
  return out + "]";
}

LeviSemiModule split_semimodule(const SemiModule& a) {
  const auto& ctx = a.context();
  const int h = ctx.h();
  LeviSemiModule out{ctx.levi_factor(), {}};
  for (int k = 1; k <= h; ++k) {
    std::vector<int64_t> table(out.factor.num_cosets());
    for (int t = 0; t < ctx.d(); ++t)
      for (const OPoint& b : a.generators(t, k)) {
        const OPoint local{t, floor_div(b.i, h)};
        table[out.factor.coset_of(local)] = local.i;
      }
    out.components.push_back(SemiModule::from_table(out.factor, std::move(table)));
  }
  return out;
}

SemiModule reassemble(const IsocrystalContext& ctx, const LeviSemiModule& split) {
  require(split.factor.same_frame(ctx.levi_factor()), ErrorKind::ContextMismatch,
          "factor " + split.factor.to_string() + " does not belong to " + ctx.to_string());
  require(static_cast<int>(split.components.size()) == ctx.h(), ErrorKind::LengthMismatch,
          "expected h components");
  std::vector<OPoint> mins;
  for (int k = 1; k <= ctx.h(); ++k)
    for (const OPoint& c : split.components[k - 1].generators())
      mins.push_back({c.tau, c.i * ctx.h() + k % ctx.h()});
  return SemiModule::validate(ctx, mins);
}

LeviCoweight lambda_A(const SemiModule& a) {
  LeviCoweight out;
  for (const SemiModule& c : split_semimodule(a).components) out.push_back(hodge_type(c));
  return out;
}

std::vector<LeviCoweight> I_mu_gamma(const IsocrystalContext& ctx, const HodgeType& mu) {
  check_hodge_for_context(ctx, mu);
  const int h = ctx.h(), d = ctx.d(), np = ctx.n_prime();
  const std::vector<int> m_tau = mu.m_taus();
  // counts[k][t]: number of ones of lambda^k_t
  std::vector<std::vector<int>> counts(h, std::vector<int>(d, 0));
  std::vector<LeviCoweight> out;
  std::function<void(int, int, int)> place = [&](int t, int k, int left) {
    if (t == d) {
      for (int kk = 0; kk < h; ++kk) {
        int sum = 0;
        for (int tt = 0; tt < d; ++tt) sum += counts[kk][tt];
        if (sum != ctx.m_prime()) return;
      }
      LeviCoweight lambda;
      for (int kk = 0; kk < h; ++kk) lambda.push_back(Coweight::minuscule(np, counts[kk]));
      out.push_back(std::move(lambda));
      return;
    }
    if (k == h - 1) {
      if (left > np) return;
      counts[k][t] = left;
      place(t + 1, 0, t + 1 < d ? m_tau[t + 1] : 0);
      return;
    }
    for (int c = 0; c <= std::min(left, np); ++c) {
      counts[k][t] = c;
      place(t, k + 1, left - c);
    }
  };
  place(0, 0, m_tau[0]);
  std::sort(out.begin(), out.end());
  return out;
}

int64_t levi_adlv_dimension(const IsocrystalContext& ctx, const LeviCoweight& lambda) {
  require(static_cast<int>(lambda.size()) == ctx.h(), ErrorKind::LengthMismatch,
          "Levi coweight needs h = " + std::to_string(ctx.h()) + " factors");
  const IsocrystalContext factor = ctx.levi_factor();
  using R = boost::rational<int64_t>;
  const int np = ctx.n_prime();
  R value(-static_cast<int64_t>(ctx.h()) * (np - 1), 2);
  for (const HodgeType& lk : lambda) {
    check_hodge_for_context(factor, lk);
    for (int m : lk.m_taus()) value += R(static_cast<int64_t>(np - m) * m, 2);
  }
  if (value.denominator() != 1)
    fail(ErrorKind::InternalInvariant, "Levi dimension is not an integer for " + to_string(lambda));
  return value.numerator();
}

DimensionIdentityReport dimension_identity_check(const SemiModule& a) {
  const auto& ctx = a.context();
  require(is_ordered(a), ErrorKind::InvalidArgument, a.to_string() + " is not ordered");
  const HodgeType mu = hodge_type(a);
  const LeviCoweight lambda = lambda_A(a);
  const LeviSemiModule split = split_semimodule(a);

  DimensionIdentityReport rep;
  rep.stratum = stratum_dimension(a);
  rep.adlv = adlv_dimension(ctx, mu);
  rep.levi_adlv = levi_adlv_dimension(ctx, lambda);
  int64_t factor_sum = 0;
  for (const SemiModule& c : split.components) {
    rep.factor_strata.push_back(stratum_dimension(c));
    factor_sum += rep.factor_strata.back();
  }

  const int h = ctx.h();
  std::vector<std::vector<int64_t>> pieces(h + 1, std::vector<int64_t>(h + 1, 0));
  for (const IndexPair& p : v_pairs(a)) ++pieces[ctx.piece(p.b)][ctx.piece(p.target())];
  std::string problems;
  for (int i = 1; i <= h; ++i)
    for (int j = 1; j <= h; ++j) {
      if (i > j && pieces[i][j] != 0)
        problems += " V_{" + std::to_string(i) + "," + std::to_string(j) + "} is non-empty;";
      if (i < j) {
        int64_t predicted = 0;
        for (int t = 0; t < ctx.d(); ++t)
          predicted += static_cast<int64_t>(lambda[j - 1].m_tau(t)) * (ctx.n_prime() - lambda[i - 1].m_tau(t));
        rep.cross_terms[{i, j}] = {pieces[i][j], predicted};
        if (pieces[i][j] != predicted)
          problems += " |V_{" + std::to_string(i) + "," + std::to_string(j) + "}| = " + std::to_string(pieces[i][j]) +
                      " but formula gives " + std::to_string(predicted) + ";";
      }
    }
  if (rep.stratum != rep.adlv - rep.levi_adlv + factor_sum)
    problems += " |V(A)| = " + std::to_string(rep.stratum) + " but " + std::to_string(rep.adlv) + " - " +
                std::to_string(rep.levi_adlv) + " + " + std::to_string(factor_sum) + ";";
  rep.is_top = rep.stratum == rep.adlv;
  rep.factors_top = factor_sum == rep.levi_adlv;
  if (rep.is_top != rep.factors_top) problems += " top-dimensionality differs between A and its Levi split;";
  if (!problems.empty())
    fail(ErrorKind::IdentityViolation, "A = " + a.to_string() + " mu = " + mu.to_string() +
                                           " lambda_A = " + to_string(lambda) + ":" + problems);
  return rep;
}

int64_t levi_class_count(const IsocrystalContext& ctx, const LeviCoweight& lambda,
                         std::optional<EnumerationWindow> window) {
  require(static_cast<int>(lambda.size()) == ctx.h(), ErrorKind::LengthMismatch,
          "Levi coweight needs h = " + std::to_string(ctx.h()) + " factors");
  const IsocrystalContext factor = ctx.levi_factor();
  const EnumerationWindow w = window.value_or(EnumerationWindow::standard(factor));
  int64_t product = 1;
  for (const HodgeType& lk : lambda) {
    check_hodge_for_context(factor, lk);
    std::vector<SemiModule> candidates;
    try {
      candidates = enumerate_hodge_semimodules(factor, lk, w);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::InfeasibleHodgeType) throw;
    }
    product *= static_cast<int64_t>(top_filter(factor, lk, candidates).size());
    if (product == 0) break;
  }
  return product;
}

}  // namespace adlv
