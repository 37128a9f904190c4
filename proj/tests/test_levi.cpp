#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "adlv/error.hpp"
#include "adlv/levi.hpp"
#include "adlv/rep_theory.hpp"
#include "adlv/strata.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace adlv;
using testing_support::ctx;
using testing_support::line;

namespace {

std::vector<std::vector<int>> count_vectors(int n, int d, int m) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(d, 0);
  std::function<void(int, int)> rec = [&](int t, int left) {
    if (t == d) {
      if (left == 0) out.push_back(cur);
      return;
    }
    for (int v = 0; v <= std::min(n, left); ++v) {
      cur[t] = v;
      rec(t + 1, left - v);
    }
  };
  rec(0, m);
  return out;
}

}  // namespace

TEST_CASE("splitting into graded pieces") {
  auto c = ctx(4, 1, 2);
  auto a = line(c, {1, 3, 4, 6});
  auto split = split_semimodule(a);
  REQUIRE(split.components.size() == 2);
  CHECK(split.factor.same_frame(ctx(2, 1, 1)));
  // A^1 = {1, 3, 5, ...} -> {0, 1, ...}; A^2 = {4, 6, ...} -> {2, 3, ...}
  CHECK(split.components[0] == line(split.factor, {0, 1}));
  CHECK(split.components[1] == line(split.factor, {2, 3}));
  CHECK(reassemble(c, split) == a);

  auto z = split_semimodule(line(c, {0, 1, 2, 3}));
  CHECK(z.components[0] == line(split.factor, {0, 1}));
  CHECK(z.components[1] == line(split.factor, {0, 1}));

  auto c1 = ctx(2, 1, 1);
  auto one = split_semimodule(line(c1, {0, 1}));
  REQUIRE(one.components.size() == 1);
  CHECK(one.components[0] == line(c1, {0, 1}));
}

TEST_CASE("lambda_A") {
  auto lam = lambda_A(line(ctx(4, 1, 2), {1, 3, 4, 6}));
  REQUIRE(lam.size() == 2);
  CHECK(lam[0] == Coweight({{1, 0}}));
  CHECK(lam[1] == Coweight({{1, 0}}));
  CHECK(lambda_A(line(ctx(2, 1, 1), {0, 1})) == LeviCoweight{Coweight({{1, 0}})});

  auto c = ctx(2, 2, 2);
  Coweight mu({{1, 0}, {1, 0}});
  for (const auto& cls : top_filter(c, mu, enumerate_hodge_semimodules(c, mu, EnumerationWindow::standard(c)))) {
    auto l = lambda_A(cls.representative);
    REQUIRE(l.size() == 2);
    CHECK(l[0] != l[1]);
    CHECK(l[0].total() == 1);
  }
}

TEST_CASE("I_mu_gamma") {
  auto I1 = I_mu_gamma(ctx(4, 1, 2), Coweight({{1, 1, 0, 0}}));
  REQUIRE(I1.size() == 1);
  CHECK(I1[0] == LeviCoweight{Coweight({{1, 0}}), Coweight({{1, 0}})});
  CHECK(I_mu_gamma(ctx(2, 2, 2), Coweight({{1, 0}, {1, 0}})).size() == 2);
  auto I3 = I_mu_gamma(ctx(3, 1, 0), Coweight({{0, 0, 0}}));
  REQUIRE(I3.size() == 1);

  for (int n = 1; n <= 4; ++n)
    for (int d = 1; d <= 2; ++d)
      for (int m = 0; m <= n * d; ++m)
        for (const auto& m_tau : count_vectors(n, d, m)) {
          auto c = ctx(n, d, m);
          auto expected = oracle::levi_count_matrices(c.h(), c.n_prime(), c.m_prime(), m_tau);
          std::set<std::vector<std::vector<int>>> got;
          for (const auto& lam : I_mu_gamma(c, Coweight::minuscule(n, m_tau))) {
            std::vector<std::vector<int>> mat;
            for (const auto& lk : lam) mat.push_back(lk.m_taus());
            got.insert(mat);
          }
          CHECK(got == expected);
        }
}

TEST_CASE("Levi dimensions") {
  CHECK(levi_adlv_dimension(ctx(4, 1, 2), {Coweight({{1, 0}}), Coweight({{1, 0}})}) == 0);
  CHECK(levi_adlv_dimension(ctx(2, 1, 1), {Coweight({{1, 0}})}) == adlv_dimension(ctx(2, 1, 1), Coweight({{1, 0}})));
  CHECK(levi_adlv_dimension(ctx(2, 2, 2), {Coweight({{1}, {0}}), Coweight({{0}, {1}})}) == 0);
}

TEST_CASE("dimension identity") {
  auto c = ctx(4, 1, 2);
  auto rep = dimension_identity_check(line(c, {1, 3, 4, 6}));
  CHECK(rep.stratum == 1);
  CHECK(rep.adlv == 1);
  CHECK(rep.levi_adlv == 0);
  CHECK(rep.factor_strata == std::vector<int64_t>{0, 0});
  CHECK(rep.cross_terms.at({1, 2}) == std::pair<int64_t, int64_t>{1, 1});
  CHECK(rep.is_top);

  auto rep2 = dimension_identity_check(line(c, {1, 3, 8, 10}));
  CHECK(rep2.stratum == 1);
  CHECK(rep2.is_top);

  auto rep3 = dimension_identity_check(line(ctx(2, 1, 1), {0, 1}));
  CHECK(rep3.stratum == rep3.adlv - rep3.levi_adlv + rep3.factor_strata[0]);

  CHECK_THROWS_AS(dimension_identity_check(line(c, {5, 7, 4, 6})), Error);
}

TEST_CASE("Levi class counts") {
  CHECK(levi_class_count(ctx(4, 1, 2), {Coweight({{1, 0}}), Coweight({{1, 0}})}) == 1);
  int64_t total = 0;
  auto c = ctx(2, 2, 2);
  for (const auto& lam : I_mu_gamma(c, Coweight({{1, 0}, {1, 0}}))) {
    CHECK(levi_class_count(c, lam) == 1);
    total += levi_class_count(c, lam);
  }
  CHECK(total == 2);
}
