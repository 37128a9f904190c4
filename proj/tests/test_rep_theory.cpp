#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "adlv/error.hpp"
#include "adlv/rep_theory.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace adlv;
using testing_support::ctx;

namespace {

uint64_t binomial(int n, int k) {
  uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

RationalVector rv(std::initializer_list<Rational> v) { return RationalVector(v); }

void all_weights(int n, int total, const std::function<void(const WeightVector&)>& fn) {
  WeightVector w(n, 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == n - 1) {
      w[pos] = left;
      fn(w);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      w[pos] = v;
      rec(pos + 1, left - v);
    }
  };
  rec(0, total);
}

}  // namespace

TEST_CASE("dominance order") {
  CHECK(dominance_leq(rv({0, 1}), rv({Rational(1, 2), Rational(1, 2)})));
  CHECK_FALSE(dominance_leq(rv({1, 0}), rv({Rational(1, 2), Rational(1, 2)})));
  CHECK(dominance_leq(rv({3, -1, 2}), rv({3, -1, 2})));
  CHECK_THROWS_AS(dominance_leq(rv({1}), rv({1, 0})), Error);
}

TEST_CASE("Newton point and best integral approximation") {
  auto a = newton_and_lambda(ctx(2, 1, 1));
  CHECK(a.nu == rv({Rational(1, 2), Rational(1, 2)}));
  CHECK(a.lambda == WeightVector{0, 1});
  CHECK(newton_and_lambda(ctx(4, 1, 2)).lambda == WeightVector{0, 1, 0, 1});
  CHECK(newton_and_lambda(ctx(5, 1, 0)).lambda == WeightVector{0, 0, 0, 0, 0});
  for (int n = 1; n <= 6; ++n)
    for (int m = 0; m <= 6; ++m) {
      auto r = newton_and_lambda(ctx(n, 2, m));
      CHECK(best_integral_approximation_search(n, m) == r.lambda);
      CHECK(dominance_leq(RationalVector(r.lambda.begin(), r.lambda.end()), r.nu));
      int sum = 0;
      for (int x : r.lambda) sum += x;
      CHECK(sum == m);
    }
}

TEST_CASE("weight multiplicities") {
  CHECK(weight_multiplicity(Coweight({{1, 0}, {1, 0}}), {1, 1}) == 2);
  CHECK(weight_multiplicity(Coweight({{1, 1, 0, 0}}), {0, 1, 0, 1}) == 1);
  CHECK(weight_multiplicity(Coweight({{1, 1, 0}}), {3, 0, 0}) == 0);

  for (int n = 1; n <= 4; ++n)
    for (int a = 0; a <= n; ++a)
      for (int b = 0; b <= n; ++b) {
        auto mu = Coweight::minuscule(n, {a, b});
        uint64_t total = 0;
        all_weights(n, a + b, [&](const WeightVector& w) {
          const uint64_t got = weight_multiplicity(mu, w);
          CHECK(got == oracle::subset_tuple_count(n, {a, b}, w));
          total += got;
        });
        CHECK(total == binomial(n, a) * binomial(n, b));
      }
}

TEST_CASE("tensor decomposition") {
  std::vector<int> two{1, 1};
  CHECK(tensor_decomposition(2, two) == std::map<Partition, uint64_t>{{{2, 0}, 1}, {{1, 1}, 1}});
  CHECK(tensor_decomposition(3, two) == std::map<Partition, uint64_t>{{{2, 0, 0}, 1}, {{1, 1, 0}, 1}});
  std::vector<int> one{2};
  CHECK(tensor_decomposition(4, one) == std::map<Partition, uint64_t>{{{1, 1, 0, 0}, 1}});

  std::vector<int> three{1, 2, 2};
  uint64_t dim = 0;
  for (const auto& [chi, a] : tensor_decomposition(4, three)) dim += a * weyl_dimension_by_weights(chi);
  CHECK(dim == 4 * 6 * 6);
}

TEST_CASE("Kostka numbers against direct tableau enumeration") {
  const std::vector<Partition> shapes{{2, 1, 0}, {2, 2, 0}, {3, 1, 1}, {2, 1, 1, 0}, {3, 2, 1, 0}};
  for (const auto& shape : shapes) {
    int size = 0;
    for (int p : shape) size += p;
    all_weights(static_cast<int>(shape.size()), size, [&](const WeightVector& w) {
      CHECK(kostka(shape, w) == oracle::ssyt_count(shape, w));
    });
  }
  CHECK(weyl_dimension_by_weights({2, 1, 0}) == 8);
  CHECK(weyl_dimension_by_weights({1, 1, 0, 0}) == 6);
}

TEST_CASE("multiplicity recursion") {
  std::vector<int> two{1, 1};
  auto rep = multiplicity_identity_check(2, two, {1, 1});
  CHECK(rep.lhs == 2);
  CHECK(rep.rhs == 2);
  CHECK(multiplicity_identity_check(3, two, {1, 1, 0}).lhs == 2);
  std::vector<int> single{2};
  CHECK(multiplicity_identity_check(4, single, {1, 0, 1, 0}).lhs == 1);
}
