#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "adlv/error.hpp"
#include "adlv/semimodule.hpp"
#include "helpers.hpp"

using namespace adlv;
using testing_support::ctx;
using testing_support::line;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::InternalInvariant;
}

}  // namespace

TEST_CASE("validation") {
  auto c = ctx(2, 1, 1);
  auto a = line(c, {0, 1});
  CHECK(a.contains({0, 5}));
  CHECK_FALSE(a.contains({0, -1}));
  CHECK(kind_of([&] { line(c, {0, 3}); }) == ErrorKind::FStabilityViolation);
  CHECK(kind_of([&] { line(c, {0}); }) == ErrorKind::MissingCoset);
  CHECK(kind_of([&] { line(c, {0, 2}); }) == ErrorKind::InvalidArgument);

  auto b = line(ctx(4, 1, 2), {4, 1, 6, 3});
  CHECK(b.table() == std::vector<int64_t>{4, 1, 6, 3});
}

TEST_CASE("phi and r") {
  auto a = line(ctx(2, 1, 1), {0, 1});
  auto pr = phi_and_r(a);
  CHECK(pr.phi.at({0, 0}) == 0);
  CHECK(pr.phi.at({0, 1}) == 1);
  CHECK(pr.r.at({0, 0}) == OPoint{0, 1});
  CHECK(pr.r.at({0, 1}) == OPoint{0, 0});

  auto b = line(ctx(4, 1, 2), {1, 3, 4, 6});
  CHECK(b.phi({0, 1}) == 0);
  CHECK(b.phi({0, 3}) == 1);
  CHECK(b.phi({0, 4}) == 0);
  CHECK(b.phi({0, 6}) == 1);

  auto one = line(ctx(1, 1, 1), {0});
  CHECK(one.phi({0, 0}) == 1);
  CHECK(one.r({0, 0}) == OPoint{0, 0});
}

TEST_CASE("Hodge type") {
  CHECK(hodge_type(line(ctx(4, 1, 2), {1, 3, 4, 6})) == Coweight({{1, 1, 0, 0}}));
  CHECK(hodge_type(line(ctx(2, 1, 1), {0, 1})) == Coweight({{1, 0}}));
  CHECK(kind_of([] { hodge_type(line(ctx(3, 1, 2), {0, 4, 2})); }) == ErrorKind::NonMinusculePhi);
  CHECK_FALSE(is_hodge_type(line(ctx(3, 1, 2), {0, 4, 2}), Coweight({{1, 1, 0}})));
}

TEST_CASE("conductor and rendering") {
  auto a = line(ctx(4, 1, 2), {1, 3, 8, 10});
  CHECK(a.conductor(0) == 7);
  CHECK(a.max_coset_gap() == 9);
  CHECK(a.to_string() == "{(0,1),(0,3),(0,8),(0,10)}");
  CHECK(a.shifted(2).table() == std::vector<int64_t>{12, 5, 10, 3});
}

TEST_CASE("random tables: r-chains rebuild the table and phi sums per orbit") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 400; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 5), d = 1 + static_cast<int>(rng() % 3);
    const int m = static_cast<int>(rng() % (n * d + 1));
    auto c = ctx(n, d, m);
    std::vector<int64_t> table(c.num_cosets());
    for (int k = 0; k < c.num_cosets(); ++k) table[k] = c.coset_residue(k) + n * (static_cast<int>(rng() % 7) - 3);
    SemiModule a = [&] {
      try {
        return SemiModule::from_table(c, table);
      } catch (const Error&) {
        return SemiModule::from_table(c, [&] {
          // A = Z_{>=0} in each line is always valid
          std::vector<int64_t> t(c.num_cosets());
          for (int k = 0; k < c.num_cosets(); ++k) t[k] = c.coset_residue(k);
          return t;
        }());
      }
    }();
    auto gens = a.generators();
    CHECK(static_cast<int>(gens.size()) == n * d);
    std::vector<int64_t> rebuilt(c.num_cosets(), INT64_MIN);
    for (const auto& b : gens) {
      const OPoint rb = a.r(b);
      CHECK(a.is_generator(rb));
      CHECK(a.r_inverse(rb) == b);
      CHECK(c.f(b).i - n * a.phi(b) == rb.i);
      rebuilt[c.coset_of(rb)] = rb.i;
    }
    CHECK(rebuilt == a.table());
    for (const auto& orbit : c.orbits()) {
      int64_t sum = 0;
      for (int coset : orbit) sum += a.phi_of_coset(coset);
      CHECK(sum == c.m_prime());
    }
  }
}
