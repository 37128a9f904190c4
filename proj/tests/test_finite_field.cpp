#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "adlv/error.hpp"
#include "adlv/finite_field.hpp"

using namespace adlv;

namespace {

// Polynomial arithmetic over F_p on digit vectors, independent of the log tables.
std::vector<int> digits(uint32_t a, int p, int deg) {
  std::vector<int> out(deg, 0);
  for (int i = 0; i < deg; ++i) {
    out[i] = a % p;
    a /= p;
  }
  return out;
}

uint32_t schoolbook_mul(const FiniteField& F, uint32_t a, uint32_t b) {
  const int p = F.p();
  const auto& g = F.modulus();
  const int deg = static_cast<int>(g.size()) - 1;
  auto x = digits(a, p, deg), y = digits(b, p, deg);
  std::vector<int> prod(2 * deg, 0);
  for (int i = 0; i < deg; ++i)
    for (int j = 0; j < deg; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
  for (int top = 2 * deg - 1; top >= deg; --top) {
    int c = prod[top];
    if (c == 0) continue;
    // g is monic
    for (int i = 0; i <= deg; ++i) prod[top - deg + i] = ((prod[top - deg + i] - c * g[i]) % p + p) % p;
  }
  uint32_t out = 0;
  for (int i = deg - 1; i >= 0; --i) out = out * p + prod[i];
  return out;
}

}  // namespace

TEST_CASE("field sizes") {
  CHECK(FiniteField::make(2, 4).size() == 16);
  CHECK(FiniteField::make(4, 2).size() == 16);
  CHECK(FiniteField::make(3, 2).size() == 9);
  CHECK(FiniteField::make(5, 1).size() == 5);
  CHECK_THROWS_AS(FiniteField::make(6, 1), Error);
  CHECK_THROWS_AS(FiniteField::make(2, 30), Error);
}

TEST_CASE("multiplication agrees with schoolbook reduction") {
  for (auto [q, r] : std::vector<std::pair<int, int>>{{2, 3}, {2, 4}, {3, 2}, {4, 2}, {5, 1}, {9, 1}}) {
    auto F = FiniteField::make(q, r);
    for (uint32_t a = 0; a < F.size(); ++a)
      for (uint32_t b = 0; b < F.size(); ++b) REQUIRE(F.mul(a, b) == schoolbook_mul(F, a, b));
  }
}

TEST_CASE("field axioms") {
  for (auto [q, r] : std::vector<std::pair<int, int>>{{2, 4}, {3, 2}, {4, 2}}) {
    auto F = FiniteField::make(q, r);
    for (uint32_t a = 0; a < F.size(); ++a) {
      CHECK(F.add(a, F.neg(a)) == 0);
      CHECK(F.sub(a, a) == 0);
      if (a != 0) CHECK(F.mul(a, F.inv(a)) == 1);
      CHECK(F.frobenius_inverse(F.frobenius(a)) == a);
      CHECK(F.pow(a, F.size()) == a);
      for (uint32_t b = 0; b < F.size(); ++b) {
        CHECK(F.add(a, b) == F.add(b, a));
        CHECK(F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b)));
      }
    }
  }
}

TEST_CASE("subfields") {
  auto F = FiniteField::make(2, 4);
  int in2 = 0, in1 = 0;
  for (uint32_t a = 0; a < F.size(); ++a) {
    in2 += F.in_subfield(a, 2);
    in1 += F.in_subfield(a, 1);
  }
  CHECK(in2 == 4);
  CHECK(in1 == 2);

  // X^4 - X takes 4 values on F_16 with 4 preimages each
  std::map<uint32_t, int> fibres;
  for (uint32_t a = 0; a < F.size(); ++a) ++fibres[F.sub(F.pow(a, 4), a)];
  CHECK(fibres.size() == 4);
  for (auto& [v, c] : fibres) CHECK(c == 4);
}
