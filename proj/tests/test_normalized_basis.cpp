#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <optional>
#include <random>
#include <set>

#include "adlv/enumeration.hpp"
#include "adlv/error.hpp"
#include "adlv/normalized_basis.hpp"
#include "helpers.hpp"

using namespace adlv;
using testing_support::ctx;
using testing_support::line;

namespace {

using Elem = FiniteField::Elem;

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::InvalidArgument;
}

Coordinates random_point(const StratumIndex& idx, const FiniteField& F, std::mt19937& rng) {
  Coordinates x;
  for (const auto& p : idx.D()) x[p] = rng() % F.size();
  return x;
}

// Coefficient of e_{c} in v(a) (0 outside the support), read through the public vectors.
Elem coeff(const NormalizedBasis& nb, OPoint a, int64_t index) { return nb.vector(a).at(index); }

// Checks equations (1)-(3) directly on the vectors for every index where all
// terms are known.
void check_defining_equations(const NormalizedBasis& nb) {
  const auto& a = nb.semimodule();
  const auto& ctx = a.context();
  const auto& F = nb.field();
  const auto& idx = nb.index();
  const auto& x = nb.point();
  const int64_t N = nb.precision();
  for (const auto& b : a.generators()) {
    const int64_t hi = b.i + N;
    for (int64_t c = b.i; c < hi; ++c) {
      Elem rhs = 0;
      if (idx.in_Y(b)) {
        if (c == b.i) rhs = 1;
        if (idx.in_W({b, c - b.i})) rhs = F.add(rhs, x.at({b, c - b.i}));
      } else {
        const OPoint prev = a.r_inverse(b);
        auto image = gamma_sigma(ctx, F, t_shift(ctx, nb.vector(prev), -a.phi(prev)));
        REQUIRE(image.tau == b.tau);
        if (c >= image.hi) continue;
        rhs = image.at(c);
      }
      bool known = true;
      for (const auto& [p, value] : x) {
        if (p.b != b || !idx.in_V(p)) continue;
        auto v = nb.vector(b + p.j);
        if (c >= v.hi) {
          known = false;
          break;
        }
        rhs = F.add(rhs, F.mul(value, v.at(c)));
      }
      if (known) REQUIRE(coeff(nb, b, c) == rhs);
    }
  }
  // (3) for a few multiples
  for (const auto& b : a.generators())
    for (int k = 1; k < 3; ++k) {
      auto v = nb.vector(b + k * ctx.n());
      auto w = t_shift(ctx, nb.vector(b), k);
      CHECK(v.lo == w.lo);
      CHECK(v.coeffs == w.coeffs);
    }
}

}  // namespace

TEST_CASE("empty parameter space") {
  auto c = ctx(2, 1, 1);
  auto a = line(c, {0, 1});
  auto F = FiniteField::make(2, 1);
  auto nb = normalized_basis(a, 0, {}, F, 8);
  CHECK(nb.vector({0, 0}).coeffs == std::vector<Elem>{1});
  CHECK(nb.vector({0, 1}).coeffs == std::vector<Elem>{1});
  CHECK(stratum_membership(nb));
  auto fibre = solve_stratum_fiber(a, 0, {}, F, 8);
  REQUIRE(fibre.size() == 1);
  CHECK(fibre.front().empty());
  CHECK(recover_coordinates(TruncatedLattice::standard(c, F), 0).empty());
}

TEST_CASE("a single V parameter") {
  auto c = ctx(4, 1, 2);
  auto a = line(c, {1, 3, 4, 6});
  auto F = FiniteField::make(2, 2);
  for (Elem v = 0; v < F.size(); ++v) {
    auto nb = normalized_basis(a, 0, {{{{0, 3}, 1}, v}}, F, 16);
    // v(3) = e_3 + v * v(4) and v(4) = e_4
    CHECK(nb.vector({0, 4}).coeffs == std::vector<Elem>{1});
    if (v == 0)
      CHECK(nb.vector({0, 3}).coeffs == std::vector<Elem>{1});
    else
      CHECK(nb.vector({0, 3}).coeffs == std::vector<Elem>{1, v});
    check_defining_equations(nb);
    CHECK(stratum_membership(nb));
    CHECK(recover_coordinates(nb.lattice(), 0) == nb.point());
  }
}

TEST_CASE("hand-unrolled recursion for {1,3,8,10}") {
  auto c = ctx(4, 1, 2);
  auto a = line(c, {1, 3, 8, 10});
  auto F = FiniteField::make(2, 4);
  auto idx = index_sets(a, 0);
  CHECK(idx.W == std::vector<IndexPair>{{{0, 3}, 1}, {{0, 3}, 3}});
  CHECK(idx.V == std::vector<IndexPair>{{{0, 3}, 5}});
  const Elem x1 = 6, x3 = 9, x5 = 13;
  auto nb = normalized_basis(a, 0, {{{{0, 3}, 1}, x1}, {{{0, 3}, 3}, x3}, {{{0, 3}, 5}, x5}}, F, 20);
  CHECK(nb.alpha({0, 3}, 1) == x1);
  CHECK(nb.alpha({0, 3}, 2) == 0);
  CHECK(nb.alpha({0, 3}, 3) == x3);
  CHECK(nb.alpha({0, 3}, 5) == x5);
  // r^{-1}(1) = 3 with phi(3) = 1: alpha_{1,j} = alpha_{3,j}^q below the first V level
  CHECK(nb.alpha({0, 1}, 1) == F.frobenius(x1));
  CHECK(nb.alpha({0, 1}, 3) == F.frobenius(x3));
  check_defining_equations(nb);
}

TEST_CASE("precision monotonicity") {
  auto c = ctx(4, 1, 2);
  auto F = FiniteField::make(2, 4);
  std::mt19937 rng(3);
  for (auto a : {line(c, {1, 3, 8, 10}), line(c, {1, 3, 4, 6}), line(c, {0, 1, 2, 3})}) {
    auto idx = index_sets(a, 0);
    for (int trial = 0; trial < 5; ++trial) {
      auto x = random_point(idx, F, rng);
      auto small = normalized_basis(a, 0, x, F, 16);
      auto big = normalized_basis(a, 0, x, F, 40);
      for (const auto& b : a.generators())
        for (int64_t j = 0; j < 16; ++j) CHECK(small.alpha(b, j) == big.alpha(b, j));
    }
  }
  CHECK(kind_of([&] { normalized_basis(line(c, {1, 3, 8, 10}), 0, {}, F, 3); }) == ErrorKind::PrecisionExhausted);
}

TEST_CASE("parameters must match D") {
  auto c = ctx(4, 1, 2);
  auto a = line(c, {1, 3, 8, 10});
  auto F = FiniteField::make(2, 4);
  CHECK(kind_of([&] { normalized_basis(a, 0, {}, F); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([&] { solve_stratum_fiber(a, 0, {{{{0, 3}, 1}, 1}}, F); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("W coordinates of the first level lie in F_{q^s}") {
  auto c = ctx(4, 1, 2);
  auto a = line(c, {1, 3, 8, 10});
  auto F = FiniteField::make(2, 4);
  for (Elem x1 = 0; x1 < F.size(); ++x1) {
    if (F.in_subfield(x1, 2)) continue;
    for (Elem x3 = 0; x3 < F.size(); ++x3)
      CHECK(!stratum_membership(a, 0, {{{{0, 3}, 1}, x1}, {{{0, 3}, 3}, x3}, {{{0, 3}, 5}, 5}}, F, 16));
  }
}

TEST_CASE("fibre of {1,3,8,10} over F_16") {
  auto c = ctx(4, 1, 2);
  auto a = line(c, {1, 3, 8, 10});
  auto F = FiniteField::make(2, 4);
  const IndexPair w1{{0, 3}, 1}, w3{{0, 3}, 3}, v5{{0, 3}, 5};
  for (Elem v : {0u, 1u, 7u, 12u}) {
    auto fibre = solve_stratum_fiber(a, 0, {{v5, v}}, F, 16);
    CHECK(fibre.size() == 16);
    // brute force over all W values
    std::set<Coordinates> members;
    for (Elem x1 = 0; x1 < F.size(); ++x1)
      for (Elem x3 = 0; x3 < F.size(); ++x3) {
        Coordinates x{{w1, x1}, {w3, x3}, {v5, v}};
        if (stratum_membership(a, 0, x, F, 16)) members.insert(x);
      }
    CHECK(std::set<Coordinates>(fibre.begin(), fibre.end()) == members);
    for (const auto& x : fibre) {
      CHECK(F.in_subfield(x.at(w1), 2));
      auto nb = normalized_basis(a, 0, x, F, 16);
      auto lat = nb.lattice();
      CHECK(a_of_lattice(lat) == a);
      auto pred = lattice_predicate(lat);
      CHECK(pred.in_variety);
      CHECK(relative_position(lat, lat.gamma_sigma()) == Coweight({{1, 1, 0, 0}}));
      CHECK(recover_coordinates(lat, 0) == x);
    }
  }
}

TEST_CASE("non-members are not in the variety") {
  auto c = ctx(4, 1, 2);
  auto a = line(c, {1, 3, 8, 10});
  auto F = FiniteField::make(2, 4);
  Coordinates x{{{{0, 3}, 1}, 3}, {{{0, 3}, 3}, 0}, {{{0, 3}, 5}, 0}};
  REQUIRE(!stratum_membership(a, 0, x, F, 16));
  auto lat = normalized_basis(a, 0, x, F, 16).lattice();
  CHECK(!lattice_predicate(lat).in_variety);
  CHECK(relative_position(lat, lat.gamma_sigma()) != Coweight({{1, 1, 0, 0}}));
  CHECK(kind_of([&] { recover_coordinates(lat, 0); }) == ErrorKind::NotInVariety);
}

TEST_CASE("fields that cannot hold the fibre") {
  auto c = ctx(4, 1, 2);
  auto a = line(c, {1, 3, 8, 10});
  const IndexPair v5{{0, 3}, 5};
  CHECK(kind_of([&] { solve_stratum_fiber(a, 0, {{v5, 1}}, FiniteField::make(2, 3), 16); }) ==
        ErrorKind::FieldTooSmall);
  CHECK(kind_of([&] { solve_stratum_fiber(a, 0, {{v5, 1}}, FiniteField::make(2, 1), 16); }) ==
        ErrorKind::FieldTooSmall);
}

TEST_CASE("round trips on every stratum of small batteries") {
  std::mt19937 rng(5);
  struct Case {
    int n, d, m, q;
  };
  int checked = 0;
  for (auto cs : std::vector<Case>{{2, 1, 1, 2}, {3, 1, 1, 2}, {4, 1, 2, 2}, {2, 2, 2, 2}, {3, 1, 2, 3}, {4, 1, 1, 2}}) {
    auto c = ctx(cs.n, cs.d, cs.m, cs.q);
    std::vector<std::vector<int>> counts;
    // every Hodge type of the context
    std::function<void(int, std::vector<int>&, int)> rec = [&](int tau, std::vector<int>& cur, int left) {
      if (tau == cs.d) {
        if (left == 0) counts.push_back(cur);
        return;
      }
      for (int v = 0; v <= std::min(cs.n, left); ++v) {
        cur.push_back(v);
        rec(tau + 1, cur, left - v);
        cur.pop_back();
      }
    };
    std::vector<int> cur;
    rec(0, cur, cs.m);
    for (const auto& mt : counts) {
      auto mu = Coweight::minuscule(cs.n, mt);
      auto mods = enumerate_hodge_semimodules(c, mu, EnumerationWindow::standard(c));
      for (std::size_t k = 0; k < mods.size(); k += 3) {
        const auto& a = mods[k];
        for (int iota = 0; iota < cs.d; ++iota) {
          auto idx = index_sets(a, iota);
          Coordinates v;
          for (const auto& p : idx.V) v[p] = rng();
          // F_{q^r} with r = s 2^k large enough to split every equation
          std::vector<Coordinates> fibre;
          std::optional<FiniteField> field;
          bool listed = false;
          for (int r = 2 * c.s(); std::pow(cs.q, r) <= (1 << 20) && !listed; r *= 2) {
            field = FiniteField::make(cs.q, r);
            Coordinates vr;
            for (const auto& p : idx.V) vr[p] = v.at(p) % field->size();
            try {
              fibre = solve_stratum_fiber(a, iota, vr, *field);
              listed = true;
            } catch (const Error& e) {
              if (e.kind() != ErrorKind::FieldTooSmall) break;
            }
          }
          if (!listed) continue;  // too large to list
          ++checked;
          const auto& F = *field;
          double expected = std::pow(static_cast<double>(cs.q), static_cast<double>(c.s() * idx.W.size()));
          CHECK(static_cast<double>(fibre.size()) == expected);
          const auto& x = fibre[rng() % fibre.size()];
          auto nb = normalized_basis(a, iota, x, F);
          CHECK(stratum_membership(nb));
          auto lat = nb.lattice();
          CHECK(a_of_lattice(lat) == a);
          CHECK(lattice_predicate(lat).in_variety);
          CHECK(relative_position(lat, lat.gamma_sigma()) == mu);
          CHECK(recover_coordinates(lat, iota) == x);
        }
      }
    }
  }
  CHECK(checked > 20);
}
