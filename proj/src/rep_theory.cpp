#include "adlv/rep_theory.hpp"

#include <algorithm>
#include <functional>

#include "adlv/error.hpp"

namespace adlv {

std::string to_string(const RationalVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    out += i ? "," : "";
    out += std::to_string(v[i].numerator());
    if (v[i].denominator() != 1) out += "/" + std::to_string(v[i].denominator());
  }
  return out + ")";
}

std::string to_string(const std::vector<int>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out + ")";
}

bool dominance_leq(const RationalVector& v, const RationalVector& w) {
  require(v.size() == w.size(), ErrorKind::LengthMismatch,
          "dominance comparison of lengths " + std::to_string(v.size()) + " and " + std::to_string(w.size()));
  Rational prefix = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    prefix += w[i] - v[i];
    if (prefix < Rational(0)) return false;
  }
  return prefix == Rational(0);
}

bool dominance_leq(const WeightVector& v, const WeightVector& w) {
  return dominance_leq(RationalVector(v.begin(), v.end()), RationalVector(w.begin(), w.end()));
}

WeightVector best_integral_approximation_search(int n, int m) {
  require(n >= 1, ErrorKind::InvalidArgument, "n must be positive");
  const RationalVector nu(n, Rational(m, n));
  const int lo = -1;
  const int hi = static_cast<int>(floor_div(m + n - 1, n)) + 1;
  std::vector<WeightVector> admissible;
  WeightVector cur(n, lo);
  std::function<void(int, int)> fill = [&](int pos, int sum) {
    if (pos == n) {
      if (sum == m && dominance_leq(RationalVector(cur.begin(), cur.end()), nu)) admissible.push_back(cur);
      return;
    }
    for (int v = lo; v <= hi; ++v) {
      cur[pos] = v;
      fill(pos + 1, sum + v);
    }
  };
  fill(0, 0);
  require(!admissible.empty(), ErrorKind::InternalInvariant, "no integral vector below the Newton point");
  WeightVector best = admissible.front();
  for (const auto& x : admissible)
    if (dominance_leq(best, x)) best = x;
  for (const auto& x : admissible)
    if (!dominance_leq(x, best))
      fail(ErrorKind::InternalInvariant, "no unique maximum below the Newton point: " + to_string(x) +
                                             " is not below " + to_string(best));
  return best;
}

NewtonLambda newton_and_lambda(const IsocrystalContext& ctx) {
  const int n = ctx.n(), m = ctx.m();
  NewtonLambda out{RationalVector(n, Rational(m, n)), WeightVector(n)};
  for (int i = 1; i <= n; ++i)
    out.lambda[i - 1] = static_cast<int>(floor_div(int64_t{i} * m, n) - floor_div(int64_t{i - 1} * m, n));
  if (n <= 8) {
    const WeightVector searched = best_integral_approximation_search(n, m);
    if (searched != out.lambda)
      fail(ErrorKind::InternalInvariant, "floor formula gives " + to_string(out.lambda) + " but search gives " +
                                             to_string(searched));
  }
  return out;
}

uint64_t weight_multiplicity(const HodgeType& mu, const WeightVector& lambda) {
  require(mu.is_minuscule(), ErrorKind::NonMinusculePhi, mu.to_string() + " is not minuscule");
  const int n = mu.n();
  require(static_cast<int>(lambda.size()) == n, ErrorKind::LengthMismatch, "weight length differs from n");
  // remaining[i]: how many factors still have to hit coordinate i
  std::map<WeightVector, uint64_t> states{{lambda, 1}};
  for (int t = 0; t < mu.d(); ++t) {
    const int k = mu.m_tau(t);
    std::map<WeightVector, uint64_t> next;
    for (const auto& [rest, count] : states) {
      std::vector<int> mask(n, 0);
      std::fill(mask.end() - k, mask.end(), 1);
      do {
        WeightVector r = rest;
        bool ok = true;
        for (int i = 0; i < n; ++i) {
          r[i] -= mask[i];
          ok = ok && r[i] >= 0;
        }
        if (ok) next[r] += count;
      } while (std::next_permutation(mask.begin(), mask.end()));
    }
    states = std::move(next);
  }
  auto it = states.find(WeightVector(n, 0));
  return it == states.end() ? 0 : it->second;
}

std::map<Partition, uint64_t> tensor_decomposition(int n, std::span<const int> fundamentals) {
  require(n >= 1, ErrorKind::InvalidArgument, "n must be positive");
  std::map<Partition, uint64_t> current{{Partition(n, 0), 1}};
  for (int k : fundamentals) {
    require(k >= 0 && k <= n, ErrorKind::InvalidArgument,
            "fundamental index " + std::to_string(k) + " outside [0, " + std::to_string(n) + "]");
    std::map<Partition, uint64_t> next;
    for (const auto& [shape, count] : current) {
      std::vector<int> mask(n, 0);
      std::fill(mask.end() - k, mask.end(), 1);
      do {
        Partition grown = shape;
        for (int i = 0; i < n; ++i) grown[i] += mask[i];
        if (std::is_sorted(grown.rbegin(), grown.rend())) next[grown] += count;
      } while (std::next_permutation(mask.begin(), mask.end()));
    }
    current = std::move(next);
  }
  return current;
}

uint64_t kostka(const Partition& shape, const WeightVector& content) {
  const std::size_t rows = shape.size();
  int total = 0;
  for (int c : content) {
    if (c < 0) return 0;
    total += c;
  }
  int size = 0;
  for (int p : shape) size += p;
  if (size != total) return 0;

  std::map<std::pair<Partition, std::size_t>, uint64_t> memo;
  std::function<uint64_t(const Partition&, std::size_t)> count = [&](const Partition& lam, std::size_t letters) {
    if (letters == 0) return static_cast<uint64_t>(std::all_of(lam.begin(), lam.end(), [](int x) { return x == 0; }));
    auto key = std::make_pair(lam, letters);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    // remove a horizontal strip of size content[letters-1]: lam / nu with
    // lam[i+1] <= nu[i] <= lam[i]
    const int strip = content[letters - 1];
    uint64_t result = 0;
    Partition nu(rows, 0);
    std::function<void(std::size_t, int)> choose = [&](std::size_t i, int left) {
      if (i == rows) {
        if (left == 0) result += count(nu, letters - 1);
        return;
      }
      const int floor_i = i + 1 < rows ? lam[i + 1] : 0;
      for (int v = lam[i]; v >= floor_i; --v) {
        const int removed = lam[i] - v;
        if (removed > left) break;
        nu[i] = v;
        choose(i + 1, left - removed);
      }
    };
    choose(0, strip);
    memo[key] = result;
    return result;
  };
  // an SSYT in letters 1..L has at most L rows
  for (std::size_t i = content.size(); i < rows; ++i)
    if (shape[i] != 0) return 0;
  return count(shape, content.size());
}

uint64_t weyl_dimension_by_weights(const Partition& shape) {
  const int n = static_cast<int>(shape.size());
  int size = 0;
  for (int p : shape) size += p;
  uint64_t total = 0;
  WeightVector content(n, 0);
  std::function<void(int, int)> fill = [&](int pos, int left) {
    if (pos == n - 1) {
      content[pos] = left;
      total += kostka(shape, content);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      content[pos] = v;
      fill(pos + 1, left - v);
    }
  };
  if (n == 0) return 1;
  fill(0, size);
  return total;
}

MultiplicityIdentityReport multiplicity_identity_check(int n, std::span<const int> fundamentals,
                                                       const WeightVector& lambda) {
  require(static_cast<int>(lambda.size()) == n, ErrorKind::LengthMismatch, "weight length differs from n");
  std::vector<int> m_tau(fundamentals.begin(), fundamentals.end());
  MultiplicityIdentityReport rep;
  rep.lhs = m_tau.empty() ? static_cast<uint64_t>(std::all_of(lambda.begin(), lambda.end(), [](int x) { return x == 0; }))
                          : weight_multiplicity(Coweight::minuscule(n, m_tau), lambda);
  for (const auto& [chi, a] : tensor_decomposition(n, fundamentals)) {
    const uint64_t dim = kostka(chi, lambda);
    rep.terms.push_back({chi, a, dim});
    rep.rhs += a * dim;
  }
  if (rep.lhs != rep.rhs)
    fail(ErrorKind::IdentityViolation, "weight " + to_string(lambda) + " of " + to_string(m_tau) + ": " +
                                           std::to_string(rep.lhs) + " != " + std::to_string(rep.rhs));
  return rep;
}

}  // namespace adlv
