#include "adlv/finite_field.hpp"

#include "adlv/context.hpp"
#include "adlv/error.hpp"

namespace adlv {

namespace {

std::vector<int> digits(uint32_t a, int p, int k) {
  std::vector<int> out(k);
  for (int i = 0; i < k; ++i) {
    out[i] = static_cast<int>(a % p);
    a /= p;
  }
  return out;
}

uint32_t from_digits(const std::vector<int>& v, int p) {
  uint32_t out = 0;
  for (std::size_t i = v.size(); i-- > 0;) out = out * p + static_cast<uint32_t>(v[i]);
  return out;
}

// Powers of x modulo the monic polynomial with lower coefficients `low`;
// empty unless x has order p^k - 1.
std::vector<uint32_t> powers_of_x(const std::vector<int>& low, int p, int k, uint32_t size) {
  std::vector<uint32_t> out;
  out.reserve(size - 1);
  std::vector<int> cur(k, 0);
  cur[0] = 1;
  for (uint32_t i = 0; i + 1 < size; ++i) {
    const uint32_t enc = from_digits(cur, p);
    if (i > 0 && enc == 1) return {};
    out.push_back(enc);
    // multiply by x and reduce with x^k = -low
    const int top = cur[k - 1];
    for (int j = k - 1; j > 0; --j) cur[j] = cur[j - 1];
    cur[0] = 0;
    for (int j = 0; j < k; ++j) cur[j] = ((cur[j] - top * low[j]) % p + p) % p;
  }
  return from_digits(cur, p) == 1 ? out : std::vector<uint32_t>{};
}

}  // namespace

FiniteField FiniteField::make(int q, int r) {
  require(is_prime_power(q), ErrorKind::InvalidArgument, "q must be a prime power, got " + std::to_string(q));
  require(r >= 1, ErrorKind::InvalidArgument, "extension degree must be positive");
  int p = 2;
  while (q % p != 0) ++p;
  int e = 0;
  for (int v = q; v > 1; v /= p) ++e;
  const int k = e * r;
  uint64_t size = 1;
  for (int i = 0; i < k; ++i) {
    size *= static_cast<uint64_t>(p);
    require(size <= (1u << 20), ErrorKind::FieldTooSmall,
            "F_" + std::to_string(q) + "^" + std::to_string(r) + " exceeds the supported 2^20 elements");
  }

  auto t = std::make_shared<Tables>();
  t->p = p;
  t->e = e;
  t->q = q;
  t->r = r;
  t->degree = k;
  t->size = static_cast<uint32_t>(size);
  for (uint32_t cand = 1; cand < t->size; ++cand) {
    std::vector<int> low = digits(cand, p, k);
    if (low[0] == 0) continue;
    auto pw = powers_of_x(low, p, k, t->size);
    if (pw.empty()) continue;
    t->modulus = low;
    t->modulus.push_back(1);
    t->exp = std::move(pw);
    break;
  }
  require(!t->exp.empty() || t->size == 2, ErrorKind::InternalInvariant, "no primitive polynomial found");
  if (t->size == 2) {
    t->modulus = {1, 1};
    t->exp = {1};
  }
  t->log.assign(t->size, 0);
  for (uint32_t i = 0; i < t->exp.size(); ++i) t->log[t->exp[i]] = i;
  t->negation.resize(t->size);
  for (uint32_t a = 0; a < t->size; ++a) {
    auto v = digits(a, p, k);
    for (int& c : v) c = (p - c) % p;
    t->negation[a] = from_digits(v, p);
  }
  FiniteField out;
  out.t_ = std::move(t);
  return out;
}

FiniteField::Elem FiniteField::add(Elem a, Elem b) const {
  if (t_->p == 2) return a ^ b;
  uint32_t out = 0, place = 1;
  const uint32_t p = static_cast<uint32_t>(t_->p);
  while (a != 0 || b != 0) {
    out += ((a % p + b % p) % p) * place;
    a /= p;
    b /= p;
    place *= p;
  }
  return out;
}

FiniteField::Elem FiniteField::neg(Elem a) const { return t_->negation[a]; }

FiniteField::Elem FiniteField::mul(Elem a, Elem b) const {
  if (a == 0 || b == 0) return 0;
  const uint32_t order = t_->size - 1;
  return t_->exp[(t_->log[a] + t_->log[b]) % order];
}

FiniteField::Elem FiniteField::inv(Elem a) const {
  require(a != 0, ErrorKind::InvalidArgument, "inverse of zero");
  const uint32_t order = t_->size - 1;
  return t_->exp[(order - t_->log[a]) % order];
}

FiniteField::Elem FiniteField::pow(Elem a, uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  const uint64_t order = t_->size - 1;
  return t_->exp[(static_cast<uint64_t>(t_->log[a]) * (e % order)) % order];
}

FiniteField::Elem FiniteField::frobenius_inverse(Elem a) const {
  uint64_t e = 1;
  for (int i = 0; i + 1 < t_->r; ++i) e = (e * static_cast<uint64_t>(t_->q)) % (t_->size - 1);
  return pow(a, e == 0 ? t_->size - 1 : e);
}

bool FiniteField::in_subfield(Elem a, int s) const {
  Elem b = a;
  for (int i = 0; i < s; ++i) b = frobenius(b);
  return b == a;
}

std::string FiniteField::to_string() const {
  return "F_" + std::to_string(t_->q) + (t_->r > 1 ? "^" + std::to_string(t_->r) : "");
}

}  // namespace adlv
