#include "adlv/context.hpp"

#include <numeric>
#include <sstream>

#include "adlv/error.hpp"

namespace adlv {

bool is_prime_power(int q) {
  if (q < 2) return false;
  int p = 2;
  while (p * p <= q && q % p != 0) ++p;
  if (q % p != 0) return true;  // q itself is prime
  while (q % p == 0) q /= p;
  return q == 1;
}

std::string OPoint::to_string() const {
  std::ostringstream os;
  os << "(" << tau << "," << i << ")";
  return os.str();
}

IsocrystalContext IsocrystalContext::derive(int n, int d, int m, int q) {
  require(n >= 1, ErrorKind::InvalidArgument, "n must be positive");
  require(d >= 1, ErrorKind::InvalidArgument, "d must be positive");
  require(m >= 0, ErrorKind::InvalidArgument, "m must be non-negative");
  require(is_prime_power(q), ErrorKind::InvalidArgument, "q must be a prime power, got " + std::to_string(q));

  IsocrystalContext c;
  c.n_ = n;
  c.d_ = d;
  c.m_ = m;
  c.q_ = q;
  c.h_ = std::gcd(m, n);  // gcd(0, n) = n

  const int cosets = n * d;
  c.f_coset_.resize(cosets);
  for (int coset = 0; coset < cosets; ++coset) {
    OPoint p{coset / n, coset % n};
    c.f_coset_[coset] = c.coset_of(c.f(p));
  }

  c.orbit_pos_.assign(cosets, -1);
  for (int k = 1; k <= c.h_; ++k) {
    std::vector<int> orbit;
    int start = c.coset_of(OPoint{0, k});
    int cur = start;
    do {
      c.orbit_pos_[cur] = static_cast<int>(orbit.size());
      orbit.push_back(cur);
      cur = c.f_coset_[cur];
    } while (cur != start);
    if (static_cast<int>(orbit.size()) != c.s())
      fail(ErrorKind::InternalInvariant, "f-orbit length differs from s");
    c.orbits_.push_back(std::move(orbit));
  }
  return c;
}

OPoint IsocrystalContext::f(OPoint p) const {
  // (tau, i) -> (tau - 1, i + m) when tau = 1, else (tau - 1, i); for d = 1 every
  // point has tau = 0 = 1.
  const int one = 1 % d_;
  const int tau = static_cast<int>(floor_mod(p.tau - 1, d_));
  return {tau, p.tau == one ? p.i + m_ : p.i};
}

OPoint IsocrystalContext::f_inverse(OPoint p) const {
  const int tau = static_cast<int>(floor_mod(p.tau + 1, d_));
  const int one = 1 % d_;
  return {tau, tau == one ? p.i - m_ : p.i};
}

std::string IsocrystalContext::to_string() const {
  std::ostringstream os;
  os << "ctx(n=" << n_ << ", d=" << d_ << ", m=" << m_ << ", q=" << q_ << "; h=" << h_ << ", n'=" << n_prime()
     << ", m'=" << m_prime() << ", s=" << s() << ")";
  return os.str();
}

}  // namespace adlv
