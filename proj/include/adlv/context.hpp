#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace adlv {

inline int64_t floor_mod(int64_t a, int64_t b) {
  int64_t r = a % b;
  return r < 0 ? r + b : r;
}

inline int64_t floor_div(int64_t a, int64_t b) { return (a - floor_mod(a, b)) / b; }

bool is_prime_power(int q);

/// A point (tau, i) of the index set Z_d x Z. Points are comparable only
/// within a line tau; the total order defined here (tau first) is for sorting.
struct OPoint {
  int tau = 0;
  int64_t i = 0;

  friend auto operator<=>(const OPoint&, const OPoint&) = default;
  OPoint operator+(int64_t k) const { return {tau, i + k}; }
  OPoint operator-(int64_t k) const { return {tau, i - k}; }
  std::string to_string() const;
};

/// Arithmetic frame of a basic isocrystal for Res_{F_q^d/F_q} GL_n of slope m/n.
///
/// Cosets of nZ inside Z_d x Z are numbered tau * n + (i mod n). The shift map f
/// permutes these n*d cosets in h = gcd(m, n) orbits of length s = n'd; orbit
/// number k-1 is exactly the graded piece O^k = {(tau, j) : j = k mod h}.
class IsocrystalContext {
 public:
  static IsocrystalContext derive(int n, int d, int m, int q = 2);

  int n() const { return n_; }
  int d() const { return d_; }
  int m() const { return m_; }
  int q() const { return q_; }
  int h() const { return h_; }
  int n_prime() const { return n_ / h_; }
  int m_prime() const { return m_ / h_; }
  int s() const { return (n_ / h_) * d_; }
  int num_cosets() const { return n_ * d_; }

  OPoint f(OPoint p) const;
  OPoint f_inverse(OPoint p) const;

  int coset_of(OPoint p) const { return p.tau * n_ + static_cast<int>(floor_mod(p.i, n_)); }
  int coset_tau(int coset) const { return coset / n_; }
  int coset_residue(int coset) const { return coset % n_; }
  int f_coset(int coset) const { return f_coset_[coset]; }

  /// Graded piece index k in {1, ..., h}.
  int piece(OPoint p) const { return static_cast<int>(floor_mod(p.i - 1, h_)) + 1; }
  int piece_of_coset(int coset) const { return static_cast<int>(floor_mod(coset_residue(coset) - 1, h_)) + 1; }

  /// Orbit k-1 lists the cosets of O^k in f-order starting from (0, k mod n).
  const std::vector<std::vector<int>>& orbits() const { return orbits_; }
  /// Position of a coset inside its orbit.
  int orbit_position(int coset) const { return orbit_pos_[coset]; }

  /// Context of one Levi factor Res GL_{n'}, which is superbasic.
  IsocrystalContext levi_factor() const { return derive(n_prime(), d_, m_prime(), q_); }

  bool same_frame(const IsocrystalContext& o) const { return n_ == o.n_ && d_ == o.d_ && m_ == o.m_; }
  friend bool operator==(const IsocrystalContext& a, const IsocrystalContext& b) {
    return a.same_frame(b) && a.q_ == b.q_;
  }

  std::string to_string() const;

 private:
  IsocrystalContext() = default;

  int n_ = 1, d_ = 1, m_ = 0, q_ = 2, h_ = 1;
  std::vector<int> f_coset_;
  std::vector<std::vector<int>> orbits_;
  std::vector<int> orbit_pos_;
};

}  // namespace adlv
