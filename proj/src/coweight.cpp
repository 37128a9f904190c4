#include "adlv/coweight.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "adlv/error.hpp"

namespace adlv {

Coweight::Coweight(std::vector<std::vector<int>> parts) : parts_(std::move(parts)) {
  for (const auto& p : parts_)
    require(p.size() == parts_.front().size(), ErrorKind::LengthMismatch, "coweight parts differ in length");
}

Coweight Coweight::minuscule(int n, const std::vector<int>& m_tau) {
  std::vector<std::vector<int>> parts;
  for (int mt : m_tau) {
    require(mt >= 0 && mt <= n, ErrorKind::InvalidArgument, "m_tau out of range");
    std::vector<int> v(n, 0);
    std::fill(v.begin(), v.begin() + mt, 1);
    parts.push_back(std::move(v));
  }
  return Coweight(std::move(parts));
}

int Coweight::m_tau(int tau) const { return std::accumulate(parts_[tau].begin(), parts_[tau].end(), 0); }

std::vector<int> Coweight::m_taus() const {
  std::vector<int> out;
  for (int t = 0; t < d(); ++t) out.push_back(m_tau(t));
  return out;
}

int Coweight::total() const {
  int s = 0;
  for (int t = 0; t < d(); ++t) s += m_tau(t);
  return s;
}

bool Coweight::is_dominant() const {
  return std::all_of(parts_.begin(), parts_.end(),
                     [](const auto& p) { return std::is_sorted(p.begin(), p.end(), std::greater<>()); });
}

bool Coweight::is_minuscule() const {
  if (!is_dominant()) return false;
  for (const auto& p : parts_)
    for (int x : p)
      if (x != 0 && x != 1) return false;
  return true;
}

std::string Coweight::to_string() const {
  std::ostringstream os;
  os << "(";
  for (int t = 0; t < d(); ++t) {
    if (t) os << ",";
    os << "(";
    for (std::size_t i = 0; i < parts_[t].size(); ++i) os << (i ? "," : "") << parts_[t][i];
    os << ")";
  }
  os << ")";
  return os.str();
}

NormalizedHodge normalize_central_shift(const Coweight& raw, int m) {
  std::vector<std::vector<int>> parts = raw.parts();
  int removed = 0;
  for (auto& p : parts) {
    require(!p.empty(), ErrorKind::InvalidArgument, "empty coweight part");
    std::sort(p.begin(), p.end(), std::greater<>());
    int lo = p.back();
    for (int& x : p) x -= lo;
    removed += lo * static_cast<int>(p.size());
  }
  Coweight mu(std::move(parts));
  require(mu.is_minuscule(), ErrorKind::NonMinusculePhi,
          "Hodge type " + raw.to_string() + " is not minuscule up to a central shift");
  return {mu, m - removed};
}

void check_hodge_for_context(const IsocrystalContext& ctx, const HodgeType& mu) {
  require(mu.d() == ctx.d() && mu.n() == ctx.n(), ErrorKind::LengthMismatch,
          "Hodge type " + mu.to_string() + " does not fit " + ctx.to_string());
  require(mu.is_minuscule(), ErrorKind::NonMinusculePhi, "Hodge type " + mu.to_string() + " is not minuscule");
  require(mu.total() == ctx.m(), ErrorKind::KottwitzMismatch,
          "sum of m_tau is " + std::to_string(mu.total()) + " but m = " + std::to_string(ctx.m()));
}

}  // namespace adlv
