#include "adlv/semimodule.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include "adlv/error.hpp"

namespace adlv {

SemiModule::SemiModule(IsocrystalContext ctx, std::vector<int64_t> mins)
    : ctx_(std::move(ctx)), mins_(std::move(mins)) {
  const int cosets = ctx_.num_cosets();
  phi_.resize(cosets);
  r_inv_coset_.resize(cosets);
  for (int c = 0; c < cosets; ++c) {
    const int fc = ctx_.f_coset(c);
    const int64_t diff = ctx_.f(min_of_coset(c)).i - mins_[fc];
    if (diff < 0)
      fail(ErrorKind::FStabilityViolation, "f" + min_of_coset(c).to_string() + " = " +
                                               ctx_.f(min_of_coset(c)).to_string() + " lies below coset minimum " +
                                               min_of_coset(fc).to_string());
    phi_[c] = diff / ctx_.n();
    r_inv_coset_[fc] = c;
  }
}

SemiModule SemiModule::validate(const IsocrystalContext& ctx, std::span<const OPoint> mins) {
  const int cosets = ctx.num_cosets();
  std::vector<int64_t> table(cosets);
  std::vector<bool> seen(cosets, false);
  for (const OPoint& p : mins) {
    require(p.tau >= 0 && p.tau < ctx.d(), ErrorKind::InvalidArgument, "tau out of range in " + p.to_string());
    const int c = ctx.coset_of(p);
    require(!seen[c], ErrorKind::InvalidArgument, "two minima given for the coset of " + p.to_string());
    seen[c] = true;
    table[c] = p.i;
  }
  for (int c = 0; c < cosets; ++c)
    if (!seen[c])
      fail(ErrorKind::MissingCoset, "no minimum for coset tau=" + std::to_string(ctx.coset_tau(c)) +
                                        ", residue " + std::to_string(ctx.coset_residue(c)));
  return SemiModule(ctx, std::move(table));
}

SemiModule SemiModule::from_table(const IsocrystalContext& ctx, std::vector<int64_t> mins) {
  require(static_cast<int>(mins.size()) == ctx.num_cosets(), ErrorKind::MissingCoset,
          "table has " + std::to_string(mins.size()) + " entries, expected " + std::to_string(ctx.num_cosets()));
  for (int c = 0; c < ctx.num_cosets(); ++c)
    require(floor_mod(mins[c], ctx.n()) == ctx.coset_residue(c), ErrorKind::InvalidArgument,
            "entry " + std::to_string(mins[c]) + " is not in coset " + std::to_string(c));
  return SemiModule(ctx, std::move(mins));
}

std::vector<OPoint> SemiModule::generators() const {
  std::vector<OPoint> out;
  for (int c = 0; c < ctx_.num_cosets(); ++c) out.push_back(min_of_coset(c));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<OPoint> SemiModule::generators(int tau, int piece) const {
  std::vector<OPoint> out;
  for (int c = tau * ctx_.n(); c < (tau + 1) * ctx_.n(); ++c)
    if (ctx_.piece_of_coset(c) == piece) out.push_back(min_of_coset(c));
  std::sort(out.begin(), out.end());
  return out;
}

OPoint SemiModule::r_inverse(OPoint b) const { return min_of_coset(r_inv_coset_[ctx_.coset_of(b)]); }

int64_t SemiModule::conductor(int tau) const {
  const auto first = mins_.begin() + tau * ctx_.n();
  return *std::max_element(first, first + ctx_.n()) - ctx_.n() + 1;
}

int64_t SemiModule::max_coset_gap() const {
  int64_t gap = 0;
  for (int t = 0; t < ctx_.d(); ++t) {
    const auto first = mins_.begin() + t * ctx_.n();
    const auto [lo, hi] = std::minmax_element(first, first + ctx_.n());
    gap = std::max(gap, *hi - *lo);
  }
  return gap;
}

SemiModule SemiModule::shifted(int64_t k) const {
  std::vector<int64_t> out(mins_.size());
  for (int c = 0; c < ctx_.num_cosets(); ++c) {
    OPoint p = min_of_coset(c) + k;
    out[ctx_.coset_of(p)] = p.i;
  }
  return SemiModule(ctx_, std::move(out));
}

std::string SemiModule::to_string() const {
  std::vector<OPoint> pts = generators();
  std::sort(pts.begin(), pts.end(), [&](const OPoint& a, const OPoint& b) {
    return std::tuple(ctx_.piece(a), a.tau, a.i) < std::tuple(ctx_.piece(b), b.tau, b.i);
  });
  std::ostringstream os;
  os << "{";
  for (std::size_t k = 0; k < pts.size(); ++k) os << (k ? "," : "") << pts[k].to_string();
  os << "}";
  return os.str();
}

PhiAndR phi_and_r(const SemiModule& a) {
  PhiAndR out;
  for (const OPoint& b : a.generators()) {
    out.phi[b] = a.phi(b);
    out.r[b] = a.r(b);
  }
  return out;
}

HodgeType hodge_type(const SemiModule& a) {
  const auto& ctx = a.context();
  std::vector<std::vector<int>> parts(ctx.d());
  for (const OPoint& b : a.generators()) {
    const int64_t p = a.phi(b);
    if (p != 0 && p != 1)
      fail(ErrorKind::NonMinusculePhi, "phi" + b.to_string() + " = " + std::to_string(p) + " in " + a.to_string());
    // phi over Abar_{tau+1} gives mu_tau
    parts[floor_mod(b.tau - 1, ctx.d())].push_back(static_cast<int>(p));
  }
  for (auto& p : parts) std::sort(p.begin(), p.end(), std::greater<>());
  return Coweight(std::move(parts));
}

bool is_hodge_type(const SemiModule& a, const HodgeType& mu) {
  try {
    return hodge_type(a) == mu;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NonMinusculePhi) return false;
    throw;
  }
}

}  // namespace adlv
