#include "adlv/lattice.hpp"

#include <algorithm>
#include <utility>

#include "adlv/error.hpp"

namespace adlv {

namespace {

using Elem = LatticeVector::Elem;
constexpr int64_t kExact = LatticeVector::kExact;

int64_t shift_bound(int64_t hi, int64_t k) { return hi == kExact ? kExact : hi + k; }

// Drops unknown and zero coefficients at both ends.
void normalize(LatticeVector& v) {
  if (v.hi != kExact && v.lo + static_cast<int64_t>(v.coeffs.size()) > v.hi)
    v.coeffs.resize(static_cast<std::size_t>(std::max<int64_t>(0, v.hi - v.lo)));
  auto first = std::find_if(v.coeffs.begin(), v.coeffs.end(), [](Elem c) { return c != 0; });
  v.lo += first - v.coeffs.begin();
  v.coeffs.erase(v.coeffs.begin(), first);
  while (!v.coeffs.empty() && v.coeffs.back() == 0) v.coeffs.pop_back();
  if (v.coeffs.empty()) v.lo = 0;
}

// w += c * e_{+shift} g
void axpy(const FiniteField& F, LatticeVector& w, Elem c, const LatticeVector& g, int64_t shift) {
  w.hi = std::min(w.hi, shift_bound(g.hi, shift));
  if (c != 0 && !g.coeffs.empty()) {
    const int64_t glo = g.lo + shift;
    const int64_t gend = glo + static_cast<int64_t>(g.coeffs.size());
    const int64_t lo = w.coeffs.empty() ? glo : std::min(w.lo, glo);
    const int64_t end = w.coeffs.empty() ? gend : std::max(w.lo + static_cast<int64_t>(w.coeffs.size()), gend);
    std::vector<Elem> out(static_cast<std::size_t>(end - lo), 0);
    for (std::size_t i = 0; i < w.coeffs.size(); ++i) out[w.lo - lo + i] = w.coeffs[i];
    for (std::size_t i = 0; i < g.coeffs.size(); ++i) {
      auto& x = out[glo - lo + i];
      x = F.add(x, F.mul(c, g.coeffs[i]));
    }
    w.lo = lo;
    w.coeffs = std::move(out);
  }
  normalize(w);
}

LatticeVector scaled(const FiniteField& F, LatticeVector v, Elem c) {
  for (auto& x : v.coeffs) x = F.mul(x, c);
  normalize(v);
  return v;
}

int64_t ceil_div(int64_t a, int64_t b) { return -floor_div(-a, b); }

[[noreturn]] void fail_empty(const LatticeVector& v, const std::string& what) {
  fail(v.exact() ? ErrorKind::RankDeficient : ErrorKind::PrecisionExhausted, what);
}

}  // namespace

Elem LatticeVector::at(int64_t i) const {
  if (i >= hi) fail(ErrorKind::PrecisionExhausted, "coefficient at index " + std::to_string(i) + " beyond " +
                                                       std::to_string(hi));
  if (i < lo || i >= lo + static_cast<int64_t>(coeffs.size())) return 0;
  return coeffs[static_cast<std::size_t>(i - lo)];
}

OPoint eta(const LatticeVector& v) {
  for (std::size_t k = 0; k < v.coeffs.size(); ++k) {
    const int64_t i = v.lo + static_cast<int64_t>(k);
    if (i >= v.hi) break;
    if (v.coeffs[k] != 0) return {v.tau, i};
  }
  if (v.exact()) fail(ErrorKind::ZeroVector, "eta of the zero vector");
  fail(ErrorKind::PrecisionExhausted, "no non-zero coefficient below index " + std::to_string(v.hi));
}

LatticeVector t_shift(const IsocrystalContext& ctx, const LatticeVector& v, int64_t k) {
  LatticeVector out = v;
  if (!out.coeffs.empty()) out.lo += k * ctx.n();
  out.hi = shift_bound(v.hi, k * ctx.n());
  return out;
}

LatticeVector gamma_sigma(const IsocrystalContext& ctx, const FiniteField& F, const LatticeVector& v) {
  const int64_t delta = ctx.f(OPoint{v.tau, 0}).i;
  LatticeVector out;
  out.tau = ctx.f(OPoint{v.tau, 0}).tau;
  out.lo = v.coeffs.empty() ? 0 : v.lo + delta;
  out.hi = shift_bound(v.hi, delta);
  out.coeffs.reserve(v.coeffs.size());
  for (Elem c : v.coeffs) out.coeffs.push_back(F.frobenius(c));
  return out;
}

std::vector<TruncatedSeries> to_coordinates(int n, const LatticeVector& v) {
  std::vector<TruncatedSeries> out;
  for (int rho = 0; rho < n; ++rho) {
    const int64_t prec = v.exact() ? kExact : ceil_div(v.hi - rho, n);
    std::vector<Elem> cs;
    int64_t start = 0;
    if (!v.coeffs.empty()) {
      const int64_t end = v.lo + static_cast<int64_t>(v.coeffs.size());
      start = ceil_div(v.lo - rho, n);
      for (int64_t i = start * n + rho; i < end; i += n) cs.push_back(v.at(i));
    }
    out.emplace_back(start, std::move(cs), prec);
  }
  return out;
}

LatticeVector from_coordinates(int tau, int n, const std::vector<TruncatedSeries>& coords) {
  require(static_cast<int>(coords.size()) == n, ErrorKind::LengthMismatch,
          "expected " + std::to_string(n) + " coordinates, got " + std::to_string(coords.size()));
  LatticeVector out;
  out.tau = tau;
  int64_t lo = kExact, end = std::numeric_limits<int64_t>::min();
  for (int rho = 0; rho < n; ++rho) {
    const auto& c = coords[rho];
    if (!c.exact()) out.hi = std::min(out.hi, rho + c.precision() * n);
    if (c.coeffs().empty()) continue;
    lo = std::min(lo, rho + c.start() * n);
    end = std::max(end, rho + (c.start() + static_cast<int64_t>(c.coeffs().size()) - 1) * n + 1);
  }
  if (lo != kExact) {
    out.lo = lo;
    out.coeffs.assign(static_cast<std::size_t>(end - lo), 0);
    for (int rho = 0; rho < n; ++rho) {
      const auto& c = coords[rho];
      for (std::size_t k = 0; k < c.coeffs().size(); ++k)
        out.coeffs[static_cast<std::size_t>(rho + (c.start() + static_cast<int64_t>(k)) * n - lo)] = c.coeffs()[k];
    }
  }
  normalize(out);
  return out;
}

TruncatedLattice::TruncatedLattice(IsocrystalContext ctx, FiniteField field, int64_t precision,
                                   std::vector<std::vector<LatticeVector>> generators)
    : ctx_(std::move(ctx)), field_(std::move(field)), precision_(precision), gens_(std::move(generators)) {
  require(field_.q() == ctx_.q(), ErrorKind::ContextMismatch,
          "field " + field_.to_string() + " does not extend F_" + std::to_string(ctx_.q()));
  require(static_cast<int>(gens_.size()) == ctx_.d(), ErrorKind::LengthMismatch, "expected one generator list per tau");
  for (int tau = 0; tau < ctx_.d(); ++tau) {
    require(static_cast<int>(gens_[tau].size()) == ctx_.n(), ErrorKind::LengthMismatch,
            "line " + std::to_string(tau) + " needs " + std::to_string(ctx_.n()) + " generators");
    for (auto& g : gens_[tau]) {
      require(g.tau == tau, ErrorKind::InvalidArgument, "generator filed under the wrong line");
      for (Elem c : g.coeffs) require(c < field_.size(), ErrorKind::InvalidArgument, "coefficient outside the field");
      normalize(g);
    }
  }
}

TruncatedLattice TruncatedLattice::standard(const IsocrystalContext& ctx, const FiniteField& field, int64_t precision) {
  std::vector<std::vector<LatticeVector>> gens(ctx.d());
  for (int tau = 0; tau < ctx.d(); ++tau)
    for (int rho = 0; rho < ctx.n(); ++rho) gens[tau].push_back(LatticeVector::basis({tau, rho}));
  return TruncatedLattice(ctx, field, precision, std::move(gens));
}

TruncatedLattice TruncatedLattice::t_shift(int64_t k) const {
  auto gens = gens_;
  for (auto& line : gens)
    for (auto& g : line) g = adlv::t_shift(ctx_, g, k);
  return TruncatedLattice(ctx_, field_, precision_, std::move(gens));
}

TruncatedLattice TruncatedLattice::gamma_sigma() const {
  std::vector<std::vector<LatticeVector>> gens(ctx_.d());
  for (const auto& line : gens_)
    for (const auto& g : line) {
      auto image = adlv::gamma_sigma(ctx_, field_, g);
      gens[image.tau].push_back(std::move(image));
    }
  return TruncatedLattice(ctx_, field_, precision_, std::move(gens));
}

nlohmann::json TruncatedLattice::to_json() const {
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& line : gens_) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& g : line) {
      nlohmann::json coords = nlohmann::json::array();
      for (const auto& c : to_coordinates(ctx_.n(), g)) {
        nlohmann::json entry;
        entry["val"] = c.start();
        entry["prec"] = c.exact() ? nlohmann::json(nullptr) : nlohmann::json(c.precision());
        entry["coeffs"] = c.coeffs();
        coords.push_back(std::move(entry));
      }
      rows.push_back(std::move(coords));
    }
    gens.push_back(std::move(rows));
  }
  return {{"schema", 1},          {"q", ctx_.q()}, {"r", field_.r()},
          {"d", ctx_.d()},        {"n", ctx_.n()}, {"m", ctx_.m()},
          {"precision", precision_}, {"generators", std::move(gens)}};
}

TruncatedLattice TruncatedLattice::from_json(const nlohmann::json& doc) {
  try {
    require(doc.value("schema", 0) == 1, ErrorKind::InvalidArgument, "unsupported lattice schema");
    auto ctx = IsocrystalContext::derive(doc.at("n").get<int>(), doc.at("d").get<int>(), doc.at("m").get<int>(),
                                         doc.at("q").get<int>());
    auto field = FiniteField::make(ctx.q(), doc.at("r").get<int>());
    std::vector<std::vector<LatticeVector>> gens(ctx.d());
    const auto& lines = doc.at("generators");
    require(static_cast<int>(lines.size()) == ctx.d(), ErrorKind::LengthMismatch, "generator lines");
    for (int tau = 0; tau < ctx.d(); ++tau)
      for (const auto& row : lines[tau]) {
        std::vector<TruncatedSeries> coords;
        for (const auto& entry : row) {
          const auto& prec = entry.at("prec");
          coords.emplace_back(entry.at("val").get<int64_t>(), entry.at("coeffs").get<std::vector<Elem>>(),
                              prec.is_null() ? kExact : prec.get<int64_t>());
        }
        gens[tau].push_back(from_coordinates(tau, ctx.n(), coords));
      }
    return TruncatedLattice(ctx, field, doc.at("precision").get<int64_t>(), std::move(gens));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::InvalidArgument, std::string("malformed lattice document: ") + e.what());
  }
}

LineEchelon::Residual LineEchelon::reduce(const FiniteField& F, const LatticeVector& w, int64_t cap) const {
  const int n = static_cast<int>(by_residue.size());
  // everything from the conductor on lies in A, so the residual is complete there
  const int64_t top = conductor();
  LatticeVector cur = w;
  cur.hi = std::min(cur.hi, cap);
  normalize(cur);
  Residual res;
  while (!cur.coeffs.empty() && cur.lo < top) {
    const int64_t a = cur.lo;
    const Elem c = cur.coeffs.front();
    const auto rho = static_cast<std::size_t>(floor_mod(a, n));
    if (a < leads[rho]) {
      res.entries[a] = c;
      cur.coeffs.front() = 0;
      normalize(cur);
      continue;
    }
    axpy(F, cur, F.neg(c), by_residue[rho], a - leads[rho]);
  }
  res.valid_below = cur.hi >= top ? kExact : cur.hi;
  return res;
}

int64_t LineEchelon::conductor() const {
  const auto n = static_cast<int64_t>(leads.size());
  return *std::max_element(leads.begin(), leads.end()) - n + 1;
}

int64_t LineEchelon::known_below() const {
  int64_t out = kExact;
  for (const auto& g : by_residue) out = std::min(out, g.hi);
  return out;
}

LineEchelon line_echelon(const FiniteField& F, int n, int tau, const std::vector<LatticeVector>& gens,
                         bool allow_dependent) {
  LineEchelon ech;
  ech.tau = tau;
  ech.by_residue.resize(n);
  std::vector<bool> have(n, false);
  int occupied = 0;
  int64_t max_lead = 0;
  int64_t dropped_hi = kExact;
  for (const auto& g : gens) {
    require(g.tau == tau, ErrorKind::InvalidArgument, "generator from another line");
    LatticeVector w = g;
    normalize(w);
    while (true) {
      // once every residue class is occupied, vectors led above the conductor are spanned
      if (occupied == n && !w.coeffs.empty() && w.lo > max_lead - n) {
        if (!allow_dependent) fail(ErrorKind::RankDeficient, "generators of line " + std::to_string(tau) + " are dependent");
        break;
      }
      if (w.coeffs.empty()) {
        if (!allow_dependent) fail_empty(w, "generators of line " + std::to_string(tau) + " are dependent");
        dropped_hi = std::min(dropped_hi, w.hi);
        break;
      }
      const auto rho = static_cast<std::size_t>(floor_mod(w.lo, n));
      if (!have[rho]) {
        const Elem inv = F.inv(w.coeffs.front());
        ech.by_residue[rho] = scaled(F, std::move(w), inv);
        have[rho] = true;
        ++occupied;
        max_lead = std::numeric_limits<int64_t>::min();
        if (occupied == n)
          for (const auto& h : ech.by_residue) max_lead = std::max(max_lead, h.lo);
        break;
      }
      auto& g2 = ech.by_residue[rho];
      if (g2.lo > w.lo) {
        const Elem inv = F.inv(w.coeffs.front());
        w = scaled(F, std::move(w), inv);
        std::swap(w, g2);
        if (occupied == n) {
          max_lead = std::numeric_limits<int64_t>::min();
          for (const auto& h : ech.by_residue) max_lead = std::max(max_lead, h.lo);
        }
        continue;
      }
      axpy(F, w, F.neg(w.coeffs.front()), g2, w.lo - g2.lo);
    }
  }
  for (int rho = 0; rho < n; ++rho)
    require(have[rho], ErrorKind::RankDeficient,
            "line " + std::to_string(tau) + " has no generator in residue class " + std::to_string(rho));
  for (const auto& g : ech.by_residue) ech.leads.push_back(g.lo);
  require(dropped_hi >= ech.conductor(), ErrorKind::PrecisionExhausted,
          "a dependent generator is only known below " + std::to_string(dropped_hi));
  return ech;
}

std::vector<LineEchelon> echelon(const TruncatedLattice& lattice) {
  std::vector<LineEchelon> out;
  for (int tau = 0; tau < lattice.context().d(); ++tau)
    out.push_back(line_echelon(lattice.field(), lattice.context().n(), tau, lattice.generators(tau)));
  return out;
}

std::vector<int64_t> coset_leads(const TruncatedLattice& lattice) {
  std::vector<int64_t> table;
  for (const auto& line : echelon(lattice)) table.insert(table.end(), line.leads.begin(), line.leads.end());
  return table;
}

SemiModule a_of_lattice(const TruncatedLattice& lattice) {
  return SemiModule::from_table(lattice.context(), coset_leads(lattice));
}

std::map<OPoint, int64_t> phi_of_lattice(const TruncatedLattice& lattice) {
  const auto& ctx = lattice.context();
  const auto& F = lattice.field();
  const int n = ctx.n();
  const auto ech = echelon(lattice);
  std::map<OPoint, int64_t> out;
  for (const auto& line : ech) {
    const int target = ctx.f(OPoint{line.tau, 0}).tau;
    const auto& image_line = ech[target];
    const int64_t image_min = *std::min_element(image_line.leads.begin(), image_line.leads.end());
    for (int rho = 0; rho < n; ++rho) {
      const OPoint a{line.tau, line.leads[rho]};
      const auto image = gamma_sigma(ctx, F, line.by_residue[rho]);
      const int64_t fa = ctx.f(a).i;
      // gamma sigma of the vectors of Lambda_tau with leading index above a
      std::vector<LatticeVector> higher;
      for (int rho2 = 0; rho2 < n; ++rho2) {
        const int64_t lead = line.leads[rho2];
        const int64_t k = lead > a.i ? 0 : floor_div(a.i - lead, n) + 1;
        higher.push_back(gamma_sigma(ctx, F, t_shift(ctx, line.by_residue[rho2], k)));
      }
      auto member = [&](int64_t l) {
        std::vector<LatticeVector> gens = higher;
        for (const auto& g : image_line.by_residue) gens.push_back(t_shift(ctx, g, l));
        const auto sum = line_echelon(F, n, target, gens, true);
        const auto res = sum.reduce(F, image);
        require(res.valid_below >= sum.conductor(), ErrorKind::PrecisionExhausted,
                "phi at " + a.to_string() + " needs coefficients up to index " + std::to_string(sum.conductor()));
        return res.is_zero();
      };
      int64_t l = floor_div(fa - image_line.conductor(), n);
      const int64_t l_max = floor_div(fa - image_min, n) + 1;
      while (l < l_max && member(l + 1)) ++l;
      out[a] = l;
    }
  }
  return out;
}

LatticePredicate lattice_predicate(const TruncatedLattice& lattice) {
  LatticePredicate out;
  try {
    out.a = a_of_lattice(lattice);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::FStabilityViolation) throw;
    out.reason = std::string("A(Lambda) is not a semi-module: ") + e.what();
    return out;
  }
  const auto phi = phi_of_lattice(lattice);
  for (const auto& [b, value] : phi)
    if (value != out.a->phi(b)) {
      out.reason = "phi_Lambda(" + b.to_string() + ") = " + std::to_string(value) + " but phi_A = " +
                   std::to_string(out.a->phi(b));
      return out;
    }
  try {
    out.mu = hodge_type(*out.a);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NonMinusculePhi) throw;
    out.reason = std::string("A(Lambda) is not of minuscule type: ") + e.what();
    return out;
  }
  out.in_variety = true;
  return out;
}

namespace {

using Matrix = std::vector<std::vector<TruncatedSeries>>;

Matrix coordinate_matrix(int n, const std::vector<LatticeVector>& gens) {
  Matrix m(n, std::vector<TruncatedSeries>(gens.size()));
  for (std::size_t col = 0; col < gens.size(); ++col) {
    auto coords = to_coordinates(n, gens[col]);
    for (int row = 0; row < n; ++row) m[row][col] = coords[row];
  }
  return m;
}

[[noreturn]] void fail_pivot(const Matrix& m, std::size_t from, std::size_t col_lo, std::size_t col_hi) {
  for (std::size_t i = from; i < m.size(); ++i)
    for (std::size_t j = col_lo; j < col_hi; ++j)
      if (!m[i][j].is_exact_zero()) fail(ErrorKind::PrecisionExhausted, "pivot below working precision");
  fail(ErrorKind::RankDeficient, "singular change of basis");
}

// row_i -= factor * row_k; factor is a copy since it may alias an entry of row_i
void eliminate_row(const FiniteField& F, Matrix& m, std::size_t i, std::size_t k, TruncatedSeries factor) {
  for (std::size_t j = 0; j < m[i].size(); ++j) m[i][j] = m[i][j].sub(F, factor.mul(F, m[k][j]));
}

// Elementary divisor valuations of a square matrix, non-increasing.
std::vector<int> smith_valuations(const FiniteField& F, Matrix x) {
  const std::size_t n = x.size();
  std::vector<int> out;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pi = n, pj = n;
    int64_t best = kExact;
    for (std::size_t i = k; i < n; ++i)
      for (std::size_t j = k; j < n; ++j)
        if (auto v = x[i][j].valuation(); v && *v < best) best = *v, pi = i, pj = j;
    if (pi == n) fail_pivot(x, k, k, n);
    for (std::size_t i = k; i < n; ++i)
      for (std::size_t j = k; j < n; ++j)
        if (x[i][j].known_zero() && x[i][j].precision() < best)
          fail(ErrorKind::PrecisionExhausted, "entry of unknown valuation below the pivot");
    std::swap(x[k], x[pi]);
    for (auto& row : x) std::swap(row[k], row[pj]);
    const auto inv = x[k][k].inverse(F);
    for (std::size_t i = k + 1; i < n; ++i)
      if (!x[i][k].is_exact_zero()) eliminate_row(F, x, i, k, x[i][k].mul(F, inv));
    for (std::size_t j = k + 1; j < n; ++j) {
      if (x[k][j].is_exact_zero()) continue;
      const auto factor = x[k][j].mul(F, inv);
      for (std::size_t i = k; i < n; ++i) x[i][j] = x[i][j].sub(F, factor.mul(F, x[i][k]));
    }
    out.push_back(static_cast<int>(best));
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

}  // namespace

Coweight relative_position(const TruncatedLattice& lattice, const TruncatedLattice& other) {
  const auto& ctx = lattice.context();
  require(ctx == other.context() && lattice.field() == other.field(), ErrorKind::ContextMismatch,
          "lattices over different frames");
  const auto& F = lattice.field();
  const auto n = static_cast<std::size_t>(ctx.n());
  std::vector<std::vector<int>> parts;
  for (int tau = 0; tau < ctx.d(); ++tau) {
    // Gauss-Jordan on [G | G'] gives G^{-1} G'
    auto g = coordinate_matrix(ctx.n(), lattice.generators(tau));
    auto g2 = coordinate_matrix(ctx.n(), other.generators(tau));
    for (std::size_t i = 0; i < n; ++i) g[i].insert(g[i].end(), g2[i].begin(), g2[i].end());
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t p = n;
      int64_t best = kExact;
      for (std::size_t i = c; i < n; ++i)
        if (auto v = g[i][c].valuation(); v && *v < best) best = *v, p = i;
      if (p == n) fail_pivot(g, c, c, c + 1);
      std::swap(g[c], g[p]);
      const auto inv = g[c][c].inverse(F);
      for (auto& entry : g[c]) entry = entry.mul(F, inv);
      for (std::size_t i = 0; i < n; ++i)
        if (i != c && !g[i][c].is_exact_zero()) eliminate_row(F, g, i, c, g[i][c]);
    }
    Matrix x(n);
    for (std::size_t i = 0; i < n; ++i) x[i].assign(g[i].begin() + static_cast<std::ptrdiff_t>(n), g[i].end());
    parts.push_back(smith_valuations(F, std::move(x)));
  }
  return Coweight(std::move(parts));
}

bool contains(const TruncatedLattice& lattice, const TruncatedLattice& other) {
  const auto ech = echelon(lattice);
  for (const auto& line : ech)
    for (const auto& g : other.generators(line.tau)) {
      const auto res = line.reduce(lattice.field(), g);
      if (!res.is_zero()) return false;
      require(res.valid_below >= line.conductor(), ErrorKind::PrecisionExhausted,
              "containment needs coefficients up to index " + std::to_string(line.conductor()));
    }
  return true;
}

bool same_lattice(const TruncatedLattice& a, const TruncatedLattice& b) { return contains(a, b) && contains(b, a); }

}  // namespace adlv
