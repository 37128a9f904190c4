#include "adlv/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "adlv/lattice.hpp"
#include "adlv/strata.hpp"

namespace adlv {

namespace {

[[noreturn]] void config_error(const std::string& where, const std::string& what) {
  fail(ErrorKind::ConfigError, where + ": " + what);
}

std::string mu_string(const HodgeType& mu) {
  std::string out;
  for (int tau = 0; tau < mu.d(); ++tau) {
    if (tau) out += '/';
    for (int x : mu[tau]) out += std::to_string(x);
  }
  return out;
}

template <typename T>
T get_field(const Json& doc, const char* name, const std::string& where) {
  try {
    return doc.at(name).get<T>();
  } catch (const nlohmann::json::exception&) {
    config_error(where + "." + name, "expected " + std::string(std::is_same_v<T, bool> ? "a boolean" : "an integer") +
                                         ", got " + doc.at(name).dump());
  }
}

std::vector<std::vector<int>> mu_from_json(const Json& doc, const std::string& where) {
  if (doc.is_string()) {
    try {
      return parse_mu_string(doc.get<std::string>());
    } catch (const Error& e) {
      config_error(where, e.what());
    }
  }
  if (!doc.is_array()) config_error(where, "expected a list of 0/1 vectors or a string like \"10/10\"");
  std::vector<std::vector<int>> out;
  for (std::size_t tau = 0; tau < doc.size(); ++tau) {
    const std::string at = where + "[" + std::to_string(tau) + "]";
    if (!doc[tau].is_array()) config_error(at, "expected a list of integers");
    std::vector<int> part;
    for (const auto& x : doc[tau]) {
      if (!x.is_number_integer()) config_error(at, "expected integers, got " + x.dump());
      part.push_back(x.get<int>());
    }
    out.push_back(std::move(part));
  }
  return out;
}

std::pair<int, int> line_and_column(const std::string& text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t k = 0; k + 1 < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

void count_vectors(int n, int d, int m, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  const int tau = static_cast<int>(cur.size());
  if (tau == d) {
    if (m == 0) out.push_back(cur);
    return;
  }
  for (int k = 0; k <= std::min(n, m); ++k) {
    cur.push_back(k);
    count_vectors(n, d, m - k, cur, out);
    cur.pop_back();
  }
}

std::vector<SemiModule> enumerate_or_empty(const IsocrystalContext& ctx, const HodgeType& mu,
                                           const EnumerationWindow& w) {
  try {
    return enumerate_hodge_semimodules(ctx, mu, w);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::InfeasibleHodgeType) throw;
  }
  return {};
}

EnumerationWindow factor_window(const IsocrystalContext& ctx, const EnumerationWindow& w) {
  const IsocrystalContext factor = ctx.levi_factor();
  const int64_t extra = w.bound - EnumerationWindow::standard(ctx).bound;
  return {std::max(EnumerationWindow::minimum(factor), EnumerationWindow::standard(factor).bound + extra)};
}

Json weight_json(const std::vector<int>& v) { return Json(v); }

Json levi_json(const LeviCoweight& lambda) {
  Json out = Json::array();
  for (const HodgeType& l : lambda) out.push_back(l.parts());
  return out;
}

template <typename Fn>
void parallel_for(std::size_t count, int jobs, Fn&& fn) {
  if (jobs <= 0) jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  jobs = static_cast<int>(std::min<std::size_t>(jobs, std::max<std::size_t>(count, 1)));
  if (jobs == 1) {
    for (std::size_t k = 0; k < count; ++k) fn(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (int j = 0; j < jobs; ++j)
    pool.emplace_back([&] {
      for (std::size_t k = next++; k < count; k = next++) fn(k);
    });
  for (auto& t : pool) t.join();
}

uint64_t saturating_pow(uint64_t base, uint64_t exp, uint64_t cap) {
  uint64_t out = 1;
  for (uint64_t k = 0; k < exp; ++k) {
    if (out > cap / base) return cap + 1;
    out *= base;
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// case specs

EnumerationWindow CaseSpec::effective_window() const {
  if (window) return {*window};
  return EnumerationWindow::standard(context());
}

std::string CaseSpec::key() const {
  std::string out = "n=" + std::to_string(n) + " d=" + std::to_string(d) + " m=" + std::to_string(m) + " mu=(" +
                    mu_string(mu) + ")";
  if (q != 2) out += " q=" + std::to_string(q);
  if (window) out += " B=" + std::to_string(*window);
  if (precision) out += " N=" + std::to_string(*precision);
  return out;
}

std::vector<std::vector<int>> parse_mu_string(const std::string& text) {
  std::vector<std::vector<int>> out(1);
  for (char c : text) {
    if (c == '/' || c == ',') {
      out.emplace_back();
    } else if (c == '0' || c == '1') {
      out.back().push_back(c - '0');
    } else if (c != ' ') {
      fail(ErrorKind::ConfigError, "mu \"" + text + "\": unexpected character '" + std::string(1, c) + "'");
    }
  }
  return out;
}

CaseSpec make_case(int n, int d, int m, int q, const std::vector<std::vector<int>>& mu,
                   std::optional<int64_t> window, std::optional<int64_t> precision, const std::string& where) {
  if (n < 1 || n > 64) config_error(where + ".n", "n = " + std::to_string(n) + " outside [1, 64]");
  if (d < 1 || d > 64) config_error(where + ".d", "d = " + std::to_string(d) + " outside [1, 64]");
  if (!is_prime_power(q)) config_error(where + ".q", "q = " + std::to_string(q) + " is not a prime power");
  if (static_cast<int>(mu.size()) != d)
    config_error(where + ".mu", "needs one vector per tau (d = " + std::to_string(d) + "), got " +
                                    std::to_string(mu.size()));
  int total = 0;
  for (int tau = 0; tau < d; ++tau) {
    const std::string at = where + ".mu[" + std::to_string(tau) + "]";
    if (static_cast<int>(mu[tau].size()) != n)
      config_error(at, "needs n = " + std::to_string(n) + " entries, got " + std::to_string(mu[tau].size()));
    for (int k = 0; k < n; ++k) {
      if (mu[tau][k] != 0 && mu[tau][k] != 1) config_error(at, "entries must be 0 or 1");
      if (k && mu[tau][k] > mu[tau][k - 1]) config_error(at, "entries must be non-increasing");
      total += mu[tau][k];
    }
  }
  if (total != m)
    config_error(where + ".m", "sum of mu entries is " + std::to_string(total) + " but m = " + std::to_string(m));
  CaseSpec spec;
  spec.n = n;
  spec.d = d;
  spec.m = m;
  spec.q = q;
  spec.mu = Coweight(mu);
  spec.window = window;
  spec.precision = precision;
  if (window) {
    try {
      validate_window(spec.context(), {*window});
    } catch (const Error& e) {
      config_error(where + ".window", e.what());
    }
  }
  if (precision && *precision < 1) config_error(where + ".precision", "precision must be positive");
  return spec;
}

CaseSpec parse_case(const Json& doc, const std::string& where) {
  if (!doc.is_object()) config_error(where, "expected an object");
  static const std::set<std::string> known{"n", "d", "m", "q", "mu", "window", "precision", "checks"};
  for (const auto& [k, v] : doc.items())
    if (!known.count(k)) config_error(where + "." + k, "unknown field");
  for (const char* req : {"n", "d", "mu"})
    if (!doc.contains(req)) config_error(where, std::string("missing field ") + req);
  const int n = get_field<int>(doc, "n", where);
  const int d = get_field<int>(doc, "d", where);
  const int q = doc.contains("q") ? get_field<int>(doc, "q", where) : 2;
  const auto mu = mu_from_json(doc.at("mu"), where + ".mu");
  int m = 0;
  if (doc.contains("m")) {
    m = get_field<int>(doc, "m", where);
  } else {
    for (const auto& part : mu) m += std::accumulate(part.begin(), part.end(), 0);
  }
  std::optional<int64_t> window, precision;
  if (doc.contains("window") && !doc["window"].is_null()) window = get_field<int64_t>(doc, "window", where);
  if (doc.contains("precision") && !doc["precision"].is_null())
    precision = get_field<int64_t>(doc, "precision", where);
  CaseSpec spec = make_case(n, d, m, q, mu, window, precision, where);
  if (doc.contains("checks")) {
    const Json& c = doc["checks"];
    const std::string at = where + ".checks";
    if (!c.is_object()) config_error(at, "expected an object of booleans");
    std::map<std::string, bool*> slots{{"counts", &spec.toggles.counts},
                                       {"dimensions", &spec.toggles.dimensions},
                                       {"identity", &spec.toggles.identity},
                                       {"bijection", &spec.toggles.bijection},
                                       {"superbasic", &spec.toggles.superbasic}};
    for (const auto& [k, v] : c.items()) {
      auto it = slots.find(k);
      if (it == slots.end()) config_error(at + "." + k, "unknown check");
      *it->second = get_field<bool>(c, k.c_str(), at);
    }
  }
  return spec;
}

std::vector<CaseSpec> parse_battery(const Json& doc) {
  if (!doc.is_object()) config_error("battery", "expected an object with \"schema\" and \"cases\"");
  if (!doc.contains("schema") || doc["schema"] != 1) config_error("battery.schema", "expected schema 1");
  if (!doc.contains("cases") || !doc["cases"].is_array()) config_error("battery.cases", "expected a list");
  std::vector<CaseSpec> out;
  for (std::size_t k = 0; k < doc["cases"].size(); ++k)
    out.push_back(parse_case(doc["cases"][k], "cases[" + std::to_string(k) + "]"));
  return out;
}

std::vector<CaseSpec> load_battery(const std::string& path) {
  std::ifstream in(path);
  if (!in) config_error(path, "cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, col] = line_and_column(text, e.byte);
    config_error(path + ":" + std::to_string(line) + ":" + std::to_string(col), "invalid JSON");
  }
  return parse_battery(doc);
}

Json to_json(const CaseSpec& spec) {
  Json out{{"n", spec.n}, {"d", spec.d}, {"m", spec.m}, {"q", spec.q}, {"mu", spec.mu.parts()}};
  if (spec.window) out["window"] = *spec.window;
  if (spec.precision) out["precision"] = *spec.precision;
  const CaseToggles def;
  const CaseToggles& t = spec.toggles;
  Json checks = Json::object();
  if (t.counts != def.counts) checks["counts"] = t.counts;
  if (t.dimensions != def.dimensions) checks["dimensions"] = t.dimensions;
  if (t.identity != def.identity) checks["identity"] = t.identity;
  if (t.bijection != def.bijection) checks["bijection"] = t.bijection;
  if (t.superbasic != def.superbasic) checks["superbasic"] = t.superbasic;
  if (!checks.empty()) out["checks"] = checks;
  return out;
}

Json battery_to_json(const std::vector<CaseSpec>& cases) {
  Json list = Json::array();
  for (const auto& c : cases) list.push_back(to_json(c));
  return Json{{"schema", 1}, {"cases", list}};
}

std::vector<CaseSpec> default_battery(int max_n, int max_d, int max_nd) {
  std::vector<CaseSpec> out;
  for (int n = 1; n <= max_n; ++n)
    for (int d = 1; d <= max_d; ++d) {
      if (n * d > max_nd) continue;
      for (int m = 0; m <= n * d; ++m) {
        std::vector<std::vector<int>> vecs;
        std::vector<int> cur;
        count_vectors(n, d, m, cur, vecs);
        for (const auto& m_tau : vecs)
          out.push_back(make_case(n, d, m, 2, Coweight::minuscule(n, m_tau).parts(), std::nullopt, std::nullopt,
                                  "default"));
      }
    }
  return out;
}

// ---------------------------------------------------------------------------
// verification

bool CaseResult::pass() const {
  if (error_kind) return false;
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

Json CaseResult::to_json() const {
  Json out{{"key", spec.key()},   {"spec", adlv::to_json(spec)}, {"window", window},
           {"pass", pass()},      {"enumerated", enumerated},     {"ordered", ordered},
           {"top_classes", top_classes}, {"lambda", weight_json(lambda)}, {"multiplicity", multiplicity},
           {"adlv_dimension", adlv_dim}, {"max_stratum", max_stratum}, {"top_representatives", top_representatives}};
  Json levi = Json::array();
  for (const auto& [lambda, count] : levi_counts) levi.push_back({{"lambda", levi_json(lambda)}, {"classes", count}});
  out["levi_counts"] = levi;
  out["levi_total"] = levi_total;
  Json sb = Json::array();
  for (const auto& t : superbasic)
    sb.push_back({{"lambda", levi_json(t.lambda)}, {"classes", t.classes}, {"multiplicity", t.multiplicity}});
  out["superbasic"] = sb;
  Json cs = Json::object();
  for (const auto& c : checks) cs[c.name] = {{"pass", c.pass}, {"detail", c.detail}};
  out["checks"] = cs;
  if (error_kind) out["error"] = {{"kind", std::string(to_string(*error_kind))}, {"message", error}};
  return out;
}

CaseResult verify_case(const CaseSpec& spec) {
  CaseResult res;
  res.spec = spec;
  const auto start = std::chrono::steady_clock::now();
  try {
    const IsocrystalContext ctx = spec.context();
    const EnumerationWindow window = spec.effective_window();
    res.window = window.bound;
    const std::vector<SemiModule> all = enumerate_or_empty(ctx, spec.mu, window);
    res.enumerated = all.size();
    res.adlv_dim = adlv_dimension(ctx, spec.mu);

    res.max_stratum = std::numeric_limits<int64_t>::min();
    std::size_t identity_failures = 0;
    std::string identity_detail;
    for (const SemiModule& a : all) {
      res.max_stratum = std::max(res.max_stratum, stratum_dimension(a));
      if (!is_ordered(a)) continue;
      ++res.ordered;
      if (!spec.toggles.identity) continue;
      try {
        dimension_identity_check(a);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::IdentityViolation) throw;
        if (!identity_failures++) identity_detail = e.what();
      }
    }
    if (all.empty()) res.max_stratum = 0;

    const auto top = top_filter(ctx, spec.mu, all);
    res.top_classes = static_cast<int64_t>(top.size());
    for (const auto& cls : top) res.top_representatives.push_back(cls.representative.to_string());
    res.lambda = newton_and_lambda(ctx).lambda;
    res.multiplicity = weight_multiplicity(spec.mu, res.lambda);

    if (spec.toggles.counts)
      res.checks.push_back({"counts", static_cast<uint64_t>(res.top_classes) == res.multiplicity,
                            std::to_string(res.top_classes) + " top classes, multiplicity " +
                                std::to_string(res.multiplicity)});
    if (spec.toggles.dimensions)
      res.checks.push_back({"dimensions", res.max_stratum == res.adlv_dim,
                            "max |V(A)| = " + std::to_string(res.max_stratum) + ", formula " +
                                std::to_string(res.adlv_dim)});
    if (spec.toggles.identity)
      res.checks.push_back({"identity", identity_failures == 0,
                            identity_failures ? std::to_string(identity_failures) + " violations; " + identity_detail
                                              : std::to_string(res.ordered) + " ordered semi-modules"});

    const bool superbasic_in_scope = spec.toggles.superbasic && ctx.n_prime() <= 3;
    if (spec.toggles.bijection || superbasic_in_scope) {
      const EnumerationWindow fw = factor_window(ctx, window);
      const IsocrystalContext factor = ctx.levi_factor();
      const WeightVector factor_lambda = newton_and_lambda(factor).lambda;
      bool sb_ok = true;
      for (const LeviCoweight& lambda : I_mu_gamma(ctx, spec.mu)) {
        const int64_t count = levi_class_count(ctx, lambda, fw);
        res.levi_counts.emplace_back(lambda, count);
        res.levi_total += count;
        if (superbasic_in_scope) {
          uint64_t mult = 1;
          for (const HodgeType& lk : lambda) mult *= weight_multiplicity(lk, factor_lambda);
          res.superbasic.push_back({lambda, count, mult});
          sb_ok = sb_ok && static_cast<uint64_t>(count) == mult;
        }
      }
      if (spec.toggles.bijection)
        res.checks.push_back({"bijection", res.levi_total == res.top_classes,
                              "sum over " + std::to_string(res.levi_counts.size()) + " Levi types = " +
                                  std::to_string(res.levi_total)});
      if (superbasic_in_scope)
        res.checks.push_back({"superbasic", sb_ok,
                              std::to_string(res.superbasic.size()) + " Levi types with n' = " +
                                  std::to_string(ctx.n_prime())});
    }
  } catch (const Error& e) {
    res.error_kind = e.kind();
    res.error = e.what();
  } catch (const std::exception& e) {
    res.error_kind = ErrorKind::InternalInvariant;
    res.error = e.what();
  }
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

bool VerificationReport::pass() const {
  return std::all_of(cases.begin(), cases.end(), [](const CaseResult& c) { return c.pass(); });
}

bool VerificationReport::internal_failure() const {
  return std::any_of(cases.begin(), cases.end(),
                     [](const CaseResult& c) { return c.error_kind == ErrorKind::InternalInvariant; });
}

Json VerificationReport::canonical() const {
  Json list = Json::array();
  std::size_t passed = 0;
  for (const auto& c : cases) {
    list.push_back(c.to_json());
    passed += c.pass();
  }
  return Json{{"kind", "verify"},
              {"pass", pass()},
              {"cases", list},
              {"summary", {{"cases", cases.size()}, {"passed", passed}, {"failed", cases.size() - passed}}}};
}

Json VerificationReport::timings() const {
  Json per = Json::object();
  double total = 0;
  for (const auto& c : cases) {
    per[c.spec.key()] = c.seconds;
    total += c.seconds;
  }
  return Json{{"seconds", per}, {"total_seconds", total}};
}

Json VerificationReport::document() const {
  return Json{{"schema", 1}, {"report", canonical()}, {"timings", timings()}};
}

VerificationReport verify_battery(const std::vector<CaseSpec>& cases, int jobs) {
  VerificationReport report;
  report.cases.resize(cases.size());
  parallel_for(cases.size(), jobs, [&](std::size_t k) { report.cases[k] = verify_case(cases[k]); });
  std::stable_sort(report.cases.begin(), report.cases.end(),
                   [](const CaseResult& a, const CaseResult& b) { return a.spec.key() < b.spec.key(); });
  return report;
}

// ---------------------------------------------------------------------------
// listings

Json enumerate_listing(const CaseSpec& spec) {
  const IsocrystalContext ctx = spec.context();
  const EnumerationWindow window = spec.effective_window();
  const std::vector<SemiModule> all = enumerate_or_empty(ctx, spec.mu, window);
  const int64_t top_dim = adlv_dimension(ctx, spec.mu);
  Json rows = Json::array();
  for (const SemiModule& a : all) {
    Json row{{"abar", a.to_string()}, {"table", a.table()}, {"ordered", is_ordered(a)}, {"rigid", is_rigid(a)},
             {"V", stratum_dimension(a)}};
    row["top"] = row["rigid"].get<bool>() && row["V"].get<int64_t>() == top_dim;
    Json w = Json::array();
    for (int iota = 0; iota < ctx.d(); ++iota) {
      try {
        w.push_back(index_sets(a, iota).W.size());
      } catch (const Error&) {
        w.push_back(nullptr);
      }
    }
    row["W"] = w;
    try {
      row["lambda_A"] = levi_json(lambda_A(a));
    } catch (const Error&) {
      row["lambda_A"] = nullptr;
    }
    rows.push_back(row);
  }
  Json classes = Json::array();
  for (const auto& cls : top_filter(ctx, spec.mu, all)) classes.push_back(cls.representative.to_string());
  return Json{{"key", spec.key()}, {"spec", to_json(spec)}, {"window", window.bound}, {"adlv_dimension", top_dim},
              {"semimodules", rows}, {"top_classes", classes}};
}

Json dimension_report(const CaseSpec& spec) {
  const IsocrystalContext ctx = spec.context();
  const EnumerationWindow window = spec.effective_window();
  const std::vector<SemiModule> all = enumerate_or_empty(ctx, spec.mu, window);
  std::map<int64_t, std::size_t> histogram;
  int64_t max_v = all.empty() ? 0 : std::numeric_limits<int64_t>::min();
  for (const SemiModule& a : all) {
    const int64_t v = stratum_dimension(a);
    ++histogram[v];
    max_v = std::max(max_v, v);
  }
  Json hist = Json::object();
  for (const auto& [v, c] : histogram) hist[std::to_string(v)] = c;
  Json levi = Json::array();
  const EnumerationWindow fw = factor_window(ctx, window);
  for (const LeviCoweight& lambda : I_mu_gamma(ctx, spec.mu))
    levi.push_back({{"lambda", levi_json(lambda)},
                    {"levi_adlv_dimension", levi_adlv_dimension(ctx, lambda)},
                    {"classes", levi_class_count(ctx, lambda, fw)}});
  return Json{{"key", spec.key()},
              {"spec", to_json(spec)},
              {"window", window.bound},
              {"adlv_dimension", adlv_dimension(ctx, spec.mu)},
              {"max_stratum", max_v},
              {"stratum_histogram", hist},
              {"levi", levi}};
}

// ---------------------------------------------------------------------------
// lattice checks

bool FiberCheck::pass() const {
  return error.empty() && fiber_size == expected_size && members == fiber_size && round_trips == fiber_size;
}

bool LatticeCheckReport::pass() const {
  return std::all_of(fibers.begin(), fibers.end(), [](const FiberCheck& f) { return f.pass(); });
}

Json LatticeCheckReport::to_json() const {
  Json list = Json::array();
  for (const auto& f : fibers) {
    Json v = Json::object();
    for (const auto& [k, x] : f.v) v[k] = x;
    Json row{{"abar", f.a},
             {"iota", f.iota},
             {"r", f.r},
             {"precision", f.precision},
             {"v", v},
             {"fiber_size", f.fiber_size},
             {"expected_size", f.expected_size},
             {"members", f.members},
             {"round_trips", f.round_trips},
             {"inv", f.inv},
             {"pass", f.pass()}};
    if (!f.error.empty()) row["error"] = f.error;
    list.push_back(row);
  }
  return Json{{"kind", "lattice-check"}, {"pass", pass()}, {"fibers", list}};
}

namespace {

// With auto_field the values on V come from F_{q^s} and a missing Artin-Schreier root
// is rethrown so the caller can enlarge the field; otherwise it is recorded per sample.
std::vector<FiberCheck> check_stratum(const CaseSpec& spec, const SemiModule& a, int iota, const FiniteField& F,
                                      int64_t precision, const LatticeCheckOptions& options, bool auto_field) {
  const StratumIndex idx = index_sets(a, iota);
  const IsocrystalContext& ctx = a.context();
  const uint64_t cap = uint64_t{1} << 20;
  std::vector<FiniteField::Elem> values;
  for (FiniteField::Elem x = 0; x < F.size(); ++x)
    if (!auto_field || F.in_subfield(x, ctx.s())) values.push_back(x);
  const uint64_t total = saturating_pow(values.size(), idx.V.size(), cap);
  std::vector<uint64_t> picks;
  if (options.samples <= 0 || total <= static_cast<uint64_t>(options.samples)) {
    if (total > cap) fail(ErrorKind::ConfigError, "F^V has more than 2^20 points; pass a sample count");
    picks.resize(total);
    std::iota(picks.begin(), picks.end(), 0);
  } else {
    std::mt19937_64 gen(0x9e3779b97f4a7c15ull);
    std::set<uint64_t> chosen;
    while (chosen.size() < static_cast<std::size_t>(options.samples)) chosen.insert(gen() % total);
    picks.assign(chosen.begin(), chosen.end());
  }
  std::shuffle(picks.begin(), picks.end(), std::mt19937_64(options.seed));

  std::vector<FiberCheck> out;
  for (uint64_t pick : picks) {
    FiberCheck fc;
    fc.a = a.to_string();
    fc.iota = iota;
    fc.r = F.r();
    fc.precision = precision;
    Coordinates v;
    uint64_t rest = pick;
    for (const IndexPair& p : idx.V) {
      const FiniteField::Elem x = values[rest % values.size()];
      rest /= values.size();
      v[p] = x;
      fc.v.emplace_back(p.to_string(), x);
    }
    fc.expected_size = saturating_pow(spec.q, static_cast<uint64_t>(ctx.s()) * idx.W.size(), cap);
    try {
      const auto fiber = solve_stratum_fiber(a, iota, v, F, precision);
      fc.fiber_size = fiber.size();
      for (const Coordinates& x : fiber) {
        const TruncatedLattice lat = normalized_basis(a, iota, x, F, precision).lattice();
        const Coweight inv = relative_position(lat, lat.gamma_sigma());
        if (fc.inv.empty()) fc.inv = inv.parts();
        if (inv == spec.mu && a_of_lattice(lat) == a) ++fc.members;
        if (recover_coordinates(lat, iota) == x) ++fc.round_trips;
      }
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::FieldTooSmall && auto_field) throw;
      fc.error = e.what();
      if (e.kind() == ErrorKind::InternalInvariant) fc.error = "internal: " + fc.error;
    }
    out.push_back(std::move(fc));
  }
  return out;
}

}  // namespace

LatticeCheckReport lattice_check(const CaseSpec& spec, const LatticeCheckOptions& options) {
  const IsocrystalContext ctx = spec.context();
  std::vector<SemiModule> targets;
  if (options.abar) {
    SemiModule a = SemiModule::validate(ctx, *options.abar);
    if (!is_hodge_type(a, spec.mu))
      config_error("abar", a.to_string() + " is not of Hodge type " + spec.mu.to_string());
    targets.push_back(a);
  } else {
    const auto all = enumerate_or_empty(ctx, spec.mu, spec.effective_window());
    for (const auto& cls : top_filter(ctx, spec.mu, all)) targets.push_back(cls.representative);
  }
  std::vector<int> iotas;
  if (options.iota) {
    if (*options.iota < 0 || *options.iota >= ctx.d()) config_error("iota", "outside Z_d");
    iotas.push_back(*options.iota);
  } else {
    for (int i = 0; i < ctx.d(); ++i) iotas.push_back(i);
  }

  LatticeCheckReport report;
  for (const SemiModule& a : targets)
    for (int iota : iotas) {
      const int64_t precision = spec.precision.value_or(default_precision(a));
      const bool auto_field = options.r <= 0;
      const int p = FiniteField::make(spec.q, 1).p();
      int r = auto_field ? p * ctx.s() : options.r;
      while (true) {
        const FiniteField F = FiniteField::make(spec.q, r);
        try {
          auto fibers = check_stratum(spec, a, iota, F, precision, options, auto_field);
          std::sort(fibers.begin(), fibers.end(),
                    [](const FiberCheck& x, const FiberCheck& y) { return x.v < y.v; });
          report.fibers.insert(report.fibers.end(), fibers.begin(), fibers.end());
          break;
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::FieldTooSmall) throw;
          if (saturating_pow(spec.q, static_cast<uint64_t>(p) * r, uint64_t{1} << 20) > (uint64_t{1} << 20)) {
            FiberCheck fc;
            fc.a = a.to_string();
            fc.iota = iota;
            fc.r = r;
            fc.precision = precision;
            fc.error = e.what();
            report.fibers.push_back(fc);
            break;
          }
          r *= p;
        }
      }
    }
  for (const auto& f : report.fibers)
    if (f.error.rfind("internal: ", 0) == 0) report.internal = true;
  return report;
}

// ---------------------------------------------------------------------------
// multiplicity recursion

MultiplicityCase multiplicity_case(int n, const std::vector<int>& fundamentals) {
  MultiplicityCase out;
  out.n = n;
  out.fundamentals = fundamentals;
  const int len = static_cast<int>(fundamentals.size());
  const int total = std::accumulate(fundamentals.begin(), fundamentals.end(), 0);
  WeightVector lambda(n, 0);
  // odometer over [0, len]^n
  while (true) {
    if (std::accumulate(lambda.begin(), lambda.end(), 0) == total) {
      ++out.weights;
      try {
        multiplicity_identity_check(n, fundamentals, lambda);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::IdentityViolation) throw;
        if (!out.failures++) out.detail = e.what();
      }
    }
    int k = 0;
    while (k < n && lambda[k] == len) lambda[k++] = 0;
    if (k == n) break;
    ++lambda[k];
  }
  return out;
}

std::vector<MultiplicityCase> multiplicity_battery(int max_n, int max_len) {
  std::vector<MultiplicityCase> out;
  for (int n = 1; n <= max_n; ++n)
    for (int len = 1; len <= max_len; ++len) {
      std::vector<int> tuple(len, 1);
      while (true) {
        out.push_back(multiplicity_case(n, tuple));
        int k = 0;
        while (k < len && tuple[k] == n) tuple[k++] = 1;
        if (k == len) break;
        ++tuple[k];
      }
    }
  return out;
}

Json to_json(const MultiplicityCase& c) {
  Json out{{"n", c.n}, {"fundamentals", c.fundamentals}, {"weights", c.weights}, {"failures", c.failures},
           {"pass", c.failures == 0}};
  if (!c.detail.empty()) out["detail"] = c.detail;
  return out;
}

// ---------------------------------------------------------------------------
// rendering

namespace {

std::string pad(std::string s, std::size_t w) {
  if (s.size() < w) s.append(w - s.size(), ' ');
  return s;
}

std::string status(const Json& j) { return j.value("pass", false) ? "pass" : "FAIL"; }

}  // namespace

std::string render_table(const Json& doc) {
  const Json& rep = doc.contains("report") ? doc["report"] : doc;
  const std::string kind = rep.value("kind", "");
  std::ostringstream out;
  if (kind == "verify") {
    out << pad("case", 34) << pad("enum", 7) << pad("top", 5) << pad("mult", 6) << pad("dim", 5) << pad("max|V|", 8)
        << pad("levi", 6) << "status\n";
    for (const Json& c : rep["cases"]) {
      out << pad(c["key"], 34) << pad(c["enumerated"].dump(), 7) << pad(c["top_classes"].dump(), 5)
          << pad(c["multiplicity"].dump(), 6) << pad(c["adlv_dimension"].dump(), 5)
          << pad(c["max_stratum"].dump(), 8) << pad(c["levi_total"].dump(), 6) << status(c) << "\n";
      if (c.contains("error")) out << "    error: " << c["error"]["message"].get<std::string>() << "\n";
      for (const auto& [name, chk] : c["checks"].items())
        if (!chk["pass"].get<bool>()) out << "    " << name << ": " << chk["detail"].get<std::string>() << "\n";
    }
    const Json& s = rep["summary"];
    out << s["passed"] << "/" << s["cases"] << " cases pass\n";
  } else if (kind == "enumerate") {
    for (const Json& c : rep["cases"]) {
      out << c["key"].get<std::string>() << "  window=" << c["window"] << "  dim=" << c["adlv_dimension"] << "\n";
      out << "  " << pad("abar", 40) << pad("ord", 5) << pad("rig", 5) << pad("|V|", 5) << pad("|W|", 10)
          << "lambda_A\n";
      for (const Json& row : c["semimodules"])
        out << "  " << pad(row["abar"], 40) << pad(row["ordered"].get<bool>() ? "y" : "n", 5)
            << pad(row["rigid"].get<bool>() ? "y" : "n", 5) << pad(row["V"].dump(), 5) << pad(row["W"].dump(), 10)
            << row["lambda_A"].dump() << "\n";
      out << "  top classes:";
      for (const Json& r : c["top_classes"]) out << " " << r.get<std::string>();
      out << "\n";
    }
  } else if (kind == "dims") {
    for (const Json& c : rep["cases"]) {
      out << c["key"].get<std::string>() << "  dim=" << c["adlv_dimension"] << "  max|V|=" << c["max_stratum"]
          << "  histogram=" << c["stratum_histogram"].dump() << "\n";
      for (const Json& l : c["levi"])
        out << "  lambda=" << l["lambda"].dump() << "  levi dim=" << l["levi_adlv_dimension"]
            << "  classes=" << l["classes"] << "\n";
    }
  } else if (kind == "lattice-check") {
    for (const Json& c : rep["cases"]) {
      out << c["key"].get<std::string>() << "\n";
      for (const Json& f : c["fibers"]) {
        out << "  " << pad(f["abar"], 36) << " iota=" << f["iota"] << " r=" << f["r"] << " v=" << f["v"].dump()
            << " fiber=" << f["fiber_size"] << "/" << f["expected_size"] << " members=" << f["members"]
            << " round-trips=" << f["round_trips"] << " inv=" << f["inv"].dump() << "  " << status(f) << "\n";
        if (f.contains("error")) out << "    error: " << f["error"].get<std::string>() << "\n";
      }
    }
  } else if (kind == "mult") {
    for (const Json& c : rep["cases"])
      out << "n=" << c["n"] << " fundamentals=" << c["fundamentals"].dump() << " weights=" << c["weights"]
          << " failures=" << c["failures"] << "  " << status(c) << "\n";
  } else {
    out << rep.dump(2) << "\n";
  }
  if (rep.contains("pass")) out << (rep["pass"].get<bool>() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

int exit_code(bool pass, bool internal) {
  if (internal) return 3;
  return pass ? 0 : 1;
}

}  // namespace adlv
