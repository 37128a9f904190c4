#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "adlv/coweight.hpp"
#include "adlv/enumeration.hpp"
#include "adlv/error.hpp"
#include "adlv/levi.hpp"
#include "adlv/normalized_basis.hpp"
#include "adlv/rep_theory.hpp"

namespace adlv {

using Json = nlohmann::json;

struct CaseToggles {
  bool counts = true;
  bool dimensions = true;
  bool identity = true;
  bool bijection = true;
  bool superbasic = true;
};

/// One (n, d, m, mu) case with its knobs. Validated on construction by parse_case
/// and make_case; a CaseSpec in hand always satisfies sum_tau m_tau = m.
struct CaseSpec {
  int n = 1, d = 1, m = 0, q = 2;
  HodgeType mu;
  std::optional<int64_t> window;
  std::optional<int64_t> precision;
  CaseToggles toggles;

  IsocrystalContext context() const { return IsocrystalContext::derive(n, d, m, q); }
  EnumerationWindow effective_window() const;
  /// "n=4 d=1 m=2 mu=(1100)"; reports are sorted by this.
  std::string key() const;
};

/// Throws ConfigError naming `where` and the offending field.
CaseSpec make_case(int n, int d, int m, int q, const std::vector<std::vector<int>>& mu,
                   std::optional<int64_t> window, std::optional<int64_t> precision, const std::string& where);
CaseSpec parse_case(const Json& doc, const std::string& where);
/// {"schema": 1, "cases": [...]}.
std::vector<CaseSpec> parse_battery(const Json& doc);
/// Reads and parses a battery file; JSON syntax errors report line and column.
std::vector<CaseSpec> load_battery(const std::string& path);
Json to_json(const CaseSpec& spec);
Json battery_to_json(const std::vector<CaseSpec>& cases);

/// "1100" or "10/10" (one group of digits per tau).
std::vector<std::vector<int>> parse_mu_string(const std::string& text);

/// Every (n, d, m, mu) with n <= max_n, d <= max_d, n d <= max_nd and minuscule mu.
std::vector<CaseSpec> default_battery(int max_n = 4, int max_d = 2, int max_nd = 8);

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SuperbasicTerm {
  LeviCoweight lambda;
  int64_t classes = 0;
  uint64_t multiplicity = 0;
};

struct CaseResult {
  CaseSpec spec;
  int64_t window = 0;
  std::optional<ErrorKind> error_kind;
  std::string error;
  std::size_t enumerated = 0;
  std::size_t ordered = 0;
  int64_t top_classes = 0;
  WeightVector lambda;
  uint64_t multiplicity = 0;
  int64_t adlv_dim = 0;
  int64_t max_stratum = 0;
  std::vector<std::string> top_representatives;
  std::vector<std::pair<LeviCoweight, int64_t>> levi_counts;
  int64_t levi_total = 0;
  std::vector<SuperbasicTerm> superbasic;
  std::vector<CheckResult> checks;
  double seconds = 0;

  bool pass() const;
  /// Deterministic part; timings are left out.
  Json to_json() const;
};

CaseResult verify_case(const CaseSpec& spec);

struct VerificationReport {
  std::vector<CaseResult> cases;  // sorted by key

  bool pass() const;
  bool internal_failure() const;
  Json canonical() const;
  Json timings() const;
  /// {"schema": 1, "report": canonical(), "timings": timings()}.
  Json document() const;
};

/// Cases run on `jobs` threads; the report does not depend on jobs.
VerificationReport verify_battery(const std::vector<CaseSpec>& cases, int jobs = 1);

/// Enumeration listing of one case: every Hodge-type semi-module in the window.
Json enumerate_listing(const CaseSpec& spec);

/// adlv dimension, max |V(A)|, stratum histogram and Levi dimensions per lambda.
Json dimension_report(const CaseSpec& spec);

struct LatticeCheckOptions {
  /// Abar; by default every rigid top class representative of the case.
  std::optional<std::vector<OPoint>> abar;
  /// Stratum index; by default every iota in Z_d.
  std::optional<int> iota;
  /// Points of F^V per stratum; 0 means all of them.
  int samples = 4;
  /// Only permutes the order in which samples are processed.
  uint64_t seed = 0;
  /// Degree of the coefficient field over F_q. With 0 the values on V are drawn from
  /// F_{q^s}, and r starts at p s and is multiplied by p while some fibre has no rational points.
  int r = 0;
};

struct FiberCheck {
  std::string a;
  int iota = 0;
  int r = 0;
  int64_t precision = 0;
  std::vector<std::pair<std::string, uint32_t>> v;
  std::size_t fiber_size = 0;
  uint64_t expected_size = 0;
  std::size_t members = 0;     // relative position mu and A(Lambda) = A
  std::size_t round_trips = 0; // recover_coordinates gives x back
  std::vector<std::vector<int>> inv;  // relative position of the first point
  std::string error;
  bool pass() const;
};

struct LatticeCheckReport {
  std::vector<FiberCheck> fibers;
  bool internal = false;
  bool pass() const;
  Json to_json() const;
};

LatticeCheckReport lattice_check(const CaseSpec& spec, const LatticeCheckOptions& options);

struct MultiplicityCase {
  int n = 0;
  std::vector<int> fundamentals;
  std::size_t weights = 0;
  std::size_t failures = 0;
  std::string detail;
};

/// multiplicity_identity_check for every weight with entries in [0, len] and the
/// right total.
MultiplicityCase multiplicity_case(int n, const std::vector<int>& fundamentals);
/// All tuples of fundamental coweights omega_1..omega_n of length 1..max_len, n <= max_n.
std::vector<MultiplicityCase> multiplicity_battery(int max_n = 4, int max_len = 3);
Json to_json(const MultiplicityCase& c);

/// Human-readable rendering of a report document.
std::string render_table(const Json& doc);

/// 0 pass, 1 verification failure, 3 internal invariant violation.
int exit_code(bool pass, bool internal);

}  // namespace adlv
