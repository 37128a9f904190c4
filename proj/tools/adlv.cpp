// adlv: batch driver for the semi-module verification.
//
//   adlv verify [--config battery.json] [--jobs K] [--json out.json]
//   adlv enumerate --n 4 --mu 1100 [--window 8]
//   adlv dims --n 2 --d 2 --mu 10/10
//   adlv lattice-check --n 4 --mu 1100 --abar 1,3,8,10 [--samples 0]
//   adlv mult [--n 4 --fundamentals 1,2,1]
//
// Exit codes: 0 pass, 1 verification failure, 2 configuration error, 3 internal invariant.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "adlv/harness.hpp"

using namespace adlv;

namespace {

struct CaseFlags {
  std::string config;
  std::optional<int> n, d, m;
  int q = 2;
  std::string mu;
  std::optional<int64_t> window, precision;
  std::string json_out;
  int jobs = 1;
  uint64_t seed = 0;
};

void add_case_flags(CLI::App* cmd, CaseFlags& f) {
  cmd->add_option("--config", f.config, "battery file (JSON, schema 1)");
  cmd->add_option("--n", f.n, "rank n");
  cmd->add_option("--d", f.d, "degree d of the unramified extension");
  cmd->add_option("--m", f.m, "m; defaults to the number of ones in mu");
  cmd->add_option("--q", f.q, "residue field size");
  cmd->add_option("--mu", f.mu, "Hodge type, e.g. 1100 or 10/10");
  cmd->add_option("--window", f.window, "enumeration window B (overrides the battery)");
  cmd->add_option("--precision", f.precision, "truncation N (overrides the battery)");
  cmd->add_option("--json", f.json_out, "write the JSON report here ('-' for stdout)");
  cmd->add_option("--jobs", f.jobs, "worker threads (0: all cores)");
  cmd->add_option("--seed", f.seed, "sampling order in lattice checks");
}

std::vector<CaseSpec> cases_from(const CaseFlags& f, bool default_to_battery) {
  std::vector<CaseSpec> cases;
  if (!f.config.empty()) {
    if (f.n || !f.mu.empty()) fail(ErrorKind::ConfigError, "--config cannot be combined with --n/--mu");
    cases = load_battery(f.config);
  } else if (f.n || !f.mu.empty()) {
    if (!f.n || f.mu.empty()) fail(ErrorKind::ConfigError, "an inline case needs both --n and --mu");
    const auto mu = parse_mu_string(f.mu);
    int m = 0;
    for (const auto& part : mu)
      for (int x : part) m += x;
    cases.push_back(make_case(*f.n, f.d.value_or(1), f.m.value_or(m), f.q, mu, std::nullopt, std::nullopt, "case"));
  } else if (default_to_battery) {
    cases = default_battery();
  } else {
    fail(ErrorKind::ConfigError, "give --config or an inline case (--n, --mu)");
  }
  for (std::size_t k = 0; k < cases.size(); ++k) {
    const std::string where = "cases[" + std::to_string(k) + "]";
    CaseSpec& c = cases[k];
    const CaseToggles toggles = c.toggles;
    c = make_case(c.n, c.d, c.m, c.q, c.mu.parts(), f.window ? f.window : c.window,
                  f.precision ? f.precision : c.precision, where);
    c.toggles = toggles;
  }
  return cases;
}

std::vector<OPoint> parse_abar(const std::string& text) {
  std::vector<OPoint> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    OPoint p;
    try {
      const auto colon = item.find(':');
      if (colon == std::string::npos) {
        p.i = std::stoll(item);
      } else {
        p.tau = std::stoi(item.substr(0, colon));
        p.i = std::stoll(item.substr(colon + 1));
      }
    } catch (const std::exception&) {
      fail(ErrorKind::ConfigError, "--abar: cannot read \"" + item + "\" (use i or tau:i)");
    }
    out.push_back(p);
  }
  return out;
}

std::vector<int> parse_ints(const std::string& text, const std::string& flag) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      fail(ErrorKind::ConfigError, flag + ": cannot read \"" + item + "\"");
    }
  }
  return out;
}

int emit(const CaseFlags& f, Json report, double seconds, int code) {
  Json doc{{"schema", 1}, {"report", std::move(report)}, {"timings", {{"total_seconds", seconds}}}};
  if (f.json_out == "-") {
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << render_table(doc);
    if (!f.json_out.empty()) {
      std::ofstream out(f.json_out);
      if (!out) fail(ErrorKind::ConfigError, "cannot write " + f.json_out);
      out << doc.dump(2) << "\n";
    }
  }
  return code;
}

double since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semi-module verification of dim V_mu(lambda) counts for Res GL_n"};
  app.require_subcommand(1);

  CaseFlags f;
  auto* verify = app.add_subcommand("verify", "count, dimension, identity and Levi checks over a battery");
  auto* enumerate = app.add_subcommand("enumerate", "list Hodge-type semi-modules in the window");
  auto* dims = app.add_subcommand("dims", "dimension report");
  auto* lattice = app.add_subcommand("lattice-check", "solve stratum fibres and check the lattices");
  auto* mult = app.add_subcommand("mult", "multiplicity recursion for tensor products of fundamentals");
  for (auto* cmd : {verify, enumerate, dims, lattice}) add_case_flags(cmd, f);

  std::string abar;
  std::optional<int> iota;
  int samples = 4, r = 0;
  lattice->add_option("--abar", abar, "coset minima, e.g. 1,3,8,10 or 0:1,1:2");
  lattice->add_option("--iota", iota, "stratum index in Z_d (default: all)");
  lattice->add_option("--samples", samples, "points of F^V per stratum (0: all)");
  lattice->add_option("--r", r, "field degree over F_q (default: escalate from 2s)");

  std::string fundamentals;
  int max_n = 4, max_len = 3;
  mult->add_option("--n", f.n, "rank n");
  mult->add_option("--fundamentals", fundamentals, "indices k of omega_k, e.g. 1,2,1");
  mult->add_option("--max-n", max_n, "battery bound on n");
  mult->add_option("--max-len", max_len, "battery bound on the tuple length");
  mult->add_option("--json", f.json_out, "write the JSON report here ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    if (*verify) {
      const auto report = verify_battery(cases_from(f, true), f.jobs);
      Json doc = report.document();
      if (f.json_out == "-") {
        std::cout << doc.dump(2) << "\n";
      } else {
        std::cout << render_table(doc);
        if (!f.json_out.empty()) {
          std::ofstream out(f.json_out);
          if (!out) fail(ErrorKind::ConfigError, "cannot write " + f.json_out);
          out << doc.dump(2) << "\n";
        }
      }
      return exit_code(report.pass(), report.internal_failure());
    }
    if (*enumerate || *dims) {
      Json list = Json::array();
      for (const CaseSpec& c : cases_from(f, false)) list.push_back(*enumerate ? enumerate_listing(c) : dimension_report(c));
      return emit(f, Json{{"kind", *enumerate ? "enumerate" : "dims"}, {"cases", list}}, since(start), 0);
    }
    if (*lattice) {
      LatticeCheckOptions opt;
      if (!abar.empty()) opt.abar = parse_abar(abar);
      opt.iota = iota;
      opt.samples = samples;
      opt.seed = f.seed;
      opt.r = r;
      Json list = Json::array();
      bool pass = true, internal = false;
      for (const CaseSpec& c : cases_from(f, false)) {
        const LatticeCheckReport rep = lattice_check(c, opt);
        Json j = rep.to_json();
        j["key"] = c.key();
        list.push_back(j);
        pass = pass && rep.pass();
        internal = internal || rep.internal;
      }
      return emit(f, Json{{"kind", "lattice-check"}, {"pass", pass}, {"cases", list}}, since(start),
                  exit_code(pass, internal));
    }
    if (*mult) {
      std::vector<MultiplicityCase> cases;
      if (!fundamentals.empty()) {
        if (!f.n) fail(ErrorKind::ConfigError, "--fundamentals needs --n");
        const auto ks = parse_ints(fundamentals, "--fundamentals");
        for (int k : ks)
          if (k < 0 || k > *f.n) fail(ErrorKind::ConfigError, "--fundamentals: omega_k needs 0 <= k <= n");
        cases.push_back(multiplicity_case(*f.n, ks));
      } else {
        cases = multiplicity_battery(f.n.value_or(max_n), max_len);
      }
      Json list = Json::array();
      bool pass = true;
      for (const auto& c : cases) {
        list.push_back(to_json(c));
        pass = pass && c.failures == 0;
      }
      return emit(f, Json{{"kind", "mult"}, {"pass", pass}, {"cases", list}}, since(start), exit_code(pass, false));
    }
  } catch (const Error& e) {
    std::cerr << "adlv: " << e.what() << "\n";
    if (e.kind() == ErrorKind::InternalInvariant) return 3;
    if (e.kind() == ErrorKind::IdentityViolation) return 1;
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "adlv: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
