#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "adlv/harness.hpp"
#include "adlv/strata.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace adlv;
using testing_support::line;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::InternalInvariant;
}

std::string message_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

Json case_doc(int n, int d, Json mu) { return Json{{"n", n}, {"d", d}, {"mu", std::move(mu)}}; }

std::string write_temp(const std::string& name, const std::string& text) {
  const std::string path = "/tmp/adlv_test_" + name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST_CASE("case validation") {
  CHECK_NOTHROW(parse_case(case_doc(4, 1, {{1, 1, 0, 0}}), "c"));
  auto spec = parse_case(case_doc(2, 2, "10/10"), "c");
  CHECK(spec.m == 2);
  CHECK(spec.mu == Coweight({{1, 0}, {1, 0}}));

  Json bad_sum = case_doc(4, 1, {{1, 1, 0, 0}});
  bad_sum["m"] = 3;
  CHECK(kind_of([&] { parse_case(bad_sum, "cases[2]"); }) == ErrorKind::ConfigError);
  CHECK(message_of([&] { parse_case(bad_sum, "cases[2]"); }).find("cases[2].m") != std::string::npos);

  Json bad_q = case_doc(2, 1, {{1, 0}});
  bad_q["q"] = 6;
  CHECK(message_of([&] { parse_case(bad_q, "c"); }).find("c.q") != std::string::npos);

  CHECK(message_of([&] { parse_case(case_doc(2, 1, {{0, 1}}), "c"); }).find("non-increasing") != std::string::npos);
  CHECK(message_of([&] { parse_case(case_doc(2, 1, {{2, 0}}), "c"); }).find("0 or 1") != std::string::npos);
  CHECK(message_of([&] { parse_case(case_doc(2, 2, {{1, 0}}), "c"); }).find("c.mu") != std::string::npos);

  Json typo = case_doc(2, 1, {{1, 0}});
  typo["windw"] = 5;
  CHECK(message_of([&] { parse_case(typo, "c"); }).find("c.windw") != std::string::npos);

  Json small = case_doc(4, 1, {{1, 1, 0, 0}});
  small["window"] = 3;
  CHECK(message_of([&] { parse_case(small, "c"); }).find("c.window") != std::string::npos);
}

TEST_CASE("battery files") {
  const auto path = write_temp("battery.json", "{\"schema\": 1,\n \"cases\": [\n  {\"n\": 2, \"d\": 1 \"mu\": [[1,0]]}]}");
  const std::string msg = message_of([&] { load_battery(path); });
  CHECK(msg.find(path + ":3:") != std::string::npos);
  std::remove(path.c_str());

  CHECK(kind_of([] { parse_battery(Json{{"schema", 2}, {"cases", Json::array()}}); }) == ErrorKind::ConfigError);
  CHECK(parse_battery(Json{{"schema", 1}, {"cases", Json::array()}}).empty());

  auto cases = default_battery(2, 2, 4);
  auto back = parse_battery(battery_to_json(cases));
  REQUIRE(back.size() == cases.size());
  for (std::size_t k = 0; k < cases.size(); ++k) CHECK(back[k].key() == cases[k].key());
}

TEST_CASE("default battery covers every minuscule mu") {
  const auto cases = default_battery();
  // sum over (n, d) with n d <= 8 of (n + 1)^d
  std::size_t expected = 0;
  for (int n = 1; n <= 4; ++n)
    for (int d = 1; d <= 2; ++d)
      if (n * d <= 8) expected += d == 1 ? n + 1 : (n + 1) * (n + 1);
  CHECK(cases.size() == expected);
}

TEST_CASE("small battery") {
  // S1, S2 superbasic; R1, R2 with h = 2
  std::vector<CaseSpec> cases{
      make_case(2, 1, 1, 2, {{1, 0}}, std::nullopt, std::nullopt, "S1"),
      make_case(3, 1, 1, 2, {{1, 0, 0}}, std::nullopt, std::nullopt, "S2"),
      make_case(4, 1, 2, 2, {{1, 1, 0, 0}}, std::nullopt, std::nullopt, "R1"),
      make_case(2, 2, 2, 2, {{1, 0}, {1, 0}}, std::nullopt, std::nullopt, "R2"),
  };
  // lambda worked out by hand from the slope m/n
  const std::vector<std::vector<int>> lambdas{{0, 1}, {0, 0, 1}, {0, 1, 0, 1}, {1, 1}};
  const auto report = verify_battery(cases, 2);
  CHECK(report.pass());
  REQUIRE(report.cases.size() == 4);
  for (std::size_t k = 0; k < cases.size(); ++k) {
    const auto& res = *std::find_if(report.cases.begin(), report.cases.end(),
                                    [&](const CaseResult& c) { return c.spec.key() == cases[k].key(); });
    CHECK(res.lambda == lambdas[k]);
    CHECK(static_cast<uint64_t>(res.top_classes) ==
          oracle::subset_tuple_count(cases[k].n, cases[k].mu.m_taus(), lambdas[k]));
  }
  std::vector<int64_t> counts;
  for (const auto& c : cases)
    for (const auto& r : report.cases)
      if (r.spec.key() == c.key()) counts.push_back(r.top_classes);
  CHECK(counts == std::vector<int64_t>{1, 1, 1, 2});

  CHECK(verify_battery({}, 1).pass());
  CHECK(verify_battery({}, 1).canonical()["cases"].empty());
}

TEST_CASE("reports are deterministic") {
  const auto cases = default_battery(3, 2, 4);
  const auto one = verify_battery(cases, 1).canonical().dump();
  const auto four = verify_battery(cases, 4).canonical().dump();
  CHECK(one == four);
  CHECK(one.find("seconds") == std::string::npos);
  CHECK(verify_battery(cases, 1).document()["timings"]["seconds"].size() == cases.size());
}

TEST_CASE("wider window gives the same counts") {
  for (const CaseSpec& c : default_battery(4, 1, 4)) {
    CaseSpec wide = c;
    wide.window = c.effective_window().bound + c.context().h();
    const auto a = verify_case(c);
    const auto b = verify_case(wide);
    CHECK(a.top_classes == b.top_classes);
    CHECK(a.top_representatives == b.top_representatives);
    CHECK(b.pass());
  }
}

TEST_CASE("a failing module marks only its case") {
  CaseSpec broken = make_case(2, 1, 1, 2, {{1, 0}}, std::nullopt, std::nullopt, "x");
  broken.m = 0;  // bypasses validation: mu no longer matches the context
  const auto good = make_case(2, 1, 1, 2, {{1, 0}}, std::nullopt, std::nullopt, "y");
  const auto report = verify_battery({broken, good}, 1);
  REQUIRE(report.cases.size() == 2);
  CHECK(!report.pass());
  CHECK(!report.internal_failure());
  int failed = 0;
  for (const auto& c : report.cases) failed += !c.pass();
  CHECK(failed == 1);
  CHECK(exit_code(report.pass(), report.internal_failure()) == 1);
  CHECK(exit_code(true, false) == 0);
  CHECK(exit_code(false, true) == 3);
}

TEST_CASE("enumeration listing") {
  const auto r1 = make_case(4, 1, 2, 2, {{1, 1, 0, 0}}, 8, std::nullopt, "R1");
  const Json doc = enumerate_listing(r1);
  const auto target = line(r1.context(), {1, 3, 4, 6});
  int found = 0;
  for (const Json& row : doc["semimodules"]) {
    auto a = SemiModule::from_table(r1.context(), row["table"].get<std::vector<int64_t>>());
    if (!shift_equivalent(a, target)) continue;
    ++found;
    CHECK(row["rigid"] == true);
    CHECK(row["V"] == 1);
  }
  CHECK(found == 1);

  const auto s1 = make_case(2, 1, 1, 2, {{1, 0}}, std::nullopt, std::nullopt, "S1");
  CHECK(enumerate_listing(s1)["top_classes"].size() == 1);
}

TEST_CASE("dimension report") {
  const auto r2 = make_case(2, 2, 2, 2, {{1, 0}, {1, 0}}, std::nullopt, std::nullopt, "R2");
  const Json doc = dimension_report(r2);
  // -(n - h)/2 + sum (n - m_tau) m_tau / 2 = 0 + 1
  CHECK(doc["adlv_dimension"] == 1);
  CHECK(doc["max_stratum"] == 1);
  CHECK(doc["levi"].size() == 2);
}

TEST_CASE("lattice checks") {
  const auto r1 = make_case(4, 1, 2, 2, {{1, 1, 0, 0}}, std::nullopt, 16, "R1");
  LatticeCheckOptions opt;
  opt.abar = std::vector<OPoint>{{0, 1}, {0, 3}, {0, 8}, {0, 10}};
  opt.iota = 0;
  opt.r = 4;
  const auto rep = lattice_check(r1, opt);
  CHECK(rep.pass());
  REQUIRE(rep.fibers.size() == 4);
  for (const auto& f : rep.fibers) {
    // (q^s)^|W| with s = 2, |W| = 2
    CHECK(f.fiber_size == 16);
    CHECK(f.members == 16);
    CHECK(f.round_trips == 16);
    CHECK(f.inv == std::vector<std::vector<int>>{{1, 1, 0, 0}});
  }

  // the seed only reorders the samples
  opt.seed = 99;
  CHECK(lattice_check(r1, opt).to_json().dump() == rep.to_json().dump());

  const auto s1 = make_case(2, 1, 1, 2, {{1, 0}}, std::nullopt, std::nullopt, "S1");
  const auto single = lattice_check(s1, {});
  REQUIRE(single.fibers.size() == 1);
  CHECK(single.fibers[0].fiber_size == 1);
  CHECK(single.fibers[0].inv == std::vector<std::vector<int>>{{1, 0}});
  CHECK(single.pass());

  LatticeCheckOptions wrong;
  wrong.iota = 1;
  CHECK(kind_of([&] { lattice_check(r1, wrong); }) == ErrorKind::ConfigError);
  wrong.iota.reset();
  wrong.abar = std::vector<OPoint>{{0, 0}, {0, 1}, {0, 2}};
  CHECK(kind_of([&] { lattice_check(r1, wrong); }) == ErrorKind::MissingCoset);

  // values on V outside F_{q^s} can leave the Artin-Schreier equations without
  // rational roots; the automatic field choice avoids that
  const auto r2 = make_case(2, 2, 2, 2, {{1, 0}, {1, 0}}, std::nullopt, std::nullopt, "R2");
  CHECK(lattice_check(r2, {}).pass());
}

TEST_CASE("multiplicity cases") {
  auto c = multiplicity_case(3, {1, 2});
  CHECK(c.failures == 0);
  // weights in [0, 2]^3 with total 3
  CHECK(c.weights == 7);
  const auto battery = multiplicity_battery(2, 2);
  // n = 1: 1 + 1 tuples, n = 2: 2 + 4 tuples
  CHECK(battery.size() == 8);
}

TEST_CASE("table rendering comes from the json") {
  const auto report = verify_battery({make_case(2, 1, 1, 2, {{1, 0}}, std::nullopt, std::nullopt, "S1")}, 1);
  const std::string text = render_table(report.document());
  CHECK(text.find("n=2 d=1 m=1 mu=(10)") != std::string::npos);
  CHECK(text.find("1/1 cases pass") != std::string::npos);
  CHECK(parse_mu_string("10/10") == std::vector<std::vector<int>>{{1, 0}, {1, 0}});
  CHECK(kind_of([] { parse_mu_string("1x0"); }) == ErrorKind::ConfigError);
}
