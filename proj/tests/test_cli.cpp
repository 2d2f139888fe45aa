#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

#include "supergrass/cli.hpp"

using namespace supergrass;
using json_io::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
  json report() const { return json::parse(out); }
};

Result run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::string sample(const std::string& name) { return std::string(SUPERGRASS_SAMPLES_DIR) + "/" + name; }

}  // namespace

TEST(Cli, DemoExample31) {
  const Result r = run({"demo", "example-3-1", "--N", "6", "--max-len", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = r.report();
  EXPECT_EQ(j["involution"], true);
  EXPECT_EQ(j["classification"]["type"], "2");
  EXPECT_EQ(j["classification"]["s_case"], "S2");
  EXPECT_EQ(j["classification"]["canonical"], true);
  EXPECT_EQ(j["certificate"]["model"], "E_1*");
  EXPECT_EQ(j["certificate"]["verified"], true);
  EXPECT_EQ(j["verdicts"][0]["holds"], true);
}

TEST(Cli, DemoGoldenCorpus) {
  struct Case {
    std::vector<std::string> args;
    int code;
  };
  const std::vector<Case> cases = {
      {{"demo", "example-3-1-psi", "--max-len", "3"}, 0},
      {{"demo", "prop-minus", "--n", "6"}, 0},
      {{"demo", "swap", "--n", "4"}, 0},
      {{"demo", "method2", "--k", "1", "--t", "3", "--N", "7"}, 0},
      {{"demo", "tau"}, 0},
      {{"demo", "nonexistent"}, 2},
      {{"demo"}, 2},
  };
  for (const Case& c : cases) {
    const Result r = run(c.args);
    EXPECT_EQ(r.code, c.code) << c.args[0] << " " << (c.args.size() > 1 ? c.args[1] : "") << ": " << r.err;
  }
  const json pm = run({"demo", "prop-minus", "--n", "6"}).report();
  EXPECT_EQ(pm["canonical"], false);
  EXPECT_EQ(pm["certificate"]["model"], "E_can");
  const json sw = run({"demo", "swap", "--n", "4"}).report();
  EXPECT_EQ(sw["classification"]["type"], "empty_in_basis");
  EXPECT_EQ(sw["homogeneous_generators"]["plus"].size(), 2U);
  EXPECT_EQ(sw["homogeneous_generators"]["minus"].size(), 2U);
  const json tau = run({"demo", "tau"}).report();
  EXPECT_EQ(tau["elements"].size(), 8U);
  EXPECT_EQ(tau["pairwise_commuting"], true);
  EXPECT_EQ(tau["elements"][7]["certificate_model"], "E_3*");
}

TEST(Cli, CheckIdentityExitCodes) {
  const Result fails = run({"check-identity", "--poly", "z1 z2", "--grading", sample("einf.json"), "--N", "4"});
  EXPECT_EQ(fails.code, 1);
  const json j = fails.report();
  EXPECT_EQ(j["witness"]["value_text"], "e1e3");
  EXPECT_EQ(j["params"]["max_len"], 2);

  const Result holds = run({"check-identity", "--poly", "[y1,y2]", "--grading", sample("ecan.json"), "--N", "6"});
  EXPECT_EQ(holds.code, 0);
  EXPECT_EQ(holds.report()["holds"], true);

  const Result bad_poly = run({"check-identity", "--poly", "z1 +", "--grading", sample("einf.json"), "--N", "4"});
  EXPECT_EQ(bad_poly.code, 2);
  EXPECT_NE(bad_poly.err.find("poly@"), std::string::npos);
  EXPECT_EQ(run({"check-identity", "--poly", "z1 z2", "--grading", sample("einf.json"), "--N", "4", "--mode", "fast"}).code, 2);
  EXPECT_EQ(run({"check-identity", "--poly", "z1 z2", "--grading", sample("einf.json"), "--N", "4", "--max-len", "20"}).code, 2);
}

TEST(Cli, SeedFlagAndEnvironmentFallback) {
  const std::vector<std::string> base = {"check-identity", "--poly", "z1 z2", "--grading", sample("einf.json"),
                                         "--N", "6", "--mode", "random"};
  auto with = [&](std::vector<std::string> extra) {
    auto args = base;
    args.insert(args.end(), extra.begin(), extra.end());
    return run(args);
  };
  EXPECT_EQ(with({"--seed", "42"}).report()["params"]["seed"], 42U);
  ::setenv("SUPERGRASS_SEED", "9001", 1);
  EXPECT_EQ(with({}).report()["params"]["seed"], 9001U);
  EXPECT_EQ(with({"--seed", "5"}).report()["params"]["seed"], 5U);
  ::setenv("SUPERGRASS_SEED", "abc", 1);
  EXPECT_EQ(with({}).code, 2);
  ::unsetenv("SUPERGRASS_SEED");
  EXPECT_EQ(with({}).report()["authoritative"], true);
}

TEST(Cli, VerifyCommand) {
  const Result ok = run({"verify", "--map", sample("phi-explicit.json")});
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(ok.report()["involution"], true);
  const Result unipotent = run({"verify", "--map", sample("unipotent.json")});
  EXPECT_EQ(unipotent.code, 1);
  EXPECT_EQ(unipotent.report()["relations"], true);
  EXPECT_EQ(unipotent.report()["involution"], false);
  EXPECT_EQ(unipotent.report()["involution_failure_index"], 1);
  const Result bad = run({"verify", "--map", sample("bad-relation.json")});
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(bad.report()["relations"], false);
}

TEST(Cli, ConstructClassifyGrade) {
  const Result c = run({"construct", "--spec", sample("tau.json")});
  ASSERT_EQ(c.code, 0) << c.err;
  EXPECT_EQ(c.report()["gradings"].size(), 8U);

  const Result cl = run({"classify", "--grading", sample("example-3-1-psi.json")});
  ASSERT_EQ(cl.code, 0) << cl.err;
  EXPECT_EQ(cl.report()["classification"]["type"], "2");

  const Result g = run({"grade", "--grading", sample("example-3-1.json"), "--element", sample("element-e1.json")});
  ASSERT_EQ(g.code, 0) << g.err;
  const json j = g.report();
  EXPECT_EQ(j["degree"], "mixed");
  EXPECT_EQ(json_io::element_from_json(j["even_part"]), Element::monomial(6, Monomial::of({2, 3, 4})));
}

TEST(Cli, CheckIso) {
  const Result cert = run({"check-iso", "--grading", sample("example-3-1.json")});
  EXPECT_EQ(cert.code, 0);
  EXPECT_EQ(cert.report()["certificate"]["model"], "E_1*");

  const std::string f = R"({"1": {"terms": [{"indices": [1], "coef": "1"}, {"indices": [2, 3, 4], "coef": "-1"}]}})";
  const std::string g = R"({"1": {"terms": [{"indices": [1], "coef": "1"}, {"indices": [2, 3, 4], "coef": "1"}]}})";
  const std::string model = R"({"kind": "homogeneous", "model": "E_1*", "N": 6})";
  const Result explicit_pair =
      run({"check-iso", "--grading", model, "--target", sample("example-3-1.json"), "--f", f, "--g", g});
  EXPECT_EQ(explicit_pair.code, 0) << explicit_pair.err;
  EXPECT_EQ(explicit_pair.report()["is_graded_iso"], true);
  const Result swapped =
      run({"check-iso", "--grading", model, "--target", sample("example-3-1.json"), "--f", g, "--g", g});
  EXPECT_EQ(swapped.code, 1);

  EXPECT_EQ(run({"check-iso", "--grading", sample("swap.json")}).code, 1);
}

TEST(Cli, InputErrorsNameTheSchemaPath) {
  const Result missing = run({"classify", "--grading", R"({"kind": "method2", "k": 1, "N": 8})"});
  EXPECT_EQ(missing.code, 2);
  EXPECT_NE(missing.err.find("$.t"), std::string::npos) << missing.err;
  const Result coef = run({"classify", "--grading", R"({"N": 3, "explicit": {"1": {"terms": [{"indices": [1], "coef": "x"}]}}})"});
  EXPECT_EQ(coef.code, 2);
  EXPECT_NE(coef.err.find("$.explicit.1.terms[0].coef"), std::string::npos) << coef.err;
  EXPECT_EQ(run({"classify", "--grading", "/nonexistent/file.json"}).code, 2);
  EXPECT_EQ(run({"classify", "--grading", "{not json"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
}

TEST(Cli, TextFormat) {
  const Result r = run({"demo", "swap", "--n", "4", "--format", "text"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("type: empty_in_basis"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("e1 + e2"), std::string::npos) << r.out;
  EXPECT_EQ(run({"demo", "swap", "--format", "yaml"}).code, 2);
}

TEST(Cli, HelpExitsZero) {
  const Result r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("check-identity"), std::string::npos);
}
