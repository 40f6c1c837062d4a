#include <sstream>

#include "qzeta_cli/cli.hpp"
#include "test_support.hpp"

using namespace qzeta;
using namespace qzeta::cli;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "qzeta_cli");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

json strip_time(json j) {
  j.erase("wall_time_ms");
  return j;
}

}  // namespace

TEST(ComplexLiteral, Accepted) {
  EXPECT_EQ(parse_complex("2"), Complex(2.0, 0.0));
  EXPECT_EQ(parse_complex("-0.5"), Complex(-0.5, 0.0));
  EXPECT_EQ(parse_complex("0.5+14.1347i"), Complex(0.5, 14.1347));
  EXPECT_EQ(parse_complex("1-2i"), Complex(1.0, -2.0));
  EXPECT_EQ(parse_complex("3i"), Complex(0.0, 3.0));
  EXPECT_EQ(parse_complex("-i"), Complex(0.0, -1.0));
  EXPECT_EQ(parse_complex("1e-3+2.5e1i"), Complex(1e-3, 25.0));
  EXPECT_EQ(parse_complex(".5-.25i"), Complex(0.5, -0.25));
}

TEST(ComplexLiteral, Rejected) {
  for (const char* bad : {"1+2", "", "i2", "1+2j", "1 + 2i", "1++2i", "abc", "2i+1", "1+2ii", "0x10"}) {
    EXPECT_THROW(parse_complex(bad), UsageError) << bad;
  }
}

TEST(QGrid, Parsing) {
  EXPECT_EQ(parse_q_grid("0.9,0.99"), (std::vector<double>{0.9, 0.99}));
  EXPECT_EQ(parse_q_grid("default").size(), 6u);
  EXPECT_THROW(parse_q_grid("0.9,1.5"), UsageError);
  EXPECT_THROW(parse_q_grid("0.9,x"), UsageError);
}

TEST(Cli, EvalContinuedPaperValue) {
  const CliRun r = run_cli({"eval", "--s", "0.5", "--q", "0.999", "--terms", "100000", "--method", "continued", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_NEAR(j["value"]["re"].get<double>(), -1.46014527395, 5e-11);
  EXPECT_EQ(j["terms_used"].get<std::uint64_t>(), 100000u);
}

TEST(Cli, EvalClosed) {
  CliRun r = run_cli({"eval", "--s", "0", "--q", "0.5", "--method", "closed", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(json::parse(r.out)["value"]["re"].get<double>(), 1.0 / (0.5 - 1.0) - 1.0 / std::log(0.5), 1e-15);
  r = run_cli({"eval", "--s", "-3", "--q", "0.9", "--method", "closed", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["value"]["re"].get<double>(), zeta_q_nonpositive(3, QParam(0.9)));
  EXPECT_EQ(run_cli({"eval", "--s", "0.5", "--q", "0.9", "--method", "closed"}).code, kUsage);
}

TEST(Cli, EvalOtherMethods) {
  const double ref = zeta_q(2.0, QParam(0.5)).value.real();
  for (const char* m : {"direct", "em-qform"}) {
    const CliRun r = run_cli({"eval", "--s", "2", "--q", "0.5", "--method", m, "--json"});
    ASSERT_EQ(r.code, 0) << m << r.err;
    EXPECT_NEAR(json::parse(r.out)["value"]["re"].get<double>(), ref, 1e-12) << m;
  }
  // t = s - 1 - offset
  const CliRun r = run_cli({"eval", "--s", "2", "--q", "0.5", "--t-offset", "-1", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const double expected = f_q_direct(2.0, 2.0, QParam(0.5), {}).value.real();
  EXPECT_NEAR(json::parse(r.out)["value"]["re"].get<double>(), expected, 1e-13);
}

TEST(Cli, CsvColumns) {
  const CliRun r = run_cli({"eval", "--s", "2", "--q", "0.5", "--csv"});
  ASSERT_EQ(r.code, 0);
  std::istringstream lines(r.out);
  std::string header, row;
  std::getline(lines, header);
  std::getline(lines, row);
  EXPECT_EQ(header, "s_re,s_im,q,method,terms,value_re,value_im,err,time_ms");
  EXPECT_EQ(std::count(row.begin(), row.end(), ','), 8);
  EXPECT_EQ(row.rfind("2,0,0.5,continued,", 0), 0u) << row;
}

TEST(Cli, ExitCodes) {
  CliRun r = run_cli({"eval", "--s", "1", "--q", "0.5"});
  EXPECT_EQ(r.code, kPole);
  const json e = json::parse(r.err);
  EXPECT_EQ(e["error"], "pole");
  EXPECT_EQ(e["pole"]["a"], 1);
  EXPECT_EQ(e["pole"]["b"], 0);
  EXPECT_EQ(e["pole"]["kind"], "s-lattice");

  r = run_cli({"eval", "--s", "2", "--q", "0.5", "--terms", "1", "--method", "direct", "--tol", "1e-15"});
  EXPECT_EQ(r.code, 0);
  r = run_cli({"eval", "--s", "2", "--q", "0.5", "--method", "direct", "--t-offset", "1"});
  EXPECT_EQ(r.code, kUsage);  // Re t <= 0 outside the defining series
  EXPECT_EQ(run_cli({"eval", "--s", "1+2", "--q", "0.5"}).code, kUsage);
  EXPECT_EQ(run_cli({"eval", "--s", "2", "--q", "1.5"}).code, kUsage);
  EXPECT_EQ(run_cli({"eval", "--s", "2"}).code, kUsage);
  EXPECT_EQ(run_cli({"eval", "--s", "2", "--q", "0.5", "--tol", "1e-20"}).code, kUsage);
  EXPECT_EQ(run_cli({"nonsense"}).code, kUsage);
  EXPECT_EQ(run_cli({"verify", "--suite", "bogus"}).code, kUsage);
  EXPECT_EQ(json::parse(run_cli({"eval", "--s", "2", "--q", "1.5"}).err)["error"], "usage");
}

TEST(Cli, NonConvergenceExitCode) {
  // t = 1e-10: the defining series would need ~1e11 terms, past the cap
  const CliRun r = run_cli({"eval", "--s", "1.0000000001", "--q", "0.5", "--method", "direct"});
  EXPECT_EQ(r.code, kNoConvergence);
  EXPECT_EQ(json::parse(r.err)["error"], "non-convergence");
}

TEST(Cli, SweepExtrapolatesZetaTwo) {
  const CliRun r = run_cli({"sweep", "--s", "2", "--q-grid", "0.9,0.99,0.999", "--extrapolate", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::vector<json> rows;
  for (std::string line; std::getline(lines, line);) rows.push_back(json::parse(line));
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0]["request"]["q"].get<double>(), 0.9);
  EXPECT_EQ(rows[2]["request"]["q"].get<double>(), 0.999);
  EXPECT_NEAR(rows[3]["limit"]["re"].get<double>(), M_PI * M_PI / 6.0, 1e-6);
}

TEST(Cli, SweepDefaultGridAtMinusOne) {
  const CliRun r = run_cli({"sweep", "--s", "-1", "--extrapolate", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  json last;
  for (std::string line; std::getline(lines, line);) last = json::parse(line);
  EXPECT_NEAR(last["limit"]["re"].get<double>(), -1.0 / 12.0, 1e-8);
}

TEST(Cli, SweepNearPoleRecordsWarnings) {
  // q chosen so that 1 + delta sits at 1 + 14.1347i, half a unit from s
  const double q_near = std::exp(-2.0 * M_PI / 14.1347);
  const std::string grid = std::to_string(q_near) + ",0.9";
  CliRun r = run_cli({"sweep", "--s", "0.5+14.1347i", "--q-grid", grid, "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string first;
  std::getline(lines, first);
  const json j = json::parse(first);
  ASSERT_FALSE(j["pole_warnings"].empty());
  // 0 + delta and 1 + delta are both half a unit away
  EXPECT_NEAR(j["pole_warnings"][0]["distance"].get<double>(), 0.5, 1e-4);
  EXPECT_EQ(j["pole_warnings"][0]["b"].get<int>(), -1);  // delta points down: log q < 0

  // a grid point exactly on the pole lattice is recorded and the sweep goes on
  const QParam q(0.5);
  r = run_cli({"sweep", "--s", "1", "--q-grid", "0.5,0.6", "--json"});
  ASSERT_EQ(r.code, 0);
  std::istringstream l2(r.out);
  std::getline(l2, first);
  const json bad = json::parse(first);
  EXPECT_TRUE(bad["value"].is_null());
  EXPECT_FALSE(bad["pole_warnings"].empty());
  EXPECT_NE(bad["error"].get<std::string>().find("pole"), std::string::npos);
}

TEST(Cli, SweepIsDeterministic) {
  const std::vector<std::string> args{"sweep", "--s", "0.5+1i", "--q-grid", "0.5,0.7,0.9,0.95", "--extrapolate",
                                      "--json"};
  const CliRun a = run_cli(args);
  const CliRun b = run_cli(args);
  std::istringstream la(a.out), lb(b.out);
  std::string x, y;
  while (std::getline(la, x)) {
    ASSERT_TRUE(static_cast<bool>(std::getline(lb, y)));
    EXPECT_EQ(strip_time(json::parse(x)).dump(), strip_time(json::parse(y)).dump());
  }
}

TEST(Cli, ReproduceSingle) {
  const CliRun r = run_cli({"reproduce", "zhalf-1e5", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["accumulator"], "double-double");
  EXPECT_EQ(j["other_accumulator"], "standard");
  EXPECT_TRUE(j["match"].get<bool>());
  EXPECT_EQ(j["terms_summed"].get<std::uint64_t>(), 100001u);
  EXPECT_EQ(run_cli({"reproduce", "nope"}).code, kUsage);
}

TEST(Cli, Bernoulli) {
  CliRun r = run_cli({"bern", "--m", "4"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "B_0 = 1\nB_1 = 1/2\nB_2 = 1/6\nB_3 = 0\nB_4 = -1/30\n");
  r = run_cli({"qbern", "--q", "0.5", "--m", "2", "--json"});
  ASSERT_EQ(r.code, 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_NEAR(json::parse(line)["value"].get<double>(), residue_at_one(QParam(0.5)), 1e-16);
}

TEST(Cli, VerifyEmSuite) {
  const CliRun r = run_cli({"verify", "--suite", "em"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("PASS [em]"), std::string::npos);
  // an impossible threshold turns every check into a failure
  EXPECT_EQ(run_cli({"verify", "--suite", "em", "--tol", "-1"}).code, kVerifyFailed);
}
