#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

using namespace rank1lab;

namespace {

const std::string kCli = RANK1LAB_CLI;
const std::filesystem::path kConfigs = std::filesystem::path(RANK1LAB_SOURCE_DIR) / "configs";

int run(const std::string& args) {
  const std::string cmd = "\"" + kCli + "\" " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string cfg(const std::string& name) { return "\"" + (kConfigs / (name + ".cfg")).string() + "\""; }

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST(Registry, AllEntriesMatch) {
  const auto reg = builtin_registry();
  EXPECT_EQ(reg.size(), 9u);
  for (const auto& o : run_registry(reg)) {
    EXPECT_TRUE(o.matches()) << o.name;
    for (const auto& x : o.outcomes) EXPECT_TRUE(x.mismatch.empty()) << o.name << ": " << x.mismatch;
  }
}

TEST(Registry, CorruptedExpectationIsReported) {
  auto entry = *find_entry(builtin_registry(), "chacon3");
  entry.expectations.front().expected = Value::fails;
  const auto out = run_entry(entry);
  EXPECT_FALSE(out.matches());
  EXPECT_NE(out.outcomes.front().mismatch.find("expected fails"), std::string::npos);

  auto tp = *find_entry(builtin_registry(), "two_point");
  for (auto& ex : tp.expectations)
    if (ex.line_generator) ex.line_generator = BigInt(4);
  const auto out2 = run_entry(tp);
  EXPECT_FALSE(out2.matches());
  bool mentions_d = false;
  for (const auto& x : out2.outcomes) mentions_d |= x.mismatch.find("expected D = 4") != std::string::npos;
  EXPECT_TRUE(mentions_d);
}

TEST(Registry, ReportsAreByteStable) {
  const auto reg = builtin_registry();
  const auto a = to_json(run_registry(reg).front()).dump(2);
  const auto b = to_json(run_registry(reg).front()).dump(2);
  EXPECT_EQ(a, b);
  const auto c = find_entry(reg, "two_point")->construction;
  const auto r1 = make_report(c.name(), "check", Json::object(), to_json(check_pwm(c))).dump();
  const auto r2 = make_report(c.name(), "check", Json::object(), to_json(check_pwm(c))).dump();
  EXPECT_EQ(r1, r2);
  const auto parsed = Json::parse(r1);
  EXPECT_EQ(parsed["tool"], "rank1lab");
  EXPECT_EQ(parsed["results"]["value"], "fails");
}

TEST(Cli, ExitCodesFollowVerdicts) {
  EXPECT_EQ(run("check " + cfg("chacon3") + " --properties pwm"), 0);
  EXPECT_EQ(run("check " + cfg("not_t2_ergodic")), 1);
  EXPECT_EQ(run("check " + cfg("two_point") + " --properties ergodic,pwm,total-ergodicity"), 1);
  EXPECT_EQ(run("check " + cfg("countable_chacon4")), 2);
  EXPECT_EQ(run("check " + cfg("chacon2") + " --properties condition2-simple"), 0);
  EXPECT_EQ(run("products staircase-2pow2pow --d 2 --nmax 6"), 0);
  EXPECT_EQ(run("products --heights 3 --k 1,2"), 0);
  EXPECT_EQ(run("examples run-all"), 0);
  EXPECT_EQ(run("examples list"), 0);
}

TEST(Cli, UsageAndParseErrorsExitThree) {
  const auto bad = std::filesystem::temp_directory_path() / "rank1lab_bad.cfg";
  std::ofstream(bad) << "name = bad\n[gamma]\na = 2 | 0\n[schedule]\nconstant: a\n";
  EXPECT_EQ(run("check \"" + bad.string() + "\""), 3);
  EXPECT_EQ(run("check \"" + (kConfigs / "nope.cfg").string() + "\""), 3);
  EXPECT_EQ(run("check " + cfg("chacon2") + " --properties nonsense"), 3);
  EXPECT_EQ(run("simulate " + cfg("chacon2") + " measure --i 9:0:0 --j 1:0:0"), 3);
  EXPECT_EQ(run("frobnicate"), 3);
  std::filesystem::remove(bad);
}

TEST(Cli, SimulateAndReportFile) {
  const auto path = std::filesystem::temp_directory_path() / "rank1lab_report.json";
  std::filesystem::remove(path);
  EXPECT_EQ(run("simulate " + cfg("two_point") + " measure --i \"1:(0):2\" --j \"1:(0):1\" --n-min 2 --n-max 20 --step 2 -M 8 --report \"" +
                path.string() + "\""),
            0);
  const auto report = Json::parse(slurp(path));
  EXPECT_EQ(report["operation"], "simulate");
  EXPECT_EQ(report["results"]["positive_count"], 0);
  EXPECT_EQ(report["results"]["rows"].size(), 10u);
  for (const auto& row : report["results"]["rows"]) EXPECT_EQ(row["estimate"]["resolved"]["exact"], "0");
  std::filesystem::remove(path);
}
