#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include "khrank/dataset.hpp"

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run(const std::string& args, const std::string& env = {}) {
  const std::string cmd = env + (env.empty() ? "" : " ") + KHRANK_CLI_PATH + " " + args + " 2>&1";
  CliRun r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

nlohmann::json json_of(const CliRun& r) { return nlohmann::json::parse(r.out); }

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("khrank_cli_" + std::to_string(::getpid()) + "_" + name);
}

}  // namespace

TEST(Cli, KhExamples) {
  CliRun r = run("--json kh name:L4a1");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(json_of(r)["total"], 8);

  r = run("--json kh axis:2:1");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(json_of(r)["total"], 8);

  r = run("--json kh pd:O");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(json_of(r)["total"], 2);

  r = run("kh name:3_1 --reduced");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("total: 6  reduced_total: 3"), std::string::npos) << r.out;

  r = run("--json kh 'braid:2:1 1 1' --mirror");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(json_of(r)["total"], 6);
}

TEST(Cli, BurauAndAlex) {
  CliRun r = run("burau 2:1");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out, "[[-t]]\n");

  r = run("--json alex '3:1 2'");
  ASSERT_EQ(r.code, 0) << r.out;
  const auto j = json_of(r);
  EXPECT_EQ(j["delta"], "x^2+x*y+y^2");
  EXPECT_EQ(j["torres"], true);
  EXPECT_EQ(j["stat"], 12);

  EXPECT_EQ(run("alex 3:1").code, 2);
}

TEST(Cli, Classify) {
  CliRun r = run("--json classify name:L6n1");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(json_of(r)["class"], "L6n1-class");
  r = run("classify name:4_1");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("above-threshold"), std::string::npos);
}

TEST(Cli, VerifyTableExitCodes) {
  CliRun r = run("verify-table --builtin --jobs 2");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("all checks pass"), std::string::npos);

  khrank::Dataset bad = khrank::builtin_dataset();
  for (auto& e : bad)
    if (e.name == "L4a1") e.expected_total = 10;
  const auto path = temp_file("bad.jsonl");
  {
    std::ofstream out(path);
    khrank::write_dataset(out, bad);
  }
  r = run("--json verify-table " + path.string());
  EXPECT_EQ(r.code, 1) << r.out;
  bool saw = false;
  const nlohmann::json report = json_of(r);
  for (const auto& c : report["checks"])
    if (c["status"] == "FAIL") saw = saw || c["counterexamples"] == nlohmann::json::array({"L4a1"});
  EXPECT_TRUE(saw) << r.out;

  const auto good = temp_file("good.jsonl");
  EXPECT_EQ(run("dump-table > " + good.string()).code, 0);
  EXPECT_EQ(run("verify-table " + good.string()).code, 0);
  std::filesystem::remove(path);
  std::filesystem::remove(good);
}

TEST(Cli, UsageAndParseErrors) {
  EXPECT_EQ(run("kh 'pd:X(1,2,3)'").code, 2);
  EXPECT_EQ(run("kh name:no-such-link").code, 2);
  EXPECT_EQ(run("kh").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("verify-table /nonexistent/table.jsonl").code, 2);
}

TEST(Cli, MaxCrossings) {
  CliRun r = run("--max-crossings 2 kh name:3_1");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("--max-crossings"), std::string::npos) << r.out;
  EXPECT_EQ(run("kh name:3_1", "KHRANK_MAX_CROSSINGS=2").code, 2);
  EXPECT_EQ(run("--max-crossings 3 kh name:3_1", "KHRANK_MAX_CROSSINGS=2").code, 0);
}
