#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "dualramsey/dualramsey.h"
#include "json.hpp"

using nlohmann::json;

namespace {

class Context {
 public:
  Context() : ctx_(dr_context_new()) {}
  ~Context() { dr_context_free(ctx_); }
  Context(const Context&) = delete;
  Context& operator=(const Context&) = delete;

  dr_status call(dr_status (*op)(dr_context*, const char*), const json& request) {
    return op(ctx_, request.dump().c_str());
  }
  json result() const { return json::parse(dr_result(ctx_)); }
  std::string error() const { return dr_last_error(ctx_); }
  dr_context* get() { return ctx_; }

 private:
  dr_context* ctx_;
};

struct CliRun {
  int exit = -1;
  std::string out;
};

CliRun cli(const std::string& args) {
  char path[] = "/tmp/dr_cli_XXXXXX";
  const int fd = mkstemp(path);
  if (fd >= 0) close(fd);
  const std::string command = std::string(DR_CLI_PATH) + " " + args + " >" + path + " 2>/dev/null";
  const int status = std::system(command.c_str());
  CliRun r;
  r.exit = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  std::remove(path);
  return r;
}

}  // namespace

// ---------------------------------------------------------------- C API

TEST(CApi, StatusNamesAndVersion) {
  EXPECT_STREQ(dr_status_name(DR_OK), "Ok");
  EXPECT_NE(std::string(dr_status_name(DR_E_NO_COLLISION)), "");
  EXPECT_NE(std::string(dr_version()), "");
}

TEST(CApi, NullArgumentsAreRejected) {
  EXPECT_EQ(dr_enumerate(nullptr, "{}"), DR_E_INVALID_ARGUMENT);
  Context ctx;
  EXPECT_EQ(dr_enumerate(ctx.get(), nullptr), DR_E_INVALID_ARGUMENT);
  EXPECT_NE(ctx.error(), "");
}

TEST(CApi, MalformedJsonIsAParseError) {
  Context ctx;
  EXPECT_EQ(dr_bounds(ctx.get(), "{not json"), DR_E_PARSE);
  EXPECT_EQ(ctx.call(dr_bounds, json{{"op", "f1"}}), DR_E_INVALID_ARGUMENT);
}

TEST(CApi, EnumerateCompleteSkew) {
  Context ctx;
  ASSERT_EQ(ctx.call(dr_enumerate, json{{"kind", "complete-skew"}, {"shape", "2^<2"}, {"k", 2}}), DR_OK) << ctx.error();
  const json res = ctx.result();
  EXPECT_EQ(res.at("count"), 1);
  EXPECT_EQ(ctx.error(), "");
  ASSERT_EQ(ctx.call(dr_enumerate, json{{"kind", "complete-skew"}, {"shape", "2^<4"}, {"k", 2}}), DR_OK);
  EXPECT_GT(ctx.result().at("count").get<int>(), 1);
}

TEST(CApi, BoundsReturnDecimalStrings) {
  Context ctx;
  ASSERT_EQ(ctx.call(dr_bounds, json{{"op", "f1"}, {"k", "2"}, {"kappa", "1"}, {"i", "2"}, {"m", "2"}, {"r", "2"}}), DR_OK);
  EXPECT_EQ(ctx.result().at("value"), "18446744073709551620");
  ASSERT_EQ(ctx.call(dr_bounds, json{{"op", "schedule"}, {"k", "2"}, {"kappa", "1"}, {"m", "1"}, {"r", "2"}}), DR_OK);
  EXPECT_EQ(ctx.result().at("n0"), "1");
  const json ladder = {{"op", "ladder"}, {"quantity", "h1"}, {"args", {"1", "0", "2", "2", "1", "2"}}, {"oracle", {{"HJ(2,2)", "2"}}}};
  ASSERT_EQ(ctx.call(dr_bounds, ladder), DR_OK) << ctx.error();
  EXPECT_EQ(ctx.result().at("value"), "2");
  EXPECT_EQ(ctx.result().at("replay_matches"), true);
  json missing = ladder;
  missing.erase("oracle");
  EXPECT_EQ(ctx.call(dr_bounds, missing), DR_E_MISSING_ORACLE);
  EXPECT_EQ(ctx.call(dr_bounds, json{{"op", "f1"}, {"k", "2"}, {"kappa", "1"}, {"i", "3"}, {"m", "3"}, {"r", "2"}}),
            DR_E_OVERFLOW);
}

TEST(CApi, ShelahReportsNoCollision) {
  Context ctx;
  json req = {{"mode", "L"}, {"k", 2}, {"kappa", 1}, {"N", 4}, {"r", 2}, {"schedule", "user"}, {"p", {2, 2}}};
  ASSERT_EQ(ctx.call(dr_shelah, req), DR_OK) << ctx.error();
  EXPECT_EQ(ctx.result().at("insensitive").at("holds"), true);
  EXPECT_EQ(ctx.result().at("compatible"), true);
  req["coloring"] = {{"r", 2}, {"type", "table"}, {"values", json::array()}};
  // An injective table on Λ^3 × [3]: 24 entries, 24 colors.
  json values = json::array();
  for (int i = 0; i < 24; ++i) values.push_back(i);
  req["N"] = 3;
  req["r"] = 24;
  req["p"] = {1, 1};
  req["coloring"] = {{"r", 24}, {"type", "table"}, {"values", values}};
  EXPECT_EQ(ctx.call(dr_shelah, req), DR_E_NO_COLLISION) << ctx.error();
  req["coloring"]["r"] = 3;
  EXPECT_NE(ctx.call(dr_shelah, req), DR_OK);
}

TEST(CApi, SearchAndCertificateCheck) {
  Context ctx;
  const json inst = {{"statement", "HJ"}, {"k", 2}, {"r", 2}, {"n", 2}};
  const json rule = {{"r", 2}, {"type", "rule"}, {"rule", "projection"}, {"parameter", 0}, {"seed", 0}};
  ASSERT_EQ(ctx.call(dr_search, json{{"instance", inst}, {"coloring", rule}}), DR_OK) << ctx.error();
  const json res = ctx.result();
  EXPECT_EQ(res.at("found"), true);
  EXPECT_EQ(res.at("certificate").at("witness").at("object").at("entries"), json({"0", "v0"}));
  ASSERT_EQ(ctx.call(dr_check, json{{"checker", "certificate"}, {"certificate", res.at("certificate")}}), DR_OK);
  EXPECT_EQ(ctx.result().at("holds"), true);
}

TEST(CApi, VerifyWithProgress) {
  Context ctx;
  int calls = 0;
  dr_set_progress(
      ctx.get(), [](const char* progress, void* user) {
        ++*static_cast<int*>(user);
        EXPECT_TRUE(json::parse(progress).contains("next_unit"));
      },
      &calls);
  const json req = {{"instance", {{"statement", "HJ"}, {"k", 2}, {"r", 2}}}, {"n_max", 3}};
  ASSERT_EQ(ctx.call(dr_verify, req), DR_OK) << ctx.error();
  const json cert = ctx.result().at("certificate");
  EXPECT_EQ(cert.at("value"), 2);
  EXPECT_EQ(cert.at("status"), "found");
  EXPECT_GT(calls, 0);
  json bad = req;
  bad["budget"] = {{"threads", 0}};
  EXPECT_EQ(ctx.call(dr_verify, bad), DR_E_INVALID_ARGUMENT);
}

// ---------------------------------------------------------------- command line

TEST(Cli, BoundsF1) {
  const CliRun r = cli("bounds f1 --k 2 --kappa 1 --i 1 --m 1 --r 2 --format text");
  EXPECT_EQ(r.exit, 0);
  EXPECT_EQ(r.out, "1\n");
}

TEST(Cli, EnumerateCompleteSkew) {
  const CliRun r = cli("--format json enumerate --kind complete-skew --shape '2^<2' --k 2");
  EXPECT_EQ(r.exit, 0);
  EXPECT_EQ(json::parse(r.out).at("count"), 1);
}

TEST(Cli, VerifyHalesJewett) {
  const CliRun r = cli("--format json verify --statement HJ --k 2 --r 2 --n-max 4");
  ASSERT_EQ(r.exit, 0);
  const json cert = json::parse(r.out);
  EXPECT_EQ(cert.at("value"), 2);
  const CliRun plain = cli("verify --statement HJ --k 2 --r 2 --n-max 4 --no-reduce --format text");
  EXPECT_EQ(plain.exit, 0);
  EXPECT_NE(plain.out.find("HJ = 2"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli("").exit, 2);
  EXPECT_EQ(cli("bounds f1 --k 2").exit, 2);
  EXPECT_EQ(cli("search --statement HJ --k 2 --r 2 --N 1 --rule projection --param 0").exit, 1);
  EXPECT_EQ(cli("verify --statement HJ --k 2 --r 2 --n-max 4 --max-colorings 4").exit, 3);
  EXPECT_EQ(cli("search --statement TGR --k 3 --m 2 --n 3 --r 2").exit, 2);
}

// A certificate written by search re-validates through check.
TEST(Cli, CertificateRoundTrip) {
  char path[] = "/tmp/dr_cert_XXXXXX";
  const int fd = mkstemp(path);
  ASSERT_GE(fd, 0);
  close(fd);
  const CliRun found = cli(std::string("search --statement TGR --k 1 --m 2 --n 3 --r 2 --rule hash --seed 4 -o ") + path);
  ASSERT_TRUE(found.exit == 0 || found.exit == 1);
  const CliRun check = cli(std::string("--format json check --certificate ") + path);
  EXPECT_EQ(check.exit, 0);
  EXPECT_EQ(json::parse(check.out).at("holds"), true);
  std::remove(path);
}

TEST(Cli, IdenticalConfigsGiveIdenticalArtifacts) {
  const std::string args = "verify --statement TGR --k 1 --m 1 --b 2 --ell 2 --r 2 --n-min 2 --n-max 2";
  EXPECT_EQ(cli(args).out, cli(args + " --threads 4").out);
  const std::string sh = "shelah --mode L --schedule user --p 3,3 --k 2 --kappa 1 --N 8 --r 2 --rule projection --param 2";
  const CliRun a = cli(sh), b = cli(sh + " --threads 4");
  EXPECT_EQ(a.exit, 0);
  EXPECT_EQ(a.out, b.out);
}
