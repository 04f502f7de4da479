#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>

#include "ordmatch/generators.h"
#include "ordmatch/json_io.h"
#include "ordmatch/reproduce.h"
#include "ordmatch/thin.h"

namespace ordmatch {
namespace {

namespace fs = std::filesystem;

struct CommandResult {
  int status = -1;
  std::string out;
};

CommandResult run_cli(const std::string& args) {
  const std::string cmd = std::string(ORDMATCH_CLI_PATH) + " " + args + " 2>/dev/null";
  CommandResult r;
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  if (!pipe) return r;
  std::array<char, 4096> buf;
  while (std::fgets(buf.data(), buf.size(), pipe.get())) r.out += buf.data();
  const int raw = pclose(pipe.release());
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

class ScratchDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("ordmatch_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

TEST(JsonIoTest, RationalsStayExact) {
  EXPECT_EQ(to_json(FractionalMatching::uniform(3))["p"][0][0], "1/3");
  EXPECT_EQ(rational_from_json(Json("1/3")), Rational(1, 3));
  EXPECT_EQ(rational_from_json(Json(4)), Rational(4));
  EXPECT_THROW(rational_from_json(Json(0.5)), std::exception);
}

TEST(JsonIoTest, RoundTrips) {
  const auto [inst, d] = euclidean_random(4, 2, 5);
  EXPECT_EQ(instance_from_json(to_json(inst)), inst);
  EXPECT_EQ(metric_from_json(to_json(d)), d);
  const Matching m({2, 0, 3, 1});
  EXPECT_EQ(matching_from_json(to_json(m)), m);
  Matching partial(3);
  partial.match(1, 2);
  EXPECT_EQ(matching_from_json(to_json(partial)), partial);
  const FractionalMatching p = random_bvn_mixture(4, 3, 2);
  EXPECT_EQ(fractional_from_json(to_json(p)), p);
  // Text round trip is byte-stable.
  const std::string text = to_json(p).dump();
  EXPECT_EQ(to_json(fractional_from_json(Json::parse(text))).dump(), text);
}

TEST(JsonIoTest, MatchingWithoutSizeUsesCallerSize) {
  const Json j = Json::parse(R"({"assign": {"0": 1, "1": 0}})");
  EXPECT_EQ(matching_from_json(j, 3).n(), 3);
  EXPECT_EQ(matching_from_json(j, 3).item_of(0), 1);
}

TEST(JsonIoTest, RejectsMalformedDocuments) {
  EXPECT_THROW(instance_from_json(Json::parse(R"({"n": 2, "prefs": [[0, 0], [1, 0]]})")), InvalidInput);
  EXPECT_THROW(metric_from_json(Json::parse(R"({"n": 1, "dist": [["0/1", "1/1"], ["2/1", "0/1"]]})")),
               InvalidInput);
}

TEST(ReproduceTest, ShippedConfigMatchesDefaults) {
  const Json shipped = read_json_file(std::string(ORDMATCH_SOURCE_DIR) + "/config/reproduce.json");
  EXPECT_EQ(shipped, default_reproduce_config());
  for (const auto& id : experiment_ids()) EXPECT_TRUE(shipped.contains(id)) << id;
}

TEST(ReproduceTest, ParamsOverlayAndValidation) {
  const Json p = experiment_params("sd-line", Json::object(), Json{{"n", 3}});
  EXPECT_EQ(p["n"], 3);
  EXPECT_EQ(p["oracle_max_n"], 5);
  EXPECT_THROW(experiment_params("nope", Json::object(), Json::object()), InvalidInput);
  EXPECT_THROW(experiment_params("sd-line", Json::object(), Json{{"bogus", 1}}), InvalidInput);
}

TEST(ReproduceTest, SdLineFive) {
  const auto params = experiment_params("sd-line", default_reproduce_config(), Json{{"n", 5}});
  const ReproductionRecord r = run_experiment("sd-line", params);
  EXPECT_EQ(r.measured, "31/1");
  EXPECT_EQ(r.bound, "31/1");
  EXPECT_TRUE(r.pass);
}

TEST(ReproduceTest, ThinCycleTwo) {
  const auto params = experiment_params("thin-cycle", default_reproduce_config(), Json{{"k", 2}});
  const ReproductionRecord r = run_experiment("thin-cycle", params);
  EXPECT_EQ(r.measured, "2/1");
  EXPECT_TRUE(r.pass);
}

TEST(ReproduceTest, RecordsRoundTripAndRerun) {
  const auto params = experiment_params("tree-frac", default_reproduce_config(), Json::object());
  const ReproductionRecord r = run_experiment("tree-frac", params);
  EXPECT_EQ(record_from_json(record_to_json(r)), r);
  EXPECT_EQ(record_from_json(Json::parse(record_to_json(r).dump())), r);
  // Re-running from the serialized parameters reproduces the values.
  const ReproductionRecord again = run_experiment("tree-frac", record_from_json(record_to_json(r)).params);
  EXPECT_EQ(again.measured, r.measured);
  EXPECT_EQ(again.details, r.details);
}

TEST(ReproduceTest, CsvLayout) {
  EXPECT_EQ(records_to_csv({}), "experiment,params,measured,bound,pass,wall_ms\n");
  ReproductionRecord r;
  r.experiment = "x";
  r.params = Json{{"q", "1/3"}};
  r.measured = "1/3";
  r.bound = "1/1";
  r.pass = true;
  r.wall_ms = 1.5;
  EXPECT_EQ(records_to_csv({r}),
            "experiment,params,measured,bound,pass,wall_ms\n"
            "x,\"{\"\"q\"\":\"\"1/3\"\"}\",1/3,1/1,true,1.500\n");
}

TEST_F(ScratchDir, AtomicWriteReplacesFile) {
  const std::string f = path("out.json");
  write_file_atomic(f, "first");
  write_file_atomic(f, "second");
  std::ifstream in(f);
  std::string s;
  std::getline(in, s);
  EXPECT_EQ(s, "second");
  EXPECT_FALSE(fs::exists(f + ".tmp"));
  EXPECT_THROW(write_file_atomic(path("missing/dir/x.json"), "x"), std::exception);
}

TEST_F(ScratchDir, GenRunDistortionPipeline) {
  ASSERT_EQ(run_cli("gen --family line --n 3 --out " + path("inst.json") + " --metric-out " +
                    path("metric.json")).status, 0);
  ASSERT_EQ(run_cli("run --mech sd --inst " + path("inst.json") + " --out " + path("m.json")).status, 0);
  const CommandResult dist = run_cli("distortion --inst " + path("inst.json") + " --match " + path("m.json"));
  ASSERT_EQ(dist.status, 0);
  EXPECT_EQ(Json::parse(dist.out)["value"], "7/1");
  const CommandResult known = run_cli("distortion --inst " + path("inst.json") + " --match " +
                                      path("m.json") + " --metric " + path("metric.json"));
  ASSERT_EQ(known.status, 0);
}

TEST_F(ScratchDir, RandomizedRunsNeedSeed) {
  ASSERT_EQ(run_cli("gen --family tree --k 2 --out " + path("inst.json")).status, 0);
  EXPECT_NE(run_cli("run --mech rsd --inst " + path("inst.json")).status, 0);
  const CommandResult a = run_cli("run --mech rsd --seed 4 --inst " + path("inst.json"));
  const CommandResult b = run_cli("run --mech rsd --seed 4 --inst " + path("inst.json"));
  EXPECT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST_F(ScratchDir, ThinSearchExitCodes) {
  const CycleCounterexample c = cycle_counterexample(1, Rational(1, 2), 1);
  write_file_atomic(path("p.json"), to_json(c.p).dump());
  EXPECT_EQ(run_cli("thin-search --p " + path("p.json") + " --beta 2").status, 0);
  EXPECT_EQ(run_cli("thin-search --p " + path("p.json") + " --beta 3/2").status, 3);
  EXPECT_EQ(run_cli("thin-search --p " + path("missing.json") + " --beta 2").status, 2);
}

TEST_F(ScratchDir, ReproduceAndExport) {
  const CommandResult r = run_cli("reproduce sd-line --n 5 --out " + path("rec.json") + " --csv " + path("rec.csv"));
  EXPECT_EQ(r.status, 0);
  const Json recs = read_json_file(path("rec.json"));
  ASSERT_TRUE(recs.is_array());
  EXPECT_EQ(recs[0]["measured"], "31/1");
  const CommandResult csv = run_cli("export --in " + path("rec.json") + " --format csv");
  EXPECT_EQ(csv.status, 0);
  EXPECT_EQ(csv.out.rfind("experiment,params,measured,bound,pass,wall_ms\n", 0), 0u);
  EXPECT_NE(run_cli("reproduce no-such-experiment").status, 0);
  // The Boston growth window is not met, so the run reports failure.
  EXPECT_EQ(run_cli("reproduce boston").status, 1);
}

}  // namespace
}  // namespace ordmatch
