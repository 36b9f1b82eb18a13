#include <filesystem>
#include <fstream>
#include <set>
#include <thread>

#include "doctest.h"
#include "shacalc/builtins.hpp"
#include "shacalc/cache.hpp"
#include "shacalc/error.hpp"
#include "shacalc/runner.hpp"
#include "shacalc/scenario.hpp"

using namespace shacalc;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const char* kTiny = R"({"version": "v1", "name": "tiny",
  "group": {"degree": 2, "generators": [[1, 0]]},
  "tasks": [{"kind": "cohomology_probe", "lattice": {"type": "trivial", "rank": 1}, "degree": 2,
             "expect": {"invariant_factors": [2]}}]})";

RunOptions quiet() {
  RunOptions o;
  o.timing = false;
  return o;
}

fs::path temp_dir(const std::string& tag) {
  fs::path p = fs::temp_directory_path() / ("shacalc-test-" + tag + "-" + std::to_string(::getpid()));
  fs::remove_all(p);
  return p;
}

int run_cli(const std::string& args) {
  int status = std::system((std::string(SHACALC_CLI_PATH) + " " + args + " > /dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

json task(const json& report, const std::string& id) {
  for (const auto& t : report["tasks"])
    if (t["id"] == id) return t;
  FAIL("no task " << id);
  return {};
}

}  // namespace

TEST_CASE("registry") {
  auto list = list_builtins();
  CHECK(list.size() >= 9);
  std::set<std::string> names;
  for (const auto& b : list) {
    CHECK(names.insert(b.name).second);
    CHECK_FALSE(b.description.empty());
    Scenario s = parse_scenario(builtin_scenario(b.name));
    CHECK(s.name == b.name);
    CHECK(s.description == b.description);
  }
  for (const char* need : {"a4-pair", "biquadratic-triple", "s3-disjoint", "example-3-6", "thm31-iso-z2cube", "prop-4-1",
                           "sansuc-biquadratic", "kunyavskii-d4", "example-3-5-iv-hypothesis"})
    CHECK(names.count(need) == 1);
  CHECK_THROWS_AS(builtin_scenario("nope"), Error);
}

TEST_CASE("every builtin passes") {
  for (const auto& b : list_builtins()) {
    RunResult r = run_builtin(b.name, quiet());
    CHECK_MESSAGE(r.exit_code == 0, b.name << "\n" << format_text(r.report));
    CHECK(r.report["all_passed"] == true);
  }
}

TEST_CASE("example reports") {
  RunResult r = run_builtin("example-3-6", quiet());
  json cmp = task(r.report, "compare");
  CHECK(cmp["result"]["sha_T"] == json::array({2}));
  CHECK(cmp["result"]["sha_S"] == json::array());
  RunResult s = run_builtin("s3-disjoint", quiet());
  CHECK(task(s.report, "sha_omega_T")["result"]["invariant_factors"] == json::array());
  CHECK(r.report["engine_version"] == kEngineVersion);
  CHECK(r.report["schema"] == "v1");
}

TEST_CASE("scenario digest is the SHA-256 of the canonical dump") {
  json j = json::parse(kTiny);
  CHECK(scenario_digest(j) == "3ea8025dbb1ee8c54eb648f38968ea732d698150c8137b9b36cbab37f64f75b6");
  RunResult r = run_scenario(j, quiet());
  CHECK(r.exit_code == 0);
  CHECK(r.report["scenario_digest"] == scenario_digest(j));
}

TEST_CASE("exit codes") {
  json j = json::parse(kTiny);
  j["tasks"][0]["expect"]["invariant_factors"] = json::array({3});
  RunResult fail = run_scenario(j, quiet());
  CHECK(fail.exit_code == 1);
  CHECK(fail.report["tasks"][0]["status"] == "failed");

  auto invalid = [](json x) { return run_scenario(x, quiet()).exit_code; };
  json base = json::parse(kTiny);
  json v = base;
  v["version"] = "v2";
  CHECK(invalid(v) == 2);
  v = base;
  v["group"]["generators"] = json::array({json::array({0, 0})});
  CHECK(invalid(v) == 2);
  v = base;
  v["tasks"][0]["kind"] = "mystery";
  CHECK(invalid(v) == 2);
  v = base;
  v["tasks"][0]["lattice"] = {{"type", "permutation"}, {"subgroup", "H9"}};
  CHECK(invalid(v) == 2);
  v = base;
  v["tasks"][0]["degree"] = 7;
  CHECK(invalid(v) == 2);
  v = base;
  v.erase("tasks");
  CHECK(invalid(v) == 2);
  CHECK(invalid(json::array()) == 2);

  // Budget overruns are task failures, not invalid input.
  json big = json::parse(kTiny);
  big["group"] = {{"degree", 4}, {"generators", {{{0, 1, 2, 3}}, {{1, 3}}}}};
  big["subgroups"] = {{"1x", json::array()}};
  big["tasks"][0]["lattice"] = {{"type", "permutation"}, {"subgroup", "1"}};
  big["tasks"][0]["degree"] = 3;
  RunOptions tight = quiet();
  tight.budget = 100;
  RunResult rb = run_scenario(big, tight);
  CHECK(rb.exit_code == 1);
  CHECK(rb.report["tasks"][0]["error"].get<std::string>().find("BudgetExceeded") == 0);
  big["tasks"][0]["expect"] = {{"error", "BudgetExceeded"}};
  CHECK(run_scenario(big, tight).exit_code == 0);
}

TEST_CASE("files and the command-line tool") {
  fs::path dir = temp_dir("files");
  fs::create_directories(dir);
  {
    std::ofstream(dir / "bad.json") << "{\"version\": \"v1\", ";
    std::ofstream(dir / "tiny.json") << kTiny;
  }
  CHECK(run_scenario_file((dir / "bad.json").string(), quiet()).exit_code == 2);
  CHECK(run_scenario_file((dir / "missing.json").string(), quiet()).exit_code == 2);
  CHECK(run_scenario_file((dir / "tiny.json").string(), quiet()).exit_code == 0);
  CHECK(run_cli("run " + (dir / "bad.json").string()) == 2);
  CHECK(run_cli("run " + (dir / "tiny.json").string()) == 0);
  CHECK(run_cli("run example-3-6 --threads 2 --out " + (dir / "r.json").string()) == 0);
  CHECK(run_cli("list") == 0);
  CHECK(run_cli("run") == 2);
  CHECK(run_cli("run no-such-scenario") == 2);
  std::ifstream in(dir / "r.json");
  json r = json::parse(in);
  CHECK(r["scenario"] == "example-3-6");
  CHECK(r["all_passed"] == true);
  fs::remove_all(dir);
}

TEST_CASE("reports do not depend on the thread count") {
  for (const char* name : {"a4-pair", "example-3-6", "biquadratic-triple"}) {
    RunOptions one = quiet(), four = quiet();
    four.threads = 4;
    CHECK(run_builtin(name, one).report.dump() == run_builtin(name, four).report.dump());
  }
}

TEST_CASE("cache: cold, hot, deleted and tampered") {
  fs::path dir = temp_dir("cache");
  RunOptions o = quiet();
  o.cache_dir = dir.string();
  std::string plain = run_builtin("a4-pair", quiet()).report.dump();
  std::string cold = run_builtin("a4-pair", o).report.dump();
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(dir)) files += e.path().extension() == ".shcc";
  CHECK(files > 0);
  std::string hot = run_builtin("a4-pair", o).report.dump();
  CHECK(cold == plain);
  CHECK(hot == plain);

  fs::remove_all(dir);
  CHECK(run_builtin("a4-pair", o).report.dump() == plain);

  // Flip one bit in every entry; each is rejected and recomputed.
  for (const auto& e : fs::directory_iterator(dir)) {
    std::fstream f(e.path(), std::ios::in | std::ios::out | std::ios::binary);
    f.seekg(20);
    char c;
    f.get(c);
    f.seekp(20);
    f.put(static_cast<char>(c ^ 1));
  }
  CHECK(run_builtin("a4-pair", o).report.dump() == plain);

  // Direct store checks.
  FileStore store(dir.string());
  GroupPtr g = parse_scenario(builtin_scenario("a4-pair")).group;
  GLattice z = trivial_lattice(g, 1);
  store.save(z, 2, "payload");
  CHECK(store.load(z, 2) == std::optional<std::string>("payload"));
  {
    std::ofstream trunc(store.path_for(z, 2), std::ios::binary | std::ios::trunc);
    trunc << "SHCC";
  }
  CHECK_FALSE(store.load(z, 2).has_value());
  CHECK(store.discarded() == 1);
  CHECK_FALSE(fs::exists(store.path_for(z, 2)));
  CHECK_FALSE(store.load(z, 3).has_value());
  fs::remove_all(dir);
}

TEST_CASE("concurrent runs over a shared cache") {
  fs::path dir = temp_dir("shared");
  RunOptions o = quiet();
  o.cache_dir = dir.string();
  std::string expect = run_builtin("example-3-6", quiet()).report.dump();
  std::vector<std::string> out(4);
  std::vector<std::thread> workers;
  for (int i = 0; i < 4; ++i) workers.emplace_back([&, i] { out[i] = run_builtin("example-3-6", o).report.dump(); });
  for (auto& w : workers) w.join();
  for (const auto& s : out) CHECK(s == expect);
  for (const auto& e : fs::directory_iterator(dir)) CHECK(e.path().extension() == ".shcc");
  fs::remove_all(dir);
}

TEST_CASE("stretch jobs are skipped by default") {
  RunResult r = run_builtin("prop-4-1-global", quiet());
  CHECK(r.exit_code == 0);
  for (const auto& t : r.report["tasks"]) CHECK(t["status"] == "skipped");
}

TEST_CASE("permutation syntax") {
  CHECK(parse_permutation(json::parse("[[0, 1, 2]]"), 4) == Permutation{1, 2, 0, 3});
  CHECK(parse_permutation(json::parse("[1, 2, 0, 3]"), 4) == Permutation{1, 2, 0, 3});
  CHECK(parse_permutation(json::parse("[]"), 3) == Permutation{0, 1, 2});
  CHECK_THROWS_AS(parse_permutation(json::parse("[1, 0]"), 3), Error);
  CHECK_THROWS_AS(parse_permutation(json::parse("[[0, 5]]"), 3), Error);
}
