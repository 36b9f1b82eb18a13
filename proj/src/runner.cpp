#include "shacalc/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

#include "shacalc/arith.hpp"
#include "shacalc/builtins.hpp"
#include "shacalc/cache.hpp"
#include "shacalc/error.hpp"
#include "shacalc/multinorm.hpp"

namespace shacalc {

namespace {

using nlohmann::json;

mpz_class integer_arg(const json& c, const char* key) {
  check(c.contains(key), ErrorCode::ParseError, std::string("arithmetic check without \"") + key + "\"");
  const json& v = c.at(key);
  try {
    if (v.is_number_integer()) return mpz_class(std::to_string(v.get<long long>()));
    if (v.is_string()) return mpz_class(v.get<std::string>());
  } catch (const std::invalid_argument&) {
  }
  fail(ErrorCode::ParseError, std::string("\"") + key + "\" must be an integer");
}

mpq_class rational_value(const json& v) {
  try {
    if (v.is_number_integer()) return mpq_class(std::to_string(v.get<long long>()));
    if (v.is_string()) {
      mpq_class q(v.get<std::string>());
      q.canonicalize();
      return q;
    }
  } catch (const std::invalid_argument&) {
  }
  fail(ErrorCode::ParseError, "expected a rational number");
}

json rational_json(const mpq_class& q) {
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
  return q.get_str();
}

json assertion(const std::string& name, const json& expected, const json& actual) {
  return {{"name", name}, {"expected", expected}, {"actual", actual}, {"passed", expected == actual}};
}

// Runs the "expect" block against a result object.
void expect_keys(const json& task, const json& result, json& assertions) {
  if (!task.contains("expect")) return;
  for (const auto& [key, expected] : task["expect"].items()) {
    if (key == "error") continue;
    json actual = result.contains(key) ? result[key] : json(nullptr);
    assertions.push_back(assertion(key, expected, actual));
  }
}

json sh_json(const ShGroup& sh, const GLattice& m, const std::string& desc, int n) {
  return {{"lattice", desc},
          {"lattice_rank", m.rank()},
          {"degree", n},
          {"invariant_factors", invariants_json(sh.invariant_factors())},
          {"structure", describe(sh.invariant_factors())},
          {"ambient", invariants_json(sh.ambient.invariant_factors())},
          {"family_size", sh.family.size()}};
}

std::vector<std::size_t> field_indices(const Scenario& s, const json& labels) {
  std::vector<std::size_t> out;
  for (const auto& l : labels)
    for (std::size_t i = 0; i < s.config.fields.size(); ++i)
      if (s.config.fields[i].name == l.get<std::string>()) out.push_back(i);
  std::sort(out.begin(), out.end());
  return out;
}

class TaskRunner {
 public:
  TaskRunner(const Scenario& s, const RunOptions& o) : s_(s), options_(o) {
    if (!o.cache_dir.empty()) store_ = std::make_unique<FileStore>(o.cache_dir);
    engine_ = std::make_unique<CohomologyEngine>(EngineConfig{o.budget, o.threads, store_.get()});
  }

  CohomologyEngine& engine(bool stretch) {
    if (!stretch) return *engine_;
    if (!stretch_engine_)
      stretch_engine_ = std::make_unique<CohomologyEngine>(
          EngineConfig{std::max(options_.budget, kStretchEntryBudget), options_.threads, store_.get()});
    return *stretch_engine_;
  }

  // Fills result and assertions; throws shacalc::Error on task failure.
  void run(const json& t, json& result, json& assertions) {
    const std::string kind = t["kind"].get<std::string>();
    CohomologyEngine& eng = engine(t.value("stretch", false));
    const int n = t.value("degree", 2);
    if (kind == "sha_omega" || kind == "sha_relative") {
      std::string desc;
      GLattice m = build_lattice(s_, t["lattice"], &desc);
      ShGroup sh;
      if (kind == "sha_omega") {
        sh = eng.sha_omega(m, n);
      } else {
        std::vector<NamedSubgroup> fam;
        for (const auto& name : t["family"]) fam.push_back({name.get<std::string>(), s_.subgroup(name.get<std::string>())});
        sh = eng.sha_relative(m, fam, n);
      }
      result = sh_json(sh, m, desc, n);
    } else if (kind == "cohomology_probe") {
      std::string desc;
      GLattice m = build_lattice(s_, t["lattice"], &desc);
      if (t.contains("restrict_to")) {
        m = restrict_lattice(m, s_.subgroup(t["restrict_to"].get<std::string>()));
        desc += " over " + t["restrict_to"].get<std::string>();
      }
      const std::string coeffs = t.value("coefficients", "Z");
      IntVector inv;
      std::size_t free = 0;
      if (coeffs == "Q/Z") {
        check(n == 1 || n == 2, ErrorCode::UnsupportedDegree, "Q/Z coefficients in degree 1 or 2 only");
        if (n == 1) inv = h1_dual(m.group()).structure.moduli;
        else inv = eng.cohomology_group(trivial_lattice(m.group(), 1), 3).invariant_factors();
      } else {
        CohGroup h = eng.cohomology_group(m, n);
        inv = h.invariant_factors();
        free = h.free_rank();
      }
      result = {{"lattice", desc},        {"lattice_rank", m.rank()}, {"degree", n},
                {"coefficients", coeffs}, {"free_rank", free},        {"invariant_factors", invariants_json(inv)},
                {"structure", free == 0 ? describe(inv)
                                        : "Z^" + std::to_string(free) + (inv.empty() ? "" : " + " + describe(inv))}};
    } else if (kind == "compare_sha") {
      FieldConfig cfg = s_.config;
      if (!t.value("use_overrides", true)) cfg.overrides.clear();
      result = to_json(compare_sha(cfg, eng));
    } else if (kind == "check_thm21" || kind == "check_thm31") {
      FieldConfig cfg = s_.config;
      if (!t.value("use_overrides", true)) cfg.overrides.clear();
      std::vector<Partition> parts;
      if (t.contains("partition"))
        parts.push_back({field_indices(s_, t["partition"]["I"]), field_indices(s_, t["partition"]["J"])});
      else
        parts = all_partitions(cfg.fields.size());
      json list = json::array();
      bool holds = false;
      for (const auto& p : parts) {
        HypothesisReport r = kind == "check_thm21" ? check_thm21(cfg, p) : check_thm31(cfg, p);
        holds = holds || (kind == "check_thm21" ? r.thm21_holds : r.thm31_holds);
        list.push_back(to_json(r));
      }
      result = {{"holds", holds}, {"partitions", list}};
    } else if (kind == "prop41_chain") {
      result = to_json(verify_prop41_chain(s_.group, eng));
    } else if (kind == "arith_checks") {
      run_arith(t, result, assertions);
      return;
    } else {
      fail(ErrorCode::ParseError, "unknown task kind " + kind);
    }
    expect_keys(t, result, assertions);
  }

 private:
  void run_arith(const json& t, json& result, json& assertions) {
    json list = json::array();
    for (const auto& c : t["checks"]) {
      const std::string op = c["op"].get<std::string>();
      std::string name;
      json value;
      json expected = c["expect"];
      if (op == "legendre" || op == "quartic_symbol") {
        mpz_class a = integer_arg(c, "a"), p = integer_arg(c, "p");
        name = op + "(" + a.get_str() + "," + p.get_str() + ")";
        value = op == "legendre" ? legendre(a, p) : quartic_symbol(a, p);
      } else if (op == "eighth_power_2adic") {
        mpz_class a = integer_arg(c, "a");
        name = op + "(" + a.get_str() + ")";
        value = is_8th_power_unit_2adic(a);
      } else if (op == "biquad_norm") {
        BiquadElement x{integer_arg(c, "d1"), integer_arg(c, "d2"), {}};
        const json& co = c.at("coeffs");
        check(co.is_array() && co.size() == 4, ErrorCode::ParseError, "biquad_norm needs four coefficients");
        name = "biquad_norm(d1=" + x.d1.get_str() + ",d2=" + x.d2.get_str() + ";";
        for (std::size_t i = 0; i < 4; ++i) {
          x.coeffs[i] = rational_value(co[i]);
          name += (i ? "," : "") + x.coeffs[i].get_str();
        }
        name += ")";
        value = rational_json(biquad_norm(x));
        expected = rational_json(rational_value(expected));
      } else if (op == "prop41_params") {
        mpz_class q = integer_arg(c, "q"), m = integer_arg(c, "m");
        name = op + "(" + q.get_str() + "," + m.get_str() + ")";
        Prop41Verdict v = check_prop41_params(q, m);
        value = v.all();
      } else {
        fail(ErrorCode::ParseError, "unknown arithmetic check " + op);
      }
      list.push_back({{"check", name}, {"value", value}});
      assertions.push_back(assertion(name, expected, value));
    }
    result = {{"checks", list}};
  }

  const Scenario& s_;
  RunOptions options_;
  std::unique_ptr<FileStore> store_;
  std::unique_ptr<CohomologyEngine> engine_, stretch_engine_;
};

json base_report(const json& source) {
  return {{"schema", "v1"},
          {"engine_version", kEngineVersion},
          {"scenario", source.is_object() && source.contains("name") && source["name"].is_string() ? source["name"]
                                                                                                    : json("")},
          {"scenario_digest", scenario_digest(source)},
          {"tasks", json::array()}};
}

std::string describe_json(const json& inv) {
  IntVector v;
  for (const auto& d : inv) v.push_back(d.is_string() ? mpz_class(d.get<std::string>()) : mpz_class(d.get<long>()));
  return describe(v);
}

RunResult invalid(json report, const std::string& what) {
  report["error"] = what;
  report["all_passed"] = false;
  return {report, 2};
}

}  // namespace

std::string scenario_digest(const json& source) { return sha256_hex(source.dump()); }

RunResult run_scenario(const json& source, const RunOptions& options) {
  json report = base_report(source);
  std::unique_ptr<Scenario> s;
  try {
    s = std::make_unique<Scenario>(parse_scenario(source));
  } catch (const Error& e) {
    return invalid(report, e.what());
  } catch (const json::exception& e) {
    return invalid(report, std::string("ParseError: ") + e.what());
  }

  std::unique_ptr<TaskRunner> runner;
  try {
    runner = std::make_unique<TaskRunner>(*s, options);
  } catch (const Error& e) {
    return invalid(report, e.what());
  }

  bool all_passed = true;
  for (std::size_t i = 0; i < s->tasks.size(); ++i) {
    const json& t = s->tasks[i];
    json entry = {{"index", i}, {"id", t.value("id", t["kind"].get<std::string>() + "#" + std::to_string(i))},
                  {"kind", t["kind"]}};
    if (t.value("stretch", false) && !options.stretch) {
      entry["status"] = "skipped";
      entry["reason"] = "stretch job; enable with --stretch";
      report["tasks"].push_back(entry);
      continue;
    }
    json result = json::object(), assertions = json::array();
    const auto start = std::chrono::steady_clock::now();
    std::string error_code, error_text;
    try {
      runner->run(t, result, assertions);
    } catch (const Error& e) {
      error_code = std::string(to_string(e.code()));
      error_text = e.what();
    }
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    const json expect = t.value("expect", json::object());
    if (expect.contains("error")) {
      assertions.push_back(assertion("error", expect["error"], error_code.empty() ? json(nullptr) : json(error_code)));
    } else if (!error_code.empty()) {
      entry["error"] = error_text;
    }
    bool passed = (error_code.empty() || expect.contains("error"));
    for (const auto& a : assertions) passed = passed && a["passed"].get<bool>();
    entry["status"] = passed ? "passed" : "failed";
    entry["assertions"] = assertions;
    entry["result"] = result;
    if (options.timing) entry["elapsed_ms"] = std::round(ms * 1000.0) / 1000.0;
    all_passed = all_passed && passed;
    report["tasks"].push_back(entry);
  }
  report["all_passed"] = all_passed;
  return {report, all_passed ? 0 : 1};
}

RunResult run_scenario_file(const std::string& path, const RunOptions& options) {
  std::ifstream in(path);
  json report = base_report(json(nullptr));
  if (!in) return invalid(report, "ParseError: cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    return invalid(report, std::string("ParseError: ") + path + ": " + e.what());
  }
  return run_scenario(j, options);
}

RunResult run_builtin(const std::string& name, const RunOptions& options) {
  if (!is_builtin(name)) return invalid(base_report(json(nullptr)), "ParseError: unknown builtin \"" + name + "\"");
  return run_scenario(builtin_scenario(name), options);
}

std::string format_text(const json& report) {
  std::ostringstream out;
  const std::string name = report.value("scenario", "");
  if (report.contains("error")) {
    out << "[INVALID] " << name << ": " << report["error"].get<std::string>() << "\n";
    return out.str();
  }
  for (const auto& t : report["tasks"]) {
    const std::string status = t["status"].get<std::string>();
    std::string tag = status == "passed" ? "[PASS]" : status == "skipped" ? "[SKIP]" : "[FAIL]";
    out << tag << " " << name << "/" << t["id"].get<std::string>();
    const json& r = t.value("result", json::object());
    if (r.contains("structure")) out << ": " << r["structure"].get<std::string>();
    else if (r.contains("sha_T"))
      out << ": Sh(S) = " << describe_json(r["sha_S"]) << ", Sh(T) = " << describe_json(r["sha_T"]);
    else if (r.contains("holds")) out << ": " << (r["holds"].get<bool>() ? "holds" : "does not hold");
    if (t.contains("elapsed_ms")) out << " (" << t["elapsed_ms"].get<double>() << " ms)";
    out << "\n";
    if (t.contains("error")) out << "    error: " << t["error"].get<std::string>() << "\n";
    for (const auto& a : t.value("assertions", json::array()))
      if (!a["passed"].get<bool>())
        out << "    " << a["name"].get<std::string>() << ": expected " << a["expected"].dump() << ", got "
            << a["actual"].dump() << "\n";
  }
  return out.str();
}

}  // namespace shacalc
