#include "shacalc/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "shacalc/error.hpp"

namespace shacalc {

namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::string& what) { fail(ErrorCode::ParseError, what); }

void require(bool cond, const std::string& what) {
  if (!cond) parse_fail(what);
}

const json& member(const json& j, const char* key, const std::string& where) {
  require(j.is_object() && j.contains(key), where + ": missing \"" + key + "\"");
  return j.at(key);
}

std::string string_member(const json& j, const char* key, const std::string& where) {
  const json& v = member(j, key, where);
  require(v.is_string(), where + ": \"" + key + "\" must be a string");
  return v.get<std::string>();
}

std::size_t index_value(const json& v, const std::string& where) {
  require(v.is_number_integer() && v.get<long long>() >= 0, where + ": expected a non-negative integer");
  return v.get<std::size_t>();
}

const std::set<std::string> kTaskKinds = {"sha_omega",   "sha_relative", "compare_sha",  "check_thm21",
                                          "check_thm31", "prop41_chain", "arith_checks", "cohomology_probe"};

std::vector<Element> generator_elements(const FiniteGroup& g, const json& gens, const std::string& where) {
  require(gens.is_array(), where + ": expected a list of permutations");
  std::vector<Element> out;
  for (const auto& p : gens) {
    Permutation perm = parse_permutation(p, g.degree());
    try {
      out.push_back(element_of(g, perm));
    } catch (const Error&) {
      parse_fail(where + ": permutation is not in the group");
    }
  }
  return out;
}

void validate_lattice(const Scenario& s, const json& d, const std::string& where) {
  const std::string type = string_member(d, "type", where);
  if (type == "multinorm") {
    if (d.contains("subgroups")) {
      require(d["subgroups"].is_array() && !d["subgroups"].empty(), where + ": \"subgroups\" must be a nonempty list");
      for (const auto& n : d["subgroups"]) {
        require(n.is_string(), where + ": subgroup names must be strings");
        s.subgroup(n.get<std::string>());
      }
    } else {
      require(!s.config.fields.empty(), where + ": multinorm lattice needs fields");
    }
  } else if (type == "normone" || type == "permutation") {
    s.subgroup(string_member(d, "subgroup", where));
  } else if (type == "trivial") {
    index_value(member(d, "rank", where), where + " rank");
  } else {
    parse_fail(where + ": unknown lattice type \"" + type + "\"");
  }
}

void validate_task(const Scenario& s, const json& t, std::size_t index) {
  const std::string where = "task " + std::to_string(index);
  require(t.is_object(), where + ": expected an object");
  const std::string kind = string_member(t, "kind", where);
  require(kTaskKinds.count(kind) > 0, where + ": unknown kind \"" + kind + "\"");
  if (t.contains("id")) require(t["id"].is_string(), where + ": \"id\" must be a string");
  if (t.contains("stretch")) require(t["stretch"].is_boolean(), where + ": \"stretch\" must be a boolean");
  if (t.contains("expect")) require(t["expect"].is_object(), where + ": \"expect\" must be an object");
  if (t.contains("degree")) {
    std::size_t n = index_value(t["degree"], where + " degree");
    require(n <= static_cast<std::size_t>(kMaxDegree), where + ": degree above " + std::to_string(kMaxDegree));
  }
  if (kind == "sha_omega" || kind == "sha_relative" || kind == "cohomology_probe")
    validate_lattice(s, member(t, "lattice", where), where);
  if (kind == "sha_relative") {
    const json& fam = member(t, "family", where);
    require(fam.is_array(), where + ": \"family\" must be a list of subgroup names");
    for (const auto& n : fam) {
      require(n.is_string(), where + ": subgroup names must be strings");
      s.subgroup(n.get<std::string>());
    }
  }
  if (kind == "cohomology_probe") {
    if (t.contains("restrict_to")) s.subgroup(string_member(t, "restrict_to", where));
    if (t.contains("coefficients")) {
      const std::string c = string_member(t, "coefficients", where);
      require(c == "Z" || c == "Q/Z", where + ": coefficients must be \"Z\" or \"Q/Z\"");
      require(c == "Z" || string_member(t["lattice"], "type", where) == "trivial",
              where + ": Q/Z coefficients need a trivial lattice");
    }
  }
  if (kind == "compare_sha" || kind == "check_thm21" || kind == "check_thm31")
    require(s.config.fields.size() >= 2, where + ": needs at least two fields");
  if (kind == "check_thm21" || kind == "check_thm31") {
    if (t.contains("partition")) {
      const json& p = t["partition"];
      std::set<std::string> labels;
      for (const auto& f : s.config.fields) labels.insert(f.name);
      for (const char* side : {"I", "J"}) {
        const json& part = member(p, side, where + " partition");
        require(part.is_array() && !part.empty(), where + ": partition parts must be nonempty lists");
        for (const auto& l : part)
          require(l.is_string() && labels.count(l.get<std::string>()), where + ": unknown field in partition");
      }
    }
    if (t.contains("use_overrides")) require(t["use_overrides"].is_boolean(), where + ": \"use_overrides\" must be a boolean");
  }
  if (kind == "prop41_chain" && t.contains("subgroup")) s.subgroup(string_member(t, "subgroup", where));
  if (kind == "arith_checks") {
    const json& checks = member(t, "checks", where);
    require(checks.is_array(), where + ": \"checks\" must be a list");
    for (const auto& c : checks) {
      const std::string op = string_member(c, "op", where + " check");
      static const std::set<std::string> ops = {"legendre", "quartic_symbol", "eighth_power_2adic",
                                                "biquad_norm", "prop41_params"};
      require(ops.count(op) > 0, where + ": unknown arithmetic check \"" + op + "\"");
      require(c.contains("expect"), where + ": arithmetic check without \"expect\"");
    }
  }
}

}  // namespace

const Subgroup& Scenario::subgroup(const std::string& name) const {
  auto it = subgroups.find(name);
  if (it == subgroups.end()) parse_fail("unknown subgroup \"" + name + "\"");
  return it->second;
}

Permutation parse_permutation(const json& j, std::size_t degree) {
  require(j.is_array(), "permutation must be a list");
  bool cycles = !j.empty() && j.front().is_array();
  if (!cycles) {
    if (j.empty()) return permutation_from_cycles(degree, {});
    Permutation p;
    for (const auto& v : j) p.push_back(index_value(v, "permutation image"));
    require(p.size() == degree, "image array of length " + std::to_string(p.size()) + " for degree " +
                                    std::to_string(degree));
    return p;
  }
  std::vector<std::vector<std::size_t>> cs;
  for (const auto& c : j) {
    require(c.is_array(), "cycle must be a list");
    std::vector<std::size_t> cycle;
    for (const auto& v : c) {
      std::size_t x = index_value(v, "cycle entry");
      require(x < degree, "cycle entry " + std::to_string(x) + " out of range");
      cycle.push_back(x);
    }
    cs.push_back(std::move(cycle));
  }
  return permutation_from_cycles(degree, cs);
}

Scenario parse_scenario(const json& j) {
  require(j.is_object(), "scenario must be a JSON object");
  const std::string version = string_member(j, "version", "scenario");
  require(version == kScenarioVersion, "unsupported scenario version \"" + version + "\"");

  Scenario s;
  s.source = j;
  s.name = string_member(j, "name", "scenario");
  if (j.contains("description")) s.description = string_member(j, "description", "scenario");

  const json& gj = member(j, "group", "scenario");
  std::size_t degree = index_value(member(gj, "degree", "group"), "group degree");
  require(degree >= 1, "group degree must be positive");
  const json& gens = member(gj, "generators", "group");
  require(gens.is_array(), "group generators must be a list");
  std::vector<Permutation> perms;
  for (const auto& p : gens) perms.push_back(parse_permutation(p, degree));
  std::size_t bound = kDefaultOrderBound;
  if (gj.contains("order_bound")) bound = index_value(gj["order_bound"], "group order_bound");
  s.group = group_from_permutations(degree, perms, bound);

  s.subgroups.emplace("G", whole_group(s.group));
  s.subgroups.emplace("1", trivial_subgroup(s.group));
  if (j.contains("subgroups")) {
    const json& subs = j["subgroups"];
    require(subs.is_object(), "\"subgroups\" must be an object");
    for (const auto& [name, list] : subs.items()) {
      require(name != "G" && name != "1" && name != "K", "subgroup name \"" + name + "\" is reserved");
      s.subgroups.emplace(name, subgroup_closure(s.group, generator_elements(*s.group, list, "subgroup " + name)));
    }
  }

  s.config.group = s.group;
  std::set<std::string> labels;
  if (j.contains("fields")) {
    require(j["fields"].is_array(), "\"fields\" must be a list");
    for (const auto& f : j["fields"]) {
      std::string label = string_member(f, "label", "field");
      require(labels.insert(label).second, "duplicate field label \"" + label + "\"");
      s.config.fields.push_back({label, s.subgroup(string_member(f, "subgroup", "field " + label))});
    }
  }
  if (!s.config.fields.empty()) {
    s.subgroups.emplace("K", field_intersection_subgroup(s.config));
  }
  if (j.contains("overrides")) {
    require(j["overrides"].is_array(), "\"overrides\" must be a list");
    for (const auto& o : j["overrides"]) {
      std::string label = string_member(o, "label", "override");
      std::string field = string_member(o, "field", "override " + label);
      std::size_t idx = s.config.fields.size();
      for (std::size_t i = 0; i < s.config.fields.size(); ++i)
        if (s.config.fields[i].name == field) idx = i;
      require(idx < s.config.fields.size(), "override " + label + " names unknown field \"" + field + "\"");
      for (const auto& prev : s.config.overrides)
        require(prev.field != idx, "field \"" + field + "\" overridden twice");
      s.config.overrides.push_back({label, idx, s.subgroup(string_member(o, "subgroup", "override " + label))});
    }
  }

  const json& tasks = member(j, "tasks", "scenario");
  require(tasks.is_array(), "\"tasks\" must be a list");
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    validate_task(s, tasks[i], i);
    s.tasks.push_back(tasks[i]);
  }
  return s;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), "cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    parse_fail(path + ": " + e.what());
  }
  return parse_scenario(j);
}

GLattice build_lattice(const Scenario& s, const json& d, std::string* description) {
  const std::string type = d.at("type").get<std::string>();
  std::ostringstream desc;
  GLattice out;
  if (type == "multinorm") {
    std::vector<Subgroup> subs;
    desc << "multinorm(";
    if (d.contains("subgroups")) {
      for (const auto& n : d["subgroups"]) {
        desc << (subs.empty() ? "" : ", ") << n.get<std::string>();
        subs.push_back(s.subgroup(n.get<std::string>()));
      }
    } else {
      for (const auto& f : s.config.fields) {
        desc << (subs.empty() ? "" : ", ") << f.name;
        subs.push_back(f.subgroup);
      }
    }
    desc << ")";
    out = multinorm_character_lattice(s.group, subs).lattice;
  } else if (type == "normone") {
    const std::string n = d.at("subgroup").get<std::string>();
    desc << "normone(" << n << ")";
    out = normone_character_lattice(s.subgroup(n)).lattice;
  } else if (type == "permutation") {
    const std::string n = d.at("subgroup").get<std::string>();
    desc << "permutation(" << n << ")";
    out = permutation_lattice(s.subgroup(n));
  } else if (type == "trivial") {
    std::size_t r = d.at("rank").get<std::size_t>();
    desc << "trivial(" << r << ")";
    out = trivial_lattice(s.group, r);
  } else {
    parse_fail("unknown lattice type \"" + type + "\"");
  }
  if (description) *description = desc.str();
  return out;
}

}  // namespace shacalc
