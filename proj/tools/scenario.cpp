#include "scenario.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include "regclose/closure.hpp"
#include "regclose/io.hpp"

namespace regclose::cli {
namespace {

using nlohmann::json;

std::string arg(const CheckSpec& c, const std::string& key) {
  auto it = c.args.find(key);
  if (it == c.args.end())
    throw InputError("check '" + c.kind + "' is missing argument \"" + key + "\"");
  return it->second;
}

std::string arg_or(const CheckSpec& c, const std::string& key, const std::string& fallback) {
  auto it = c.args.find(key);
  return it == c.args.end() ? fallback : it->second;
}

int int_arg_or(const CheckSpec& c, const std::string& key, int fallback) {
  auto it = c.args.find(key);
  if (it == c.args.end()) return fallback;
  try {
    return std::stoi(it->second);
  } catch (const std::exception&) {
    throw InputError("check argument \"" + key + "\" is not an integer");
  }
}

json subset_labels(const FinSpace& x, Mask m) {
  std::vector<std::string> out;
  for (int i = 0; i < x.size(); ++i)
    if (has_bit(m, i)) out.push_back(x.labels()[static_cast<std::size_t>(i)]);
  std::sort(out.begin(), out.end());
  return json(out);
}

Mask parse_subset(const FinSpace& x, const std::string& csv) {
  Mask m = 0;
  std::stringstream ss(csv);
  std::string label;
  while (std::getline(ss, label, ',')) {
    if (label.empty()) continue;
    int idx = x.label_index(label);
    if (idx < 0) throw InputError("subset mentions unknown point \"" + label + "\"");
    m |= bit(idx);
  }
  return m;
}

FinSpace load_space(const CheckSpec& c, const std::filesystem::path& base_dir) {
  std::filesystem::path p = arg(c, "space");
  if (p.is_relative()) p = base_dir / p;
  return read_space_file(p);
}

int checked_max_points(int requested) {
  if (requested < 0 || requested > kScenarioMaxPoints)
    throw InputError("max_points " + std::to_string(requested) + " exceeds the ceiling of " +
                     std::to_string(kScenarioMaxPoints));
  return requested;
}

CheckResult run_closure(const CheckSpec& c, const std::filesystem::path& base_dir,
                        Workspace& ws) {
  CheckResult out;
  FinSpace x = load_space(c, base_dir);
  SubcatSpec a = resolve_subcat(arg(c, "subcat"), base_dir);
  Subobject m{x, parse_subset(x, arg_or(c, "subset", ""))};
  std::string method = arg_or(c, "method", a.has_reflector() ? "formula" : "brute");
  out.check = "closure(" + arg(c, "subcat") + ", " + arg(c, "space") + ", {" +
              arg_or(c, "subset", "") + "}) via " + method;

  json w;
  if (method == "formula") {
    ClosureResult r = closure_formula(m, a);
    w["closure"] = subset_labels(x, r.closure);
    w["method"] = "formula";
    out.verdict = r.exact ? "pass" : "bounded-pass";
    out.bound = r.bound;
  } else if (method == "brute") {
    ClosureResult r = closure_bruteforce(m, a, ws);
    w["closure"] = subset_labels(x, r.closure);
    w["method"] = "bruteforce";
    w["regular_witnesses"] = static_cast<int>(r.witnesses.size());
    out.verdict = r.exact ? "pass" : "bounded-pass";
    out.bound = r.bound;
  } else if (method == "both") {
    ClosureResult f = closure_formula(m, a);
    ClosureResult b = closure_bruteforce(m, a, ws);
    w["formula"] = subset_labels(x, f.closure);
    w["bruteforce"] = subset_labels(x, b.closure);
    bool agree = f.closure == b.closure;
    out.verdict = agree ? (b.exact ? "pass" : "bounded-pass") : "fail";
    out.bound = b.bound;
  } else {
    throw InputError("closure: unknown method \"" + method + "\"");
  }
  out.witnesses.push_back(w);
  return out;
}

CheckResult run_compare(const CheckSpec& c, int default_max_points,
                        const std::filesystem::path& base_dir, Workspace& ws) {
  CheckResult out;
  SubcatSpec a = resolve_subcat(arg(c, "a"), base_dir);
  SubcatSpec b = resolve_subcat(arg(c, "b"), base_dir);
  int mp = checked_max_points(int_arg_or(c, "max_points", default_max_points));
  out.check = "compare(" + arg(c, "a") + ", " + arg(c, "b") + ") n<=" + std::to_string(mp);
  out.bound = mp;
  auto universe = ws.universe(mp);
  CompareResult r = same_closure(a, b, universe, ws);
  if (r.same) {
    out.verdict = r.exact ? "pass" : "bounded-pass";
  } else {
    out.verdict = "fail";
    const FinSpace& amb = universe[static_cast<std::size_t>(r.counterexample->space)];
    json w;
    w["space"] = canonical_form(amb);
    w["subset"] = subset_labels(amb, r.counterexample->subset);
    w["closure_a"] = subset_labels(amb, r.counterexample->closure_a);
    w["closure_b"] = subset_labels(amb, r.counterexample->closure_b);
    out.witnesses.push_back(w);
  }
  return out;
}

CheckResult run_hull(const CheckSpec& c, const std::filesystem::path& base_dir, Workspace& ws) {
  CheckResult out;
  FinSpace x = load_space(c, base_dir);
  SubcatSpec a = resolve_subcat(arg(c, "subcat"), base_dir);
  std::string which = arg_or(c, "which", "s");
  int bound = int_arg_or(c, "bound", a.bound());
  out.check = "hull(" + which + ", " + arg(c, "subcat") + ", " + arg(c, "space") + ")";

  HullReport rep;
  if (which == "s") rep = in_S_hull(x, a, ws, bound);
  else if (which == "e") rep = in_E_hull(x, a, ws, bound);
  else if (which == "d") rep = in_D_hull(x, a, ws, bound);
  else if (which == "mono") rep = in_mono_hull(x, a, ws, bound);
  else if (which == "smallest") rep = in_smallest_intermediate(x, a, ws, bound);
  else if (which == "largest") rep = in_largest_intermediate(x, a, ws, bound);
  else throw InputError("hull: unknown kind \"" + which + "\" (use s|e|d|mono|smallest|largest)");

  out.bound = rep.bound;
  out.verdict = rep.member ? (rep.exact ? "pass" : "bounded-pass") : "fail";
  json w;
  w["member"] = rep.member;
  w["bound"] = rep.bound;
  w["exact"] = rep.exact;
  if (rep.degenerate) w["degenerate"] = true;
  if (!rep.note.empty()) w["note"] = rep.note;
  if (rep.witness_map) w["witness_into"] = canonical_form(rep.witness_map->cod);
  if (which == "e" || which == "d")
    w["epis_cancellable"] = epis_are_cancellable(a, ws, rep.bound);
  out.witnesses.push_back(w);
  return out;
}

CheckResult run_diagonal(const CheckSpec& c, const std::filesystem::path& base_dir,
                         Workspace& ws) {
  CheckResult out;
  FinSpace x = load_space(c, base_dir);
  SubcatSpec a = resolve_subcat(arg(c, "subcat"), base_dir);
  out.check = "diagonal(" + arg(c, "space") + ") regular for " + arg(c, "subcat");

  bool regular;
  bool exact = true;
  if (a.has_reflector()) {
    regular = diagonal_is_regular(x, a);
  } else {
    RegularityResult r = is_A_regular(diagonal(x), a, ws);
    regular = r.regular;
    exact = r.exact;
    out.bound = r.bound;
  }
  out.verdict = regular ? (exact ? "pass" : "bounded-pass") : "fail";
  json w;
  w["regular"] = regular;
  w["member"] = a.member(x);
  out.witnesses.push_back(w);
  return out;
}

CheckResult run_axioms(const CheckSpec& c, int default_max_points,
                       const std::filesystem::path& base_dir, Workspace& ws) {
  CheckResult out;
  SubcatSpec a = resolve_subcat(arg(c, "subcat"), base_dir);
  int mp = checked_max_points(int_arg_or(c, "max_points", default_max_points));
  out.check = "axioms(" + arg(c, "subcat") + ") n<=" + std::to_string(mp);
  out.bound = mp;
  auto universe = ws.universe(mp);
  ClosureOperatorTable t = closure_operator_table(a, universe, ws);
  AxiomReport rep = check_axioms(t, ws);
  out.verdict = rep.all_pass() ? (t.all_exact() ? "pass" : "bounded-pass") : "fail";
  json w;
  w["extension"] = rep.extension;
  w["monotonicity"] = rep.monotonicity;
  w["continuity"] = rep.continuity;
  w["idempotency"] = rep.idempotency;
  for (const auto& ce : rep.counterexamples) {
    json e;
    e["axiom"] = ce.axiom;
    e["space"] = canonical_form(universe[static_cast<std::size_t>(ce.space)]);
    e["subset"] = subset_labels(universe[static_cast<std::size_t>(ce.space)], ce.subset);
    e["detail"] = ce.detail;
    w["counterexamples"].push_back(e);
  }
  out.witnesses.push_back(w);
  return out;
}

CheckResult run_thm41(const CheckSpec& c, int default_max_points,
                      const std::filesystem::path& base_dir, Workspace& ws) {
  CheckResult out;
  SubcatSpec a = resolve_subcat(arg(c, "a"), base_dir);
  SubcatSpec b = resolve_subcat(arg(c, "b"), base_dir);
  int mp = checked_max_points(int_arg_or(c, "max_points", default_max_points));
  out.check = "thm41(" + arg(c, "a") + ", " + arg(c, "b") + ") n<=" + std::to_string(mp);
  out.bound = mp;
  auto universe = ws.universe(mp);
  Thm41Report rep = thm41_sweep(a, b, universe, ws);
  out.verdict = rep.defect ? "fail" : "bounded-pass";
  json w;
  w["precondition_alpha_mono"] = rep.precondition;
  w["a_diagonals_regular"] = rep.a;
  w["b_in_s_hull"] = rep.b;
  w["c_same_closure"] = rep.c;
  w["defect"] = rep.defect;
  json rows = json::array();
  for (const auto& r : rep.rows) {
    json row;
    row["member"] = canonical_form(universe[static_cast<std::size_t>(r.space)]);
    row["P"] = r.alpha_mono;
    row["a"] = r.diag_regular;
    row["b"] = r.in_s_hull;
    row["c"] = r.tables_agree;
    rows.push_back(row);
  }
  w["rows"] = rows;
  out.witnesses.push_back(w);
  return out;
}

CheckResult run_epi_dense(const CheckSpec& c, int default_max_points,
                          const std::filesystem::path& base_dir, Workspace& ws) {
  CheckResult out;
  SubcatSpec a = resolve_subcat(arg(c, "subcat"), base_dir);
  int mp = checked_max_points(int_arg_or(c, "max_points", default_max_points));
  out.check = "epi-dense(" + arg(c, "subcat") + ") n<=" + std::to_string(mp);
  out.bound = mp;
  auto universe = ws.universe(mp);
  EpiDenseReport rep = epi_dense_consistency(a, universe, ws);
  out.verdict = rep.pass() ? "bounded-pass" : "fail";
  json w;
  w["checked"] = rep.checked;
  w["violations"] = static_cast<int>(rep.violations.size());
  if (!rep.violations.empty()) {
    const auto& v = rep.violations.front();
    json first;
    first["dom"] = canonical_form(universe[static_cast<std::size_t>(v.dom_space)]);
    first["cod"] = canonical_form(universe[static_cast<std::size_t>(v.cod_space)]);
    first["cancellable"] = v.cancellable;
    first["dense"] = v.dense;
    w["first"] = first;
  }
  out.witnesses.push_back(w);
  return out;
}

CheckResult run_oracle_agreement(const CheckSpec& c, int default_max_points,
                                 const std::filesystem::path& base_dir, Workspace& ws) {
  CheckResult out;
  std::string list = arg_or(c, "subcats", "t0,indiscrete,all");
  int mp = checked_max_points(int_arg_or(c, "max_points", default_max_points));
  out.check = "oracle-agreement(" + list + ") n<=" + std::to_string(mp);
  out.bound = mp;
  auto universe = ws.universe(mp);

  std::vector<SubcatSpec> subcats;
  std::stringstream ss(list);
  std::string name;
  while (std::getline(ss, name, ',')) {
    if (name.empty()) continue;
    subcats.push_back(resolve_subcat(name, base_dir));
  }
  int mismatches = 0;
  json first;
  for (const auto& a : subcats) {
    if (!a.has_reflector())
      throw InputError("oracle-agreement needs reflector-backed subcategories");
    for (int s = 0; s < static_cast<int>(universe.size()); ++s) {
      const FinSpace& x = universe[static_cast<std::size_t>(s)];
      for (Mask m = 0;; ++m) {
        Subobject sub{x, m};
        Mask f = closure_formula(sub, a).closure;
        Mask b = closure_bruteforce(sub, a, ws).closure;
        if (f != b) {
          if (mismatches == 0) {
            first["subcat"] = a.name();
            first["space"] = canonical_form(x);
            first["subset"] = subset_labels(x, m);
            first["formula"] = subset_labels(x, f);
            first["bruteforce"] = subset_labels(x, b);
          }
          ++mismatches;
        }
        if (m == x.full_mask()) break;
      }
    }
  }
  out.verdict = mismatches == 0 ? "pass" : "fail";
  json w;
  w["mismatches"] = mismatches;
  if (mismatches > 0) w["first"] = first;
  out.witnesses.push_back(w);
  return out;
}

}  // namespace

ScenarioSpec ScenarioSpec::from_json_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw InputError("scenario file: malformed JSON");
  if (!j.is_object()) throw InputError("scenario file: expected an object");
  ScenarioSpec spec;
  spec.name = j.value("name", "scenario");
  if (j.contains("universe")) {
    spec.max_points = j.at("universe").value("max_points", kDefaultMaxPoints);
  }
  if (spec.max_points < 0 || spec.max_points > kScenarioMaxPoints)
    throw InputError("scenario file: max_points " + std::to_string(spec.max_points) +
                     " exceeds the ceiling of " + std::to_string(kScenarioMaxPoints));
  // optional per-kind argument defaults, e.g. {"hull": {"bound": 3}}
  std::map<std::string, std::map<std::string, std::string>> bounds;
  if (j.contains("bounds")) {
    for (const auto& [kind, overrides] : j.at("bounds").items())
      for (const auto& [k, v] : overrides.items())
        bounds[kind][k] = v.is_string() ? v.get<std::string>() : v.dump();
  }
  for (const auto& c : j.value("checks", json::array())) {
    CheckSpec check;
    check.kind = c.at("kind").get<std::string>();
    auto it = bounds.find(check.kind);
    if (it != bounds.end()) check.args = it->second;
    json args = c.value("args", json::object());
    for (const auto& [k, v] : args.items()) {
      check.args[k] = v.is_string() ? v.get<std::string>() : v.dump();
    }
    spec.checks.push_back(std::move(check));
  }
  return spec;
}

int Report::passes() const {
  int n = 0;
  for (const auto& r : results)
    if (r.verdict == "pass") ++n;
  return n;
}

int Report::failures() const {
  int n = 0;
  for (const auto& r : results)
    if (r.verdict == "fail") ++n;
  return n;
}

int Report::bounded_passes() const {
  int n = 0;
  for (const auto& r : results)
    if (r.verdict == "bounded-pass") ++n;
  return n;
}

nlohmann::json Report::to_json() const {
  json j;
  j["scenario"] = scenario;
  json rs = json::array();
  for (const auto& r : results) {
    json e;
    e["check"] = r.check;
    e["verdict"] = r.verdict;
    e["bound"] = r.bound ? json(*r.bound) : json(nullptr);
    e["witnesses"] = r.witnesses;
    rs.push_back(e);
  }
  j["results"] = rs;
  j["summary"] = {{"total", static_cast<int>(results.size())},
                  {"pass", passes()},
                  {"bounded_pass", bounded_passes()},
                  {"fail", failures()}};
  return j;
}

Report Report::from_json(const nlohmann::json& j) {
  Report r;
  r.scenario = j.at("scenario").get<std::string>();
  for (const auto& e : j.at("results")) {
    CheckResult cr;
    cr.check = e.at("check").get<std::string>();
    cr.verdict = e.at("verdict").get<std::string>();
    if (!e.at("bound").is_null()) cr.bound = e.at("bound").get<int>();
    cr.witnesses = e.at("witnesses");
    r.results.push_back(std::move(cr));
  }
  return r;
}

std::string Report::to_text() const {
  std::ostringstream out;
  out << "scenario: " << scenario << "\n";
  for (const auto& r : results) {
    std::string tag = r.verdict == "fail" ? "FAIL" : (r.verdict == "pass" ? "PASS" : "PASS*");
    out << "[" << tag << "] " << r.check;
    if (r.bound) out << " (bound " << *r.bound << ")";
    out << " [" << r.duration_ms << " ms]\n";
    if (r.verdict == "fail" && !r.witnesses.empty())
      out << "       witness: " << r.witnesses.dump() << "\n";
  }
  out << "summary: " << passes() << " pass, " << bounded_passes() << " bounded-pass, "
      << failures() << " fail\n";
  return out.str();
}

int exit_code(const Report& r) { return r.failures() > 0 ? 1 : 0; }

CheckResult run_check(const CheckSpec& check, int default_max_points,
                      const std::filesystem::path& base_dir, Workspace& ws) {
  auto started = std::chrono::steady_clock::now();
  CheckResult out;
  if (check.kind == "closure") out = run_closure(check, base_dir, ws);
  else if (check.kind == "compare") out = run_compare(check, default_max_points, base_dir, ws);
  else if (check.kind == "hull") out = run_hull(check, base_dir, ws);
  else if (check.kind == "diagonal") out = run_diagonal(check, base_dir, ws);
  else if (check.kind == "axioms") out = run_axioms(check, default_max_points, base_dir, ws);
  else if (check.kind == "thm41") out = run_thm41(check, default_max_points, base_dir, ws);
  else if (check.kind == "epi-dense") out = run_epi_dense(check, default_max_points, base_dir, ws);
  else if (check.kind == "oracle-agreement")
    out = run_oracle_agreement(check, default_max_points, base_dir, ws);
  else throw InputError("unknown check kind \"" + check.kind + "\"");
  out.duration_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - started)
                        .count();
  return out;
}

Report run_scenario_spec(const ScenarioSpec& spec, const std::filesystem::path& base_dir) {
  Report report;
  report.scenario = spec.name;
  Workspace ws;
  for (const auto& check : spec.checks)
    report.results.push_back(run_check(check, spec.max_points, base_dir, ws));
  return report;
}

Report run_scenario(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw InputError("cannot open scenario file: " + file.string());
  std::ostringstream text;
  text << in.rdbuf();
  ScenarioSpec spec = ScenarioSpec::from_json_text(text.str());
  return run_scenario_spec(spec, file.parent_path());
}

}  // namespace regclose::cli
