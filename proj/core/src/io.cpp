#include "regclose/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace regclose {
namespace {

using nlohmann::json;

json parse(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw InputError("malformed JSON document");
  return j;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open file: " + path.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::vector<std::string> sorted_subset_labels(const FinSpace& x, Mask m) {
  std::vector<std::string> out;
  for (int i = 0; i < x.size(); ++i)
    if (has_bit(m, i)) out.push_back(x.labels()[static_cast<std::size_t>(i)]);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

FinSpace space_from_json_text(const std::string& text) {
  json j = parse(text);
  if (!j.is_object() || !j.contains("points") || !j.contains("opens"))
    throw InputError("space file needs \"points\" and \"opens\"");
  std::vector<std::string> labels;
  for (const auto& p : j.at("points")) {
    if (!p.is_string()) throw InputError("space file: points must be strings");
    labels.push_back(p.get<std::string>());
  }
  if (labels.size() > static_cast<std::size_t>(kMaxPoints))
    throw InputError("space file: too many points");
  std::vector<Mask> opens;
  for (const auto& o : j.at("opens")) {
    if (!o.is_array()) throw InputError("space file: each open must be an array of points");
    Mask m = 0;
    for (const auto& p : o) {
      std::string label = p.get<std::string>();
      auto it = std::find(labels.begin(), labels.end(), label);
      if (it == labels.end())
        throw InputError("space file: open set mentions unknown point \"" + label + "\"");
      m |= bit(static_cast<int>(it - labels.begin()));
    }
    opens.push_back(m);
  }
  return FinSpace::validated(std::move(labels), std::move(opens));
}

std::string space_to_json_text(const FinSpace& x) {
  // canonical bytes: points sorted, opens sorted by (cardinality, lex)
  std::vector<std::string> points = x.labels();
  std::sort(points.begin(), points.end());
  std::vector<std::vector<std::string>> opens;
  for (Mask o : x.opens()) opens.push_back(sorted_subset_labels(x, o));
  std::sort(opens.begin(), opens.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  json j;
  j["points"] = points;
  j["opens"] = opens;
  return j.dump(2) + "\n";
}

FinSpace read_space_file(const std::filesystem::path& path) {
  return space_from_json_text(slurp(path));
}

void write_space_file(const std::filesystem::path& path, const FinSpace& x) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write file: " + path.string());
  out << space_to_json_text(x);
}

SubcatSpec subcat_from_json_text(const std::string& text,
                                 const std::filesystem::path& base_dir) {
  json j = parse(text);
  if (!j.is_object() || !j.contains("name") || !j.contains("kind"))
    throw InputError("subcategory file needs \"name\" and \"kind\"");
  std::string name = j.at("name").get<std::string>();
  std::string kind = j.at("kind").get<std::string>();
  int bound = j.value("bound", kDefaultMaxPoints);
  if (bound < 0 || bound > kHardMaxPoints)
    throw InputError("subcategory file: bound out of range");

  if (kind == "builtin") {
    if (!j.contains("builtin")) throw InputError("builtin subcategory needs \"builtin\"");
    return SubcatSpec::by_builtin_name(j.at("builtin").get<std::string>());
  }
  if (kind == "seh") {
    std::vector<FinSpace> gens;
    for (const auto& g : j.value("generators", json::array())) {
      if (g.is_string()) {
        gens.push_back(read_space_file(base_dir / g.get<std::string>()));
      } else {
        gens.push_back(space_from_json_text(g.dump()));
      }
    }
    return SubcatSpec::seh(std::move(name), std::move(gens), bound);
  }
  if (kind == "predicate-table") {
    std::set<std::string> members;
    for (const auto& m : j.value("members", json::array()))
      members.insert(m.get<std::string>());
    return SubcatSpec::predicate_table(std::move(name), std::move(members), bound);
  }
  if (kind == "reflector-table") {
    std::vector<ReflectorEntry> entries;
    for (const auto& e : j.value("reflections", json::array())) {
      FinSpace space = space_from_json_text(e.at("space").dump());
      FinSpace target = space_from_json_text(e.at("target").dump());
      Graph g(static_cast<std::size_t>(space.size()), 0);
      for (const auto& [from, to] : e.at("map").items()) {
        int src = space.label_index(from);
        int dst = target.label_index(to.get<std::string>());
        if (src < 0 || dst < 0)
          throw InputError("reflector table: map mentions unknown point labels");
        g[static_cast<std::size_t>(src)] = static_cast<std::uint8_t>(dst);
      }
      entries.push_back(ReflectorEntry{std::move(space), std::move(target), std::move(g)});
    }
    std::optional<std::set<std::string>> members;
    if (j.contains("members")) {
      members.emplace();
      for (const auto& m : j.at("members")) members->insert(m.get<std::string>());
    }
    bool weak = j.value("weak", false);
    return SubcatSpec::reflector_table(std::move(name), std::move(entries), weak, bound,
                                       std::move(members));
  }
  throw InputError("subcategory file: unknown kind \"" + kind + "\"");
}

SubcatSpec read_subcat_file(const std::filesystem::path& path) {
  return subcat_from_json_text(slurp(path), path.parent_path());
}

SubcatSpec resolve_subcat(const std::string& name, const std::filesystem::path& base_dir) {
  if (name == "all" || name == "t0" || name == "t1" || name == "discrete" ||
      name == "indiscrete")
    return SubcatSpec::by_builtin_name(name);
  if (name.rfind("seh:", 0) == 0) {
    std::filesystem::path file = name.substr(4);
    if (file.is_relative()) file = base_dir / file;
    return SubcatSpec::seh(name, {read_space_file(file)});
  }
  std::filesystem::path file = name;
  if (file.is_relative()) file = base_dir / file;
  if (!std::filesystem::exists(file))
    throw InputError("unknown subcategory \"" + name +
                     "\": not a builtin, not seh:<file>, and no such file");
  return read_subcat_file(file);
}

std::string table_to_json_text(const ClosureOperatorTable& t) {
  json arr = json::array();
  for (const auto& e : t.entries) {
    const FinSpace& x = t.universe[static_cast<std::size_t>(e.space)];
    json row;
    row["space"] = canonical_form(x);
    row["subset"] = sorted_subset_labels(x, e.subset);
    row["closure"] = sorted_subset_labels(x, e.closure);
    row["method"] = e.method == ClosureMethod::Formula ? "formula" : "bruteforce";
    row["exact"] = e.exact;
    arr.push_back(row);
  }
  return arr.dump(2) + "\n";
}

}  // namespace regclose
