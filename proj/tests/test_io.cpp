#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "regclose/closure.hpp"
#include "regclose/io.hpp"

using namespace regclose;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("regclose-test-" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

void write(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

}  // namespace

TEST_CASE("space files parse and validate") {
  FinSpace s = space_from_json_text(R"({"points": ["0", "1"], "opens": [[], ["1"], ["0", "1"]]})");
  CHECK(canonical_form(s) == canonical_form(FinSpace::sierpinski()));

  CHECK_THROWS_AS(space_from_json_text("{"), InputError);
  CHECK_THROWS_AS(space_from_json_text(R"({"points": ["a"]})"), InputError);
  CHECK_THROWS_AS(space_from_json_text(R"({"points": ["a"], "opens": [["b"], []]})"), InputError);
  // axiom violation: full set missing
  CHECK_THROWS_AS(space_from_json_text(R"({"points": ["a", "b"], "opens": [[], ["a"]]})"),
                  SpaceError);
}

TEST_CASE("canonical space output is byte-stable and round-trips") {
  FinSpace s = FinSpace::validated({"b", "a"}, {0b00, 0b01, 0b11});
  std::string text = space_to_json_text(s);
  CHECK(text == space_to_json_text(s));
  FinSpace back = space_from_json_text(text);
  CHECK(canonical_form(back) == canonical_form(s));
  // points come out sorted; opens ordered by size then lexicographically
  CHECK(back.labels() == std::vector<std::string>{"a", "b"});
  std::size_t opens_at = text.find("\"opens\"");
  std::size_t singleton_at = text.find("\"b\"", opens_at);   // the open {b}
  std::size_t full_a_at = text.find("\"a\"", opens_at);      // inside {a, b}
  CHECK(singleton_at < full_a_at);
}

TEST_CASE("subcategory files") {
  TempDir dir;
  write(dir.path / "sier.json", space_to_json_text(FinSpace::sierpinski()));

  SubcatSpec b = subcat_from_json_text(R"({"name": "x", "kind": "builtin", "builtin": "t0"})",
                                       dir.path);
  CHECK(b.name() == "t0");

  SubcatSpec s = subcat_from_json_text(
      R"({"name": "hull", "kind": "seh", "generators": ["sier.json"], "bound": 4})", dir.path);
  CHECK(s.kind() == SubcatSpec::Kind::SehGenerators);
  CHECK(s.member(FinSpace::sierpinski()));

  SubcatSpec inline_gen = subcat_from_json_text(
      R"({"name": "hull2", "kind": "seh",
          "generators": [{"points": ["0", "1"], "opens": [[], ["1"], ["0", "1"]]}]})",
      dir.path);
  CHECK(inline_gen.member(FinSpace::sierpinski()));

  SubcatSpec p = subcat_from_json_text(
      R"({"name": "tiny", "kind": "predicate-table", "members": [], "bound": 2})", dir.path);
  CHECK_FALSE(p.member(FinSpace::point()));

  CHECK_THROWS_AS(subcat_from_json_text(R"({"name": "x", "kind": "nope"})", dir.path),
                  InputError);
  CHECK_THROWS_AS(subcat_from_json_text(R"({"kind": "builtin"})", dir.path), InputError);
}

TEST_CASE("reflector tables load from JSON") {
  TempDir dir;
  std::string doc = R"({
    "name": "tiny-reflector",
    "kind": "reflector-table",
    "bound": 2,
    "members": [")" + canonical_form(FinSpace::point()) + R"("],
    "reflections": [
      {"space": {"points": ["*"], "opens": [[], ["*"]]},
       "target": {"points": ["*"], "opens": [[], ["*"]]},
       "map": {"*": "*"}},
      {"space": {"points": ["a", "b"], "opens": [[], ["a", "b"]]},
       "target": {"points": ["*"], "opens": [[], ["*"]]},
       "map": {"a": "*", "b": "*"}}
    ]
  })";
  write(dir.path / "refl.json", doc);
  SubcatSpec t = read_subcat_file(dir.path / "refl.json");
  CHECK(t.has_reflector());
  CHECK(t.reflector_trusted());
  Reflection r = t.reflect(FinSpace::indiscrete(2));
  CHECK(r.target.size() == 1);
}

TEST_CASE("resolve_subcat handles builtins, seh prefixes and files") {
  TempDir dir;
  write(dir.path / "sier.json", space_to_json_text(FinSpace::sierpinski()));
  write(dir.path / "sub.json", R"({"name": "n", "kind": "builtin", "builtin": "discrete"})");

  CHECK(resolve_subcat("t0", dir.path).name() == "t0");
  SubcatSpec seh = resolve_subcat("seh:sier.json", dir.path);
  CHECK(seh.kind() == SubcatSpec::Kind::SehGenerators);
  CHECK(resolve_subcat((dir.path / "sub.json").string(), dir.path).name() == "discrete");
  CHECK_THROWS_AS(resolve_subcat("hausdorff", dir.path), InputError);
}

TEST_CASE("closure tables export deterministically") {
  Workspace ws;
  auto uni = ws.universe(2);
  ClosureOperatorTable t = closure_operator_table(SubcatSpec::t0(), uni, ws);
  std::string a = table_to_json_text(t);
  std::string b = table_to_json_text(t);
  CHECK(a == b);
  CHECK(a.find("\"method\"") != std::string::npos);
  CHECK(a.find("formula") != std::string::npos);
}

TEST_CASE("space file round trip through disk") {
  TempDir dir;
  FinSpace s = FinSpace::sierpinski();
  write_space_file(dir.path / "s.json", s);
  FinSpace back = read_space_file(dir.path / "s.json");
  CHECK(back == space_from_json_text(space_to_json_text(s)));
  CHECK_THROWS_AS(read_space_file(dir.path / "missing.json"), InputError);
}
