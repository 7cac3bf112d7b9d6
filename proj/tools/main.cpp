// regclose: regular closure operators over finite topological spaces.
//
// One subcommand per construction so reports stay citable; exit code 0 when
// every check passes, 1 on a failed check, 2 on bad input.

#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "regclose/closure.hpp"
#include "regclose/io.hpp"
#include "scenario.hpp"

namespace {

using regclose::cli::CheckSpec;
using regclose::cli::Report;

int emit_and_code(const Report& report, const std::string& format) {
  if (format == "json")
    std::cout << report.to_json().dump(2) << "\n";
  else
    std::cout << report.to_text();
  return regclose::cli::exit_code(report);
}

int run_single(const CheckSpec& check, const std::string& format) {
  regclose::Workspace ws;
  Report report;
  report.scenario = check.kind;
  report.results.push_back(
      regclose::cli::run_check(check, regclose::configured_max_points(), ".", ws));
  return emit_and_code(report, format);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"regular closure operators on finite topological spaces"};
  app.require_subcommand(1);
  app.fallthrough();  // --format is accepted before or after the subcommand
  std::string format = "text";
  app.add_option("--format", format, "output format: text or json")
      ->check(CLI::IsMember({"text", "json"}));

  auto* validate = app.add_subcommand("validate", "check a space file against the topology axioms");
  std::string validate_file;
  validate->add_option("file", validate_file, "space JSON file")->required();

  auto* spaces = app.add_subcommand("spaces", "list all homeomorphism classes with n points");
  int spaces_n = 0;
  spaces->add_option("--n", spaces_n, "point count")->required();

  auto* closure = app.add_subcommand("closure", "close a subset of a space");
  std::string cl_space, cl_subset, cl_subcat, cl_method = "formula";
  closure->add_option("--space", cl_space)->required();
  closure->add_option("--subset", cl_subset, "comma-separated point labels");
  closure->add_option("--subcat", cl_subcat)->required();
  closure->add_option("--method", cl_method)->check(CLI::IsMember({"formula", "brute", "both"}));

  auto* compare = app.add_subcommand("compare", "do two subcategories induce the same closure");
  std::string cmp_a, cmp_b;
  int cmp_max = regclose::configured_max_points();
  compare->add_option("--a", cmp_a)->required();
  compare->add_option("--b", cmp_b)->required();
  compare->add_option("--max-points", cmp_max);

  auto* hull = app.add_subcommand("hull", "hull membership of a space");
  std::string hull_which = "s", hull_subcat, hull_space;
  int hull_bound = -1;
  hull->add_option("--which", hull_which)->check(CLI::IsMember({"s", "e", "d", "mono", "smallest", "largest"}));
  hull->add_option("--subcat", hull_subcat)->required();
  hull->add_option("--space", hull_space)->required();
  hull->add_option("--bound", hull_bound);

  auto* diagonal = app.add_subcommand("diagonal", "regularity of the diagonal subobject");
  std::string diag_space, diag_subcat;
  diagonal->add_option("--space", diag_space)->required();
  diagonal->add_option("--subcat", diag_subcat)->required();

  auto* axioms = app.add_subcommand("axioms", "closure-operator axioms over a universe");
  std::string ax_subcat;
  int ax_max = regclose::configured_max_points();
  axioms->add_option("--subcat", ax_subcat)->required();
  axioms->add_option("--max-points", ax_max);

  auto* scenario = app.add_subcommand("scenario", "run a scenario file");
  std::string scenario_file;
  scenario->add_option("file", scenario_file)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate) {
      nlohmann::json w;
      try {
        regclose::FinSpace x = regclose::read_space_file(validate_file);
        w["valid"] = true;
        w["points"] = x.size();
        w["opens"] = static_cast<int>(x.opens().size());
        w["canonical_form"] = regclose::canonical_form(x);
        if (format == "json")
          std::cout << w.dump(2) << "\n";
        else
          std::cout << "valid: " << x.size() << " points, " << x.opens().size() << " opens, "
                    << w["canonical_form"].get<std::string>() << "\n";
        return 0;
      } catch (const regclose::SpaceError& err) {
        w["valid"] = false;
        w["error"] = err.what();
        if (format == "json")
          std::cout << w.dump(2) << "\n";
        else
          std::cout << "invalid: " << err.what() << "\n";
        return 1;
      }
    }
    if (*spaces) {
      auto list = regclose::enumerate_spaces(spaces_n, regclose::configured_max_points());
      if (format == "json") {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& s : list) {
          nlohmann::json e = nlohmann::json::parse(regclose::space_to_json_text(s));
          e["canonical_form"] = regclose::canonical_form(s);
          arr.push_back(e);
        }
        std::cout << arr.dump(2) << "\n";
      } else {
        for (const auto& s : list)
          std::cout << regclose::canonical_form(s) << "  (" << s.opens().size() << " opens)\n";
        std::cout << list.size() << " classes\n";
      }
      return 0;
    }
    if (*closure) {
      CheckSpec c{"closure",
                  {{"space", cl_space}, {"subset", cl_subset}, {"subcat", cl_subcat},
                   {"method", cl_method}}};
      return run_single(c, format);
    }
    if (*compare) {
      CheckSpec c{"compare",
                  {{"a", cmp_a}, {"b", cmp_b}, {"max_points", std::to_string(cmp_max)}}};
      return run_single(c, format);
    }
    if (*hull) {
      CheckSpec c{"hull",
                  {{"which", hull_which}, {"subcat", hull_subcat}, {"space", hull_space}}};
      if (hull_bound >= 0) c.args["bound"] = std::to_string(hull_bound);
      return run_single(c, format);
    }
    if (*diagonal) {
      CheckSpec c{"diagonal", {{"space", diag_space}, {"subcat", diag_subcat}}};
      return run_single(c, format);
    }
    if (*axioms) {
      CheckSpec c{"axioms", {{"subcat", ax_subcat}, {"max_points", std::to_string(ax_max)}}};
      return run_single(c, format);
    }
    if (*scenario) {
      Report report = regclose::cli::run_scenario(scenario_file);
      return emit_and_code(report, format);
    }
  } catch (const regclose::SpaceError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  } catch (const regclose::InputError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
  return 2;
}
