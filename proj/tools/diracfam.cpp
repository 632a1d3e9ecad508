#include <CLI11.hpp>

#include <Eigen/Core>

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "diracfam/serialize.hpp"
#include "diracfam/verify.hpp"

namespace {

using diracfam::json;

// Flat or one-level-nested JSON object mapped onto CLI option names; nested
// objects address subcommands. Unknown keys are rejected by the parser.
class ConfigJSON : public CLI::Config {
 public:
  std::string to_config(const CLI::App* app, bool default_also, bool, std::string) const override {
    json j = json::object();
    for (const CLI::Option* opt : app->get_options({})) {
      if (!opt->get_lnames().empty() && opt->get_configurable()) {
        if (!opt->results().empty())
          j[opt->get_lnames()[0]] = opt->results().front();
        else if (default_also)
          j[opt->get_lnames()[0]] = opt->get_default_str();
      }
    }
    return j.dump(2) + "\n";
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    nlohmann::json j;
    input >> j;
    if (!j.is_object()) throw CLI::ConfigError::Extras("config root must be a JSON object");
    std::vector<CLI::ConfigItem> items;
    walk(j, {}, items);
    return items;
  }

 private:
  static std::string scalar(const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    return v.dump();
  }

  static void walk(const nlohmann::json& node, std::vector<std::string> parents,
                   std::vector<CLI::ConfigItem>& out) {
    for (const auto& [key, value] : node.items()) {
      if (value.is_object()) {
        auto deeper = parents;
        deeper.push_back(key);
        walk(value, deeper, out);
        continue;
      }
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = key;
      if (value.is_array())
        for (const auto& e : value) item.inputs.push_back(scalar(e));
      else
        item.inputs.push_back(scalar(value));
      out.push_back(item);
    }
  }
};

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::invalid_argument("cannot open output file: " + path);
  file << text;
}

void require_format(const std::string& format, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (format == a) return;
  throw std::invalid_argument("format \"" + format + "\" is not available for this subcommand");
}

json suite_to_json(const diracfam::SuiteReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return {{"suite", r.suite}, {"passed", r.passed()}, {"checks", checks}};
}

std::string suites_to_table(const std::vector<diracfam::SuiteReport>& reports) {
  std::ostringstream out;
  for (const auto& r : reports) {
    out << r.suite << ": " << (r.passed() ? "PASS" : "FAIL") << "\n";
    for (const auto& c : r.checks)
      out << "  [" << (c.passed ? " ok " : "FAIL") << "] " << c.name << " - " << c.detail << "\n";
  }
  return out.str();
}

diracfam::Rational parse_rational_flag(const std::string& text, const char* flag) {
  try {
    return diracfam::parse_rational(text);
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string(flag) + ": expected a rational like 3, -1/2, or 0.25");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact and numerical index computations for twisted Dirac families on flat tori"};
  app.require_subcommand(1);
  app.config_formatter(std::make_shared<ConfigJSON>());
  app.set_config("--config", "", "JSON configuration file");
  app.allow_config_extras(CLI::config_extras_mode::error);

  int threads = 0;
  app.add_option("--threads", threads, "dense linear algebra thread count (0 = library default)")
      ->envname("DIRACFAM_THREADS")
      ->check(CLI::NonNegativeNumber)
      ->each([](const std::string& v) {
        int t = std::stoi(v);
        if (t > 0) Eigen::setNbThreads(t);
      });

  int exit_code = 0;

  // ---- verify ---------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "run named identity suites");
  std::vector<std::string> suite_args;
  diracfam::SuiteOptions suite_opt;
  std::string verify_format = "json", verify_output;
  verify->add_option("suites", suite_args, "suite names (default: all)");
  verify->add_option("--max-dim", suite_opt.max_dim, "clifford: top dimension")
      ->capture_default_str();
  verify->add_option("--dim", suite_opt.dim, "gromov-lawson: torus dimension")
      ->capture_default_str();
  verify->add_option("--cutoff", suite_opt.cutoff, "index-t2: truncation K")
      ->capture_default_str();
  verify->add_option("--grid", suite_opt.grid, "family-index: W-construction grid")
      ->capture_default_str();
  verify->add_option("--radius", suite_opt.radius, "family-index: loop radius")
      ->capture_default_str();
  verify->add_option("--samples", suite_opt.samples, "family-index: loop samples")
      ->capture_default_str();
  verify->add_option("--seed", suite_opt.seed, "seed for randomized checks")
      ->capture_default_str();
  verify->add_option("--format", verify_format, "json | table")->capture_default_str();
  verify->add_option("--output", verify_output, "write the report to a file");
  verify->callback([&] {
    require_format(verify_format, {"json", "table"});
    std::vector<std::string> names = suite_args.empty() ? diracfam::suite_names() : suite_args;
    std::vector<diracfam::SuiteReport> reports;
    bool all = true;
    for (const auto& name : names) {
      reports.push_back(diracfam::run_suite(name, suite_opt));
      all = all && reports.back().passed();
    }
    if (verify_format == "json") {
      json out;
      json arr = json::array();
      for (const auto& r : reports) arr.push_back(suite_to_json(r));
      out["suites"] = arr;
      out["passed"] = all;
      emit(out.dump(2) + "\n", verify_output);
    } else {
      emit(suites_to_table(reports), verify_output);
    }
    if (!all) exit_code = 2;
  });

  // ---- spectrum -------------------------------------------------------
  auto* spectrum_cmd = app.add_subcommand("spectrum", "truncated spectrum of the twisted operator");
  int sp_dim = 1, sp_cutoff = 2;
  std::string sp_twist = "0", sp_format = "json", sp_output;
  spectrum_cmd->add_option("--dim", sp_dim, "torus dimension")->capture_default_str();
  spectrum_cmd->add_option("--twist", sp_twist, "twist, e.g. 0.25 or \"1/4, 0\"")
      ->capture_default_str();
  spectrum_cmd->add_option("--cutoff", sp_cutoff, "mode window |k| <= K")->capture_default_str();
  spectrum_cmd->add_option("--format", sp_format, "json | csv | table")->capture_default_str();
  spectrum_cmd->add_option("--output", sp_output, "write the report to a file");
  spectrum_cmd->callback([&] {
    require_format(sp_format, {"json", "csv", "table"});
    auto slice = diracfam::spectrum(sp_dim, diracfam::parse_twist(sp_twist), sp_cutoff);
    if (sp_format == "json")
      emit(diracfam::spectrum_to_json(slice).dump(2) + "\n", sp_output);
    else if (sp_format == "csv")
      emit(diracfam::spectrum_to_csv(slice), sp_output);
    else
      emit(diracfam::spectrum_to_table(slice), sp_output);
  });

  // ---- flow -----------------------------------------------------------
  auto* flow_cmd = app.add_subcommand("flow", "exact spectral flow along a parameter path");
  std::string fl_path, fl_format = "json", fl_output;
  int fl_dim = 1, fl_cutoff = 5;
  flow_cmd->add_option("--path", fl_path, "JSON file: vertex list or {vertices, closed}")
      ->required();
  flow_cmd->add_option("--dim", fl_dim, "torus dimension")->capture_default_str();
  flow_cmd->add_option("--cutoff", fl_cutoff, "mode window |k| <= K")->capture_default_str();
  flow_cmd->add_option("--format", fl_format, "json | table")->capture_default_str();
  flow_cmd->add_option("--output", fl_output, "write the report to a file");
  flow_cmd->callback([&] {
    require_format(fl_format, {"json", "table"});
    std::ifstream in(fl_path);
    if (!in) throw std::invalid_argument("cannot open path file: " + fl_path);
    nlohmann::json pj;
    in >> pj;
    auto path = diracfam::path_from_json(pj);
    long long flow = diracfam::exact_flow(fl_dim, path, fl_cutoff);
    if (fl_format == "json") {
      json out;
      out["dim"] = fl_dim;
      out["cutoff"] = fl_cutoff;
      out["vertices"] = path.vertices.size();
      out["closed"] = path.closed;
      out["flow"] = flow;
      emit(out.dump(2) + "\n", fl_output);
    } else {
      emit("flow = " + std::to_string(flow) + "\n", fl_output);
    }
  });

  // ---- index-family ---------------------------------------------------
  auto* fam_cmd = app.add_subcommand("index-family", "family index over the parameter torus");
  int fa_dim = 2, fa_cutoff = 3, fa_grid = 32, fa_samples = 64;
  double fa_radius = 0.1;
  std::string fa_format = "json", fa_output;
  fam_cmd->add_option("--dim", fa_dim, "torus dimension (2)")->capture_default_str();
  fam_cmd->add_option("--cutoff", fa_cutoff, "mode window |k| <= K")->capture_default_str();
  fam_cmd->add_option("--grid", fa_grid, "W-construction resolution (0 = skip)")
      ->capture_default_str();
  fam_cmd->add_option("--radius", fa_radius, "localization loop radius")->capture_default_str();
  fam_cmd->add_option("--samples", fa_samples, "localization loop samples")->capture_default_str();
  fam_cmd->add_option("--format", fa_format, "json | table")->capture_default_str();
  fam_cmd->add_option("--output", fa_output, "write the report to a file");
  fam_cmd->callback([&] {
    require_format(fa_format, {"json", "table"});
    auto rep = diracfam::family_index_report(fa_dim, fa_cutoff, fa_radius, fa_samples);
    json out = diracfam::family_index_to_json(rep);
    if (fa_grid > 0) {
      auto w = diracfam::build_w_construction(fa_dim, fa_cutoff, fa_grid, {{0, 0}});
      double min_cert = w.certificates.front();
      for (double c : w.certificates) min_cert = std::min(min_cert, c);
      out["w_construction"] = {{"grid", fa_grid},
                               {"fiber_dimension", w.fiber_dimension},
                               {"min_certificate", min_cert}};
    }
    if (fa_format == "json") {
      emit(out.dump(2) + "\n", fa_output);
    } else {
      std::ostringstream t;
      t << "jump points: " << rep.jump_points.size() << "\n"
        << "local degrees:";
      for (long long d : rep.local_degrees) t << " " << d;
      t << "\ntotal c1 = " << rep.total_c1 << "  (" << rep.convention << ")\n";
      emit(t.str(), fa_output);
    }
  });

  // ---- chern ----------------------------------------------------------
  auto* chern_cmd = app.add_subcommand("chern", "truncated Chern character of a formal bundle");
  std::string ch_rank = "1", ch_c1 = "0", ch_c2 = "0", ch_format = "json", ch_output;
  chern_cmd->add_option("--rank", ch_rank, "bundle rank (rational)")->capture_default_str();
  chern_cmd->add_option("--c1", ch_c1, "coefficient of the formal class c1")
      ->capture_default_str();
  chern_cmd->add_option("--c2", ch_c2, "coefficient of the formal class c2")
      ->capture_default_str();
  chern_cmd->add_option("--format", ch_format, "json | table")->capture_default_str();
  chern_cmd->add_option("--output", ch_output, "write the report to a file");
  chern_cmd->callback([&] {
    require_format(ch_format, {"json", "table"});
    diracfam::ExteriorAlgebra alg(0, 0, {{"c1", 2}, {"c2", 4}}, 8);
    auto element = diracfam::chern_character(parse_rational_flag(ch_rank, "--rank"),
                                             parse_rational_flag(ch_c1, "--c1") * alg.even("c1"),
                                             parse_rational_flag(ch_c2, "--c2") * alg.even("c2"));
    if (ch_format == "json")
      emit(diracfam::exterior_to_json(element).dump(2) + "\n", ch_output);
    else
      emit(element.to_string() + "\n", ch_output);
  });

  // ---- ahat -----------------------------------------------------------
  auto* ahat_cmd = app.add_subcommand("ahat", "A-hat series truncated to a dimension");
  int ah_dim = 8;
  std::string ah_format = "json", ah_output;
  ahat_cmd->add_option("--dim", ah_dim, "manifold dimension (<= 8)")->capture_default_str();
  ahat_cmd->add_option("--format", ah_format, "json | table")->capture_default_str();
  ahat_cmd->add_option("--output", ah_output, "write the report to a file");
  ahat_cmd->callback([&] {
    require_format(ah_format, {"json", "table"});
    auto element = diracfam::a_hat_formal(ah_dim);
    if (ah_format == "json")
      emit(diracfam::exterior_to_json(element).dump(2) + "\n", ah_output);
    else
      emit(element.to_string() + "\n", ah_output);
  });

  // ---- index-formula --------------------------------------------------
  auto* formula_cmd =
      app.add_subcommand("index-formula", "family index class; Pontryagin index numbers");
  int if_dim = 2, if_betti = 3;
  std::string if_p1 = "0", if_p1sq = "0", if_p2 = "0", if_cup, if_format = "json", if_output;
  formula_cmd->add_option("--dim", if_dim, "manifold dimension (even, or 3 with --cup)")
      ->capture_default_str();
  auto* p1_opt = formula_cmd->add_option("--p1", if_p1, "p1 number (dim 4)");
  auto* p1sq_opt = formula_cmd->add_option("--p1-sq", if_p1sq, "p1^2 number (dim 8)");
  auto* p2_opt = formula_cmd->add_option("--p2", if_p2, "p2 number (dim 8)");
  auto* cup_opt = formula_cmd->add_option("--cup", if_cup, "cup form for dim 3");
  formula_cmd->add_option("--betti", if_betti, "first Betti number for dim 3")
      ->capture_default_str();
  formula_cmd->add_option("--format", if_format, "json | table")->capture_default_str();
  formula_cmd->add_option("--output", if_output, "write the report to a file");
  formula_cmd->callback([&] {
    require_format(if_format, {"json", "table"});
    diracfam::IndexFormulaReport report;
    if (if_dim == 3) {
      if (cup_opt->count() == 0)
        throw std::invalid_argument("index-formula: dim 3 requires --cup (and --betti)");
      auto cup = diracfam::parse_cup_form(if_cup, if_betti);
      report = diracfam::make_index_report("odd family index class",
                                           diracfam::odd_family_ch(if_betti, cup));
    } else {
      report = diracfam::family_ch_torus(if_dim);
    }
    json out = diracfam::index_report_to_json(report);
    if (p1_opt->count() || p1sq_opt->count() || p2_opt->count()) {
      diracfam::PontryaginNumbers p{parse_rational_flag(if_p1, "--p1"),
                                    parse_rational_flag(if_p1sq, "--p1-sq"),
                                    parse_rational_flag(if_p2, "--p2")};
      auto number = diracfam::index_from_pontryagin(if_dim, p);
      out["index_number"] = {{"value", diracfam::format_rational(number.value)},
                             {"integral", number.integral}};
    }
    if (if_format == "json") {
      emit(out.dump(2) + "\n", if_output);
    } else {
      std::ostringstream t;
      t << report.description << ": " << report.element.to_string() << "\n";
      if (out.contains("index_number"))
        t << "index number = " << out["index_number"]["value"].get<std::string>() << "\n";
      emit(t.str(), if_output);
    }
  });

  // ---- bar ------------------------------------------------------------
  auto* bar_cmd = app.add_subcommand("bar", "period ranks of the cup-product complex");
  int bar_betti = 3;
  std::string bar_cup, bar_format = "json", bar_output;
  bar_cmd->add_option("--betti", bar_betti, "first Betti number")->capture_default_str();
  bar_cmd->add_option("--cup", bar_cup, "triple cup form, e.g. \"1,2,3:1; 4,5,6:1\"")
      ->capture_default_str();
  bar_cmd->add_option("--format", bar_format, "json | table")->capture_default_str();
  bar_cmd->add_option("--output", bar_output, "write the report to a file");
  bar_cmd->callback([&] {
    require_format(bar_format, {"json", "table"});
    auto cup = diracfam::parse_cup_form(bar_cup, bar_betti);
    auto ranks = diracfam::bar_ranks(cup);
    auto nv = diracfam::nonvanishing_check(cup);
    if (bar_format == "json") {
      emit(diracfam::bar_report_to_json(cup, ranks, nv).dump(2) + "\n", bar_output);
    } else {
      std::ostringstream t;
      t << "ranks (even, odd) = (" << ranks.even << ", " << ranks.odd << ")\n"
        << "nonvanishing = " << (nv.nonvanishing ? "true" : "false") << "\n";
      for (std::size_t i = 0; i < nv.witness_degrees.size(); ++i)
        t << "  degree " << nv.witness_degrees[i] << ": " << nv.representatives[i] << "\n";
      emit(t.str(), bar_output);
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << json{{"error", e.what()}}.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", e.what()}}.dump() << "\n";
    return 1;
  }
  return exit_code;
}
