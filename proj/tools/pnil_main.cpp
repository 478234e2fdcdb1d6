#include "pnil/driver.hpp"
#include "pnil/sylowizer.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace pnil;
using namespace pnil::cli;

template <class T, class Parse>
std::vector<T> parse_list(const std::vector<std::string>& words, Parse parse, const char* what) {
  std::vector<T> out;
  for (const auto& w : words) {
    std::stringstream ss(w);
    for (std::string item; std::getline(ss, item, ',');) {
      if (item.empty()) continue;
      auto v = parse(item);
      if (!v) throw UsageError(std::string("unknown ") + what + " '" + item + "'");
      out.push_back(*v);
    }
  }
  return out;
}

int emit(const RunResult& r, const std::string& output) {
  if (output.empty()) {
    std::cout << r.report;
  } else {
    std::ofstream os(output);
    if (!os) throw UsageError("cannot write " + output);
    os << r.report;
  }
  std::cerr << r.summary;
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"p-nilpotency criteria checker for finite permutation groups"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::vector<std::string> theorems, lemmas;
  std::string mode, complete_sets = "canonical", format = "json", output;
  std::optional<std::size_t> max_order;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--catalog", cfg.catalog_path, "catalog file (default: built-in corpus)");
    sub->add_option("--group", cfg.groups, "group name(s) to run")->delimiter(',');
    sub->add_option("--p", cfg.p, "restrict to one prime");
    sub->add_option("--max-order", max_order,
                    "skip groups above this order (verify: 100000, lemmas: 100)");
    sub->add_option("--max-lattice", cfg.max_lattice, "largest order whose lattice is built");
    sub->add_option("--max-degree", cfg.max_degree, "largest permutation degree");
    sub->add_option("--format", format, "json, csv or table")
        ->check(CLI::IsMember({"json", "csv", "table"}));
    sub->add_option("--output,-o", output, "write the report here instead of stdout");
    sub->add_option("--jobs,-j", cfg.jobs, "worker threads")->check(CLI::PositiveNumber);
  };

  auto* verify = app.add_subcommand("verify", "run the criterion equivalence matrix");
  common(verify);
  verify->add_option("--theorem", theorems, "T31,C32,C33,T34,C35,T36,T37,C38,C39,C310");
  verify->add_option("--d", cfg.d, "restrict to one divisor d");
  verify->add_option("--mode", mode, "s or n")->check(CLI::IsMember({"s", "n", "s_permutable", "normal_in_op"}));
  verify->add_option("--complete-sets", complete_sets, "canonical or all")
      ->check(CLI::IsMember({"canonical", "all"}));
  verify->add_option("--complete-set-cap", cfg.complete_set_cap, "most complete sets per group");
  verify->add_flag("--timing", cfg.timing, "record elapsed milliseconds (breaks byte-identical reports)");

  auto* lem = app.add_subcommand("lemmas", "run the lemma property suites");
  common(lem);
  lem->add_option("--lemma", lemmas, "L21,...,L27");
  lem->add_option("--complete-set-cap", cfg.complete_set_cap, "most complete sets per group");
  lem->add_flag("--quotients", cfg.quotients, "also run on G/N for each proper normal N > 1");

  std::string group;
  std::optional<Prime> analyze_p;
  auto* analyze = app.add_subcommand("analyze", "print the structure of one group");
  analyze->add_option("group", group, "catalog name or family string such as dihedral:8")->required();
  analyze->add_option("--p", analyze_p, "prime (default: smallest divisor of |G|)");
  analyze->add_option("--catalog", cfg.catalog_path, "catalog file (default: built-in corpus)");

  std::string report_path;
  bool only_inequivalent = false;
  auto* replay = app.add_subcommand("replay", "re-check the witnesses in a JSON report");
  replay->add_option("report", report_path, "report file")->required();
  replay->add_flag("--inequivalent-only", only_inequivalent, "skip records that were equivalent");
  replay->add_option("--catalog", cfg.catalog_path, "catalog the report was produced from");

  auto* catalog = app.add_subcommand("catalog", "write the built-in corpus as a catalog file");
  catalog->add_option("--output,-o", output, "destination (default stdout)");

#ifdef PNIL_FAULT_INJECTION
  std::string fault = "none";
  app.add_option("--inject-fault", fault, "corrupt the permutability predicate")
      ->check(CLI::IsMember({"none", "always", "never"}));
#endif

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

#ifdef PNIL_FAULT_INJECTION
  if (fault == "always") testing::inject_permutability_fault(testing::PermutabilityFault::always_permutes);
  if (fault == "never") testing::inject_permutability_fault(testing::PermutabilityFault::never_permutes);
#endif

  try {
    cfg.max_order = max_order;
    cfg.format = *parse_format(format);
    cfg.all_complete_sets = complete_sets == "all";
    if (!mode.empty()) cfg.mode = parse_mode(mode);
    cfg.theorems = parse_list<TheoremId>(theorems, parse_theorem, "theorem");
    cfg.lemmas = parse_list<LemmaId>(lemmas, parse_lemma, "lemma");

    if (*verify) return emit(cmd_verify(cfg), output);
    if (*lem) return emit(cmd_lemmas(cfg), output);
    if (*analyze) return emit(cmd_analyze(cfg, group, analyze_p), "");
    if (*replay) {
      std::ifstream is(report_path);
      if (!is) throw UsageError("cannot read " + report_path);
      std::stringstream ss;
      ss << is.rdbuf();
      return emit(cmd_replay(cfg, ss.str(), only_inequivalent), "");
    }
    if (*catalog) {
      const auto specs = default_corpus();
      if (output.empty())
        write_specs(std::cout, specs);
      else
        save_specs(specs, output);
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const CriterionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const CatalogError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
