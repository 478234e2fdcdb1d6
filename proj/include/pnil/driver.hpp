#pragma once

#include "pnil/catalog.hpp"
#include "pnil/criteria.hpp"
#include "pnil/lemmas.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pnil::cli {

enum class Format { json, csv, table };
std::optional<Format> parse_format(std::string_view s);

/// Bad input from the user: unknown group, unreadable catalog, invalid
/// parameters. Maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::optional<std::string> catalog_path;  // default corpus when unset
  std::vector<std::string> groups;          // names; empty selects the whole catalog
  std::vector<TheoremId> theorems;          // empty selects all
  std::vector<LemmaId> lemmas;              // empty selects all
  std::optional<Prime> p;
  std::optional<std::uint64_t> d;
  std::optional<Mode> mode;
  bool all_complete_sets = false;
  std::optional<std::size_t> max_order;  // verify: 100000, lemmas: 100
  std::size_t max_lattice = Lattice::kDefaultCap;
  std::size_t max_degree = 32;
  std::size_t complete_set_cap = 10000;
  bool quotients = false;  // lemmas: also run on G/N for each proper normal N > 1
  Format format = Format::json;
  unsigned jobs = 1;
  bool timing = false;
};

struct RunResult {
  int exit_code = 0;
  std::string report;   // the document for --output / stdout
  std::string summary;  // human summary, one or more lines
};

/// Groups resolvable by name: the configured catalog, then builtin family
/// strings such as "dihedral:8". A trailing "/<k>" names the quotient by the
/// normal subgroup at lattice index k.
class GroupResolver {
 public:
  explicit GroupResolver(const RunConfig& config);
  const std::vector<GroupSpec>& specs() const { return specs_; }
  /// Throws UsageError for unknown names.
  GroupSpec spec(const std::string& name) const;
  /// Realizes the group (and quotient) and its lattice under the config caps.
  std::shared_ptr<const Lattice> lattice(const std::string& name) const;

 private:
  const RunConfig* config_;
  std::vector<GroupSpec> specs_;
};

RunResult cmd_verify(const RunConfig& config);
RunResult cmd_lemmas(const RunConfig& config);
RunResult cmd_analyze(const RunConfig& config, const std::string& group, std::optional<Prime> p);
/// Re-checks every witness or counterexample in a JSON report produced by
/// verify or lemmas. With only_inequivalent, verify records whose verdict was
/// equivalent are left out. Exit 1 if any replayed witness still fails.
RunResult cmd_replay(const RunConfig& config, const std::string& report_json,
                     bool only_inequivalent = false);

}  // namespace pnil::cli
