#pragma once

#include "pnil/group.hpp"

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace pnil {

/// Serializable description of a permutation group.
struct GroupSpec {
  std::string name;
  std::size_t degree = 1;
  std::vector<std::vector<Point>> generators;  // 0-based image arrays
  std::vector<std::string> tags;

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

enum class Family {
  cyclic,              // (n)
  dihedral,            // (2n), the order
  symmetric,           // (n), n <= 6
  alternating,         // (n), n <= 6
  quaternion,          // (2^k), k >= 3
  elementary_abelian,  // (p, k)
  sl23,
  frobenius21,
  modular16,
  semidihedral16,
};

class CatalogError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws CatalogError on out-of-range parameters.
GroupSpec builtin(Family family, const std::vector<std::uint64_t>& params = {});

/// Parses "cyclic:6", "dihedral:8", "elementary_abelian:2:3", "sl23", ...
GroupSpec builtin_from_string(const std::string& text);

/// a acting on points [0, deg a), b on [deg a, deg a + deg b).
GroupSpec direct_product(const GroupSpec& a, const GroupSpec& b, const Limits& limits = {});

GroupPtr realize(const GroupSpec& spec, const Limits& limits = {});

/// The verification corpus: builtins and pairwise direct products of order <= 200.
std::vector<GroupSpec> default_corpus();

/// Checks the tags a group can be tested against ("abelian", "p-group",
/// "nilpotent", "<p>-nilpotent", "non-<p>-nilpotent", "non-nilpotent",
/// "order:<n>"). Other tags are free-form. Throws CatalogError on a false tag.
void verify_tags(const GroupSpec& spec, const Group& group);

/// Text catalog: a "pnil-catalog 1" header line, then per group
///
///   group <name>
///   degree <n>
///   tags <tag> <tag> ...     (optional)
///   gen <i0> <i1> ...        (zero or more)
///   end
///
/// Blank lines and lines starting with '#' are ignored.
void write_specs(std::ostream& os, const std::vector<GroupSpec>& specs);
std::vector<GroupSpec> read_specs(std::istream& is);

void save_specs(const std::vector<GroupSpec>& specs, const std::filesystem::path& path);

/// Errors name the offending line. With verify set, each group is realized
/// and its tags checked (groups over the limits are accepted unverified).
std::vector<GroupSpec> load_specs(const std::filesystem::path& path, bool verify = true,
                                  const Limits& limits = {});

}  // namespace pnil
