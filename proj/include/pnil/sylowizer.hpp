#pragma once

#include "pnil/lattice.hpp"
#include "pnil/primes.hpp"

#include <cstdint>
#include <map>
#include <unordered_map>
#include <vector>

namespace pnil {

/// One Sylow p-subgroup for each prime p dividing |G|.
struct CompleteSylowSet {
  const Group* parent = nullptr;
  std::map<Prime, Subgroup> members;

  const Subgroup& at(Prime p) const { return members.at(p); }
};

/// p-sylowizers of r inside `within`: the subgroups S with r <= S <= within
/// whose Sylow p-subgroup is r, maximal under inclusion. Returned in lattice
/// order as lattice indices. Throws std::invalid_argument("R is not a
/// p-subgroup") when |r| is not a power of p.
std::vector<std::size_t> p_sylowizer_indices(const Lattice& lattice, const Subgroup& within,
                                             const Subgroup& r, Prime p);
std::vector<Subgroup> p_sylowizers(const Lattice& lattice, const Subgroup& r, Prime p);

/// HK = KH as sets of products.
bool permutes(const Subgroup& h, const Subgroup& k);

/// The product set HK is closed under multiplication.
bool product_is_subgroup(const Subgroup& h, const Subgroup& k);

/// h permutes with every Sylow subgroup of G, for every prime and every conjugate.
bool is_s_permutable(const Lattice& lattice, const Subgroup& h);
/// Same, with Sylow subgroups of the subgroup k in place of G.
bool is_s_permutable_in(const Lattice& lattice, const Subgroup& k, const Subgroup& h);

/// h permutes with every member of z.
bool is_z_permutable(const Subgroup& h, const CompleteSylowSet& z);

/// First Sylow p-subgroup in lattice order for each prime.
CompleteSylowSet canonical_complete_set(const Lattice& lattice);

/// Every choice of one Sylow p-subgroup per prime; the first prime varies
/// slowest. Throws ResourceLimitError when there would be more than cap.
std::vector<CompleteSylowSet> all_complete_sets(const Lattice& lattice, std::size_t cap = 10000);

/// Number of complete sets without building them.
std::uint64_t count_complete_sets(const Lattice& lattice);

/// Memoized permutability over lattice indices. Not thread-safe; use one per task.
class PermutabilityCache {
 public:
  explicit PermutabilityCache(const Lattice& lattice) : lattice_(&lattice) {}

  const Lattice& lattice() const { return *lattice_; }

  bool permutes(std::size_t i, std::size_t j);
  bool is_s_permutable(std::size_t h);
  bool is_s_permutable_in(std::size_t k, std::size_t h);
  bool is_z_permutable(std::size_t h, const std::vector<std::size_t>& z);

  /// First Sylow subgroup (lattice index) that h fails to permute with.
  std::optional<std::size_t> first_nonpermuting_sylow(std::size_t h);

 private:
  const Lattice* lattice_;
  std::unordered_map<std::uint64_t, bool> pairs_;
  std::unordered_map<std::size_t, bool> s_perm_;
};

namespace testing {

/// Fault injection for the permutability predicate, used to exercise the
/// failure paths of the verification drivers.
enum class PermutabilityFault { none, always_permutes, never_permutes };

void inject_permutability_fault(PermutabilityFault fault);
PermutabilityFault permutability_fault();

}  // namespace testing

}  // namespace pnil
