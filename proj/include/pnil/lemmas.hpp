#pragma once

#include "pnil/lattice.hpp"
#include "pnil/primes.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pnil {

enum class LemmaId { L21, L22, L23, L24, L25, L26, L27 };
inline constexpr LemmaId kAllLemmas[] = {LemmaId::L21, LemmaId::L22, LemmaId::L23, LemmaId::L24,
                                         LemmaId::L25, LemmaId::L26, LemmaId::L27};

std::string_view to_string(LemmaId id);
std::optional<LemmaId> parse_lemma(std::string_view s);

/// One failing instance. Subgroups are element-index lists of G; a complete
/// set is stored as one entry per prime, keyed "Z<p>".
struct Counterexample {
  std::string part;   // e.g. "L23.normal"
  std::string claim;  // what failed
  std::map<std::string, std::vector<std::uint32_t>> subgroups;
};

struct PropertyReport {
  LemmaId lemma = LemmaId::L21;
  std::string group_name;
  Prime p = 0;
  bool passed = true;
  std::uint64_t instances = 0;  // instances whose premises held
  std::optional<Counterexample> counterexample;
};

/// Instantiates the lemma over every admissible choice in the lattice of G
/// (p-subgroups, subgroups, normal subgroups, every complete Sylow set) and
/// stops at the first failure. Throws std::invalid_argument when p does not
/// divide |G|, ResourceLimitError when a quotient lattice or the complete-set
/// sweep exceeds its cap.
PropertyReport verify_lemma(const Lattice& lattice, LemmaId lemma, Prime p,
                            std::size_t complete_set_cap = 10000);

/// Re-checks one counterexample from scratch. True if it still fails.
bool counterexample_refails(const Lattice& lattice, LemmaId lemma, Prime p,
                            const Counterexample& ce);

}  // namespace pnil
