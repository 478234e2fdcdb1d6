#pragma once

#include "pnil/char_sub.hpp"
#include "pnil/lattice.hpp"
#include "pnil/sylowizer.hpp"

#include <chrono>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace pnil {

/// Per-group memo shared by the decision procedures of one task: sylowizer
/// lists, O^p(G), canonical Sylow subgroups and pairwise permutability.
/// Not thread-safe; the lattice it reads is.
class Analysis {
 public:
  explicit Analysis(const Lattice& lattice) : lattice_(&lattice), perm_(lattice) {}

  const Lattice& lattice() const { return *lattice_; }
  const Group& group() const { return lattice_->group(); }
  PermutabilityCache& perm() { return perm_; }

  /// p-sylowizers of lattice[r] inside lattice[within] (default: G).
  const std::vector<std::size_t>& sylowizers(std::size_t r, Prime p);
  const std::vector<std::size_t>& sylowizers_within(std::size_t within, std::size_t r, Prime p);

  std::size_t o_upper_p(Prime p);
  std::size_t canonical_sylow(Prime p) const { return lattice_->sylow_indices(p).front(); }
  /// Lattice index of lattice[a] and lattice[b] intersected.
  std::size_t meet(std::size_t a, std::size_t b) const;
  /// Lattice index of an arbitrary subgroup of G.
  std::size_t index_of(const Subgroup& s) const { return lattice_->index_of(s); }

 private:
  const Lattice* lattice_;
  PermutabilityCache perm_;
  std::map<std::tuple<std::size_t, std::size_t, Prime>, std::vector<std::size_t>> sylowizers_;
  std::map<Prime, std::size_t> o_upper_;
};

enum class TheoremId { T31, C32, C33, T34, C35, T36, T37, C38, C39, C310 };
inline constexpr TheoremId kAllTheorems[] = {TheoremId::T31, TheoremId::C32, TheoremId::C33,
                                             TheoremId::T34, TheoremId::C35, TheoremId::T36,
                                             TheoremId::T37, TheoremId::C38, TheoremId::C39,
                                             TheoremId::C310};

/// Condition imposed on S ∩ O^p(G): S-permutable in G, or normal in O^p(G).
enum class Mode { s_permutable, normal_in_op };

std::string_view to_string(TheoremId id);
std::optional<TheoremId> parse_theorem(std::string_view s);
std::string_view to_string(Mode m);
/// Accepts "s", "n", "s_permutable", "normal_in_op".
std::optional<Mode> parse_mode(std::string_view s);

/// Error for parameters that do not satisfy a criterion's preconditions.
class CriterionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct CriterionParams {
  TheoremId theorem = TheoremId::T31;
  Prime p = 0;         // 0 for C39, which ranges over all primes
  std::uint64_t d = 0; // 0 where the criterion has no divisor parameter
  Mode mode = Mode::s_permutable;
  std::optional<CompleteSylowSet> complete_set;  // T37
  std::string complete_set_id;                   // "canonical" or ordinal in all_complete_sets
  std::optional<Subgroup> normal_n;              // C33, C310
  /// Lattice index of the Sylow p-subgroup to use instead of the canonical one.
  std::optional<std::size_t> sylow_override;
};

enum class WitnessKind { sylowizer_condition, normalizer, quotient, chain_step, no_candidate };
std::string_view to_string(WitnessKind k);
std::optional<WitnessKind> parse_witness_kind(std::string_view s);

/// A replayable failure: named subgroups as element-index lists in the
/// parent's canonical order.
struct Witness {
  WitnessKind kind = WitnessKind::sylowizer_condition;
  Prime prime = 0;
  std::string reason;
  std::map<std::string, std::vector<std::uint32_t>> subgroups;
};

struct HypothesisResult {
  bool holds = false;
  std::vector<Witness> witnesses;  // the search stops after kMaxWitnesses failures
  std::vector<std::size_t> chain;  // lattice indices, chain criteria only
};

inline constexpr std::size_t kMaxWitnesses = 8;

struct CriterionReport {
  std::string group_name;
  CriterionParams params;
  bool hypothesis_holds = false;
  bool conclusion_holds = false;
  bool equivalent = false;
  std::vector<Witness> witnesses;
  std::vector<std::vector<std::uint32_t>> chain;
  std::chrono::microseconds elapsed{0};
};

/// Every normal subgroup H of G_p with |H| = d (and of order 4 when
/// d = p = 2 and G_p is non-abelian) has only sylowizers S with S ∩ O^p(G)
/// satisfying `mode`. Requires p to be the smallest prime divisor of |G|.
HypothesisResult hypothesis_t31(Analysis& a, Prime p, std::uint64_t d, Mode mode,
                                std::optional<std::size_t> sylow = std::nullopt);

/// N_G(G_p) is p-nilpotent and the per-subgroup condition of T31 holds
/// (no order-4 clause). Requires p odd.
HypothesisResult hypothesis_t34(Analysis& a, Prime p, std::uint64_t d, Mode mode,
                                std::optional<std::size_t> sylow = std::nullopt);

/// N_G(G_p) is p-nilpotent and some P with G_p' <= P <= Phi(G_p) has some
/// sylowizer S with S ∩ O^p(G) satisfying `mode`.
HypothesisResult hypothesis_t36(Analysis& a, Prime p, Mode mode,
                                std::optional<std::size_t> sylow = std::nullopt);

/// Z(p) has a chain 1 = P_0 < ... < P_n = Z(p) with index-p steps such that
/// every sylowizer of every P_i, P_0 included, is Z-permutable.
HypothesisResult hypothesis_t37(Analysis& a, Prime p, const CompleteSylowSet& z);

/// T37 with S-permutability in place of Z-permutability, chain inside the
/// given (default canonical) Sylow p-subgroup.
HypothesisResult hypothesis_c38(Analysis& a, Prime p,
                                std::optional<std::size_t> sylow = std::nullopt);

/// C38 holds for every prime divisor of |G|.
HypothesisResult hypothesis_c39(Analysis& a);

enum class NormalVariant { C33, C310 };

/// G/N is p-nilpotent and the T31-style (C33) or chain (C310) condition
/// holds over N_p, a Sylow p-subgroup of N, with sylowizers taken in G.
HypothesisResult hypothesis_with_normal(Analysis& a, const Subgroup& n, Prime p, std::uint64_t d,
                                        NormalVariant variant, Mode mode = Mode::s_permutable);

/// The condition mode a criterion actually uses: T31/T34 fix s_permutable,
/// C32/C35 fix normal_in_op, the rest read params.mode.
Mode effective_mode(const CriterionParams& params);
bool uses_mode(TheoremId id);

/// Runs the hypothesis for params.theorem and compares it against the
/// p-nilpotency (nilpotency for C39) of G. Throws CriterionError on invalid
/// params only.
CriterionReport check_equivalence(Analysis& a, const CriterionParams& params,
                                  std::string group_name = {});

/// Re-checks one witness in isolation, without the memo. True if it still fails.
bool witness_refails(const Lattice& lattice, const CriterionParams& params, const Witness& w);

struct ParamSweep {
  std::optional<Prime> prime;                  // restrict to one prime
  std::vector<Mode> modes{Mode::s_permutable, Mode::normal_in_op};
  bool all_complete_sets = false;
  std::size_t complete_set_cap = 10000;
};

/// All admissible parameter tuples of a criterion for the group. Throws
/// ResourceLimitError when a complete-set sweep exceeds its cap.
std::vector<CriterionParams> admissible_params(const Lattice& lattice, TheoremId id,
                                               const ParamSweep& sweep = {});

}  // namespace pnil
