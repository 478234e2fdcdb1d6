#pragma once

#include "pnil/permutation.hpp"

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace pnil {

/// Raised when an exhaustive computation would exceed a configured cap.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Limits {
  std::size_t max_degree = 32;
  std::size_t max_order = 100000;
};

class Group;
using GroupPtr = std::shared_ptr<const Group>;

/// A finite permutation group with every element enumerated.
///
/// Elements are stored in canonical order: breadth-first from the identity
/// over the generator list, each breadth-first layer sorted by image array.
/// Element 0 is the identity. Every bitset in the library indexes into this
/// order, so it must stay stable across runs.
///
/// Immutable after construction and safe to share between threads.
class Group {
 public:
  using Index = std::uint32_t;

  Group(const Group&) = delete;
  Group& operator=(const Group&) = delete;

  /// Throws ResourceLimitError("group too large for exhaustive mode") when
  /// the closure exceeds limits.max_order, and std::invalid_argument on bad
  /// generators or a degree above limits.max_degree.
  static GroupPtr generate(std::vector<Permutation> generators, std::size_t degree,
                           const Limits& limits = {});

  std::size_t degree() const { return degree_; }
  std::size_t order() const { return elements_.size(); }
  std::span<const Permutation> generators() const { return generators_; }
  std::span<const Permutation> elements() const { return elements_; }
  const Permutation& element(std::size_t i) const { return elements_[i]; }

  /// Generator positions in the element table.
  std::span<const Index> generator_indices() const { return generator_indices_; }

  std::optional<Index> index_of(const Permutation& p) const;
  /// Throws std::invalid_argument on degree mismatch.
  bool contains(const Permutation& p) const;

  /// Index of element(i) * element(j), element(i) acting first.
  Index multiply(Index i, Index j) const {
    if (!table_.empty()) return table_[static_cast<std::size_t>(i) * elements_.size() + j];
    return slow_multiply(i, j);
  }
  Index inverse_of(Index i) const { return inverses_[i]; }
  std::uint64_t order_of(Index i) const { return element_orders_[i]; }

  /// g^-1 x g, i.e. x conjugated by g.
  Index conjugate(Index x, Index g) const { return multiply(multiply(inverses_[g], x), g); }

  /// Groups up to this order carry a full multiplication table.
  static constexpr std::size_t kTableLimit = 2048;

 private:
  Group() = default;
  Index slow_multiply(Index i, Index j) const;

  std::size_t degree_ = 0;
  std::vector<Permutation> generators_;
  std::vector<Index> generator_indices_;
  std::vector<Permutation> elements_;
  std::unordered_map<Permutation, Index, PermutationHash> index_;
  std::vector<Index> table_;
  std::vector<Index> inverses_;
  std::vector<std::uint64_t> element_orders_;
};

GroupPtr generate_group(std::vector<Permutation> generators, std::size_t degree,
                        const Limits& limits = {});

bool is_member(const Group& g, const Permutation& p);

/// Group order from a stabilizer chain (Schreier-Sims with a full base).
/// Independent of the exhaustive closure; used as a cross-check.
std::uint64_t stabilizer_chain_order(std::span<const Permutation> generators, std::size_t degree);

}  // namespace pnil
