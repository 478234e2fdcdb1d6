#pragma once

#include "pnil/element_set.hpp"
#include "pnil/group.hpp"
#include "pnil/primes.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace pnil {

/// A subgroup of a parent Group, stored as a membership bitset over the
/// parent's canonical element indices. Equality is bitset equality.
///
/// The parent is referenced, not owned; it must outlive the subgroup.
class Subgroup {
 public:
  Subgroup() = default;
  /// `members` must already be closed; use generate_subgroup otherwise.
  Subgroup(const Group& parent, ElementSet members)
      : parent_(&parent), members_(std::move(members)), order_(members_.count()) {}

  const Group& parent() const { return *parent_; }
  const ElementSet& members() const { return members_; }
  std::size_t order() const { return order_; }
  bool contains(std::size_t i) const { return members_.contains(i); }
  bool is_subgroup_of(const Subgroup& o) const { return members_.is_subset_of(o.members_); }
  bool is_trivial() const { return order_ == 1; }
  std::vector<std::uint32_t> indices() const { return members_.to_indices(); }

  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.members_ == b.members_; }

 private:
  const Group* parent_ = nullptr;
  ElementSet members_;
  std::size_t order_ = 0;
};

Subgroup trivial_subgroup(const Group& g);
Subgroup whole_group(const Group& g);

/// Smallest subgroup containing the given elements.
Subgroup generate_subgroup(const Group& g, std::span<const Group::Index> generators);
/// <H, x>.
Subgroup extend_subgroup(const Subgroup& h, std::span<const Group::Index> h_generators,
                         Group::Index x);
Subgroup join(const Subgroup& a, const Subgroup& b);
Subgroup intersect(const Subgroup& a, const Subgroup& b);

/// A small generating set of h, picked greedily in element order.
std::vector<Group::Index> generating_set(const Subgroup& h);

/// x H x^-1 = H for every x in `by`.
bool normalizes(const Subgroup& h, const Subgroup& by);
bool is_normal_in(const Subgroup& h, const Subgroup& k);
bool is_normal(const Subgroup& h);
bool is_abelian(const Subgroup& h);

/// Smallest normal subgroup of k containing h (h <= k).
Subgroup normal_closure(const Subgroup& h, const Subgroup& k);

/// Every subgroup of a group, each exactly once, sorted by (order, members).
///
/// Immutable once built; concurrent readers are safe.
class Lattice {
 public:
  static constexpr std::size_t kDefaultCap = 2000;

  /// Throws ResourceLimitError("lattice too large") when |G| exceeds cap.
  explicit Lattice(GroupPtr group, std::size_t cap = kDefaultCap);

  const Group& group() const { return *group_; }
  const GroupPtr& group_ptr() const { return group_; }

  std::size_t size() const { return subgroups_.size(); }
  const Subgroup& operator[](std::size_t i) const { return subgroups_[i]; }
  std::span<const Subgroup> subgroups() const { return subgroups_; }

  std::optional<std::size_t> find(const ElementSet& members) const;
  /// Throws std::logic_error if s is not in the lattice.
  std::size_t index_of(const Subgroup& s) const;

  bool is_normal(std::size_t i) const { return normal_[i]; }
  std::span<const Group::Index> generators(std::size_t i) const { return gens_[i]; }

  std::size_t trivial_index() const { return 0; }
  std::size_t whole_index() const { return subgroups_.size() - 1; }
  const Subgroup& trivial() const { return subgroups_.front(); }
  const Subgroup& whole() const { return subgroups_.back(); }

  /// Lattice indices of the Sylow p-subgroups, in lattice order. For p not
  /// dividing |G| this is the trivial subgroup alone.
  std::vector<std::size_t> sylow_indices(Prime p) const;

  /// Lattice indices of the subgroups contained in s.
  std::vector<std::size_t> subgroups_of(const Subgroup& s) const;

 private:
  GroupPtr group_;
  std::vector<Subgroup> subgroups_;
  std::vector<std::vector<Group::Index>> gens_;
  std::vector<bool> normal_;
  std::unordered_map<ElementSet, std::size_t, ElementSetHash> lookup_;
  std::map<Prime, std::vector<std::size_t>> sylow_;
};

std::vector<Subgroup> all_subgroups(const Lattice& lattice);

/// Subgroups of k that are normal in k.
std::vector<Subgroup> normal_subgroups_of(const Lattice& lattice, const Subgroup& k);

/// N_G(H).
Subgroup normalizer(const Subgroup& h);
/// N_K(H) for H, K in the same group.
Subgroup normalizer_in(const Subgroup& h, const Subgroup& k);

/// True iff the chain of successive normal closures from G ends at H.
bool is_subnormal(const Subgroup& h);

Subgroup derived_subgroup(const Subgroup& h);

/// Proper subgroups of h not contained in another proper subgroup of h.
std::vector<Subgroup> maximal_subgroups(const Lattice& lattice, const Subgroup& h);
Subgroup frattini_subgroup(const Lattice& lattice, const Subgroup& h);

std::vector<Subgroup> minimal_normal_subgroups(const Lattice& lattice);

/// "order N {0 3 5}" style label, used in reports.
std::string describe(const Subgroup& s);

}  // namespace pnil
