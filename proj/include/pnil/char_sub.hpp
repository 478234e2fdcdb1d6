#pragma once

#include "pnil/lattice.hpp"
#include "pnil/primes.hpp"

#include <string>
#include <vector>

namespace pnil {

/// A set of primes pi, or its complement pi' when `complement` is set.
struct PrimeSet {
  std::vector<Prime> primes;  // sorted, all prime
  bool complement = false;

  static PrimeSet only(Prime p) { return {{p}, false}; }
  static PrimeSet excluding(Prime p) { return {{p}, true}; }

  bool contains(Prime q) const;
  /// Every prime divisor of n lies in the set.
  bool admits(std::uint64_t n) const;
  std::string to_string() const;
};

/// Sylow p-subgroups of G in lattice order; the trivial subgroup when p does
/// not divide |G|. Throws std::logic_error if they are not all conjugate.
std::vector<Subgroup> sylow_subgroups(const Lattice& lattice, Prime p);

/// Sylow p-subgroups of a subgroup k, taken from the lattice of its parent.
std::vector<std::size_t> sylow_indices_within(const Lattice& lattice, const Subgroup& k, Prime p);

/// Largest normal pi-subgroup of k: the join of the normal closures in k of
/// the pi-elements whose closure is a pi-group.
Subgroup o_pi(const Subgroup& k, const PrimeSet& pi);
Subgroup o_pi(const Group& g, const PrimeSet& pi);

/// Subgroup of k generated by its p'-elements.
Subgroup o_upper_p(const Subgroup& k, Prime p);
Subgroup o_upper_p(const Group& g, Prime p);

/// k has a normal p-complement, i.e. |O_p'(k)| is the p'-part of |k|.
bool is_p_nilpotent(const Subgroup& k, Prime p);
bool is_p_nilpotent(const Group& g, Prime p);

/// Every Sylow subgroup of G is normal.
bool is_nilpotent(const Lattice& lattice);

}  // namespace pnil
