#pragma once

#include "pnil/lattice.hpp"

#include <vector>

namespace pnil {

/// G/N realized as the permutation action of G on the cosets of N.
///
/// Cosets are numbered by their smallest member index; g acts on the coset
/// Nx by Nx -> Nxg, so forward is a homomorphism under left-to-right products.
struct QuotientMap {
  const Group* source = nullptr;
  Subgroup kernel;
  GroupPtr image;
  std::vector<Group::Index> forward;     // source element -> image element
  std::vector<std::uint32_t> coset_of;   // source element -> coset number
  std::vector<Group::Index> coset_reps;  // smallest member of each coset
};

/// Throws std::invalid_argument("kernel not normal") unless n is normal.
QuotientMap quotient(const Group& g, const Subgroup& n);

/// HN/N as a subgroup of the image.
Subgroup project_subgroup(const QuotientMap& q, const Subgroup& h);

/// Full preimage of a subgroup of the image.
Subgroup preimage_subgroup(const QuotientMap& q, const Subgroup& k);

}  // namespace pnil
