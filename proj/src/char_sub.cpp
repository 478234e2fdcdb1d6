#include "pnil/char_sub.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace pnil {

bool PrimeSet::contains(Prime q) const {
  const bool in = std::binary_search(primes.begin(), primes.end(), q);
  return complement ? !in : in;
}

bool PrimeSet::admits(std::uint64_t n) const {
  for (auto q : prime_divisors(n))
    if (!contains(q)) return false;
  return true;
}

std::string PrimeSet::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < primes.size(); ++i) os << (i ? "," : "") << primes[i];
  os << '}';
  if (complement) os << '\'';
  return os.str();
}

std::vector<Subgroup> sylow_subgroups(const Lattice& lattice, Prime p) {
  const Group& g = lattice.group();
  std::vector<Subgroup> out;
  for (auto i : lattice.sylow_indices(p)) out.push_back(lattice[i]);

  // Sylow's theorem: the conjugates of the first are exactly the list.
  std::unordered_set<ElementSet, ElementSetHash> conjugates;
  const auto first = out.front().indices();
  for (Group::Index x = 0; x < g.order(); ++x) {
    ElementSet c(g.order());
    for (auto y : first) c.insert(g.conjugate(y, x));
    conjugates.insert(std::move(c));
  }
  if (conjugates.size() != out.size())
    throw std::logic_error("Sylow subgroups are not a single conjugacy class");
  for (const auto& s : out)
    if (!conjugates.count(s.members()))
      throw std::logic_error("Sylow subgroups are not a single conjugacy class");
  return out;
}

std::vector<std::size_t> sylow_indices_within(const Lattice& lattice, const Subgroup& k, Prime p) {
  const auto target = p_part(k.order(), p);
  std::vector<std::size_t> out;
  for (auto i : lattice.subgroups_of(k))
    if (lattice[i].order() == target) out.push_back(i);
  return out;
}

Subgroup o_pi(const Subgroup& k, const PrimeSet& pi) {
  const Group& g = k.parent();
  Subgroup result = trivial_subgroup(g);
  k.members().for_each([&](std::size_t x) {
    if (result.contains(x) || !pi.admits(g.order_of(static_cast<Group::Index>(x)))) return;
    const Group::Index gx[] = {static_cast<Group::Index>(x)};
    auto c = normal_closure(generate_subgroup(g, gx), k);
    if (pi.admits(c.order())) result = join(result, c);
  });
  return result;
}

Subgroup o_pi(const Group& g, const PrimeSet& pi) { return o_pi(whole_group(g), pi); }

Subgroup o_upper_p(const Subgroup& k, Prime p) {
  const Group& g = k.parent();
  std::vector<Group::Index> elems;
  k.members().for_each([&](std::size_t x) {
    if (g.order_of(static_cast<Group::Index>(x)) % p != 0)
      elems.push_back(static_cast<Group::Index>(x));
  });
  return generate_subgroup(g, elems);
}

Subgroup o_upper_p(const Group& g, Prime p) { return o_upper_p(whole_group(g), p); }

bool is_p_nilpotent(const Subgroup& k, Prime p) {
  return o_pi(k, PrimeSet::excluding(p)).order() == p_prime_part(k.order(), p);
}

bool is_p_nilpotent(const Group& g, Prime p) { return is_p_nilpotent(whole_group(g), p); }

bool is_nilpotent(const Lattice& lattice) {
  for (auto p : prime_divisors(lattice.group().order()))
    for (auto i : lattice.sylow_indices(p))
      if (!lattice.is_normal(i)) return false;
  return true;
}

}  // namespace pnil
