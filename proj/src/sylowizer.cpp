#include "pnil/sylowizer.hpp"

#include "pnil/char_sub.hpp"

#include <atomic>
#include <stdexcept>

namespace pnil {

namespace testing {
namespace {
std::atomic<PermutabilityFault> g_fault{PermutabilityFault::none};
}

void inject_permutability_fault(PermutabilityFault fault) { g_fault.store(fault); }
PermutabilityFault permutability_fault() { return g_fault.load(); }

}  // namespace testing

std::vector<std::size_t> p_sylowizer_indices(const Lattice& lattice, const Subgroup& within,
                                             const Subgroup& r, Prime p) {
  if (!is_p_power(r.order(), p)) throw std::invalid_argument("R is not a p-subgroup");
  if (!r.is_subgroup_of(within)) throw std::invalid_argument("R is not contained in the ambient subgroup");

  std::vector<std::size_t> cand;
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    const auto& s = lattice[i];
    if (s.order() < r.order() || s.order() > within.order()) continue;
    if (p_part(s.order(), p) != r.order()) continue;
    if (r.is_subgroup_of(s) && s.is_subgroup_of(within)) cand.push_back(i);
  }
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < cand.size(); ++a) {
    const auto& s = lattice[cand[a]];
    bool maximal = true;
    for (std::size_t b = a + 1; b < cand.size() && maximal; ++b) {
      const auto& t = lattice[cand[b]];
      if (t.order() > s.order() && s.is_subgroup_of(t)) maximal = false;
    }
    if (maximal) out.push_back(cand[a]);
  }
  return out;
}

std::vector<Subgroup> p_sylowizers(const Lattice& lattice, const Subgroup& r, Prime p) {
  std::vector<Subgroup> out;
  for (auto i : p_sylowizer_indices(lattice, lattice.whole(), r, p)) out.push_back(lattice[i]);
  return out;
}

bool permutes(const Subgroup& h, const Subgroup& k) {
  switch (testing::permutability_fault()) {
    case testing::PermutabilityFault::always_permutes: return true;
    case testing::PermutabilityFault::never_permutes: return false;
    case testing::PermutabilityFault::none: break;
  }
  if (h.is_subgroup_of(k) || k.is_subgroup_of(h)) return true;
  const Group& g = h.parent();
  const auto hs = h.indices();
  const auto ks = k.indices();
  // |HK| = |KH|, so HK = KH iff KH is contained in HK.
  ElementSet hk(g.order());
  for (auto a : hs)
    for (auto b : ks) hk.insert(g.multiply(a, b));
  for (auto b : ks)
    for (auto a : hs)
      if (!hk.contains(g.multiply(b, a))) return false;
  return true;
}

bool product_is_subgroup(const Subgroup& h, const Subgroup& k) {
  const Group& g = h.parent();
  ElementSet hk(g.order());
  std::vector<Group::Index> elems;
  h.members().for_each([&](std::size_t a) {
    k.members().for_each([&](std::size_t b) {
      const auto x = g.multiply(static_cast<Group::Index>(a), static_cast<Group::Index>(b));
      if (!hk.contains(x)) {
        hk.insert(x);
        elems.push_back(x);
      }
    });
  });
  // Closed under right multiplication by generators of H and K means closed.
  auto gens = generating_set(h);
  for (auto y : generating_set(k)) gens.push_back(y);
  for (auto x : elems)
    for (auto y : gens)
      if (!hk.contains(g.multiply(x, y))) return false;
  return true;
}

bool is_s_permutable(const Lattice& lattice, const Subgroup& h) {
  return is_s_permutable_in(lattice, lattice.whole(), h);
}

bool is_s_permutable_in(const Lattice& lattice, const Subgroup& k, const Subgroup& h) {
  for (auto p : prime_divisors(k.order()))
    for (auto i : sylow_indices_within(lattice, k, p))
      if (!permutes(h, lattice[i])) return false;
  return true;
}

bool is_z_permutable(const Subgroup& h, const CompleteSylowSet& z) {
  for (const auto& [p, s] : z.members)
    if (!permutes(h, s)) return false;
  return true;
}

CompleteSylowSet canonical_complete_set(const Lattice& lattice) {
  CompleteSylowSet z;
  z.parent = &lattice.group();
  for (auto p : prime_divisors(lattice.group().order()))
    z.members.emplace(p, lattice[lattice.sylow_indices(p).front()]);
  return z;
}

std::uint64_t count_complete_sets(const Lattice& lattice) {
  std::uint64_t n = 1;
  for (auto p : prime_divisors(lattice.group().order())) n *= lattice.sylow_indices(p).size();
  return n;
}

std::vector<CompleteSylowSet> all_complete_sets(const Lattice& lattice, std::size_t cap) {
  if (count_complete_sets(lattice) > cap) throw ResourceLimitError("too many complete Sylow sets");
  const auto primes = prime_divisors(lattice.group().order());
  std::vector<CompleteSylowSet> out(1);
  out.front().parent = &lattice.group();
  for (auto p : primes) {
    std::vector<CompleteSylowSet> next;
    for (const auto& partial : out)
      for (auto i : lattice.sylow_indices(p)) {
        auto z = partial;
        z.members.emplace(p, lattice[i]);
        next.push_back(std::move(z));
      }
    out = std::move(next);
  }
  return out;
}

bool PermutabilityCache::permutes(std::size_t i, std::size_t j) {
  if (i > j) std::swap(i, j);
  const auto key = static_cast<std::uint64_t>(i) * lattice_->size() + j;
  auto it = pairs_.find(key);
  if (it != pairs_.end()) return it->second;
  const bool r = pnil::permutes((*lattice_)[i], (*lattice_)[j]);
  pairs_.emplace(key, r);
  return r;
}

std::optional<std::size_t> PermutabilityCache::first_nonpermuting_sylow(std::size_t h) {
  for (auto p : prime_divisors(lattice_->group().order()))
    for (auto s : lattice_->sylow_indices(p))
      if (!permutes(h, s)) return s;
  return std::nullopt;
}

bool PermutabilityCache::is_s_permutable(std::size_t h) {
  auto it = s_perm_.find(h);
  if (it != s_perm_.end()) return it->second;
  const bool r = !first_nonpermuting_sylow(h).has_value();
  s_perm_.emplace(h, r);
  return r;
}

bool PermutabilityCache::is_s_permutable_in(std::size_t k, std::size_t h) {
  const auto& ks = (*lattice_)[k];
  for (auto p : prime_divisors(ks.order()))
    for (auto s : sylow_indices_within(*lattice_, ks, p))
      if (!permutes(h, s)) return false;
  return true;
}

bool PermutabilityCache::is_z_permutable(std::size_t h, const std::vector<std::size_t>& z) {
  for (auto s : z)
    if (!permutes(h, s)) return false;
  return true;
}

}  // namespace pnil
