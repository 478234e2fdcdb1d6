#include "pnil/quotient.hpp"

#include <stdexcept>

namespace pnil {

QuotientMap quotient(const Group& g, const Subgroup& n) {
  if (!is_normal(n)) throw std::invalid_argument("kernel not normal");

  QuotientMap q;
  q.source = &g;
  q.kernel = n;
  constexpr auto kUnassigned = static_cast<std::uint32_t>(-1);
  q.coset_of.assign(g.order(), kUnassigned);
  const auto kernel = n.indices();
  for (Group::Index x = 0; x < g.order(); ++x) {
    if (q.coset_of[x] != kUnassigned) continue;
    const auto id = static_cast<std::uint32_t>(q.coset_reps.size());
    q.coset_reps.push_back(x);
    for (auto k : kernel) q.coset_of[g.multiply(k, x)] = id;
  }

  const std::size_t index = q.coset_reps.size();
  auto action = [&](Group::Index x) {
    std::vector<Point> im(index);
    for (std::size_t c = 0; c < index; ++c) im[c] = q.coset_of[g.multiply(q.coset_reps[c], x)];
    return Permutation(std::move(im));
  };

  std::vector<Permutation> gens;
  for (auto x : g.generator_indices()) gens.push_back(action(x));
  Limits limits;
  limits.max_degree = std::max(limits.max_degree, index);
  limits.max_order = std::max(limits.max_order, index);
  q.image = generate_group(std::move(gens), index, limits);

  // forward is constant on cosets.
  std::vector<Group::Index> by_coset(index);
  for (std::size_t c = 0; c < index; ++c) by_coset[c] = *q.image->index_of(action(q.coset_reps[c]));
  q.forward.resize(g.order());
  for (Group::Index x = 0; x < g.order(); ++x) q.forward[x] = by_coset[q.coset_of[x]];
  return q;
}

Subgroup project_subgroup(const QuotientMap& q, const Subgroup& h) {
  ElementSet out(q.image->order());
  h.members().for_each([&](std::size_t x) { out.insert(q.forward[x]); });
  return Subgroup(*q.image, std::move(out));
}

Subgroup preimage_subgroup(const QuotientMap& q, const Subgroup& k) {
  ElementSet out(q.source->order());
  for (Group::Index x = 0; x < q.source->order(); ++x)
    if (k.contains(q.forward[x])) out.insert(x);
  return Subgroup(*q.source, std::move(out));
}

}  // namespace pnil
