#include "pnil/group.hpp"

#include <algorithm>
#include <functional>
#include <string>

namespace pnil {

GroupPtr Group::generate(std::vector<Permutation> generators, std::size_t degree,
                         const Limits& limits) {
  if (degree == 0) throw std::invalid_argument("degree must be positive");
  if (degree > limits.max_degree)
    throw ResourceLimitError("degree " + std::to_string(degree) + " exceeds cap " +
                             std::to_string(limits.max_degree));
  for (const auto& g : generators)
    if (g.degree() != degree) throw std::invalid_argument("incompatible degrees");

  std::shared_ptr<Group> grp(new Group());
  Group& G = *grp;
  G.degree_ = degree;
  G.generators_ = std::move(generators);

  // BFS over the right Cayley graph; parent/gen record how each element was reached.
  std::vector<Index> parent{0};
  std::vector<std::uint32_t> via{0};
  G.elements_.push_back(Permutation::identity(degree));
  G.index_.emplace(G.elements_.front(), 0);

  std::size_t layer_begin = 0;
  while (layer_begin < G.elements_.size()) {
    const std::size_t layer_end = G.elements_.size();
    struct Found {
      Permutation perm;
      Index parent;
      std::uint32_t gen;
    };
    std::vector<Found> next;
    std::unordered_map<Permutation, std::size_t, PermutationHash> seen;
    for (std::size_t e = layer_begin; e < layer_end; ++e) {
      for (std::uint32_t s = 0; s < G.generators_.size(); ++s) {
        auto x = compose(G.elements_[e], G.generators_[s]);
        if (G.index_.count(x) || seen.count(x)) continue;
        seen.emplace(x, next.size());
        next.push_back({std::move(x), static_cast<Index>(e), s});
        if (G.elements_.size() + next.size() > limits.max_order)
          throw ResourceLimitError("group too large for exhaustive mode");
      }
    }
    std::sort(next.begin(), next.end(),
              [](const Found& a, const Found& b) { return a.perm < b.perm; });
    for (auto& f : next) {
      G.index_.emplace(f.perm, static_cast<Index>(G.elements_.size()));
      G.elements_.push_back(std::move(f.perm));
      parent.push_back(f.parent);
      via.push_back(f.gen);
    }
    layer_begin = layer_end;
  }

  const std::size_t n = G.elements_.size();
  for (const auto& g : G.generators_) G.generator_indices_.push_back(*G.index_of(g));

  if (n <= kTableLimit) {
    // x * g for every element x and generator g, then extend along BFS words:
    // e_i * e_j = (e_i * e_parent(j)) * gen(j).
    std::vector<std::vector<Index>> right_gen(G.generators_.size(), std::vector<Index>(n));
    for (std::size_t s = 0; s < G.generators_.size(); ++s)
      for (std::size_t x = 0; x < n; ++x)
        right_gen[s][x] = G.index_.at(compose(G.elements_[x], G.generators_[s]));
    G.table_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      Index* row = &G.table_[i * n];
      row[0] = static_cast<Index>(i);
      for (std::size_t j = 1; j < n; ++j) row[j] = right_gen[via[j]][row[parent[j]]];
    }
  }

  G.inverses_.resize(n);
  G.element_orders_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    G.inverses_[i] = G.index_.at(inverse(G.elements_[i]));
    G.element_orders_[i] = element_order(G.elements_[i]);
  }
  return grp;
}

std::optional<Group::Index> Group::index_of(const Permutation& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool Group::contains(const Permutation& p) const {
  if (p.degree() != degree_) throw std::invalid_argument("incompatible degrees");
  return index_.count(p) != 0;
}

Group::Index Group::slow_multiply(Index i, Index j) const {
  return index_.at(compose(elements_[i], elements_[j]));
}

GroupPtr generate_group(std::vector<Permutation> generators, std::size_t degree,
                        const Limits& limits) {
  return Group::generate(std::move(generators), degree, limits);
}

bool is_member(const Group& g, const Permutation& p) { return g.contains(p); }

namespace {

// Stabilizer chain with base 0, 1, ..., n-1. Level k keeps a transversal of
// the orbit of k under the pointwise stabilizer of {0, ..., k-1}.
class StabilizerChain {
 public:
  explicit StabilizerChain(std::size_t n) : n_(n), gens_(n), trans_(n) {
    for (std::size_t k = 0; k < n; ++k) {
      trans_[k].resize(n);
      trans_[k][k] = Permutation::identity(n);
    }
  }

  void insert(std::size_t k, const Permutation& g) {
    if (sifts(k, g)) return;
    gens_[k].push_back(g);
    for (std::size_t pt = 0; pt < n_; ++pt)
      if (trans_[k][pt]) update(k, compose(*trans_[k][pt], g));
  }

  std::uint64_t order() const {
    std::uint64_t r = 1;
    for (const auto& level : trans_)
      r *= static_cast<std::uint64_t>(
          std::count_if(level.begin(), level.end(), [](const auto& t) { return t.has_value(); }));
    return r;
  }

 private:
  bool sifts(std::size_t k, Permutation g) const {
    for (; k < n_; ++k) {
      const auto pt = g(static_cast<Point>(k));
      if (!trans_[k][pt]) return false;
      g = compose(g, inverse(*trans_[k][pt]));
    }
    return true;
  }

  // t maps base point k somewhere in its orbit.
  void update(std::size_t k, const Permutation& t) {
    const auto pt = t(static_cast<Point>(k));
    if (trans_[k][pt]) {
      if (k + 1 < n_) insert(k + 1, compose(t, inverse(*trans_[k][pt])));
      return;
    }
    trans_[k][pt] = t;
    for (std::size_t s = 0; s < gens_[k].size(); ++s) update(k, compose(t, gens_[k][s]));
  }

  std::size_t n_;
  std::vector<std::vector<Permutation>> gens_;
  std::vector<std::vector<std::optional<Permutation>>> trans_;
};

}  // namespace

std::uint64_t stabilizer_chain_order(std::span<const Permutation> generators, std::size_t degree) {
  StabilizerChain chain(degree);
  for (const auto& g : generators) {
    if (g.degree() != degree) throw std::invalid_argument("incompatible degrees");
    chain.insert(0, g);
  }
  return chain.order();
}

}  // namespace pnil
