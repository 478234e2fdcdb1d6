#include "pnil/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace pnil {

Subgroup trivial_subgroup(const Group& g) {
  ElementSet s(g.order());
  s.insert(0);
  return Subgroup(g, std::move(s));
}

Subgroup whole_group(const Group& g) {
  ElementSet s(g.order());
  for (std::size_t i = 0; i < g.order(); ++i) s.insert(i);
  return Subgroup(g, std::move(s));
}

Subgroup extend_subgroup(const Subgroup& h, std::span<const Group::Index> h_generators,
                         Group::Index x) {
  if (h.contains(x)) return h;
  const Group& g = h.parent();
  std::vector<Group::Index> gens(h_generators.begin(), h_generators.end());
  gens.push_back(x);
  const auto base = h.indices();

  // The result is a union of right cosets H*r; it is closed once every
  // coset representative times every generator lands inside it.
  ElementSet members = h.members();
  std::vector<Group::Index> reps{0};
  for (std::size_t r = 0; r < reps.size(); ++r) {
    for (auto s : gens) {
      const auto y = g.multiply(reps[r], s);
      if (members.contains(y)) continue;
      for (auto e : base) members.insert(g.multiply(e, y));
      reps.push_back(y);
    }
  }
  return Subgroup(g, std::move(members));
}

Subgroup generate_subgroup(const Group& g, std::span<const Group::Index> generators) {
  Subgroup cur = trivial_subgroup(g);
  std::vector<Group::Index> used;
  for (auto x : generators) {
    if (cur.contains(x)) continue;
    cur = extend_subgroup(cur, used, x);
    used.push_back(x);
  }
  return cur;
}

std::vector<Group::Index> generating_set(const Subgroup& h) {
  std::vector<Group::Index> gens;
  Subgroup cur = trivial_subgroup(h.parent());
  for (auto i = h.members().first(); i != ElementSet::npos && cur.order() < h.order();
       i = h.members().next(i)) {
    if (cur.contains(i)) continue;
    cur = extend_subgroup(cur, gens, static_cast<Group::Index>(i));
    gens.push_back(static_cast<Group::Index>(i));
  }
  return gens;
}

Subgroup join(const Subgroup& a, const Subgroup& b) {
  if (b.is_subgroup_of(a)) return a;
  if (a.is_subgroup_of(b)) return b;
  auto gens = generating_set(a);
  Subgroup cur = a;
  for (auto x : generating_set(b)) {
    if (cur.contains(x)) continue;
    cur = extend_subgroup(cur, gens, x);
    gens.push_back(x);
  }
  return cur;
}

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  return Subgroup(a.parent(), a.members() & b.members());
}

namespace {

bool normalized_by(const Group& g, const Subgroup& h, std::span<const Group::Index> h_gens,
                   std::span<const Group::Index> by_gens) {
  for (auto x : by_gens)
    for (auto y : h_gens)
      if (!h.contains(g.conjugate(y, x))) return false;
  return true;
}

}  // namespace

bool normalizes(const Subgroup& h, const Subgroup& by) {
  return normalized_by(h.parent(), h, generating_set(h), generating_set(by));
}

bool is_normal_in(const Subgroup& h, const Subgroup& k) {
  return h.is_subgroup_of(k) && normalizes(h, k);
}

bool is_normal(const Subgroup& h) {
  return normalized_by(h.parent(), h, generating_set(h), h.parent().generator_indices());
}

bool is_abelian(const Subgroup& h) {
  const Group& g = h.parent();
  const auto gens = generating_set(h);
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (g.multiply(gens[i], gens[j]) != g.multiply(gens[j], gens[i])) return false;
  return true;
}

Subgroup normal_closure(const Subgroup& h, const Subgroup& k) {
  const Group& g = h.parent();
  const auto k_gens = generating_set(k);
  auto gens = generating_set(h);
  Subgroup cur = h;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (auto x : k_gens) {
      const auto c = g.conjugate(gens[i], x);
      if (cur.contains(c)) continue;
      cur = extend_subgroup(cur, gens, c);
      gens.push_back(c);
    }
  }
  return cur;
}

Lattice::Lattice(GroupPtr group, std::size_t cap) : group_(std::move(group)) {
  const Group& g = *group_;
  if (g.order() > cap) throw ResourceLimitError("lattice too large");

  struct Entry {
    Subgroup sub;
    std::vector<Group::Index> gens;
  };
  std::vector<Entry> found;
  std::unordered_map<ElementSet, std::size_t, ElementSetHash> seen;
  auto add = [&](Subgroup s, std::vector<Group::Index> gens) {
    auto [it, inserted] = seen.emplace(s.members(), found.size());
    if (inserted) found.push_back({std::move(s), std::move(gens)});
    return inserted;
  };

  add(trivial_subgroup(g), {});
  // Cyclic subgroups, one generator each.
  std::vector<std::size_t> cyclic;
  for (Group::Index x = 1; x < g.order(); ++x) {
    std::vector<Group::Index> gx{x};
    if (add(generate_subgroup(g, gx), gx)) cyclic.push_back(found.size() - 1);
  }
  // Every subgroup is a join of cyclic subgroups: close under joining
  // each known subgroup with each cyclic subgroup until nothing new appears.
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (auto c : cyclic) {
      const auto x = found[c].gens.front();
      if (found[i].sub.contains(x)) continue;
      auto j = extend_subgroup(found[i].sub, found[i].gens, x);
      if (seen.count(j.members())) continue;
      auto gens = found[i].gens;
      gens.push_back(x);
      add(std::move(j), std::move(gens));
    }
  }

  std::vector<std::size_t> order(found.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& sa = found[a].sub;
    const auto& sb = found[b].sub;
    if (sa.order() != sb.order()) return sa.order() < sb.order();
    return sa.members() < sb.members();
  });
  subgroups_.reserve(found.size());
  for (auto i : order) {
    lookup_.emplace(found[i].sub.members(), subgroups_.size());
    subgroups_.push_back(std::move(found[i].sub));
    gens_.push_back(std::move(found[i].gens));
  }
  normal_.resize(subgroups_.size());
  for (std::size_t i = 0; i < subgroups_.size(); ++i)
    normal_[i] = normalized_by(g, subgroups_[i], gens_[i], g.generator_indices());

  for (auto p : prime_divisors(g.order())) {
    const auto target = p_part(g.order(), p);
    auto& v = sylow_[p];
    for (std::size_t i = 0; i < subgroups_.size(); ++i)
      if (subgroups_[i].order() == target) v.push_back(i);
  }
}

std::optional<std::size_t> Lattice::find(const ElementSet& members) const {
  auto it = lookup_.find(members);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::size_t Lattice::index_of(const Subgroup& s) const {
  auto i = find(s.members());
  if (!i) throw std::logic_error("subgroup not present in lattice");
  return *i;
}

std::vector<std::size_t> Lattice::sylow_indices(Prime p) const {
  auto it = sylow_.find(p);
  if (it == sylow_.end()) return {trivial_index()};
  return it->second;
}

std::vector<std::size_t> Lattice::subgroups_of(const Subgroup& s) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < subgroups_.size() && subgroups_[i].order() <= s.order(); ++i)
    if (subgroups_[i].is_subgroup_of(s)) out.push_back(i);
  return out;
}

std::vector<Subgroup> all_subgroups(const Lattice& lattice) {
  return {lattice.subgroups().begin(), lattice.subgroups().end()};
}

std::vector<Subgroup> normal_subgroups_of(const Lattice& lattice, const Subgroup& k) {
  const Group& g = lattice.group();
  const auto k_gens = generating_set(k);
  std::vector<Subgroup> out;
  for (auto i : lattice.subgroups_of(k))
    if (normalized_by(g, lattice[i], lattice.generators(i), k_gens)) out.push_back(lattice[i]);
  return out;
}

Subgroup normalizer_in(const Subgroup& h, const Subgroup& k) {
  const Group& g = h.parent();
  const auto h_gens = generating_set(h);
  ElementSet out(g.order());
  k.members().for_each([&](std::size_t x) {
    for (auto y : h_gens)
      if (!h.contains(g.conjugate(y, static_cast<Group::Index>(x)))) return;
    out.insert(x);
  });
  return Subgroup(g, std::move(out));
}

Subgroup normalizer(const Subgroup& h) { return normalizer_in(h, whole_group(h.parent())); }

bool is_subnormal(const Subgroup& h) {
  Subgroup k = whole_group(h.parent());
  while (!(k == h)) {
    auto c = normal_closure(h, k);
    if (c == k) return false;
    k = std::move(c);
  }
  return true;
}

Subgroup derived_subgroup(const Subgroup& h) {
  const Group& g = h.parent();
  const auto gens = generating_set(h);
  std::vector<Group::Index> comms;
  for (auto a : gens)
    for (auto b : gens) {
      const auto c =
          g.multiply(g.multiply(g.multiply(g.inverse_of(a), g.inverse_of(b)), a), b);
      if (c != 0) comms.push_back(c);
    }
  return normal_closure(generate_subgroup(g, comms), h);
}

std::vector<Subgroup> maximal_subgroups(const Lattice& lattice, const Subgroup& h) {
  std::vector<std::size_t> proper;
  for (auto i : lattice.subgroups_of(h))
    if (lattice[i].order() < h.order()) proper.push_back(i);
  std::vector<Subgroup> out;
  for (std::size_t a = 0; a < proper.size(); ++a) {
    const auto& s = lattice[proper[a]];
    bool maximal = true;
    for (std::size_t b = a + 1; b < proper.size() && maximal; ++b) {
      const auto& t = lattice[proper[b]];
      if (t.order() > s.order() && s.is_subgroup_of(t)) maximal = false;
    }
    if (maximal) out.push_back(s);
  }
  return out;
}

Subgroup frattini_subgroup(const Lattice& lattice, const Subgroup& h) {
  if (h.is_trivial()) return h;
  Subgroup out = h;
  for (const auto& m : maximal_subgroups(lattice, h)) out = intersect(out, m);
  return out;
}

std::vector<Subgroup> minimal_normal_subgroups(const Lattice& lattice) {
  std::vector<std::size_t> normals;
  for (std::size_t i = 1; i < lattice.size(); ++i)
    if (lattice.is_normal(i)) normals.push_back(i);
  std::vector<Subgroup> out;
  for (auto i : normals) {
    bool minimal = true;
    for (auto j : normals) {
      if (lattice[j].order() >= lattice[i].order()) break;
      if (lattice[j].is_subgroup_of(lattice[i])) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.push_back(lattice[i]);
  }
  return out;
}

std::string describe(const Subgroup& s) {
  std::ostringstream os;
  os << "order " << s.order() << " {";
  bool first = true;
  s.members().for_each([&](std::size_t i) {
    os << (first ? "" : " ") << i;
    first = false;
  });
  os << '}';
  return os.str();
}

}  // namespace pnil
