#include "pnil/lemmas.hpp"

#include "pnil/char_sub.hpp"
#include "pnil/quotient.hpp"
#include "pnil/sylowizer.hpp"

#include <algorithm>
#include <memory>
#include <numeric>
#include <stdexcept>

namespace pnil {

std::string_view to_string(LemmaId id) {
  switch (id) {
    case LemmaId::L21: return "L21";
    case LemmaId::L22: return "L22";
    case LemmaId::L23: return "L23";
    case LemmaId::L24: return "L24";
    case LemmaId::L25: return "L25";
    case LemmaId::L26: return "L26";
    case LemmaId::L27: return "L27";
  }
  return "?";
}

std::optional<LemmaId> parse_lemma(std::string_view s) {
  for (auto id : kAllLemmas)
    if (to_string(id) == s) return id;
  return std::nullopt;
}

namespace {

using Idx = std::size_t;
using ZSet = std::vector<Idx>;  // one Sylow subgroup per prime divisor, ascending primes

struct Outcome {
  bool applies = false;
  std::optional<std::string> failure;
};

Outcome pass() { return {true, std::nullopt}; }
Outcome fail(std::string why) { return {true, std::move(why)}; }
Outcome vacuous() { return {}; }

struct QuotientCtx {
  QuotientMap map;
  std::unique_ptr<Lattice> lattice;
  std::unique_ptr<PermutabilityCache> perm;
  std::vector<std::optional<Idx>> proj;
};

class Ctx {
 public:
  Ctx(const Lattice& l, Prime p)
      : l(l), p(p), perm(l), primes(prime_divisors(l.group().order())),
        op(l.index_of(o_upper_p(l.group(), p))) {}

  const Lattice& l;
  const Prime p;
  PermutabilityCache perm;
  const std::vector<Prime> primes;
  const Idx op;

  const std::vector<Idx>& sylowizers(Idx r) {
    auto it = sylowizers_.find(r);
    if (it == sylowizers_.end())
      it = sylowizers_.emplace(r, p_sylowizer_indices(l, l.whole(), l[r], p)).first;
    return it->second;
  }

  const std::vector<Idx>& sylows_within(Idx k, Prime q) {
    const auto key = std::make_pair(k, q);
    auto it = within_.find(key);
    if (it == within_.end()) it = within_.emplace(key, sylow_indices_within(l, l[k], q)).first;
    return it->second;
  }

  bool s_permutable_in(Idx k, Idx h) {
    for (auto q : prime_divisors(l[k].order()))
      for (auto s : sylows_within(k, q))
        if (!perm.permutes(h, s)) return false;
    return true;
  }

  Idx meet(Idx a, Idx b) const { return l.index_of(intersect(l[a], l[b])); }
  Idx join_idx(Idx a, Idx b) const { return l.index_of(join(l[a], l[b])); }

  QuotientCtx& quotient(Idx n) {
    auto it = quotients_.find(n);
    if (it != quotients_.end()) return *it->second;
    auto q = std::make_unique<QuotientCtx>();
    q->map = pnil::quotient(l.group(), l[n]);
    q->lattice = std::make_unique<Lattice>(q->map.image);
    q->perm = std::make_unique<PermutabilityCache>(*q->lattice);
    q->proj.resize(l.size());
    return *quotients_.emplace(n, std::move(q)).first->second;
  }

  Idx project(QuotientCtx& q, Idx h) {
    auto& slot = q.proj[h];
    if (!slot) slot = q.lattice->index_of(project_subgroup(q.map, l[h]));
    return *slot;
  }

  bool z_permutable(Idx u, const ZSet& z) { return perm.is_z_permutable(u, z); }

  bool is_p_subgroup(Idx h) const { return is_p_power(l[h].order(), p); }

 private:
  std::map<Idx, std::vector<Idx>> sylowizers_;
  std::map<std::pair<Idx, Prime>, std::vector<Idx>> within_;
  std::map<Idx, std::unique_ptr<QuotientCtx>> quotients_;
};

// S is a sylowizer of R in G and S-permutable, then O^p(G) <= S, S = R O^p(G)
// as a product set, and S is the only sylowizer.
Outcome l21(Ctx& c, Idx r) {
  if (!c.is_p_subgroup(r)) return vacuous();
  const auto& syl = c.sylowizers(r);
  const Group& g = c.l.group();
  bool any = false;
  for (auto s : syl) {
    if (!c.perm.is_s_permutable(s)) continue;
    any = true;
    if (!c.l[c.op].is_subgroup_of(c.l[s])) return fail("O^p(G) not contained in S-permutable sylowizer");
    ElementSet prod(g.order());
    for (auto a : c.l[r].indices())
      for (auto b : c.l[c.op].indices()) prod.insert(g.multiply(a, b));
    if (!(prod == c.l[s].members())) return fail("S-permutable sylowizer differs from R O^p(G)");
    if (syl.size() != 1) return fail("S-permutable sylowizer is not unique");
  }
  return any ? pass() : vacuous();
}

// R Sylow in RN: the sylowizers of R in G are the preimages of the
// sylowizers of RN/N in G/N.
Outcome l22(Ctx& c, Idx r, Idx n) {
  if (!c.is_p_subgroup(r) || !c.l.is_normal(n)) return vacuous();
  const auto rn = c.join_idx(r, n);
  if (p_part(c.l[rn].order(), c.p) != c.l[r].order()) return vacuous();
  auto& q = c.quotient(n);
  const auto bar = c.project(q, r);
  auto from_quotient = p_sylowizer_indices(*q.lattice, q.lattice->whole(), (*q.lattice)[bar], c.p);
  std::vector<Idx> lifted;
  for (auto t : from_quotient) lifted.push_back(c.l.index_of(preimage_subgroup(q.map, (*q.lattice)[t])));
  std::sort(lifted.begin(), lifted.end());
  if (lifted != c.sylowizers(r)) return fail("sylowizers of R differ from lifted sylowizers of RN/N");
  return pass();
}

Outcome l23_subnormal(Ctx& c, Idx h) {
  if (!c.perm.is_s_permutable(h)) return vacuous();
  if (!is_subnormal(c.l[h])) return fail("S-permutable subgroup is not subnormal");
  return pass();
}

Outcome l23_intersection(Ctx& c, Idx h, Idx k) {
  if (!c.perm.is_s_permutable(h)) return vacuous();
  if (!c.s_permutable_in(k, c.meet(h, k))) return fail("H meet K is not S-permutable in K");
  return pass();
}

Outcome l23_normal(Ctx& c, Idx h, Idx n) {
  if (!c.perm.is_s_permutable(h) || !c.l.is_normal(n)) return vacuous();
  if (!c.perm.is_s_permutable(c.join_idx(h, n))) return fail("HN is not S-permutable");
  if (!c.perm.is_s_permutable(c.meet(h, n))) return fail("H meet N is not S-permutable");
  auto& q = c.quotient(n);
  if (!q.perm->is_s_permutable(c.project(q, h))) return fail("HN/N is not S-permutable in G/N");
  return pass();
}

Outcome l24_complete(Ctx& c, const ZSet& z, Idx n) {
  if (!c.l.is_normal(n)) return vacuous();
  auto& q = c.quotient(n);
  const auto qn = q.lattice->group().order();
  for (std::size_t i = 0; i < c.primes.size(); ++i) {
    const auto pr = c.primes[i];
    if (c.l[c.meet(z[i], n)].order() != p_part(c.l[n].order(), pr))
      return fail("Z meet N misses a Sylow " + std::to_string(pr) + "-subgroup of N");
    if ((*q.lattice)[c.project(q, z[i])].order() != p_part(qn, pr))
      return fail("ZN/N misses a Sylow " + std::to_string(pr) + "-subgroup of G/N");
  }
  return pass();
}

Outcome l24_project(Ctx& c, const ZSet& z, Idx n, Idx u) {
  if (!c.l.is_normal(n) || !c.z_permutable(u, z)) return vacuous();
  auto& q = c.quotient(n);
  const auto ubar = c.project(q, u);
  for (auto zi : z)
    if (!q.perm->permutes(ubar, c.project(q, zi))) return fail("UN/N is not ZN/N-permutable");
  return pass();
}

Outcome l24_inside(Ctx& c, const ZSet& z, Idx n, Idx u) {
  if (!c.l.is_normal(n) || !c.l[u].is_subgroup_of(c.l[n]) || !c.z_permutable(u, z))
    return vacuous();
  for (auto zi : z)
    if (!c.perm.permutes(u, c.meet(zi, n))) return fail("U is not (Z meet N)-permutable");
  return pass();
}

Outcome l25(Ctx& c, const ZSet& z, Idx h, Idx n) {
  if (!c.is_p_subgroup(h) || !c.l.is_normal(n)) return vacuous();
  const bool coprime = c.l[n].order() % c.p != 0;
  if (!coprime && !c.l[n].is_subgroup_of(c.l[h])) return vacuous();
  for (auto s : c.sylowizers(h))
    if (!c.z_permutable(s, z)) return vacuous();
  auto& q = c.quotient(n);
  const auto hbar = c.project(q, h);
  std::vector<Idx> zbar;
  for (auto zi : z) zbar.push_back(c.project(q, zi));
  for (auto t : p_sylowizer_indices(*q.lattice, q.lattice->whole(), (*q.lattice)[hbar], c.p))
    if (!q.perm->is_z_permutable(t, zbar))
      return fail("a sylowizer of HN/N is not ZN/N-permutable");
  return pass();
}

Outcome l26(Ctx& c, Idx h, Idx k) {
  if (!c.is_p_subgroup(h) || !c.l[h].is_subgroup_of(c.l[k])) return vacuous();
  const auto& in_g = c.sylowizers(h);
  for (auto t : p_sylowizer_indices(c.l, c.l[k], c.l[h], c.p)) {
    const bool found = std::any_of(in_g.begin(), in_g.end(), [&](Idx s) { return c.meet(s, k) == t; });
    if (!found) return fail("a sylowizer T of H in K is not S meet K for any sylowizer S in G");
  }
  return pass();
}

Outcome l27(Ctx& c, Idx h) {
  if (!c.is_p_subgroup(h) || !c.perm.is_s_permutable(h)) return vacuous();
  if (!c.l[c.op].is_subgroup_of(normalizer(c.l[h]))) return fail("O^p(G) does not normalize H");
  return pass();
}

std::vector<ZSet> complete_sets(const Lattice& l, std::size_t cap) {
  std::vector<ZSet> out;
  for (const auto& z : all_complete_sets(l, cap)) {
    ZSet v;
    for (const auto& [pr, s] : z.members) v.push_back(l.index_of(s));
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<Idx> normal_indices(const Lattice& l) {
  std::vector<Idx> out;
  for (Idx i = 0; i < l.size(); ++i)
    if (l.is_normal(i)) out.push_back(i);
  return out;
}

// Named arguments of one instance, in the form stored in counterexamples.
struct Args {
  std::map<std::string, Idx> sub;
  ZSet z;
};

std::string z_key(Prime q) { return "Z" + std::to_string(q); }

Counterexample make_counterexample(const Ctx& c, std::string part, std::string claim,
                                   const Args& a) {
  Counterexample ce{std::move(part), std::move(claim), {}};
  for (const auto& [name, i] : a.sub) ce.subgroups[name] = c.l[i].indices();
  for (std::size_t i = 0; i < a.z.size(); ++i) ce.subgroups[z_key(c.primes[i])] = c.l[a.z[i]].indices();
  return ce;
}

Outcome dispatch(Ctx& c, const std::string& part, const Args& a) {
  auto s = [&](const char* name) { return a.sub.at(name); };
  if (part == "L21") return l21(c, s("R"));
  if (part == "L22") return l22(c, s("R"), s("N"));
  if (part == "L23.subnormal") return l23_subnormal(c, s("H"));
  if (part == "L23.intersection") return l23_intersection(c, s("H"), s("K"));
  if (part == "L23.normal") return l23_normal(c, s("H"), s("N"));
  if (part == "L24.complete") return l24_complete(c, a.z, s("N"));
  if (part == "L24.project") return l24_project(c, a.z, s("N"), s("U"));
  if (part == "L24.inside") return l24_inside(c, a.z, s("N"), s("U"));
  if (part == "L25") return l25(c, a.z, s("H"), s("N"));
  if (part == "L26") return l26(c, s("H"), s("K"));
  if (part == "L27") return l27(c, s("H"));
  throw std::invalid_argument("unknown lemma part " + part);
}

class Runner {
 public:
  Runner(const Lattice& l, LemmaId id, Prime p) : ctx(l, p) {
    report.lemma = id;
    report.p = p;
  }

  // Returns false once a failure is recorded, to stop the sweep.
  bool run(const std::string& part, const Args& a) {
    const auto o = dispatch(ctx, part, a);
    if (!o.applies) return true;
    ++report.instances;
    if (!o.failure) return true;
    report.passed = false;
    report.counterexample = make_counterexample(ctx, part, *o.failure, a);
    return false;
  }

  Ctx ctx;
  PropertyReport report;
};

}  // namespace

PropertyReport verify_lemma(const Lattice& lattice, LemmaId lemma, Prime p,
                            std::size_t complete_set_cap) {
  if (!is_prime(p) || lattice.group().order() % p != 0)
    throw std::invalid_argument("p must be a prime divisor of |G|");
  Runner run(lattice, lemma, p);
  const auto& l = lattice;
  const auto normals = normal_indices(l);
  std::vector<Idx> all(l.size());
  std::iota(all.begin(), all.end(), Idx{0});
  std::vector<Idx> p_subs;
  for (auto i : all)
    if (run.ctx.is_p_subgroup(i)) p_subs.push_back(i);

  auto each = [&](const std::string& part, const std::vector<Idx>& xs, const char* xn,
                  const std::vector<Idx>& ys, const char* yn) {
    for (auto x : xs)
      for (auto y : ys)
        if (!run.run(part, {{{xn, x}, {yn, y}}, {}})) return false;
    return true;
  };

  switch (lemma) {
    case LemmaId::L21:
      for (auto r : p_subs)
        if (!run.run("L21", {{{"R", r}}, {}})) break;
      break;
    case LemmaId::L22:
      each("L22", p_subs, "R", normals, "N");
      break;
    case LemmaId::L23: {
      std::vector<Idx> sperm;
      for (auto h : all)
        if (run.ctx.perm.is_s_permutable(h)) sperm.push_back(h);
      bool ok = true;
      for (auto h : sperm)
        if (ok) ok = run.run("L23.subnormal", {{{"H", h}}, {}});
      ok = ok && each("L23.intersection", sperm, "H", all, "K");
      ok = ok && each("L23.normal", sperm, "H", normals, "N");
      break;
    }
    case LemmaId::L24: {
      const auto sets = complete_sets(l, complete_set_cap);
      bool ok = true;
      for (const auto& z : sets) {
        for (auto n : normals) {
          if (ok) ok = run.run("L24.complete", {{{"N", n}}, z});
          for (auto u : all) {
            if (ok) ok = run.run("L24.project", {{{"N", n}, {"U", u}}, z});
            if (ok) ok = run.run("L24.inside", {{{"N", n}, {"U", u}}, z});
          }
        }
      }
      break;
    }
    case LemmaId::L25: {
      const auto sets = complete_sets(l, complete_set_cap);
      bool ok = true;
      for (const auto& z : sets)
        for (auto h : p_subs)
          for (auto n : normals)
            if (ok) ok = run.run("L25", {{{"H", h}, {"N", n}}, z});
      break;
    }
    case LemmaId::L26:
      each("L26", p_subs, "H", all, "K");
      break;
    case LemmaId::L27:
      for (auto h : p_subs)
        if (!run.run("L27", {{{"H", h}}, {}})) break;
      break;
  }
  return run.report;
}

bool counterexample_refails(const Lattice& lattice, LemmaId lemma, Prime p,
                            const Counterexample& ce) {
  if (!ce.part.starts_with(to_string(lemma))) return false;
  if (!is_prime(p) || lattice.group().order() % p != 0) return false;
  Ctx ctx(lattice, p);
  const auto n = lattice.group().order();
  auto lookup = [&](const std::vector<std::uint32_t>& idx) -> std::optional<Idx> {
    for (auto i : idx)
      if (i >= n) return std::nullopt;
    return lattice.find(ElementSet::from_indices(n, idx));
  };
  Args a;
  for (const auto& [name, idx] : ce.subgroups) {
    if (name.starts_with("Z")) continue;
    auto i = lookup(idx);
    if (!i) return false;
    a.sub[name] = *i;
  }
  bool uses_z = false;
  for (auto q : ctx.primes) {
    auto it = ce.subgroups.find(z_key(q));
    if (it == ce.subgroups.end()) continue;
    uses_z = true;
    auto i = lookup(it->second);
    if (!i || lattice[*i].order() != p_part(n, q)) return false;
    a.z.push_back(*i);
  }
  if (uses_z && a.z.size() != ctx.primes.size()) return false;
  try {
    const auto o = dispatch(ctx, ce.part, a);
    return o.applies && o.failure.has_value();
  } catch (const std::out_of_range&) {
    return false;  // a named subgroup the part needs is missing
  }
}

}  // namespace pnil
