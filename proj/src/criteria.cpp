#include "pnil/criteria.hpp"

#include "pnil/quotient.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <set>
#include <sstream>

namespace pnil {

const std::vector<std::size_t>& Analysis::sylowizers(std::size_t r, Prime p) {
  return sylowizers_within(lattice_->whole_index(), r, p);
}

const std::vector<std::size_t>& Analysis::sylowizers_within(std::size_t within, std::size_t r,
                                                           Prime p) {
  auto key = std::make_tuple(within, r, p);
  auto it = sylowizers_.find(key);
  if (it != sylowizers_.end()) return it->second;
  auto v = p_sylowizer_indices(*lattice_, (*lattice_)[within], (*lattice_)[r], p);
  return sylowizers_.emplace(key, std::move(v)).first->second;
}

std::size_t Analysis::o_upper_p(Prime p) {
  auto it = o_upper_.find(p);
  if (it != o_upper_.end()) return it->second;
  const auto idx = lattice_->index_of(pnil::o_upper_p(group(), p));
  o_upper_.emplace(p, idx);
  return idx;
}

std::size_t Analysis::meet(std::size_t a, std::size_t b) const {
  return lattice_->index_of(intersect((*lattice_)[a], (*lattice_)[b]));
}

std::string_view to_string(TheoremId id) {
  switch (id) {
    case TheoremId::T31: return "T31";
    case TheoremId::C32: return "C32";
    case TheoremId::C33: return "C33";
    case TheoremId::T34: return "T34";
    case TheoremId::C35: return "C35";
    case TheoremId::T36: return "T36";
    case TheoremId::T37: return "T37";
    case TheoremId::C38: return "C38";
    case TheoremId::C39: return "C39";
    case TheoremId::C310: return "C310";
  }
  return "?";
}

std::optional<TheoremId> parse_theorem(std::string_view s) {
  for (auto id : kAllTheorems)
    if (to_string(id) == s) return id;
  return std::nullopt;
}

std::string_view to_string(Mode m) {
  return m == Mode::s_permutable ? "s_permutable" : "normal_in_op";
}

std::optional<Mode> parse_mode(std::string_view s) {
  if (s == "s" || s == "s_permutable") return Mode::s_permutable;
  if (s == "n" || s == "normal_in_op") return Mode::normal_in_op;
  return std::nullopt;
}

std::string_view to_string(WitnessKind k) {
  switch (k) {
    case WitnessKind::sylowizer_condition: return "sylowizer_condition";
    case WitnessKind::normalizer: return "normalizer";
    case WitnessKind::quotient: return "quotient";
    case WitnessKind::chain_step: return "chain_step";
    case WitnessKind::no_candidate: return "no_candidate";
  }
  return "?";
}

std::optional<WitnessKind> parse_witness_kind(std::string_view s) {
  for (auto k : {WitnessKind::sylowizer_condition, WitnessKind::normalizer, WitnessKind::quotient,
                 WitnessKind::chain_step, WitnessKind::no_candidate})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

bool uses_mode(TheoremId id) {
  switch (id) {
    case TheoremId::T31:
    case TheoremId::C32:
    case TheoremId::T34:
    case TheoremId::C35:
    case TheoremId::T36:
    case TheoremId::C33: return true;
    default: return false;
  }
}

Mode effective_mode(const CriterionParams& params) {
  switch (params.theorem) {
    case TheoremId::T31:
    case TheoremId::T34: return Mode::s_permutable;
    case TheoremId::C32:
    case TheoremId::C35: return Mode::normal_in_op;
    default: return params.mode;
  }
}

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw CriterionError(msg);
}

Prime smallest_prime(std::uint64_t n) {
  auto ps = prime_divisors(n);
  return ps.empty() ? 0 : ps.front();
}

void add_failure(HypothesisResult& r, Witness w) {
  if (r.witnesses.size() < kMaxWitnesses) r.witnesses.push_back(std::move(w));
}

bool full(const HypothesisResult& r) { return r.witnesses.size() >= kMaxWitnesses; }

std::size_t pick_sylow(const Lattice& l, Prime p, std::optional<std::size_t> sylow) {
  const auto all = l.sylow_indices(p);
  if (!sylow) return all.front();
  require(std::find(all.begin(), all.end(), *sylow) != all.end(),
          "override is not a Sylow " + std::to_string(p) + "-subgroup");
  return *sylow;
}

void require_divisor(std::uint64_t d, std::uint64_t sylow_order) {
  require(d >= 1 && d < sylow_order && sylow_order % d == 0,
          "d must divide the Sylow order " + std::to_string(sylow_order) + " with 1 <= d < " +
              std::to_string(sylow_order));
}

// Lattice indices of the normal subgroups of lattice[k] with the given order.
std::vector<std::size_t> normal_of_order(const Lattice& l, std::size_t k, std::uint64_t order) {
  const auto k_gens = generating_set(l[k]);
  std::vector<std::size_t> out;
  for (auto i : l.subgroups_of(l[k])) {
    if (l[i].order() != order) continue;
    bool normal = true;
    for (auto x : k_gens) {
      for (auto y : l.generators(i))
        if (!l[i].contains(l.group().conjugate(y, x))) {
          normal = false;
          break;
        }
      if (!normal) break;
    }
    if (normal) out.push_back(i);
  }
  return out;
}

// The H range of T31/C33: normal subgroups of `top` of order d, plus those of
// order 4 when d = p = 2 and `top` is non-abelian.
std::vector<std::size_t> quantified_subgroups(const Lattice& l, std::size_t top, Prime p,
                                              std::uint64_t d, bool order_four_clause) {
  auto hs = normal_of_order(l, top, d);
  if (order_four_clause && d == 2 && p == 2 && !is_abelian(l[top])) {
    auto fours = normal_of_order(l, top, 4);
    hs.insert(hs.end(), fours.begin(), fours.end());
  }
  // Normal subgroups of every order dividing |P| exist in a p-group.
  assert(!hs.empty());
  return hs;
}

// S ∩ O^p(G) must satisfy `mode`; returns the failure if it does not.
std::optional<Witness> intersection_condition(Analysis& a, std::size_t h, std::size_t s, Prime p,
                                              Mode mode) {
  const auto& l = a.lattice();
  const auto op = a.o_upper_p(p);
  const auto t = a.meet(s, op);
  Witness w;
  w.kind = WitnessKind::sylowizer_condition;
  w.prime = p;
  if (mode == Mode::s_permutable) {
    auto bad = a.perm().first_nonpermuting_sylow(t);
    if (!bad) return std::nullopt;
    w.reason = "S ∩ O^p(G) does not permute with a Sylow " +
               std::to_string(prime_divisors(l[*bad].order()).front()) + "-subgroup";
    w.subgroups["sylow"] = l[*bad].indices();
  } else {
    if (normalizes(l[t], l[op])) return std::nullopt;
    w.reason = "S ∩ O^p(G) is not normal in O^p(G)";
  }
  w.subgroups["H"] = l[h].indices();
  w.subgroups["S"] = l[s].indices();
  w.subgroups["T"] = l[t].indices();
  return w;
}

HypothesisResult sylowizer_condition_over(Analysis& a, const std::vector<std::size_t>& hs, Prime p,
                                          Mode mode) {
  HypothesisResult r;
  for (auto h : hs) {
    for (auto s : a.sylowizers(h, p)) {
      if (auto w = intersection_condition(a, h, s, p, mode)) add_failure(r, std::move(*w));
      if (full(r)) break;
    }
    if (full(r)) break;
  }
  r.holds = r.witnesses.empty();
  return r;
}

std::optional<Witness> normalizer_condition(Analysis& a, std::size_t gp, Prime p) {
  const auto& l = a.lattice();
  auto n = normalizer(l[gp]);
  if (is_p_nilpotent(n, p)) return std::nullopt;
  Witness w;
  w.kind = WitnessKind::normalizer;
  w.prime = p;
  w.reason = "N_G(G_p) is not p-nilpotent";
  w.subgroups["G_p"] = l[gp].indices();
  w.subgroups["N_G(G_p)"] = n.indices();
  return w;
}

using SylowizerCheck = std::function<std::optional<Witness>(std::size_t s)>;

// Depth-first search for 1 = P_0 < ... < P_n = top with index-p steps, every
// P_i from P_0 on passing `check` for all its sylowizers. P_n always passes
// (its only sylowizer is G), so P_0 carries the condition when n = 1.
// Whether a step passes depends only on the subgroup, so failing and
// dead-end subgroups are memoized.
HypothesisResult chain_search(Analysis& a, std::size_t top, Prime p, const SylowizerCheck& check) {
  const auto& l = a.lattice();
  const auto subs = l.subgroups_of(l[top]);
  std::map<std::size_t, std::optional<Witness>> verdict;
  std::set<std::size_t> dead;
  HypothesisResult r;
  std::size_t frontier_order = 0;

  auto step_failure = [&](std::size_t c) -> const std::optional<Witness>& {
    auto it = verdict.find(c);
    if (it != verdict.end()) return it->second;
    std::optional<Witness> fail;
    for (auto s : a.sylowizers(c, p)) {
      if (auto w = check(s)) {
        w->subgroups["H"] = l[c].indices();
        w->subgroups["S"] = l[s].indices();
        fail = std::move(w);
        break;
      }
    }
    return verdict.emplace(c, std::move(fail)).first->second;
  };

  std::vector<std::size_t> path;
  std::function<bool(std::size_t)> dfs = [&](std::size_t cur) {
    if (cur == top) return true;
    const auto want = l[cur].order() * p;
    for (auto c : subs) {
      if (l[c].order() != want || dead.count(c) || !l[cur].is_subgroup_of(l[c])) continue;
      if (const auto& w = step_failure(c)) {
        dead.insert(c);
        if (want > frontier_order) {
          frontier_order = want;
          r.witnesses.clear();
        }
        if (want == frontier_order) add_failure(r, *w);
        continue;
      }
      path.push_back(c);
      if (dfs(c)) return true;
      path.pop_back();
      dead.insert(c);
    }
    return false;
  };

  if (const auto& w = step_failure(l.trivial_index())) {
    add_failure(r, *w);
    return r;
  }
  r.holds = dfs(l.trivial_index());
  if (r.holds) {
    r.witnesses.clear();
    r.chain.push_back(l.trivial_index());
    r.chain.insert(r.chain.end(), path.begin(), path.end());
  } else if (r.witnesses.empty()) {
    Witness w;
    w.kind = WitnessKind::no_candidate;
    w.prime = p;
    w.reason = "no index-p chain reaches the Sylow subgroup";
    r.witnesses.push_back(std::move(w));
  }
  return r;
}

SylowizerCheck s_permutable_check(Analysis& a, Prime p) {
  return [&a, p](std::size_t s) -> std::optional<Witness> {
    auto bad = a.perm().first_nonpermuting_sylow(s);
    if (!bad) return std::nullopt;
    Witness w;
    w.kind = WitnessKind::chain_step;
    w.prime = p;
    w.reason = "a sylowizer of P_i is not S-permutable";
    w.subgroups["sylow"] = a.lattice()[*bad].indices();
    return w;
  };
}

}  // namespace

HypothesisResult hypothesis_t31(Analysis& a, Prime p, std::uint64_t d, Mode mode,
                                std::optional<std::size_t> sylow) {
  const auto& l = a.lattice();
  const auto order = l.group().order();
  require(order > 1 && p == smallest_prime(order), "p must be the smallest prime divisor of |G|");
  const auto gp = pick_sylow(l, p, sylow);
  require_divisor(d, l[gp].order());
  return sylowizer_condition_over(a, quantified_subgroups(l, gp, p, d, true), p, mode);
}

HypothesisResult hypothesis_t34(Analysis& a, Prime p, std::uint64_t d, Mode mode,
                                std::optional<std::size_t> sylow) {
  const auto& l = a.lattice();
  require(p != 2 && is_prime(p), "criterion T34 requires an odd prime");
  require(l.group().order() % p == 0, "p must divide |G|");
  const auto gp = pick_sylow(l, p, sylow);
  require_divisor(d, l[gp].order());
  if (auto w = normalizer_condition(a, gp, p)) {
    HypothesisResult r;
    r.witnesses.push_back(std::move(*w));
    return r;
  }
  return sylowizer_condition_over(a, quantified_subgroups(l, gp, p, d, false), p, mode);
}

HypothesisResult hypothesis_t36(Analysis& a, Prime p, Mode mode,
                                std::optional<std::size_t> sylow) {
  const auto& l = a.lattice();
  require(is_prime(p) && l.group().order() % p == 0, "p must divide |G|");
  const auto gp = pick_sylow(l, p, sylow);
  HypothesisResult r;
  if (auto w = normalizer_condition(a, gp, p)) {
    r.witnesses.push_back(std::move(*w));
    return r;
  }
  const auto derived = derived_subgroup(l[gp]);
  const auto frattini = frattini_subgroup(l, l[gp]);
  bool any_candidate = false;
  for (auto i : l.subgroups_of(frattini)) {
    if (!derived.is_subgroup_of(l[i])) continue;
    any_candidate = true;
    for (auto s : a.sylowizers(i, p)) {
      auto w = intersection_condition(a, i, s, p, mode);
      if (!w) {
        r.holds = true;
        r.witnesses.clear();
        return r;
      }
      add_failure(r, std::move(*w));
    }
  }
  if (!any_candidate) {
    Witness w;
    w.kind = WitnessKind::no_candidate;
    w.prime = p;
    w.reason = "no subgroup P with G_p' <= P <= Phi(G_p)";
    r.witnesses.push_back(std::move(w));
  }
  return r;
}

HypothesisResult hypothesis_t37(Analysis& a, Prime p, const CompleteSylowSet& z) {
  const auto& l = a.lattice();
  require(is_prime(p) && l.group().order() % p == 0, "p must divide |G|");
  require(z.parent == &l.group(), "complete set belongs to another group");
  std::vector<std::pair<Prime, std::size_t>> members;
  for (auto q : prime_divisors(l.group().order())) {
    auto it = z.members.find(q);
    require(it != z.members.end() && it->second.order() == p_part(l.group().order(), q),
            "not a complete set of Sylow subgroups");
    members.emplace_back(q, l.index_of(it->second));
  }
  auto check = [&a, &l, members, p](std::size_t s) -> std::optional<Witness> {
    for (const auto& [q, m] : members) {
      if (a.perm().permutes(s, m)) continue;
      Witness w;
      w.kind = WitnessKind::chain_step;
      w.prime = p;
      w.reason = "a sylowizer of P_i does not permute with the Sylow " + std::to_string(q) +
                 "-subgroup of Z";
      w.subgroups["sylow"] = l[m].indices();
      return w;
    }
    return std::nullopt;
  };
  return chain_search(a, l.index_of(z.at(p)), p, check);
}

HypothesisResult hypothesis_c38(Analysis& a, Prime p, std::optional<std::size_t> sylow) {
  const auto& l = a.lattice();
  require(is_prime(p) && l.group().order() % p == 0, "p must divide |G|");
  return chain_search(a, pick_sylow(l, p, sylow), p, s_permutable_check(a, p));
}

HypothesisResult hypothesis_c39(Analysis& a) {
  HypothesisResult r;
  r.holds = true;
  for (auto p : prime_divisors(a.group().order())) {
    auto sub = hypothesis_c38(a, p);
    if (sub.holds) continue;
    r.holds = false;
    for (auto& w : sub.witnesses) add_failure(r, std::move(w));
  }
  return r;
}

HypothesisResult hypothesis_with_normal(Analysis& a, const Subgroup& n, Prime p, std::uint64_t d,
                                        NormalVariant variant, Mode mode) {
  const auto& l = a.lattice();
  const auto& g = l.group();
  require(&n.parent() == &g, "N belongs to another group");
  require(is_normal(n), "N is not normal in G");
  require(is_prime(p) && n.order() % p == 0, "p must divide |N|");
  const auto np_candidates = sylow_indices_within(l, n, p);
  const auto np = np_candidates.front();
  if (variant == NormalVariant::C33) {
    require(p == smallest_prime(g.order()), "p must be the smallest prime divisor of |G|");
    require_divisor(d, l[np].order());
  }

  HypothesisResult r;
  if (!is_p_nilpotent(*quotient(g, n).image, p)) {
    Witness w;
    w.kind = WitnessKind::quotient;
    w.prime = p;
    w.reason = "G/N is not p-nilpotent";
    w.subgroups["N"] = n.indices();
    r.witnesses.push_back(std::move(w));
    return r;
  }
  if (variant == NormalVariant::C33)
    return sylowizer_condition_over(a, quantified_subgroups(l, np, p, d, true), p, mode);
  return chain_search(a, np, p, s_permutable_check(a, p));
}

CriterionReport check_equivalence(Analysis& a, const CriterionParams& params,
                                  std::string group_name) {
  const auto start = std::chrono::steady_clock::now();
  const auto& l = a.lattice();
  const auto mode = effective_mode(params);
  HypothesisResult h;
  bool conclusion = false;
  switch (params.theorem) {
    case TheoremId::T31:
    case TheoremId::C32:
      h = hypothesis_t31(a, params.p, params.d, mode, params.sylow_override);
      break;
    case TheoremId::T34:
    case TheoremId::C35:
      h = hypothesis_t34(a, params.p, params.d, mode, params.sylow_override);
      break;
    case TheoremId::T36:
      h = hypothesis_t36(a, params.p, mode, params.sylow_override);
      break;
    case TheoremId::T37:
      h = hypothesis_t37(a, params.p,
                         params.complete_set ? *params.complete_set : canonical_complete_set(l));
      break;
    case TheoremId::C38:
      h = hypothesis_c38(a, params.p, params.sylow_override);
      break;
    case TheoremId::C39:
      h = hypothesis_c39(a);
      break;
    case TheoremId::C33:
    case TheoremId::C310:
      require(params.normal_n.has_value(), "criterion requires a normal subgroup N");
      h = hypothesis_with_normal(a, *params.normal_n, params.p, params.d,
                                 params.theorem == TheoremId::C33 ? NormalVariant::C33
                                                                  : NormalVariant::C310,
                                 mode);
      break;
  }
  if (params.theorem == TheoremId::C39)
    conclusion = is_nilpotent(l);
  else
    conclusion = is_p_nilpotent(l.group(), params.p);

  CriterionReport rep;
  rep.group_name = std::move(group_name);
  rep.params = params;
  rep.params.mode = mode;
  rep.hypothesis_holds = h.holds;
  rep.conclusion_holds = conclusion;
  rep.equivalent = h.holds == conclusion;
  rep.witnesses = std::move(h.witnesses);
  for (auto i : h.chain) rep.chain.push_back(l[i].indices());
  rep.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(
      std::chrono::steady_clock::now() - start);
  return rep;
}

bool witness_refails(const Lattice& l, const CriterionParams& params, const Witness& w) {
  const auto& g = l.group();
  auto sub = [&](const std::string& key) {
    auto it = w.subgroups.find(key);
    require(it != w.subgroups.end(), "witness lacks subgroup " + key);
    for (auto i : it->second) require(i < g.order(), "witness index out of range");
    return Subgroup(g, ElementSet::from_indices(g.order(), it->second));
  };
  const Prime p = w.prime != 0 ? w.prime : params.p;
  const auto mode = effective_mode(params);

  auto is_sylowizer = [&](const Subgroup& h, const Subgroup& s) {
    for (const auto& c : p_sylowizers(l, h, p))
      if (c == s) return true;
    return false;
  };

  switch (w.kind) {
    case WitnessKind::sylowizer_condition: {
      const auto h = sub("H"), s = sub("S"), t = sub("T");
      const auto op = o_upper_p(g, p);
      if (!is_sylowizer(h, s) || !(intersect(s, op) == t)) return false;
      return mode == Mode::s_permutable ? !is_s_permutable(l, t) : !is_normal_in(t, op);
    }
    case WitnessKind::normalizer:
      return !is_p_nilpotent(normalizer(sub("G_p")), p);
    case WitnessKind::quotient:
      return !is_p_nilpotent(*quotient(g, sub("N")).image, p);
    case WitnessKind::chain_step: {
      const auto h = sub("H"), s = sub("S");
      if (!is_sylowizer(h, s)) return false;
      if (params.theorem == TheoremId::T37)
        return !is_z_permutable(s, params.complete_set ? *params.complete_set
                                                       : canonical_complete_set(l));
      return !is_s_permutable(l, s);
    }
    case WitnessKind::no_candidate: {
      Analysis fresh(l);
      return !check_equivalence(fresh, params).hypothesis_holds;
    }
  }
  return false;
}

std::vector<CriterionParams> admissible_params(const Lattice& l, TheoremId id,
                                               const ParamSweep& sweep) {
  const auto order = l.group().order();
  auto primes = prime_divisors(order);
  if (sweep.prime) std::erase_if(primes, [&](Prime q) { return q != *sweep.prime; });
  const Prime min_p = smallest_prime(order);
  auto mode_allowed = [&](Mode m) {
    return std::find(sweep.modes.begin(), sweep.modes.end(), m) != sweep.modes.end();
  };
  auto proper_divisors = [](std::uint64_t n) {
    auto ds = divisors(n);
    ds.pop_back();
    return ds;
  };

  std::vector<CriterionParams> out;
  auto emit = [&](CriterionParams c) {
    c.theorem = id;
    out.push_back(std::move(c));
  };

  switch (id) {
    case TheoremId::T31:
    case TheoremId::C32: {
      const Mode m = id == TheoremId::T31 ? Mode::s_permutable : Mode::normal_in_op;
      if (!mode_allowed(m) || min_p == 0 || std::find(primes.begin(), primes.end(), min_p) == primes.end())
        break;
      for (auto d : proper_divisors(p_part(order, min_p))) emit({.p = min_p, .d = d, .mode = m});
      break;
    }
    case TheoremId::T34:
    case TheoremId::C35: {
      const Mode m = id == TheoremId::T34 ? Mode::s_permutable : Mode::normal_in_op;
      if (!mode_allowed(m)) break;
      for (auto p : primes)
        if (p != 2)
          for (auto d : proper_divisors(p_part(order, p))) emit({.p = p, .d = d, .mode = m});
      break;
    }
    case TheoremId::T36:
      for (auto p : primes)
        for (auto m : sweep.modes) emit({.p = p, .mode = m});
      break;
    case TheoremId::T37: {
      if (!sweep.all_complete_sets) {
        for (auto p : primes)
          emit({.p = p, .complete_set = canonical_complete_set(l), .complete_set_id = "canonical"});
        break;
      }
      const auto sets = all_complete_sets(l, sweep.complete_set_cap);
      for (auto p : primes)
        for (std::size_t i = 0; i < sets.size(); ++i)
          emit({.p = p, .complete_set = sets[i], .complete_set_id = std::to_string(i)});
      break;
    }
    case TheoremId::C38:
      for (auto p : primes) emit({.p = p});
      break;
    case TheoremId::C39:
      if (!sweep.prime) emit({});
      break;
    case TheoremId::C33:
    case TheoremId::C310:
      for (std::size_t i = 1; i < l.size(); ++i) {
        if (!l.is_normal(i)) continue;
        const auto& n = l[i];
        for (auto p : primes) {
          if (n.order() % p != 0) continue;
          if (id == TheoremId::C310) {
            emit({.p = p, .normal_n = n});
            continue;
          }
          if (p != min_p) continue;
          for (auto d : proper_divisors(p_part(n.order(), p)))
            for (auto m : sweep.modes) emit({.p = p, .d = d, .mode = m, .normal_n = n});
        }
      }
      break;
  }
  return out;
}

}  // namespace pnil
