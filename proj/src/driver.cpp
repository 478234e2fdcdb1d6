#include "pnil/driver.hpp"

#include "pnil/char_sub.hpp"
#include "pnil/quotient.hpp"
#include "pnil/sylowizer.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <exception>
#include <iomanip>
#include <sstream>
#include <thread>

namespace pnil::cli {

using nlohmann::json;

std::optional<Format> parse_format(std::string_view s) {
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  if (s == "table") return Format::table;
  return std::nullopt;
}

namespace {

constexpr std::size_t kLemmaDefaultMaxOrder = 100;

// Runs fn(i) for i in [0, n) on up to `jobs` threads. Each index is claimed
// exactly once; callers store results by index, so the output order does
// not depend on scheduling. The first exception is rethrown.
template <class Fn>
void parallel_for(std::size_t n, unsigned jobs, Fn fn) {
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned t = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
  if (t <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < t; ++k) pool.emplace_back(worker);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::string join_indices(const std::vector<std::uint32_t>& v) {
  std::string s;
  for (auto x : v) {
    if (!s.empty()) s += ' ';
    s += std::to_string(x);
  }
  return s;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + '"';
}

std::string table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (width.size() <= i) width.push_back(0);
      width[i] = std::max(width[i], r[i].size());
    }
  std::ostringstream os;
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t i = 0; i < r.size(); ++i) {
      line += r[i];
      if (i + 1 < r.size()) line += std::string(width[i] - r[i].size() + 2, ' ');
    }
    os << line << '\n';
  }
  return os.str();
}

Limits limits_of(const RunConfig& c, std::size_t default_order) {
  return {c.max_degree, c.max_order.value_or(default_order)};
}

// ---- verify -----------------------------------------------------------------

json witness_json(const Witness& w) {
  return {{"kind", to_string(w.kind)},
          {"prime", w.prime},
          {"reason", w.reason},
          {"subgroups", w.subgroups}};
}

json params_json(const CriterionParams& p) {
  json j = {{"theorem", to_string(p.theorem)}, {"p", p.p}, {"d", p.d}};
  j["mode"] = uses_mode(p.theorem) ? json(to_string(effective_mode(p))) : json(nullptr);
  j["complete_set_id"] = p.complete_set_id;
  if (p.complete_set) {
    json z = json::object();
    for (const auto& [q, s] : p.complete_set->members) z[std::to_string(q)] = s.indices();
    j["complete_set"] = z;
  }
  if (p.normal_n) j["normal_n"] = p.normal_n->indices();
  return j;
}

struct Skipped {
  std::string group;
  std::string reason;
};

struct VerifyTask {
  std::size_t group = 0;
  TheoremId theorem = TheoremId::T31;
};

std::string mode_cell(const CriterionParams& p) {
  return uses_mode(p.theorem) ? std::string(to_string(effective_mode(p))) : std::string();
}

std::string verify_report(const RunConfig& c, const std::vector<CriterionReport>& recs,
                          const std::vector<Skipped>& skipped, std::size_t inequivalent) {
  auto millis = [&](const CriterionReport& r) {
    return c.timing ? std::chrono::duration_cast<std::chrono::milliseconds>(r.elapsed).count() : 0;
  };
  switch (c.format) {
    case Format::json: {
      json records = json::array();
      for (const auto& r : recs) {
        json w = json::array();
        for (const auto& x : r.witnesses) w.push_back(witness_json(x));
        records.push_back({{"group", r.group_name},
                           {"params", params_json(r.params)},
                           {"hypothesis", r.hypothesis_holds},
                           {"conclusion", r.conclusion_holds},
                           {"equivalent", r.equivalent},
                           {"witnesses", w},
                           {"chain", r.chain},
                           {"millis", millis(r)}});
      }
      json sk = json::array();
      for (const auto& s : skipped) sk.push_back({{"group", s.group}, {"reason", s.reason}});
      json doc = {{"command", "verify"},
                  {"summary",
                   {{"checks", recs.size()}, {"inequivalences", inequivalent}, {"skipped", sk}}},
                  {"records", records}};
      return doc.dump(2) + "\n";
    }
    case Format::csv: {
      std::string out =
          "group,theorem,p,d,mode,complete_set_id,hypothesis,conclusion,equivalent,witness,millis,"
          "normal_n\n";
      for (const auto& r : recs) {
        const auto& p = r.params;
        std::ostringstream os;
        os << csv_field(r.group_name) << ',' << to_string(p.theorem) << ',' << p.p << ',' << p.d
           << ',' << mode_cell(p) << ',' << csv_field(p.complete_set_id) << ','
           << (r.hypothesis_holds ? "true" : "false") << ','
           << (r.conclusion_holds ? "true" : "false") << ',' << (r.equivalent ? "true" : "false")
           << ',' << csv_field(r.witnesses.empty() ? "" : r.witnesses.front().reason) << ','
           << millis(r) << ',' << (p.normal_n ? join_indices(p.normal_n->indices()) : "") << '\n';
        out += os.str();
      }
      return out;
    }
    case Format::table: {
      std::vector<std::vector<std::string>> rows{
          {"group", "theorem", "p", "d", "mode", "Z", "|N|", "hyp", "concl", "equiv"}};
      for (const auto& r : recs) {
        const auto& p = r.params;
        rows.push_back({r.group_name, std::string(to_string(p.theorem)), std::to_string(p.p),
                        std::to_string(p.d), mode_cell(p), p.complete_set_id,
                        p.normal_n ? std::to_string(p.normal_n->order()) : "",
                        r.hypothesis_holds ? "yes" : "no", r.conclusion_holds ? "yes" : "no",
                        r.equivalent ? "yes" : "NO"});
      }
      return table(rows);
    }
  }
  return {};
}

std::string skipped_lines(const std::vector<Skipped>& skipped) {
  std::string out;
  for (const auto& s : skipped) out += "skipped " + s.group + ": " + s.reason + "\n";
  return out;
}

std::vector<std::string> selected_groups(const GroupResolver& r, const RunConfig& c) {
  if (!c.groups.empty()) {
    for (const auto& g : c.groups) (void)r.spec(g.substr(0, g.find('/')));
    return c.groups;
  }
  std::vector<std::string> out;
  for (const auto& s : r.specs()) out.push_back(s.name);
  return out;
}

struct Prepared {
  std::shared_ptr<const Lattice> lattice;
  std::optional<std::string> skip;
};

std::vector<Prepared> prepare(const GroupResolver& r, const std::vector<std::string>& names,
                              unsigned jobs) {
  std::vector<Prepared> out(names.size());
  parallel_for(names.size(), jobs, [&](std::size_t i) {
    try {
      out[i].lattice = r.lattice(names[i]);
    } catch (const ResourceLimitError& e) {
      out[i].skip = e.what();
    }
  });
  return out;
}

// ---- lemmas -----------------------------------------------------------------

struct LemmaTarget {
  std::string name;
  std::shared_ptr<const Lattice> lattice;
  std::size_t base = 0;    // quotients: index into the prepared groups
  std::size_t normal = 0;  // quotients: lattice index of N in the base group
};

json counterexample_json(const Counterexample& ce) {
  return {{"part", ce.part}, {"claim", ce.claim}, {"subgroups", ce.subgroups}};
}

std::string lemma_report(const RunConfig& c, const std::vector<PropertyReport>& recs,
                         const std::vector<Skipped>& skipped, std::size_t failures) {
  switch (c.format) {
    case Format::json: {
      json records = json::array();
      for (const auto& r : recs) {
        json j = {{"group", r.group_name},
                  {"lemma", to_string(r.lemma)},
                  {"p", r.p},
                  {"passed", r.passed},
                  {"instances", r.instances}};
        j["counterexample"] = r.counterexample ? counterexample_json(*r.counterexample) : json(nullptr);
        records.push_back(j);
      }
      json sk = json::array();
      for (const auto& s : skipped) sk.push_back({{"group", s.group}, {"reason", s.reason}});
      json doc = {{"command", "lemmas"},
                  {"summary", {{"runs", recs.size()}, {"failures", failures}, {"skipped", sk}}},
                  {"records", records}};
      return doc.dump(2) + "\n";
    }
    case Format::csv: {
      std::string out = "group,lemma,p,passed,instances,part,claim\n";
      for (const auto& r : recs) {
        std::ostringstream os;
        os << csv_field(r.group_name) << ',' << to_string(r.lemma) << ',' << r.p << ','
           << (r.passed ? "true" : "false") << ',' << r.instances << ','
           << (r.counterexample ? r.counterexample->part : "") << ','
           << csv_field(r.counterexample ? r.counterexample->claim : "") << '\n';
        out += os.str();
      }
      return out;
    }
    case Format::table: {
      std::vector<std::vector<std::string>> rows{{"group", "lemma", "p", "instances", "result"}};
      for (const auto& r : recs)
        rows.push_back({r.group_name, std::string(to_string(r.lemma)), std::to_string(r.p),
                        std::to_string(r.instances),
                        r.passed ? "pass" : "FAIL " + r.counterexample->part});
      return table(rows);
    }
  }
  return {};
}

CriterionParams params_from_json(const json& j, const Lattice& l) {
  const auto& g = l.group();
  auto sub = [&](const json& v) {
    auto idx = v.get<std::vector<std::uint32_t>>();
    for (auto i : idx)
      if (i >= g.order()) throw UsageError("subgroup index out of range in report");
    auto s = ElementSet::from_indices(g.order(), idx);
    if (!l.find(s)) throw UsageError("report names a set that is not a subgroup");
    return Subgroup(g, std::move(s));
  };
  CriterionParams p;
  auto id = parse_theorem(j.at("theorem").get<std::string>());
  if (!id) throw UsageError("unknown theorem in report");
  p.theorem = *id;
  p.p = j.at("p").get<Prime>();
  p.d = j.at("d").get<std::uint64_t>();
  if (j.contains("mode") && !j["mode"].is_null()) {
    auto m = parse_mode(j["mode"].get<std::string>());
    if (!m) throw UsageError("unknown mode in report");
    p.mode = *m;
  }
  p.complete_set_id = j.value("complete_set_id", "");
  if (j.contains("complete_set")) {
    CompleteSylowSet z;
    z.parent = &g;
    for (const auto& [q, v] : j["complete_set"].items()) z.members.emplace(std::stoull(q), sub(v));
    p.complete_set = std::move(z);
  }
  if (j.contains("normal_n")) p.normal_n = sub(j["normal_n"]);
  return p;
}

Witness witness_from_json(const json& j) {
  Witness w;
  auto k = parse_witness_kind(j.at("kind").get<std::string>());
  if (!k) throw UsageError("unknown witness kind in report");
  w.kind = *k;
  w.prime = j.at("prime").get<Prime>();
  w.reason = j.value("reason", "");
  w.subgroups = j.at("subgroups").get<std::map<std::string, std::vector<std::uint32_t>>>();
  return w;
}

}  // namespace

GroupResolver::GroupResolver(const RunConfig& config) : config_(&config) {
  if (config.catalog_path) {
    try {
      specs_ = load_specs(*config.catalog_path, true, limits_of(config, 100000));
    } catch (const CatalogError& e) {
      throw UsageError(std::string("catalog: ") + e.what());
    }
  } else {
    specs_ = default_corpus();
  }
}

GroupSpec GroupResolver::spec(const std::string& name) const {
  for (const auto& s : specs_)
    if (s.name == name) return s;
  try {
    return builtin_from_string(name);
  } catch (const CatalogError&) {
    throw UsageError("unknown group " + name);
  }
}

std::shared_ptr<const Lattice> GroupResolver::lattice(const std::string& name) const {
  const auto slash = name.rfind('/');
  if (slash != std::string::npos) {
    auto base = lattice(name.substr(0, slash));
    std::size_t k = 0;
    try {
      k = std::stoull(name.substr(slash + 1));
    } catch (const std::exception&) {
      throw UsageError("bad quotient suffix in " + name);
    }
    if (k >= base->size() || !base->is_normal(k))
      throw UsageError("no normal subgroup at index " + std::to_string(k) + " in " + name);
    auto q = quotient(base->group(), (*base)[k]);
    return std::make_shared<const Lattice>(q.image, config_->max_lattice);
  }
  const auto s = spec(name);
  return std::make_shared<const Lattice>(realize(s, limits_of(*config_, 100000)),
                                         config_->max_lattice);
}

RunResult cmd_verify(const RunConfig& c) {
  GroupResolver resolver(c);
  const auto names = selected_groups(resolver, c);
  const auto prepared = prepare(resolver, names, c.jobs);
  std::vector<TheoremId> theorems = c.theorems;
  if (theorems.empty()) theorems.assign(std::begin(kAllTheorems), std::end(kAllTheorems));

  ParamSweep sweep;
  sweep.prime = c.p;
  if (c.mode) sweep.modes = {*c.mode};
  sweep.all_complete_sets = c.all_complete_sets;
  sweep.complete_set_cap = c.complete_set_cap;

  std::vector<Skipped> skipped;
  std::vector<VerifyTask> tasks;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (prepared[i].skip) {
      skipped.push_back({names[i], *prepared[i].skip});
      continue;
    }
    for (auto t : theorems) tasks.push_back({i, t});
  }

  struct Out {
    std::vector<CriterionReport> reports;
    std::optional<std::string> skip;
  };
  std::vector<Out> outs(tasks.size());
  parallel_for(tasks.size(), c.jobs, [&](std::size_t k) {
    const auto& task = tasks[k];
    const auto& l = *prepared[task.group].lattice;
    std::vector<CriterionParams> params;
    try {
      params = admissible_params(l, task.theorem, sweep);
    } catch (const ResourceLimitError& e) {
      outs[k].skip = std::string(to_string(task.theorem)) + ": " + e.what();
      return;
    }
    if (c.d) std::erase_if(params, [&](const CriterionParams& p) { return p.d != *c.d; });
    Analysis a(l);
    for (const auto& p : params) outs[k].reports.push_back(check_equivalence(a, p, names[task.group]));
  });

  std::vector<CriterionReport> records;
  for (std::size_t k = 0; k < outs.size(); ++k) {
    if (outs[k].skip) skipped.push_back({names[tasks[k].group], *outs[k].skip});
    for (auto& r : outs[k].reports) records.push_back(std::move(r));
  }
  std::size_t bad = 0;
  for (const auto& r : records) bad += r.equivalent ? 0 : 1;

  RunResult res;
  res.report = verify_report(c, records, skipped, bad);
  res.summary = std::to_string(records.size()) + " checks, " + std::to_string(bad) +
                " inequivalences" +
                (skipped.empty() ? "" : ", " + std::to_string(skipped.size()) + " skipped") + "\n" +
                skipped_lines(skipped);
  res.exit_code = bad == 0 ? 0 : 1;
  return res;
}

RunResult cmd_lemmas(const RunConfig& c) {
  RunConfig cfg = c;
  if (!cfg.max_order) cfg.max_order = kLemmaDefaultMaxOrder;
  GroupResolver resolver(cfg);
  const auto names = selected_groups(resolver, cfg);
  const auto prepared = prepare(resolver, names, cfg.jobs);

  std::vector<Skipped> skipped;
  std::vector<LemmaTarget> targets;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (prepared[i].skip) {
      skipped.push_back({names[i], *prepared[i].skip});
      continue;
    }
    const auto& l = prepared[i].lattice;
    targets.push_back({names[i], l});
    if (!cfg.quotients) continue;
    for (std::size_t k = 1; k + 1 < l->size(); ++k)
      if (l->is_normal(k)) targets.push_back({names[i] + "/" + std::to_string(k), nullptr, i, k});
  }
  // Quotient lattices are built in parallel, from the lattice of their base group.
  parallel_for(targets.size(), cfg.jobs, [&](std::size_t i) {
    auto& t = targets[i];
    if (t.lattice) return;
    const auto& bl = *prepared[t.base].lattice;
    auto q = quotient(bl.group(), bl[t.normal]);
    t.lattice = std::make_shared<const Lattice>(q.image, cfg.max_lattice);
  });

  std::vector<LemmaId> lemmas = cfg.lemmas;
  if (lemmas.empty()) lemmas.assign(std::begin(kAllLemmas), std::end(kAllLemmas));
  struct Task {
    std::size_t target;
    LemmaId lemma;
    Prime p;
  };
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < targets.size(); ++i)
    for (auto lem : lemmas)
      for (auto p : prime_divisors(targets[i].lattice->group().order()))
        if (!cfg.p || *cfg.p == p) tasks.push_back({i, lem, p});

  std::vector<std::optional<PropertyReport>> outs(tasks.size());
  std::vector<std::optional<std::string>> skips(tasks.size());
  parallel_for(tasks.size(), cfg.jobs, [&](std::size_t k) {
    const auto& t = tasks[k];
    try {
      auto r = verify_lemma(*targets[t.target].lattice, t.lemma, t.p, cfg.complete_set_cap);
      r.group_name = targets[t.target].name;
      outs[k] = std::move(r);
    } catch (const ResourceLimitError& e) {
      skips[k] = std::string(to_string(t.lemma)) + " p=" + std::to_string(t.p) + ": " + e.what();
    }
  });

  std::vector<PropertyReport> records;
  for (std::size_t k = 0; k < tasks.size(); ++k) {
    if (skips[k]) skipped.push_back({targets[tasks[k].target].name, *skips[k]});
    if (outs[k]) records.push_back(std::move(*outs[k]));
  }
  std::size_t failures = 0;
  for (const auto& r : records) failures += r.passed ? 0 : 1;

  RunResult res;
  res.report = lemma_report(cfg, records, skipped, failures);
  res.summary = std::to_string(records.size()) + " lemma runs, " + std::to_string(failures) +
                " failures" +
                (skipped.empty() ? "" : ", " + std::to_string(skipped.size()) + " skipped") + "\n" +
                skipped_lines(skipped);
  res.exit_code = failures == 0 ? 0 : 1;
  return res;
}

RunResult cmd_analyze(const RunConfig& c, const std::string& name, std::optional<Prime> prime) {
  GroupResolver resolver(c);
  std::shared_ptr<const Lattice> lp;
  try {
    lp = resolver.lattice(name);
  } catch (const ResourceLimitError& e) {
    throw UsageError(name + ": " + e.what());
  }
  const Lattice& l = *lp;
  const Group& g = l.group();
  const auto primes = prime_divisors(g.order());
  Prime p = prime.value_or(primes.empty() ? 0 : primes.front());
  if (p == 0 || g.order() % p != 0)
    throw UsageError("p must be a prime divisor of |G| = " + std::to_string(g.order()));

  std::ostringstream os;
  os << "group " << name << "\n";
  os << "order " << g.order() << ", degree " << g.degree() << ", " << l.size() << " subgroups\n";
  os << "sylow";
  for (auto q : primes)
    os << "  " << q << ": " << l.sylow_indices(q).size() << " of order " << p_part(g.order(), q);
  os << '\n';
  const auto op_prime = o_pi(g, PrimeSet::excluding(p));
  const auto op = o_upper_p(g, p);
  os << "O_" << p << "'(G) = " << describe(op_prime) << '\n';
  os << "O^" << p << "(G) = " << describe(op) << '\n';
  os << "verdict: " << (is_p_nilpotent(g, p) ? "" : "not ") << p << "-nilpotent\n";

  PermutabilityCache perm(l);
  const auto gp_idx = l.sylow_indices(p).front();
  const auto& gp = l[gp_idx];
  os << "G_" << p << " = " << describe(gp) << '\n';
  std::uint64_t last = 0;
  for (auto hi : l.subgroups_of(gp)) {
    const auto& h = l[hi];
    if (!is_normal_in(h, gp)) continue;
    if (h.order() != last) {
      os << "normal subgroups of order " << h.order() << " in G_" << p << ":\n";
      last = h.order();
    }
    os << "  H = " << describe(h) << '\n';
    for (auto si : p_sylowizer_indices(l, l.whole(), h, p)) {
      const auto& s = l[si];
      const auto t = l.index_of(intersect(s, op));
      os << "    sylowizer " << describe(s) << ": "
         << (perm.is_s_permutable(si) ? "S-permutable" : "not S-permutable")
         << "; meet with O^p " << (perm.is_s_permutable(t) ? "S-permutable" : "not S-permutable")
         << ", " << (is_normal_in(l[t], op) ? "normal" : "not normal") << " in O^p\n";
    }
  }
  return {0, os.str(), ""};
}

RunResult cmd_replay(const RunConfig& c, const std::string& text, bool only_inequivalent) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw UsageError(std::string("report is not valid JSON: ") + e.what());
  }
  GroupResolver resolver(c);
  const auto command = doc.value("command", "");
  if (command != "verify" && command != "lemmas") throw UsageError("not a verify or lemmas report");

  std::map<std::string, std::shared_ptr<const Lattice>> lattices;
  auto lattice = [&](const std::string& name) -> const Lattice& {
    auto& slot = lattices[name];
    if (!slot) slot = resolver.lattice(name);
    return *slot;
  };

  std::ostringstream os;
  std::size_t checked = 0, still = 0;
  try {
    for (const auto& r : doc.at("records")) {
      const auto group = r.at("group").get<std::string>();
      if (command == "verify") {
        const auto& ws = r.at("witnesses");
        if (ws.empty() || (only_inequivalent && r.at("equivalent").get<bool>())) continue;
        const auto& l = lattice(group);
        const auto params = params_from_json(r.at("params"), l);
        for (std::size_t i = 0; i < ws.size(); ++i) {
          const bool again = witness_refails(l, params, witness_from_json(ws[i]));
          ++checked;
          still += again ? 1 : 0;
          os << group << ' ' << to_string(params.theorem) << " p=" << params.p << " d=" << params.d
             << " witness " << i << ": " << (again ? "fails again" : "no longer fails") << '\n';
        }
      } else {
        if (r.at("counterexample").is_null()) continue;
        const auto lemma = parse_lemma(r.at("lemma").get<std::string>());
        if (!lemma) throw UsageError("unknown lemma in report");
        const auto& cj = r["counterexample"];
        Counterexample ce{cj.at("part").get<std::string>(), cj.value("claim", ""),
                          cj.at("subgroups").get<std::map<std::string, std::vector<std::uint32_t>>>()};
        const auto p = r.at("p").get<Prime>();
        const bool again = counterexample_refails(lattice(group), *lemma, p, ce);
        ++checked;
        still += again ? 1 : 0;
        os << group << ' ' << ce.part << " p=" << p << ": "
           << (again ? "fails again" : "no longer fails") << '\n';
      }
    }
  } catch (const json::exception& e) {
    throw UsageError(std::string("malformed report: ") + e.what());
  } catch (const CriterionError& e) {
    throw UsageError(std::string("malformed report: ") + e.what());
  }
  RunResult res;
  res.report = os.str();
  res.summary = std::to_string(checked) + " replayed, " + std::to_string(still) + " still failing\n";
  res.exit_code = still == 0 ? 0 : 1;
  return res;
}

}  // namespace pnil::cli
