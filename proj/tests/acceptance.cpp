// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.
#include "oracles.hpp"

#include "pnil/catalog.hpp"
#include "pnil/char_sub.hpp"
#include "pnil/driver.hpp"
#include "pnil/sylowizer.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <sys/wait.h>

using namespace pnil;
using namespace pnil::cli;
using nlohmann::json;

namespace {

constexpr double kRuntimeLimitSeconds = 300.0;
constexpr std::size_t kMinTuplesCriterion1 = 200;

int failures = 0;

void report(int n, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << ' ' << n << ' ' << detail << '\n';
  if (!ok) ++failures;
}

struct VerifyStats {
  std::size_t records = 0, inequivalent = 0, skipped = 0;
  double seconds = 0;
  json doc;
};

VerifyStats verify(RunConfig c) {
  const auto t0 = std::chrono::steady_clock::now();
  auto r = cmd_verify(c);
  VerifyStats s;
  s.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  s.doc = json::parse(r.report);
  s.records = s.doc["records"].size();
  for (const auto& rec : s.doc["records"]) s.inequivalent += !rec["equivalent"].get<bool>();
  s.skipped = s.doc["summary"]["skipped"].size();
  return s;
}

std::string describe(const VerifyStats& s) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << s.records << " tuples, " << s.inequivalent << " inequivalent, " << s.skipped << " skipped, "
     << s.seconds << " s";
  return os.str();
}

bool hypothesis_of(const json& doc, const std::string& group, Prime p) {
  for (const auto& rec : doc["records"])
    if (rec["group"] == group && rec["params"]["p"] == p) return rec["hypothesis"].get<bool>();
  throw std::runtime_error("no record for " + group);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion1() {
  RunConfig c;
  c.theorems = {TheoremId::T31, TheoremId::C32};
  const auto s = verify(c);
  report(1, s.records >= kMinTuplesCriterion1 && s.inequivalent == 0 && s.skipped == 0 &&
                s.seconds < kRuntimeLimitSeconds,
         describe(s));
}

void criterion2() {
  RunConfig c;
  c.theorems = {TheoremId::T34, TheoremId::C35};
  const auto s = verify(c);
  std::size_t expected = 0;
  for (const auto& spec : default_corpus()) {
    const Lattice l(realize(spec));
    for (auto id : c.theorems) expected += admissible_params(l, id).size();
  }
  report(2, s.records == expected && s.records > 0 && s.inequivalent == 0, describe(s));
}

void criterion3() {
  RunConfig c;
  c.theorems = {TheoremId::T36};
  c.mode = Mode::s_permutable;
  const auto s = verify(c);
  const auto all = verify({.theorems = {TheoremId::T36}});
  bool anchors = !hypothesis_of(s.doc, "A4", 2) && !hypothesis_of(s.doc, "S4", 2) &&
                 !hypothesis_of(s.doc, "SL23", 2) && hypothesis_of(s.doc, "S3", 2) &&
                 hypothesis_of(s.doc, "F21", 3) && !hypothesis_of(s.doc, "F21", 7);
  report(3, anchors && all.inequivalent == 0 && all.records > 0,
         describe(all) + (anchors ? ", anchors match" : ", anchors differ"));
}

void criterion4() {
  RunConfig c;
  c.theorems = {TheoremId::T37, TheoremId::C38, TheoremId::C39, TheoremId::C310};
  const auto canon = verify(c);
  RunConfig sets;
  sets.theorems = {TheoremId::T37};
  sets.all_complete_sets = true;
  sets.max_order = 100;
  const auto all = verify(sets);
  bool c39_ok = true;
  std::size_t c39 = 0;
  for (const auto& rec : canon.doc["records"]) {
    if (rec["params"]["theorem"] != "C39") continue;
    const auto& spec = GroupResolver(RunConfig{}).spec(rec["group"]);
    const Lattice l(realize(spec));
    c39_ok &= rec["conclusion"].get<bool>() == is_nilpotent(l) && rec["equivalent"].get<bool>();
    ++c39;
  }
  report(4, canon.inequivalent == 0 && canon.skipped == 0 && all.inequivalent == 0 && all.records > 0 &&
                c39_ok && c39 == default_corpus().size(),
         "canonical: " + describe(canon) + "; all sets (order <= 100): " + describe(all) +
             "; C39 vs is_nilpotent on " + std::to_string(c39) + " groups");
}

void criterion5() {
  RunConfig c;
  c.max_order = 100;
  c.quotients = true;
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = cmd_lemmas(c);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const auto doc = json::parse(r.report);
  std::size_t runs = 0, failed = 0, empty = 0, quotient_runs = 0;
  for (const auto& rec : doc["records"]) {
    ++runs;
    failed += !rec["passed"].get<bool>();
    empty += rec["instances"].get<std::size_t>() == 0;
    quotient_runs += rec["group"].get<std::string>().find('/') != std::string::npos;
  }
  std::size_t in_range = 0;
  for (const auto& spec : default_corpus()) in_range += realize(spec)->order() <= 100;
  const auto skipped = doc["summary"]["skipped"].size();
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << runs << " runs (" << quotient_runs << " on quotients), " << failed << " counterexamples, "
     << empty << " without instances, " << in_range << " groups, " << secs << " s";
  os << ", " << skipped << " groups above the order bound";
  report(5, runs > 0 && failed == 0 && quotient_runs > 0 && in_range + skipped == default_corpus().size() &&
                r.exit_code == 0,
         os.str());
}

void criterion6() {
  bool orders = true, counts = true, sylow = true;
  for (const auto& spec : default_corpus()) {
    const auto g = realize(spec);
    orders &= stabilizer_chain_order(g->generators(), g->degree()) == g->order();
    const Lattice l(g);
    for (auto p : prime_divisors(g->order())) sylow &= l.sylow_indices(p).size() % p == 1;
  }
  const std::pair<const char*, std::size_t> expected[] = {{"symmetric:3", 6}, {"alternating:4", 10},
                                                          {"dihedral:8", 10}, {"quaternion:8", 6}};
  for (const auto& [name, n] : expected) {
    const auto g = realize(builtin_from_string(name));
    counts &= Lattice(g).size() == n && oracle::subset_closure_count(*g) == n;
  }
  report(6, orders && counts && sylow,
         std::string("stabilizer chain ") + (orders ? "ok" : "mismatch") + ", subgroup counts " +
             (counts ? "ok" : "mismatch") + ", Sylow counts mod p " + (sylow ? "ok" : "mismatch"));
}

void criterion7() {
  const Lattice s3(realize(builtin_from_string("symmetric:3")));
  const Lattice a4(realize(builtin_from_string("alternating:4")));
  const auto a3 = s3[s3.sylow_indices(3).front()];
  bool ok = p_sylowizers(s3, s3.trivial(), 2) == std::vector<Subgroup>{a3};
  const auto t = Permutation::from_cycles(3, {{0, 1}});
  const Group::Index ti[] = {*s3.group().index_of(t)};
  ok &= p_sylowizers(s3, generate_subgroup(s3.group(), ti), 2) == std::vector<Subgroup>{s3.whole()};
  std::size_t c2s = 0;
  for (const auto& h : a4.subgroups()) {
    if (h.order() != 2) continue;
    ++c2s;
    ok &= p_sylowizers(a4, h, 2) == std::vector<Subgroup>{h};
    ok &= !is_s_permutable(a4, h);
  }
  ok &= c2s == 3;
  ok &= o_upper_p(s3.group(), 2) == a3;
  ok &= o_upper_p(s3.group(), 3) == s3.whole();
  report(7, ok, ok ? "all spot values match" : "spot value mismatch");
}

void criterion8() {
  RunConfig c;
  c.all_complete_sets = true;
  c.max_order = 100;
  c.jobs = 1;
  const auto one = cmd_verify(c).report;
  c.jobs = 8;
  const auto eight = cmd_verify(c).report;
  report(8, one == eight && !one.empty(),
         std::to_string(one.size()) + " bytes, " + (one == eight ? "identical" : "different"));
}

void criterion9() {
  const std::string bin = PNIL_FAULT_BINARY;
  const std::filesystem::path dir = PNIL_WORK_DIR;
  const auto report_path = (dir / "fault_report.json").string();
  const auto log = (dir / "fault_log.txt").string();
  auto run = [&](const std::string& args) {
    const auto cmd = "\"" + bin + "\" " + args + " >\"" + log + "\" 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  };
  const int faulty = run("--inject-fault never verify --group S3,A4 -o \"" + report_path + "\"");
  const int refail = run("--inject-fault never replay --inequivalent-only \"" + report_path + "\"");
  const int clean = run("replay --inequivalent-only \"" + report_path + "\"");
  const int clean_verify = run("verify --group S3,A4");
  std::size_t witnesses = 0;
  try {
    const auto doc = json::parse(read_file(report_path));
    for (const auto& rec : doc["records"])
      if (!rec["equivalent"].get<bool>()) witnesses += rec["witnesses"].size();
  } catch (const std::exception& e) {
    std::cerr << "fault report: " << e.what() << '\n';
  }
  std::ostringstream os;
  os << "faulty verify exit " << faulty << " with " << witnesses << " witnesses, replay under fault exit "
     << refail << ", clean replay exit " << clean << ", clean verify exit " << clean_verify;
  report(9, faulty == 1 && witnesses > 0 && refail == 1 && clean == 0 && clean_verify == 0, os.str());
}

}  // namespace

int main() {
  const std::pair<int, void (*)()> all[] = {{1, criterion1}, {2, criterion2}, {3, criterion3},
                                            {4, criterion4}, {5, criterion5}, {6, criterion6},
                                            {7, criterion7}, {8, criterion8}, {9, criterion9}};
  for (const auto& [n, fn] : all) {
    try {
      fn();
    } catch (const std::exception& e) {
      report(n, false, std::string("error: ") + e.what());
    }
  }
  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << '\n';
  return failures == 0 ? 0 : 1;
}
