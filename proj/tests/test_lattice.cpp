#include "corpus.hpp"
#include "oracles.hpp"

#include "pnil/lattice.hpp"

#include <doctest.h>

using namespace pnil;

TEST_CASE("subgroup counts against the subset-closure oracle") {
  const std::pair<const char*, std::size_t> expected[] = {
      {"S3", 6}, {"A4", 10}, {"D8", 10}, {"Q8", 6}};
  for (const auto& [name, count] : expected) {
    CAPTURE(name);
    const auto& e = testutil::named(name);
    CHECK(e.lattice->size() == count);
    CHECK(oracle::subset_closure_count(e.group()) == count);
  }
}

TEST_CASE("lattice is sorted and duplicate free") {
  for (const auto* e : testutil::corpus_upto(60)) {
    const auto& l = *e->lattice;
    CAPTURE(e->spec.name);
    CHECK(l.trivial().order() == 1);
    CHECK(l.whole().order() == e->group().order());
    for (std::size_t i = 1; i < l.size(); ++i) {
      CHECK(l[i - 1].order() <= l[i].order());
      CHECK(!(l[i - 1] == l[i]));
      CHECK(e->group().order() % l[i].order() == 0);
    }
  }
}

TEST_CASE("derived subgroup against brute commutator closure") {
  for (const auto* e : testutil::corpus_upto(72)) {
    CAPTURE(e->spec.name);
    const auto& l = *e->lattice;
    for (std::size_t i = 0; i < l.size(); i += 3)
      CHECK(oracle::members(derived_subgroup(l[i])) == oracle::derived(l[i]));
  }
}

TEST_CASE("normality and subnormality against oracles") {
  for (const auto* e : testutil::corpus_upto(24)) {
    CAPTURE(e->spec.name);
    const auto& l = *e->lattice;
    for (std::size_t i = 0; i < l.size(); ++i) {
      CHECK(l.is_normal(i) == oracle::normalized(l[i], l.whole()));
      CHECK(is_subnormal(l[i]) == oracle::subnormal(l, i));
    }
  }
}

TEST_CASE("frattini and maximal subgroups") {
  const auto& q8 = *testutil::named("Q8").lattice;
  CHECK(frattini_subgroup(q8, q8.whole()).order() == 2);
  CHECK(maximal_subgroups(q8, q8.whole()).size() == 3);
  const auto& s3 = *testutil::named("S3").lattice;
  CHECK(frattini_subgroup(s3, s3.whole()).is_trivial());
  CHECK(maximal_subgroups(s3, s3.whole()).size() == 4);
  const auto& a4 = *testutil::named("A4").lattice;
  CHECK(minimal_normal_subgroups(a4).size() == 1);
  CHECK(minimal_normal_subgroups(a4).front().order() == 4);
}

TEST_CASE("normalizer and normal closure") {
  const auto& s4 = *testutil::named("S4").lattice;
  for (std::size_t i = 0; i < s4.size(); ++i) {
    const auto n = normalizer(s4[i]);
    CHECK(s4[i].is_subgroup_of(n));
    CHECK(oracle::normalized(s4[i], n));
    const auto c = normal_closure(s4[i], s4.whole());
    CHECK(is_normal(c));
    CHECK(s4[i].is_subgroup_of(c));
  }
}

TEST_CASE("lattice cap") {
  CHECK_THROWS_WITH_AS(Lattice(realize(builtin(Family::symmetric, {5})), 100),
                       "lattice too large", ResourceLimitError);
}

TEST_CASE("describe") {
  const auto& s3 = *testutil::named("S3").lattice;
  CHECK(describe(s3.trivial()) == "order 1 {0}");
}
