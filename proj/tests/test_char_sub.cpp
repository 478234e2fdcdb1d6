#include "corpus.hpp"
#include "oracles.hpp"

#include "pnil/char_sub.hpp"

#include <doctest.h>

using namespace pnil;

TEST_CASE("O^p of S3") {
  const auto& l = *testutil::named("S3").lattice;
  const auto o2 = o_upper_p(l.group(), 2);
  CHECK(o2.order() == 3);
  CHECK(o2 == l[l.sylow_indices(3).front()]);
  CHECK(o_upper_p(l.group(), 3) == l.whole());
}

TEST_CASE("p'-cores") {
  CHECK(o_pi(testutil::named("SL23").group(), PrimeSet::excluding(2)).is_trivial());
  CHECK(o_pi(testutil::named("C6").group(), PrimeSet::excluding(2)).order() == 3);
  CHECK(o_pi(testutil::named("F21").group(), PrimeSet::excluding(3)).order() == 7);
  CHECK(o_pi(testutil::named("S4").group(), PrimeSet::only(2)).order() == 4);
}

TEST_CASE("p-nilpotency against the p'-element oracle") {
  for (const auto& e : testutil::corpus()) {
    CAPTURE(e.spec.name);
    for (auto p : prime_divisors(e.group().order())) {
      CAPTURE(p);
      CHECK(is_p_nilpotent(e.group(), p) == oracle::p_nilpotent(e.group(), p));
    }
  }
}

TEST_CASE("nilpotent iff p-nilpotent for every p") {
  for (const auto& e : testutil::corpus()) {
    CAPTURE(e.spec.name);
    bool all = true;
    for (auto p : prime_divisors(e.group().order())) all = all && is_p_nilpotent(e.group(), p);
    CHECK(is_nilpotent(*e.lattice) == all);
  }
}

TEST_CASE("Sylow counts are 1 mod p and the Sylow subgroups are conjugate") {
  for (const auto& e : testutil::corpus()) {
    CAPTURE(e.spec.name);
    for (auto p : prime_divisors(e.group().order())) {
      const auto syl = sylow_subgroups(*e.lattice, p);
      CHECK(syl.size() % p == 1);
      CHECK(e.group().order() % syl.size() == 0);
    }
  }
}

TEST_CASE("prime sets") {
  const auto pi = PrimeSet::excluding(3);
  CHECK(pi.contains(2));
  CHECK(!pi.contains(3));
  CHECK(pi.admits(20));
  CHECK(!pi.admits(6));
  CHECK(PrimeSet::only(2).admits(1));
}
