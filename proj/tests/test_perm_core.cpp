#include "corpus.hpp"

#include "pnil/group.hpp"
#include "pnil/permutation.hpp"

#include <doctest.h>

using namespace pnil;

TEST_CASE("compose applies the left factor first") {
  const auto p = Permutation::from_cycles(3, {{0, 1}});
  const auto q = Permutation::from_cycles(3, {{1, 2}});
  // 0 -> 1 under p, then 1 -> 2 under q.
  CHECK(compose(p, q)(0) == 2);
  CHECK(compose(q, p)(0) == 1);
  CHECK(compose(p, inverse(p)).is_identity());
}

TEST_CASE("permutation validation") {
  CHECK_THROWS_AS(Permutation({0, 0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(Permutation::from_cycles(3, {{0, 1}, {1, 2}}), std::invalid_argument);
  CHECK_THROWS_WITH(compose(Permutation::identity(2), Permutation::identity(3)),
                    "incompatible degrees");
  CHECK(element_order(Permutation::from_cycles(5, {{0, 1}, {2, 3, 4}})) == 6);
  CHECK(Permutation::from_cycles(4, {{0, 2}}).to_cycle_string() == "(0 2)");
  CHECK(Permutation::identity(4).to_cycle_string() == "()");
}

TEST_CASE("group closure") {
  const auto s4 = realize(builtin(Family::symmetric, {4}));
  CHECK(s4->order() == 24);
  CHECK(s4->element(0).is_identity());
  for (Group::Index i = 0; i < s4->order(); ++i) {
    CHECK(s4->index_of(s4->element(i)) == i);
    CHECK(s4->multiply(i, s4->inverse_of(i)) == 0);
  }
  // The table agrees with composing the stored permutations.
  for (Group::Index i = 0; i < s4->order(); i += 5)
    for (Group::Index j = 0; j < s4->order(); j += 3)
      CHECK(s4->element(s4->multiply(i, j)) == compose(s4->element(i), s4->element(j)));
  CHECK(is_member(*s4, Permutation::from_cycles(4, {{0, 3}})));
}

TEST_CASE("canonical element order is reproducible") {
  const auto spec = builtin(Family::sl23);
  const auto a = realize(spec);
  const auto b = realize(spec);
  REQUIRE(a->order() == b->order());
  for (std::size_t i = 0; i < a->order(); ++i) CHECK(a->element(i) == b->element(i));
}

TEST_CASE("resource limits") {
  const auto s6 = builtin(Family::symmetric, {6});
  CHECK_THROWS_WITH_AS(realize(s6, Limits{32, 100}), "group too large for exhaustive mode",
                       ResourceLimitError);
  CHECK_THROWS_AS(realize(builtin(Family::cyclic, {12}), Limits{8, 1000}), ResourceLimitError);
}

TEST_CASE("closure order matches stabilizer-chain order on the corpus") {
  for (const auto& e : testutil::corpus()) {
    CAPTURE(e.spec.name);
    const auto& g = e.group();
    CHECK(stabilizer_chain_order(g.generators(), g.degree()) == g.order());
  }
}
