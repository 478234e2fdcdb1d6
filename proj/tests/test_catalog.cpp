#include "corpus.hpp"

#include "pnil/catalog.hpp"

#include <doctest.h>

#include <set>
#include <sstream>

using namespace pnil;

namespace {

std::size_t order_of(const GroupSpec& s) { return realize(s)->order(); }

std::vector<GroupSpec> parse(const std::string& text) {
  std::istringstream is(text);
  return read_specs(is);
}

}  // namespace

TEST_CASE("builtin orders follow the family formulas") {
  for (std::uint64_t n : {1, 2, 6, 15, 32}) CHECK(order_of(builtin(Family::cyclic, {n})) == n);
  for (std::uint64_t n : {4, 6, 8, 18, 64}) CHECK(order_of(builtin(Family::dihedral, {n})) == n);
  const std::uint64_t fact[] = {1, 1, 2, 6, 24, 120, 720};
  for (std::uint64_t n = 1; n <= 6; ++n) {
    CHECK(order_of(builtin(Family::symmetric, {n})) == fact[n]);
    CHECK(order_of(builtin(Family::alternating, {n})) == (n < 2 ? 1 : fact[n] / 2));
  }
  for (std::uint64_t n : {8, 16, 32}) CHECK(order_of(builtin(Family::quaternion, {n})) == n);
  CHECK(order_of(builtin(Family::elementary_abelian, {2, 3})) == 8);
  CHECK(order_of(builtin(Family::elementary_abelian, {3, 2})) == 9);
  CHECK(order_of(builtin(Family::sl23)) == 24);
  CHECK(order_of(builtin(Family::frobenius21)) == 21);
  CHECK(order_of(builtin(Family::modular16)) == 16);
  CHECK(order_of(builtin(Family::semidihedral16)) == 16);
  CHECK(builtin(Family::dihedral, {4}).name == "V4");
}

TEST_CASE("builtin parameter errors") {
  CHECK_THROWS_AS(builtin(Family::symmetric, {7}), CatalogError);
  CHECK_THROWS_AS(builtin(Family::dihedral, {7}), CatalogError);
  CHECK_THROWS_AS(builtin(Family::quaternion, {4}), CatalogError);
  CHECK_THROWS_AS(builtin(Family::quaternion, {24}), CatalogError);
  CHECK_THROWS_AS(builtin(Family::elementary_abelian, {4, 2}), CatalogError);
  CHECK_THROWS_AS(builtin(Family::cyclic, {}), CatalogError);
  CHECK_THROWS_AS(builtin_from_string("klein"), CatalogError);
  CHECK_THROWS_AS(builtin_from_string("cyclic:x"), CatalogError);
  CHECK(builtin_from_string("elementary_abelian:2:2").name == "E4");
}

TEST_CASE("direct products") {
  const auto c2 = builtin(Family::cyclic, {2});
  const auto s3 = builtin(Family::symmetric, {3});
  const auto p = direct_product(s3, c2);
  CHECK(p.name == "S3xC2");
  CHECK(order_of(p) == 12);
  CHECK(order_of(direct_product(c2, c2)) == 4);
  CHECK(order_of(direct_product(builtin(Family::cyclic, {1}), s3)) == 6);
  CHECK_THROWS_AS(direct_product(builtin(Family::quaternion, {32}), c2), CatalogError);
  verify_tags(p, *realize(p));
}

TEST_CASE("the default corpus") {
  const auto& specs = testutil::corpus();
  CHECK(specs.size() >= 45);
  std::set<std::string> names;
  for (const auto& e : specs) {
    CAPTURE(e.spec.name);
    CHECK(names.insert(e.spec.name).second);
    CHECK(e.group().order() <= 200);
    CHECK_NOTHROW(verify_tags(e.spec, e.group()));
  }
  for (const char* must : {"A4", "S4", "SL23", "F21", "S3", "Q8"}) CHECK(names.count(must) == 1);
}

TEST_CASE("tags are verified, not trusted") {
  auto s = builtin(Family::sl23);
  s.tags.push_back("2-nilpotent");
  CHECK_THROWS_AS(verify_tags(s, *realize(s)), CatalogError);
  auto a = builtin(Family::alternating, {4});
  a.tags = {"order:13"};
  CHECK_THROWS_AS(verify_tags(a, *realize(a)), CatalogError);
  a.tags = {"abelian"};
  CHECK_THROWS_AS(verify_tags(a, *realize(a)), CatalogError);
}

TEST_CASE("save and load round trip") {
  const auto specs = default_corpus();
  std::ostringstream os;
  write_specs(os, specs);
  CHECK(parse(os.str()) == specs);

  std::ostringstream empty;
  write_specs(empty, {});
  CHECK(empty.str() == "pnil-catalog 1\n");
  CHECK(parse(empty.str()).empty());
}

TEST_CASE("malformed catalogs") {
  CHECK_THROWS_WITH(parse("pnil-catalog 1\ngroup X\ndegree 3\ngen 0 0 1\nend\n"),
                    "line 4: generator 0 not a bijection");
  CHECK_THROWS_WITH(parse("pnil-catalog 1\ngroup X\ndegree 3\ngen 1 2 0\ngen 0 1\nend\n"),
                    "line 5: generator 1 has 2 images, expected 3");
  CHECK_THROWS_WITH(parse("group X\n"), "line 1: expected header 'pnil-catalog 1'");
  CHECK_THROWS_WITH(parse("pnil-catalog 1\ngroup X\ndegree 1\nend\ngroup X\n"),
                    "line 5: duplicate group name X");
  CHECK_THROWS_WITH(parse("pnil-catalog 1\ngroup X\ndegree 1\n"), "line 3: group X has no 'end'");
  CHECK_THROWS_WITH(parse("pnil-catalog 1\ngroup X\ncolour red\n"), "line 3: unknown field 'colour'");
  CHECK_THROWS_WITH(parse("pnil-catalog 1\ngroup X\ndegree -2\n"),
                    "line 3: degree must be a positive integer");
  CHECK_THROWS_AS(parse(""), CatalogError);
}

TEST_CASE("comments and blank lines") {
  const auto specs = parse("# corpus\npnil-catalog 1\n\n# a group\ngroup C3\ndegree 3\ntags abelian\ngen 1 2 0\nend\n");
  REQUIRE(specs.size() == 1);
  CHECK(specs[0].tags == std::vector<std::string>{"abelian"});
  CHECK(order_of(specs[0]) == 3);
}
