#include "pnil/catalog.hpp"

#include "pnil/char_sub.hpp"
#include "pnil/lattice.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

namespace pnil {

namespace {

using Images = std::vector<Point>;

std::string str(std::uint64_t n) { return std::to_string(n); }

Images cycle_images(std::size_t degree, std::size_t offset, std::size_t len) {
  Images im(degree);
  std::iota(im.begin(), im.end(), Point{0});
  for (std::size_t i = 0; i < len; ++i) im[offset + i] = static_cast<Point>(offset + (i + 1) % len);
  return im;
}

Images transposition(std::size_t degree, Point a, Point b) {
  Images im(degree);
  std::iota(im.begin(), im.end(), Point{0});
  std::swap(im[a], im[b]);
  return im;
}

std::uint64_t factorial(std::uint64_t n) { return n <= 1 ? 1 : n * factorial(n - 1); }

// Right regular representation of <a, b | a^n, b^m = a^s, b^-1 a b = a^r>.
// Element a^i b^j sits at point i*m + j.
GroupSpec metacyclic(std::string name, std::uint64_t n, std::uint64_t m, std::uint64_t r,
                     std::uint64_t s) {
  auto mul = [&](std::uint64_t i, std::uint64_t j, std::uint64_t k, std::uint64_t l) {
    std::uint64_t rj = 1;
    for (std::uint64_t t = 0; t < j; ++t) rj = rj * r % n;
    std::uint64_t e = i + k * rj + (j + l >= m ? s : 0);
    return (e % n) * m + (j + l) % m;
  };
  const std::size_t deg = n * m;
  Images ga(deg), gb(deg);
  for (std::uint64_t i = 0; i < n; ++i)
    for (std::uint64_t j = 0; j < m; ++j) {
      ga[i * m + j] = static_cast<Point>(mul(i, j, 1, 0));
      gb[i * m + j] = static_cast<Point>(mul(i, j, 0, 1));
    }
  return {std::move(name), deg, {ga, gb}, {}};
}

void tag(GroupSpec& s, std::initializer_list<std::string> tags) {
  s.tags.insert(s.tags.end(), tags.begin(), tags.end());
}

std::uint64_t spec_order(const GroupSpec& s) {
  for (const auto& t : s.tags)
    if (t.starts_with("order:")) return std::stoull(t.substr(6));
  return 0;
}

bool has_tag(const GroupSpec& s, const std::string& t) {
  return std::find(s.tags.begin(), s.tags.end(), t) != s.tags.end();
}

}  // namespace

GroupSpec builtin(Family family, const std::vector<std::uint64_t>& params) {
  auto need = [&](std::size_t k) {
    if (params.size() != k)
      throw CatalogError("expected " + str(k) + " parameter(s), got " + str(params.size()));
  };
  GroupSpec s;
  switch (family) {
    case Family::cyclic: {
      need(1);
      const auto n = params[0];
      if (n < 1 || n > 32) throw CatalogError("cyclic order must be in [1, 32]");
      s = {"C" + str(n), n, {cycle_images(n, 0, n)}, {}};
      tag(s, {"abelian", "nilpotent"});
      if (n > 1 && is_p_power(n, prime_divisors(n).front())) tag(s, {"p-group"});
      break;
    }
    case Family::dihedral: {
      need(1);
      const auto order = params[0];
      if (order < 4 || order % 2 != 0 || order > 64)
        throw CatalogError("dihedral order must be even and in [4, 64]");
      const auto n = order / 2;
      if (n == 2) {
        s = {"V4", 4, {{1, 0, 3, 2}, {2, 3, 0, 1}}, {"abelian", "nilpotent", "p-group"}};
        break;
      }
      Images refl(n);
      for (std::uint64_t i = 0; i < n; ++i) refl[i] = static_cast<Point>((n - i) % n);
      s = {"D" + str(order), n, {cycle_images(n, 0, n), refl}, {"2-nilpotent"}};
      if (is_p_power(n, 2)) {
        tag(s, {"nilpotent", "p-group"});
      } else {
        tag(s, {"non-nilpotent"});
        for (auto p : prime_divisors(n))
          if (p != 2) tag(s, {"non-" + str(p) + "-nilpotent"});
      }
      break;
    }
    case Family::symmetric: {
      need(1);
      const auto n = params[0];
      if (n < 1 || n > 6) throw CatalogError("symmetric degree must be in [1, 6]");
      s = {"S" + str(n), n, {}, {}};
      if (n >= 2) s.generators.push_back(transposition(n, 0, 1));
      if (n >= 3) s.generators.push_back(cycle_images(n, 0, n));
      if (n <= 2) tag(s, {"abelian", "nilpotent"});
      if (n == 3) tag(s, {"2-nilpotent", "non-3-nilpotent", "non-nilpotent"});
      if (n >= 4) {
        tag(s, {"non-nilpotent"});
        for (auto p : prime_divisors(factorial(n))) tag(s, {"non-" + str(p) + "-nilpotent"});
      }
      break;
    }
    case Family::alternating: {
      need(1);
      const auto n = params[0];
      if (n < 1 || n > 6) throw CatalogError("alternating degree must be in [1, 6]");
      s = {"A" + str(n), n, {}, {}};
      for (Point k = 2; k < n; ++k) {
        Images im(n);
        std::iota(im.begin(), im.end(), Point{0});
        im[0] = 1;
        im[1] = k;
        im[k] = 0;
        s.generators.push_back(im);
      }
      if (n <= 3) tag(s, {"abelian", "nilpotent"});
      if (n == 4) tag(s, {"non-2-nilpotent", "3-nilpotent", "non-nilpotent"});
      if (n >= 5) {
        tag(s, {"non-nilpotent"});
        for (auto p : prime_divisors(factorial(n) / 2)) tag(s, {"non-" + str(p) + "-nilpotent"});
      }
      break;
    }
    case Family::quaternion: {
      need(1);
      const auto order = params[0];
      if (order < 8 || order > 32 || !is_p_power(order, 2))
        throw CatalogError("quaternion order must be a power of 2 in [8, 32]");
      const auto n = order / 2;
      s = metacyclic("Q" + str(order), n, 2, n - 1, n / 2);
      tag(s, {"nilpotent", "p-group"});
      if (order == 8) tag(s, {"non-abelian"});
      break;
    }
    case Family::elementary_abelian: {
      need(2);
      const auto p = params[0];
      const auto k = params[1];
      if (!is_prime(p) || k < 1 || p * k > 32)
        throw CatalogError("elementary abelian needs a prime p and k >= 1 with p*k <= 32");
      std::uint64_t order = 1;
      for (std::uint64_t i = 0; i < k; ++i) order *= p;
      s = {k == 1 ? "C" + str(p) : "E" + str(order), p * k, {}, {}};
      for (std::uint64_t i = 0; i < k; ++i) s.generators.push_back(cycle_images(p * k, i * p, p));
      tag(s, {"abelian", "nilpotent", "p-group"});
      break;
    }
    case Family::sl23: {
      need(0);
      // Right action v -> vM on the 8 nonzero row vectors (x, y) of F_3^2,
      // vector (x, y) at point 3x + y - 1.
      auto act = [](int a, int b, int c, int d) {
        Images im(8);
        for (int x = 0; x < 3; ++x)
          for (int y = 0; y < 3; ++y) {
            if (x == 0 && y == 0) continue;
            const int u = (x * a + y * c) % 3;
            const int v = (x * b + y * d) % 3;
            im[3 * x + y - 1] = static_cast<Point>(3 * u + v - 1);
          }
        return im;
      };
      s = {"SL23", 8, {act(1, 1, 0, 1), act(1, 0, 1, 1)}, {}};
      tag(s, {"non-2-nilpotent", "3-nilpotent", "non-nilpotent"});
      break;
    }
    case Family::frobenius21: {
      need(0);
      Images twice(7);
      for (Point x = 0; x < 7; ++x) twice[x] = (2 * x) % 7;
      s = {"F21", 7, {cycle_images(7, 0, 7), twice}, {}};
      tag(s, {"3-nilpotent", "non-7-nilpotent", "non-nilpotent"});
      break;
    }
    case Family::modular16:
      need(0);
      s = metacyclic("M16", 8, 2, 5, 0);
      tag(s, {"nilpotent", "p-group"});
      break;
    case Family::semidihedral16:
      need(0);
      s = metacyclic("SD16", 8, 2, 3, 0);
      tag(s, {"nilpotent", "p-group"});
      break;
  }
  const auto g = realize(s, Limits{64, 100000});
  s.tags.insert(s.tags.begin(), "order:" + str(g->order()));
  return s;
}

GroupSpec builtin_from_string(const std::string& text) {
  static const std::pair<const char*, Family> names[] = {
      {"cyclic", Family::cyclic},
      {"dihedral", Family::dihedral},
      {"symmetric", Family::symmetric},
      {"alternating", Family::alternating},
      {"quaternion", Family::quaternion},
      {"elementary_abelian", Family::elementary_abelian},
      {"sl23", Family::sl23},
      {"frobenius21", Family::frobenius21},
      {"modular16", Family::modular16},
      {"semidihedral16", Family::semidihedral16},
  };
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  if (parts.empty()) throw CatalogError("empty family name");
  for (const auto& [name, family] : names) {
    if (parts[0] != name) continue;
    std::vector<std::uint64_t> params;
    for (std::size_t i = 1; i < parts.size(); ++i) {
      std::uint64_t v = 0;
      const auto& p = parts[i];
      auto [ptr, ec] = std::from_chars(p.data(), p.data() + p.size(), v);
      if (ec != std::errc{} || ptr != p.data() + p.size())
        throw CatalogError("bad parameter '" + p + "' in " + text);
      params.push_back(v);
    }
    return builtin(family, params);
  }
  throw CatalogError("unknown family " + parts[0]);
}

GroupSpec direct_product(const GroupSpec& a, const GroupSpec& b, const Limits& limits) {
  const std::size_t deg = a.degree + b.degree;
  if (deg > limits.max_degree)
    throw CatalogError("direct product degree " + str(deg) + " exceeds cap " +
                       str(limits.max_degree));
  GroupSpec s{a.name + "x" + b.name, deg, {}, {}};
  for (const auto& g : a.generators) {
    Images im(deg);
    std::iota(im.begin(), im.end(), Point{0});
    std::copy(g.begin(), g.end(), im.begin());
    s.generators.push_back(im);
  }
  for (const auto& g : b.generators) {
    Images im(deg);
    std::iota(im.begin(), im.end(), Point{0});
    for (std::size_t i = 0; i < g.size(); ++i)
      im[a.degree + i] = static_cast<Point>(a.degree + g[i]);
    s.generators.push_back(im);
  }

  // Tags that pass to products: order multiplies, "abelian" and
  // "nilpotent" need both factors, "p-nilpotent" needs both factors
  // (a p'-factor counts), and a non-p-nilpotent factor makes the product
  // non-p-nilpotent since it is a quotient.
  const auto oa = spec_order(a);
  const auto ob = spec_order(b);
  if (oa && ob) s.tags.push_back("order:" + str(oa * ob));
  for (const char* t : {"abelian", "nilpotent"})
    if (has_tag(a, t) && has_tag(b, t)) s.tags.push_back(t);
  if ((has_tag(a, "non-nilpotent") || has_tag(b, "non-nilpotent")))
    s.tags.push_back("non-nilpotent");
  std::set<Prime> primes;
  for (auto o : {oa, ob})
    if (o)
      for (auto p : prime_divisors(o)) primes.insert(p);
  for (auto p : primes) {
    const auto pn = str(p) + "-nilpotent";
    auto nil = [&](const GroupSpec& x, std::uint64_t o) {
      return has_tag(x, pn) || has_tag(x, "nilpotent") || (o && o % p != 0);
    };
    if (has_tag(a, "non-" + pn) || has_tag(b, "non-" + pn))
      s.tags.push_back("non-" + pn);
    else if (nil(a, oa) && nil(b, ob) && !(has_tag(a, "nilpotent") && has_tag(b, "nilpotent")))
      s.tags.push_back(pn);
  }
  return s;
}

GroupPtr realize(const GroupSpec& spec, const Limits& limits) {
  std::vector<Permutation> gens;
  for (const auto& g : spec.generators) gens.emplace_back(g);
  if (gens.empty()) gens.push_back(Permutation::identity(spec.degree));
  return Group::generate(std::move(gens), spec.degree, limits);
}

std::vector<GroupSpec> default_corpus() {
  auto b = [](Family f, std::vector<std::uint64_t> params = {}) { return builtin(f, params); };
  const auto c2 = b(Family::cyclic, {2});
  const auto c3 = b(Family::cyclic, {3});
  const auto s3 = b(Family::symmetric, {3});
  const auto a4 = b(Family::alternating, {4});
  const auto s4 = b(Family::symmetric, {4});
  const auto a5 = b(Family::alternating, {5});
  const auto d8 = b(Family::dihedral, {8});
  const auto d10 = b(Family::dihedral, {10});
  const auto q8 = b(Family::quaternion, {8});
  const auto sl23 = b(Family::sl23);
  const auto f21 = b(Family::frobenius21);

  std::vector<GroupSpec> out;
  for (std::uint64_t n : {2, 3, 4, 5, 6, 7, 8, 9, 12, 15}) out.push_back(b(Family::cyclic, {n}));
  for (std::uint64_t n : {4, 8, 10, 12, 16, 18}) out.push_back(b(Family::dihedral, {n}));
  out.push_back(s3);
  out.push_back(a4);
  out.push_back(s4);
  out.push_back(a5);
  out.push_back(b(Family::symmetric, {5}));
  for (std::uint64_t n : {8, 16, 32}) out.push_back(b(Family::quaternion, {n}));
  out.push_back(b(Family::elementary_abelian, {2, 3}));
  out.push_back(b(Family::elementary_abelian, {3, 2}));
  out.push_back(b(Family::elementary_abelian, {2, 4}));
  out.push_back(sl23);
  out.push_back(f21);
  out.push_back(b(Family::modular16));
  out.push_back(b(Family::semidihedral16));

  const std::pair<const GroupSpec*, const GroupSpec*> products[] = {
      {&s3, &c2},  {&s3, &c3},   {&s3, &s3},  {&a4, &c2}, {&a4, &c3},  {&s4, &c2},
      {&sl23, &c2}, {&sl23, &c3}, {&q8, &c2},  {&q8, &c3}, {&q8, &s3},  {&d8, &c2},
      {&d8, &c3},  {&d8, &s3},   {&d10, &c3}, {&f21, &c2}, {&f21, &c3}, {&a4, &s3},
      {&s4, &s3},  {&a5, &c2},   {&a5, &c3},
  };
  for (const auto& [x, y] : products) out.push_back(direct_product(*x, *y));
  return out;
}

void verify_tags(const GroupSpec& spec, const Group& group) {
  auto fail = [&](const std::string& t) {
    throw CatalogError("group " + spec.name + ": tag '" + t + "' does not hold");
  };
  const auto order = group.order();
  for (const auto& t : spec.tags) {
    if (t.starts_with("order:")) {
      if (t.substr(6) != str(order)) fail(t);
    } else if (t == "abelian") {
      if (!is_abelian(whole_group(group))) fail(t);
    } else if (t == "non-abelian") {
      if (is_abelian(whole_group(group))) fail(t);
    } else if (t == "p-group") {
      if (order == 1 || prime_divisors(order).size() != 1) fail(t);
    } else if (t == "nilpotent" || t == "non-nilpotent") {
      bool nil = true;
      for (auto p : prime_divisors(order)) nil = nil && is_p_nilpotent(group, p);
      if (nil != (t == "nilpotent")) fail(t);
    } else if (t.ends_with("-nilpotent")) {
      const bool negated = t.starts_with("non-");
      const auto body = t.substr(negated ? 4 : 0, t.size() - (negated ? 4 : 0) - 10);
      std::uint64_t p = 0;
      auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), p);
      if (ec != std::errc{} || ptr != body.data() + body.size() || !is_prime(p)) continue;
      if (is_p_nilpotent(group, p) == negated) fail(t);
    }
  }
}

void write_specs(std::ostream& os, const std::vector<GroupSpec>& specs) {
  os << "pnil-catalog 1\n";
  for (const auto& s : specs) {
    os << "\ngroup " << s.name << "\ndegree " << s.degree << '\n';
    if (!s.tags.empty()) {
      os << "tags";
      for (const auto& t : s.tags) os << ' ' << t;
      os << '\n';
    }
    for (const auto& g : s.generators) {
      os << "gen";
      for (auto x : g) os << ' ' << x;
      os << '\n';
    }
    os << "end\n";
  }
}

std::vector<GroupSpec> read_specs(std::istream& is) {
  std::vector<GroupSpec> out;
  std::set<std::string> names;
  std::optional<GroupSpec> cur;
  bool header = false;
  bool have_degree = false;
  std::size_t lineno = 0;
  auto error = [&](const std::string& msg) {
    return CatalogError("line " + str(lineno) + ": " + msg);
  };

  for (std::string line; std::getline(is, line);) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key) || key.starts_with("#")) continue;
    if (!header) {
      std::string version;
      if (key != "pnil-catalog" || !(ls >> version) || version != "1")
        throw error("expected header 'pnil-catalog 1'");
      header = true;
      continue;
    }
    std::vector<std::string> rest;
    for (std::string w; ls >> w;) rest.push_back(w);

    if (key == "group") {
      if (cur) throw error("'group' before 'end' of " + cur->name);
      if (rest.size() != 1) throw error("group needs exactly one name");
      if (!names.insert(rest[0]).second) throw error("duplicate group name " + rest[0]);
      cur = GroupSpec{rest[0], 0, {}, {}};
      have_degree = false;
      continue;
    }
    if (!cur) throw error("'" + key + "' outside a group record");
    if (key == "degree") {
      std::uint64_t d = 0;
      if (rest.size() != 1 || std::from_chars(rest[0].data(), rest[0].data() + rest[0].size(), d)
                                      .ptr != rest[0].data() + rest[0].size() ||
          d == 0)
        throw error("degree must be a positive integer");
      cur->degree = d;
      have_degree = true;
    } else if (key == "tags") {
      cur->tags.insert(cur->tags.end(), rest.begin(), rest.end());
    } else if (key == "gen") {
      if (!have_degree) throw error("'gen' before 'degree'");
      const auto idx = cur->generators.size();
      if (rest.size() != cur->degree)
        throw error("generator " + str(idx) + " has " + str(rest.size()) + " images, expected " +
                    str(cur->degree));
      Images im;
      for (const auto& w : rest) {
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
        if (ec != std::errc{} || ptr != w.data() + w.size())
          throw error("generator " + str(idx) + ": bad image '" + w + "'");
        im.push_back(static_cast<Point>(v));
      }
      if (!is_bijection(im)) throw error("generator " + str(idx) + " not a bijection");
      cur->generators.push_back(std::move(im));
    } else if (key == "end") {
      if (!have_degree) throw error("group " + cur->name + " has no degree");
      out.push_back(std::move(*cur));
      cur.reset();
    } else {
      throw error("unknown field '" + key + "'");
    }
  }
  if (!header) throw CatalogError("line " + str(lineno) + ": missing header 'pnil-catalog 1'");
  if (cur) throw CatalogError("line " + str(lineno) + ": group " + cur->name + " has no 'end'");
  return out;
}

void save_specs(const std::vector<GroupSpec>& specs, const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw CatalogError("cannot write " + path.string());
  write_specs(os, specs);
}

std::vector<GroupSpec> load_specs(const std::filesystem::path& path, bool verify,
                                  const Limits& limits) {
  std::ifstream is(path);
  if (!is) throw CatalogError("cannot read " + path.string());
  auto specs = read_specs(is);
  if (verify) {
    for (const auto& s : specs) {
      GroupPtr g;
      try {
        g = realize(s, limits);
      } catch (const ResourceLimitError&) {
        continue;
      }
      verify_tags(s, *g);
    }
  }
  return specs;
}

}  // namespace pnil
