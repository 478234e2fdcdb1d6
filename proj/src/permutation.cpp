#include "pnil/permutation.hpp"

#include <numeric>
#include <sstream>

namespace pnil {

bool is_bijection(std::span<const Point> images) {
  std::vector<bool> seen(images.size(), false);
  for (auto v : images) {
    if (v >= images.size() || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
  if (!is_bijection(images_)) throw std::invalid_argument("image array is not a bijection");
}

Permutation Permutation::identity(std::size_t degree) {
  std::vector<Point> im(degree);
  std::iota(im.begin(), im.end(), Point{0});
  return Permutation(std::move(im), Unchecked{});
}

Permutation Permutation::from_cycles(std::size_t degree,
                                     const std::vector<std::vector<Point>>& cycles) {
  std::vector<Point> im(degree);
  std::iota(im.begin(), im.end(), Point{0});
  std::vector<bool> used(degree, false);
  for (const auto& c : cycles) {
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (c[k] >= degree || used[c[k]]) throw std::invalid_argument("cycles are not disjoint");
      used[c[k]] = true;
      im[c[k]] = c[(k + 1) % c.size()];
    }
  }
  return Permutation(std::move(im), Unchecked{});
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

std::string Permutation::to_cycle_string() const {
  std::ostringstream os;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t s = 0; s < images_.size(); ++s) {
    if (seen[s] || images_[s] == s) continue;
    os << '(';
    for (auto i = static_cast<Point>(s); !seen[i]; i = images_[i]) {
      if (i != s) os << ' ';
      os << i;
      seen[i] = true;
    }
    os << ')';
  }
  auto out = os.str();
  return out.empty() ? "()" : out;
}

Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree()) throw std::invalid_argument("incompatible degrees");
  std::vector<Point> im(p.degree());
  for (std::size_t i = 0; i < im.size(); ++i) im[i] = q.images_[p.images_[i]];
  return Permutation(std::move(im), Permutation::Unchecked{});
}

Permutation inverse(const Permutation& p) {
  std::vector<Point> im(p.degree());
  for (std::size_t i = 0; i < im.size(); ++i) im[p.images_[i]] = static_cast<Point>(i);
  return Permutation(std::move(im), Permutation::Unchecked{});
}

std::uint64_t element_order(const Permutation& p) {
  std::uint64_t order = 1;
  std::vector<bool> seen(p.degree(), false);
  for (std::size_t s = 0; s < p.degree(); ++s) {
    if (seen[s]) continue;
    std::uint64_t len = 0;
    for (auto i = static_cast<Point>(s); !seen[i]; i = p(i)) {
      seen[i] = true;
      ++len;
    }
    order = std::lcm(order, len);
  }
  return order;
}

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (auto v : p.images()) {
    h ^= v;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace pnil
