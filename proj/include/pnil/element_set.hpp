#pragma once

#include <boost/dynamic_bitset.hpp>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace pnil {

// Membership bitset over the canonical element indices of a parent group.
class ElementSet {
 public:
  using Bits = boost::dynamic_bitset<std::uint64_t>;
  static constexpr std::size_t npos = Bits::npos;

  ElementSet() = default;
  explicit ElementSet(std::size_t universe) : bits_(universe) {}

  static ElementSet from_indices(std::size_t universe, const std::vector<std::uint32_t>& idx) {
    ElementSet s(universe);
    for (auto i : idx) s.insert(i);
    return s;
  }

  std::size_t universe() const { return bits_.size(); }
  std::size_t count() const { return bits_.count(); }
  bool empty() const { return bits_.none(); }

  bool contains(std::size_t i) const { return bits_.test(i); }
  void insert(std::size_t i) { bits_.set(i); }
  void erase(std::size_t i) { bits_.reset(i); }

  std::size_t first() const { return bits_.find_first(); }
  std::size_t next(std::size_t i) const { return bits_.find_next(i); }

  bool is_subset_of(const ElementSet& o) const { return bits_.is_subset_of(o.bits_); }
  bool intersects(const ElementSet& o) const { return bits_.intersects(o.bits_); }

  ElementSet& operator&=(const ElementSet& o) {
    bits_ &= o.bits_;
    return *this;
  }
  ElementSet& operator|=(const ElementSet& o) {
    bits_ |= o.bits_;
    return *this;
  }
  friend ElementSet operator&(ElementSet a, const ElementSet& b) { return a &= b; }
  friend ElementSet operator|(ElementSet a, const ElementSet& b) { return a |= b; }

  friend bool operator==(const ElementSet& a, const ElementSet& b) { return a.bits_ == b.bits_; }

  // Lexicographic on the ascending member-index lists: at the first index
  // where the sets differ, the set containing it sorts first.
  friend std::strong_ordering operator<=>(const ElementSet& a, const ElementSet& b) {
    if (a.bits_.size() != b.bits_.size()) return a.bits_.size() <=> b.bits_.size();
    auto diff = a.bits_ ^ b.bits_;
    auto pos = diff.find_first();
    if (pos == Bits::npos) return std::strong_ordering::equal;
    return a.bits_.test(pos) ? std::strong_ordering::less : std::strong_ordering::greater;
  }

  template <class F>
  void for_each(F&& f) const {
    for (auto i = bits_.find_first(); i != Bits::npos; i = bits_.find_next(i)) f(i);
  }

  std::vector<std::uint32_t> to_indices() const {
    std::vector<std::uint32_t> out;
    out.reserve(count());
    for_each([&](std::size_t i) { out.push_back(static_cast<std::uint32_t>(i)); });
    return out;
  }

  std::size_t hash() const { return std::hash<Bits>{}(bits_); }

 private:
  Bits bits_;
};

struct ElementSetHash {
  std::size_t operator()(const ElementSet& s) const { return s.hash(); }
};

}  // namespace pnil
