#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "common.hpp"

namespace coarse {

// Supported group families.  Each element is kept in a canonical normal form
// so that equality, ordering and hashing are structural.
enum class family : std::uint8_t { z, zd, dinf, cmz2, free_group };

struct group_descriptor {
  family fam = family::z;
  // zd: dimension d >= 1; cmz2: rotation order m in {2,4}; free: rank k >= 2.
  int param = 0;

  static group_descriptor parse(std::string_view spec);
  std::string to_string() const;

  int dimension() const { return fam == family::zd ? param : (fam == family::cmz2 ? 2 : 1); }
  bool operator==(const group_descriptor&) const = default;
};

struct z_elem {
  std::int64_t n = 0;
  auto operator<=>(const z_elem&) const = default;
};

struct zd_elem {
  std::vector<std::int64_t> coords;
  auto operator<=>(const zd_elem&) const = default;
};

// (s, n) with multiplication (s,n)(t,m) = (s xor t, n + (-1)^s m).
struct dinf_elem {
  std::uint8_t flip = 0;
  std::int64_t shift = 0;
  auto operator<=>(const dinf_elem&) const = default;
};

// (theta^i, v) with multiplication (i,v)(j,w) = (i+j mod m, v + theta^i w).
struct cmz2_elem {
  std::int32_t rot = 0;
  std::array<std::int64_t, 2> v{0, 0};
  auto operator<=>(const cmz2_elem&) const = default;
};

// Freely reduced word; letter +i is generator i (1-based), -i its inverse.
struct free_elem {
  std::vector<std::int32_t> word;
  // shortlex with letters ordered g1 < g1^-1 < g2 < ...
  std::strong_ordering operator<=>(const free_elem& o) const;
  bool operator==(const free_elem& o) const { return word == o.word; }
};

using element_data = std::variant<z_elem, zd_elem, dinf_elem, cmz2_elem, free_elem>;

struct group_element {
  group_descriptor group;
  element_data data;

  bool operator==(const group_element& o) const { return group == o.group && data == o.data; }
  // canonical key order: lexicographic on the tagged tuple
  std::strong_ordering operator<=>(const group_element& o) const;
};

struct element_hash {
  std::size_t operator()(const group_element& g) const;
};

group_element identity(const group_descriptor& g);
bool is_identity(const group_element& x);
group_element multiply(const group_element& a, const group_element& b);
group_element invert(const group_element& x);
group_element power(const group_element& x, std::int64_t k);
bool has_infinite_order(const group_element& x);

std::string to_string(const group_element& x);
group_element parse_element(const group_descriptor& g, std::string_view text);

// Symmetric generating set: closed under inversion, identity-free, sorted by
// canonical key.
struct generating_set {
  group_descriptor group;
  std::vector<group_element> elements;
  bool symmetric = true;

  std::string to_string() const;
  bool operator==(const generating_set&) const = default;
};

generating_set symmetric_closure(const group_descriptor& g, std::vector<group_element> gens);

// Heuristic check that the set generates the whole group.  Exact for z/zd
// (gcd / lattice index), dinf and cmz2 (quotient plus Schreier translation
// lattice); for free groups only standard-basis subsets are accepted.
// Throws errc::not_generated when the check fails.
void check_generates(const generating_set& s);

// Parses a comma-separated generator list ("std", "t,e1", "1,3", "(r^1,0),t", ...).
generating_set parse_generating_set(const group_descriptor& g, std::string_view spec);

}  // namespace coarse
