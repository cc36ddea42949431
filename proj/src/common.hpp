#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace coarse {

inline constexpr double kTol = 1e-9;

enum class errc {
  usage,
  budget,
  assertion,
  parse,
  domain,         // descriptor mismatch, invalid argument, degenerate input
  not_generated,  // word-metric exploration exhausted without reaching the target
  overflow,
  internal,
};

class error : public std::runtime_error {
 public:
  error(errc code, std::string msg) : std::runtime_error(std::move(msg)), code_(code) {}

  errc code() const { return code_; }

  // Budget errors carry the radius that was fully explored before the node
  // cap hit, and (for point evaluations) the best tentative upper bound seen.
  std::optional<double> radius_reached;
  std::optional<double> upper_bound;

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, std::string msg) { throw error(code, std::move(msg)); }

// Element coordinates are 64-bit with checked arithmetic; desk-scale radii
// never get near the limits, so an overflow means a caller bug.
inline std::int64_t add_checked(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) fail(errc::overflow, "integer overflow in element arithmetic");
  return r;
}

inline std::int64_t sub_checked(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) fail(errc::overflow, "integer overflow in element arithmetic");
  return r;
}

inline std::int64_t mul_checked(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) fail(errc::overflow, "integer overflow in element arithmetic");
  return r;
}

inline std::int64_t neg_checked(std::int64_t a) { return sub_checked(0, a); }

inline std::uint64_t hash_mix(std::uint64_t h, std::uint64_t v) {
  v += 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  v *= 0xbf58476d1ce4e5b9ull;
  v ^= v >> 27;
  return h ^ v;
}

// Deterministic RNG used everywhere a seed appears in a report.  An explicit
// splitmix64 keeps sampled pairs identical across standard libraries, which
// std::uniform_int_distribution does not guarantee.
class rng {
 public:
  explicit rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform in [0, n)
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) fail(errc::internal, "rng::below(0)");
    std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % n;
  }

  std::int64_t range(std::int64_t lo, std::int64_t hi) {  // inclusive
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

 private:
  std::uint64_t state_;
};

}  // namespace coarse
