#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "common.hpp"

namespace coarse {

// Finite point set with an explicit distance matrix.  Built-in generators
// cover the spaces used by the verification scenarios; arbitrary spaces load
// from a CSV distance matrix.
class finite_metric_space {
 public:
  static finite_metric_space grid(char norm /* '1', '2', 'i' */, int side);
  static finite_metric_space tree(int degree, int depth);
  static finite_metric_space cycle(int n);
  // "grid:l1:21", "grid:l2:41", "grid:linf:21", "tree:3:6", "cycle:10"
  static finite_metric_space parse(std::string_view spec);
  static finite_metric_space from_csv(std::string_view csv);

  std::size_t size() const { return n_; }
  double d(std::size_t i, std::size_t j) const { return dist_[i * n_ + j]; }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  const std::string& spec() const { return spec_; }

  bool has_coords() const { return !coords_.empty(); }
  std::array<double, 2> coord(std::size_t i) const { return coords_[i]; }
  std::optional<std::size_t> point_at(std::int64_t x, std::int64_t y) const;

  // Indices at least `margin` away (in max-coordinate distance) from the
  // bounding box of the point set; the whole set for abstract spaces.
  std::vector<std::size_t> interior(double margin) const;

  // symmetry / zero diagonal / positivity always; triangle inequality fully
  // for small spaces, on seeded samples above `full_check_limit`.
  void validate(std::size_t full_check_limit = 600, std::uint64_t seed = 1) const;

 private:
  finite_metric_space() = default;
  std::size_t n_ = 0;
  std::vector<double> dist_;
  std::vector<std::string> labels_;
  std::vector<std::array<double, 2>> coords_;
  std::string spec_;
};

// Finite list of partial isometries, each stored as point index -> target
// index with -1 outside the domain.
class isometry_action {
 public:
  // "translations", "translations+rot4" (grids), "rotations" (cycles)
  static isometry_action parse(const finite_metric_space& space, std::string_view spec);

  std::size_t count() const { return maps_.size(); }
  const std::vector<std::int32_t>& map(std::size_t i) const { return maps_[i]; }
  const std::string& name(std::size_t i) const { return names_[i]; }

  // each map must preserve distances on its domain within kTol
  void validate(const finite_metric_space& space, std::size_t sample_pairs = 200, std::uint64_t seed = 1) const;

 private:
  std::vector<std::vector<std::int32_t>> maps_;
  std::vector<std::string> names_;
};

struct chain_result {
  double value = 0;  // infinity when disconnected at scale R
  bool connected = false;
  double step_bound = 0;
  std::vector<std::size_t> witness;  // x = w0, ..., wn = y with d(w_{i-1}, w_i) < R
};

// Exact infimum of chain sums with steps strictly below R (Dijkstra over the
// scale-R step graph).
chain_result chain_infimum(const finite_metric_space& space, std::size_t x, std::size_t y, double R);

struct pair_sample_options {
  std::size_t random_pairs = 200;
  std::uint64_t seed = 1;
  double interior_margin = 0;
  bool add_directional_rays = true;  // grids: include axis/diagonal/oblique worst-case rays
};

std::vector<std::pair<std::size_t, std::size_t>> sample_pairs(const finite_metric_space& space,
                                                              const pair_sample_options& opts);

struct geodesicity_scan_result {
  double R = 0;
  double eta_hat = 1;  // max over sampled pairs of chain / distance
  std::size_t pairs_checked = 0;
  std::size_t disconnected = 0;
  std::size_t worst_x = 0, worst_y = 0;
  double worst_distance = 0, worst_chain = 0;
};

geodesicity_scan_result geodesicity_scan(const finite_metric_space& space, double R,
                                         const std::vector<std::pair<std::size_t, std::size_t>>& pairs);

// max over each point of the distance to the nearest point of the other pair
double hausdorff_pair_distance(const finite_metric_space& space, std::size_t p1, std::size_t p2,
                               std::size_t q1, std::size_t q2);

struct homogeneity_quad {
  std::size_t x, y, z, u;
  double dxy, dzu;
  double gap;       // dzu - dxy >= 0
  double min_haus;  // min over maps with z,u in the domain
  std::int64_t best_map = -1;
};

struct homogeneity_scan_result {
  std::vector<homogeneity_quad> quads;
  // empirical upper envelope: bucketed by gap, max min_haus per bucket
  struct bucket {
    double gap_lo, gap_hi;
    double envelope;
    std::size_t count;
  };
  std::vector<bucket> envelope;
  std::size_t skipped_map_evaluations = 0;  // z or u outside a map's domain
};

homogeneity_scan_result homogeneity_scan(const finite_metric_space& space, const isometry_action& action,
                                         std::size_t quad_samples, std::uint64_t seed, double interior_margin,
                                         double bucket_width = 1.0);

}  // namespace coarse
