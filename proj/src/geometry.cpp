#include "geometry.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

namespace coarse {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

long to_long(std::string_view s) {
  long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) fail(errc::parse, "invalid integer '" + std::string(s) + "'");
  return v;
}

}  // namespace

finite_metric_space finite_metric_space::grid(char norm, int side) {
  if (side < 3 || side % 2 == 0) fail(errc::parse, "grid side must be odd and >= 3");
  finite_metric_space s;
  int h = (side - 1) / 2;
  s.n_ = static_cast<std::size_t>(side) * static_cast<std::size_t>(side);
  s.coords_.reserve(s.n_);
  s.labels_.reserve(s.n_);
  for (int x = -h; x <= h; ++x) {
    for (int y = -h; y <= h; ++y) {
      s.coords_.push_back({static_cast<double>(x), static_cast<double>(y)});
      s.labels_.push_back("(" + std::to_string(x) + "," + std::to_string(y) + ")");
    }
  }
  s.dist_.resize(s.n_ * s.n_);
  for (std::size_t i = 0; i < s.n_; ++i) {
    for (std::size_t j = 0; j < s.n_; ++j) {
      double dx = std::abs(s.coords_[i][0] - s.coords_[j][0]);
      double dy = std::abs(s.coords_[i][1] - s.coords_[j][1]);
      double d = 0;
      switch (norm) {
        case '1': d = dx + dy; break;
        case '2': d = std::hypot(dx, dy); break;
        case 'i': d = std::max(dx, dy); break;
        default: fail(errc::parse, "grid norm must be l1, l2 or linf");
      }
      s.dist_[i * s.n_ + j] = d;
    }
  }
  return s;
}

finite_metric_space finite_metric_space::tree(int degree, int depth) {
  if (degree < 2 || depth < 1) fail(errc::parse, "tree needs degree >= 2 and depth >= 1");
  finite_metric_space s;
  std::vector<std::int32_t> parent{-1};
  std::vector<int> level{0};
  for (std::size_t i = 0; i < parent.size(); ++i) {
    if (level[i] >= depth) continue;
    int children = level[i] == 0 ? degree : degree - 1;
    for (int c = 0; c < children; ++c) {
      parent.push_back(static_cast<std::int32_t>(i));
      level.push_back(level[i] + 1);
    }
  }
  s.n_ = parent.size();
  s.labels_.resize(s.n_);
  for (std::size_t i = 0; i < s.n_; ++i) s.labels_[i] = "v" + std::to_string(i);
  // pairwise path lengths via ancestor chains
  auto ancestors = [&](std::size_t v) {
    std::vector<std::size_t> chain{v};
    while (parent[chain.back()] >= 0) chain.push_back(static_cast<std::size_t>(parent[chain.back()]));
    return chain;
  };
  s.dist_.assign(s.n_ * s.n_, 0);
  for (std::size_t i = 0; i < s.n_; ++i) {
    auto ai = ancestors(i);
    for (std::size_t j = i + 1; j < s.n_; ++j) {
      auto aj = ancestors(j);
      std::size_t di = ai.size(), dj = aj.size();
      while (di > 0 && dj > 0 && ai[di - 1] == aj[dj - 1]) {
        --di;
        --dj;
      }
      double d = static_cast<double>(di + dj);
      s.dist_[i * s.n_ + j] = s.dist_[j * s.n_ + i] = d;
    }
  }
  return s;
}

finite_metric_space finite_metric_space::cycle(int n) {
  if (n < 3) fail(errc::parse, "cycle needs at least 3 points");
  finite_metric_space s;
  s.n_ = static_cast<std::size_t>(n);
  s.labels_.resize(s.n_);
  for (std::size_t i = 0; i < s.n_; ++i) s.labels_[i] = std::to_string(i);
  s.dist_.resize(s.n_ * s.n_);
  for (std::size_t i = 0; i < s.n_; ++i) {
    for (std::size_t j = 0; j < s.n_; ++j) {
      auto gap = static_cast<double>(i > j ? i - j : j - i);
      s.dist_[i * s.n_ + j] = std::min(gap, static_cast<double>(n) - gap);
    }
  }
  return s;
}

finite_metric_space finite_metric_space::parse(std::string_view spec) {
  auto parts = split(spec, ':');
  finite_metric_space s;
  if (parts[0] == "grid" && parts.size() == 3) {
    char norm;
    if (parts[1] == "l1") {
      norm = '1';
    } else if (parts[1] == "l2") {
      norm = '2';
    } else if (parts[1] == "linf") {
      norm = 'i';
    } else {
      fail(errc::parse, "grid norm must be l1, l2 or linf");
    }
    s = grid(norm, static_cast<int>(to_long(parts[2])));
  } else if (parts[0] == "tree" && parts.size() == 3) {
    s = tree(static_cast<int>(to_long(parts[1])), static_cast<int>(to_long(parts[2])));
  } else if (parts[0] == "cycle" && parts.size() == 2) {
    s = cycle(static_cast<int>(to_long(parts[1])));
  } else {
    fail(errc::parse, "unknown space spec '" + std::string(spec) + "'");
  }
  s.spec_ = std::string(spec);
  return s;
}

finite_metric_space finite_metric_space::from_csv(std::string_view csv) {
  finite_metric_space s;
  std::vector<std::vector<double>> rows;
  for (auto line : split(csv, '\n')) {
    if (line.empty() || line == "\r") continue;
    if (line.back() == '\r') line.remove_suffix(1);
    auto cells = split(line, ',');
    // optional label header
    if (rows.empty() && s.labels_.empty()) {
      char* end = nullptr;
      std::string probe(cells[0]);
      std::strtod(probe.c_str(), &end);
      if (end != probe.c_str() + probe.size()) {
        for (auto c : cells) s.labels_.emplace_back(c);
        continue;
      }
    }
    std::vector<double> row;
    for (auto c : cells) {
      std::string cell(c);
      char* end = nullptr;
      double v = std::strtod(cell.c_str(), &end);
      if (end != cell.c_str() + cell.size()) fail(errc::parse, "invalid distance '" + cell + "'");
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) fail(errc::parse, "empty distance matrix");
  s.n_ = rows.size();
  for (const auto& r : rows) {
    if (r.size() != s.n_) fail(errc::parse, "distance matrix is not square");
  }
  if (s.labels_.empty()) {
    for (std::size_t i = 0; i < s.n_; ++i) s.labels_.push_back("p" + std::to_string(i));
  } else if (s.labels_.size() != s.n_) {
    fail(errc::parse, "label row does not match the matrix size");
  }
  s.dist_.reserve(s.n_ * s.n_);
  for (const auto& r : rows) {
    for (double v : r) s.dist_.push_back(v);
  }
  s.spec_ = "csv:" + std::to_string(s.n_);
  s.validate();
  return s;
}

std::optional<std::size_t> finite_metric_space::point_at(std::int64_t x, std::int64_t y) const {
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (coords_[i][0] == static_cast<double>(x) && coords_[i][1] == static_cast<double>(y)) return i;
  }
  return std::nullopt;
}

std::vector<std::size_t> finite_metric_space::interior(double margin) const {
  std::vector<std::size_t> out;
  if (coords_.empty() || margin <= 0) {
    out.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) out[i] = i;
    return out;
  }
  double xmax = 0, ymax = 0;
  for (const auto& c : coords_) {
    xmax = std::max(xmax, std::abs(c[0]));
    ymax = std::max(ymax, std::abs(c[1]));
  }
  for (std::size_t i = 0; i < n_; ++i) {
    if (std::abs(coords_[i][0]) <= xmax - margin && std::abs(coords_[i][1]) <= ymax - margin) out.push_back(i);
  }
  if (out.empty()) fail(errc::domain, "interior margin leaves no points");
  return out;
}

void finite_metric_space::validate(std::size_t full_check_limit, std::uint64_t seed) const {
  for (std::size_t i = 0; i < n_; ++i) {
    if (dist_[i * n_ + i] != 0) fail(errc::domain, "nonzero diagonal at " + std::to_string(i));
    for (std::size_t j = i + 1; j < n_; ++j) {
      double dij = d(i, j);
      if (std::abs(dij - d(j, i)) > kTol) fail(errc::domain, "asymmetric distances");
      if (!(dij > 0)) fail(errc::domain, "zero distance between distinct points " + std::to_string(i) + "," + std::to_string(j));
    }
  }
  auto check_triple = [&](std::size_t i, std::size_t j, std::size_t k) {
    if (d(i, k) > d(i, j) + d(j, k) + kTol) {
      fail(errc::domain, "triangle inequality fails on (" + std::to_string(i) + "," + std::to_string(j) + "," +
                             std::to_string(k) + ")");
    }
  };
  if (n_ <= full_check_limit) {
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        for (std::size_t k = 0; k < n_; ++k) check_triple(i, j, k);
      }
    }
  } else {
    rng r(seed);
    for (int t = 0; t < 2'000'000; ++t) check_triple(r.below(n_), r.below(n_), r.below(n_));
  }
}

isometry_action isometry_action::parse(const finite_metric_space& space, std::string_view spec) {
  isometry_action a;
  bool grid_like = space.has_coords();
  auto add_grid_maps = [&](bool with_rotations) {
    double h = 0;
    for (std::size_t i = 0; i < space.size(); ++i) {
      h = std::max({h, std::abs(space.coord(i)[0]), std::abs(space.coord(i)[1])});
    }
    auto hi = static_cast<std::int64_t>(h);
    int rot_count = with_rotations ? 4 : 1;
    for (int rot = 0; rot < rot_count; ++rot) {
      for (std::int64_t vx = -2 * hi; vx <= 2 * hi; ++vx) {
        for (std::int64_t vy = -2 * hi; vy <= 2 * hi; ++vy) {
          std::vector<std::int32_t> map(space.size(), -1);
          bool nonempty = false;
          for (std::size_t p = 0; p < space.size(); ++p) {
            auto c = space.coord(p);
            auto x = static_cast<std::int64_t>(c[0]);
            auto y = static_cast<std::int64_t>(c[1]);
            for (int r = 0; r < rot; ++r) {
              std::int64_t t = x;
              x = -y;
              y = t;
            }
            auto target = space.point_at(x + vx, y + vy);
            if (target) {
              map[p] = static_cast<std::int32_t>(*target);
              nonempty = true;
            }
          }
          if (!nonempty) continue;
          a.maps_.push_back(std::move(map));
          a.names_.push_back("rot" + std::to_string(rot) + "+(" + std::to_string(vx) + "," + std::to_string(vy) + ")");
        }
      }
    }
  };
  if (spec == "translations") {
    if (!grid_like) fail(errc::parse, "translations require a coordinate grid");
    add_grid_maps(false);
  } else if (spec == "translations+rot4") {
    if (!grid_like) fail(errc::parse, "translations+rot4 requires a coordinate grid");
    add_grid_maps(true);
  } else if (spec == "rotations") {
    // cyclic shifts; meaningful for cycle spaces
    std::size_t n = space.size();
    for (std::size_t s = 0; s < n; ++s) {
      std::vector<std::int32_t> map(n);
      for (std::size_t p = 0; p < n; ++p) map[p] = static_cast<std::int32_t>((p + s) % n);
      a.maps_.push_back(std::move(map));
      a.names_.push_back("shift" + std::to_string(s));
    }
  } else if (spec.starts_with("csv:")) {
    // one permutation per line, point indices, -1 outside the domain
    for (auto line : split(spec.substr(4), '\n')) {
      if (line.empty()) continue;
      std::vector<std::int32_t> map;
      for (auto c : split(line, ',')) map.push_back(static_cast<std::int32_t>(to_long(c)));
      if (map.size() != space.size()) fail(errc::parse, "permutation length does not match the space");
      a.maps_.push_back(std::move(map));
      a.names_.push_back("csv" + std::to_string(a.maps_.size() - 1));
    }
    if (a.maps_.empty()) fail(errc::parse, "no permutations in the CSV action");
  } else {
    fail(errc::parse, "unknown action spec '" + std::string(spec) + "'");
  }
  a.validate(space);
  return a;
}

void isometry_action::validate(const finite_metric_space& space, std::size_t sample_pairs, std::uint64_t seed) const {
  rng r(seed);
  std::size_t n = space.size();
  for (std::size_t m = 0; m < maps_.size(); ++m) {
    const auto& map = maps_[m];
    std::size_t checked = 0, attempts = 0;
    while (checked < sample_pairs && attempts < 20 * sample_pairs) {
      ++attempts;
      std::size_t i = r.below(n), j = r.below(n);
      if (map[i] < 0 || map[j] < 0) continue;
      ++checked;
      double before = space.d(i, j);
      double after = space.d(static_cast<std::size_t>(map[i]), static_cast<std::size_t>(map[j]));
      if (std::abs(before - after) > kTol) {
        fail(errc::domain, "map " + names_[m] + " distorts d(" + std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }
}

namespace {

// adjacency of the step graph at scale R; steps satisfy d < R strictly
std::vector<std::vector<std::pair<std::uint32_t, double>>> step_graph(const finite_metric_space& s, double R) {
  std::vector<std::vector<std::pair<std::uint32_t, double>>> adj(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      double d = s.d(i, j);
      if (d < R) {
        adj[i].emplace_back(static_cast<std::uint32_t>(j), d);
        adj[j].emplace_back(static_cast<std::uint32_t>(i), d);
      }
    }
  }
  return adj;
}

std::vector<double> dijkstra_all(const std::vector<std::vector<std::pair<std::uint32_t, double>>>& adj,
                                 std::size_t src, std::vector<std::int32_t>* pred = nullptr) {
  std::vector<double> dist(adj.size(), kInf);
  if (pred) pred->assign(adj.size(), -1);
  using hi = std::pair<double, std::uint32_t>;
  std::priority_queue<hi, std::vector<hi>, std::greater<>> heap;
  dist[src] = 0;
  heap.push({0, static_cast<std::uint32_t>(src)});
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (d > dist[v]) continue;
    for (auto [w, len] : adj[v]) {
      if (d + len < dist[w]) {
        dist[w] = d + len;
        if (pred) (*pred)[w] = static_cast<std::int32_t>(v);
        heap.push({dist[w], w});
      }
    }
  }
  return dist;
}

}  // namespace

chain_result chain_infimum(const finite_metric_space& space, std::size_t x, std::size_t y, double R) {
  if (!(R > 0)) fail(errc::domain, "R must be positive");
  if (x >= space.size() || y >= space.size()) fail(errc::domain, "point index out of range");
  chain_result res;
  res.step_bound = R;
  auto adj = step_graph(space, R);
  std::vector<std::int32_t> pred;
  auto dist = dijkstra_all(adj, x, &pred);
  if (dist[y] == kInf) {
    res.value = kInf;
    res.connected = false;
    return res;
  }
  res.value = dist[y];
  res.connected = true;
  for (std::size_t v = y; v != x; v = static_cast<std::size_t>(pred[v])) res.witness.push_back(v);
  res.witness.push_back(x);
  std::reverse(res.witness.begin(), res.witness.end());
  return res;
}

std::vector<std::pair<std::size_t, std::size_t>> sample_pairs(const finite_metric_space& space,
                                                              const pair_sample_options& opts) {
  auto idx = space.interior(opts.interior_margin);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (idx.size() < 2) fail(errc::domain, "not enough interior points to sample pairs");

  if (opts.add_directional_rays && space.has_coords()) {
    // worst-ratio directions live on short rays from the center
    static constexpr std::int64_t dirs[][2] = {{1, 0}, {0, 1}, {1, 1},  {-1, 1}, {2, 1},
                                               {3, 1}, {3, 2}, {5, 2},  {5, 1},  {12, 5}};
    double span = 0;
    for (auto i : idx) span = std::max({span, std::abs(space.coord(i)[0]), std::abs(space.coord(i)[1])});
    auto center = space.point_at(0, 0);
    if (center) {
      for (auto [dx, dy] : dirs) {
        std::int64_t reach = static_cast<std::int64_t>(span) / std::max(std::llabs(dx), std::llabs(dy));
        for (std::int64_t k : {reach, reach / 2, std::int64_t{1}}) {
          if (k < 1) continue;
          auto target = space.point_at(k * dx, k * dy);
          if (target && *target != *center) pairs.emplace_back(*center, *target);
        }
      }
    }
  }

  rng r(opts.seed);
  std::size_t want = pairs.size() + opts.random_pairs;
  std::size_t guard = 0;
  while (pairs.size() < want && guard < 100 * want) {
    ++guard;
    std::size_t a = idx[r.below(idx.size())];
    std::size_t b = idx[r.below(idx.size())];
    if (a == b) continue;
    pairs.emplace_back(a, b);
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

geodesicity_scan_result geodesicity_scan(const finite_metric_space& space, double R,
                                         const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  if (!(R > 0)) fail(errc::domain, "R must be positive");
  if (pairs.empty()) fail(errc::domain, "no pairs to scan");
  geodesicity_scan_result res;
  res.R = R;
  res.eta_hat = 0;
  auto adj = step_graph(space, R);

  // group pairs by source so each Dijkstra is shared
  auto sorted = pairs;
  std::sort(sorted.begin(), sorted.end());
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t src = sorted[i].first;
    auto dist = dijkstra_all(adj, src);
    for (; i < sorted.size() && sorted[i].first == src; ++i) {
      std::size_t dst = sorted[i].second;
      ++res.pairs_checked;
      if (dist[dst] == kInf) {
        ++res.disconnected;
        continue;
      }
      double ratio = dist[dst] / space.d(src, dst);
      if (ratio > res.eta_hat) {
        res.eta_hat = ratio;
        res.worst_x = src;
        res.worst_y = dst;
        res.worst_distance = space.d(src, dst);
        res.worst_chain = dist[dst];
      }
    }
  }
  if (res.pairs_checked == res.disconnected) fail(errc::domain, "all sampled pairs are disconnected at this scale");
  return res;
}

double hausdorff_pair_distance(const finite_metric_space& space, std::size_t p1, std::size_t p2,
                               std::size_t q1, std::size_t q2) {
  double a = std::min(space.d(p1, q1), space.d(p1, q2));
  double b = std::min(space.d(p2, q1), space.d(p2, q2));
  double c = std::min(space.d(q1, p1), space.d(q1, p2));
  double e = std::min(space.d(q2, p1), space.d(q2, p2));
  return std::max(std::max(a, b), std::max(c, e));
}

homogeneity_scan_result homogeneity_scan(const finite_metric_space& space, const isometry_action& action,
                                         std::size_t quad_samples, std::uint64_t seed, double interior_margin,
                                         double bucket_width) {
  auto idx = space.interior(interior_margin);
  if (idx.size() < 2) fail(errc::domain, "not enough interior points");
  homogeneity_scan_result res;
  rng r(seed);
  double max_gap = 0;
  std::size_t guard = 0;
  while (res.quads.size() < quad_samples && guard < 200 * quad_samples) {
    ++guard;
    std::size_t x = idx[r.below(idx.size())], y = idx[r.below(idx.size())];
    std::size_t z = idx[r.below(idx.size())], u = idx[r.below(idx.size())];
    if (x == y || z == u) continue;
    if (space.d(x, y) > space.d(z, u)) {
      std::swap(x, z);
      std::swap(y, u);
    }
    homogeneity_quad q{x, y, z, u, space.d(x, y), space.d(z, u), 0, kInf, -1};
    q.gap = q.dzu - q.dxy;
    for (std::size_t m = 0; m < action.count(); ++m) {
      const auto& map = action.map(m);
      if (map[z] < 0 || map[u] < 0) {
        ++res.skipped_map_evaluations;
        continue;
      }
      double h = hausdorff_pair_distance(space, static_cast<std::size_t>(map[z]), static_cast<std::size_t>(map[u]), x, y);
      if (h < q.min_haus) {
        q.min_haus = h;
        q.best_map = static_cast<std::int64_t>(m);
      }
    }
    if (q.best_map < 0) continue;  // no map covered the pair
    max_gap = std::max(max_gap, q.gap);
    res.quads.push_back(q);
  }
  if (res.quads.empty()) fail(errc::domain, "no usable quadruples sampled");

  auto buckets = static_cast<std::size_t>(std::floor(max_gap / bucket_width)) + 1;
  res.envelope.resize(buckets);
  for (std::size_t b = 0; b < buckets; ++b) {
    res.envelope[b] = {static_cast<double>(b) * bucket_width, static_cast<double>(b + 1) * bucket_width, 0.0, 0};
  }
  for (const auto& q : res.quads) {
    auto b = static_cast<std::size_t>(q.gap / bucket_width);
    res.envelope[b].envelope = std::max(res.envelope[b].envelope, q.min_haus);
    ++res.envelope[b].count;
  }
  res.envelope.erase(std::remove_if(res.envelope.begin(), res.envelope.end(),
                                    [](const homogeneity_scan_result::bucket& b) { return b.count == 0; }),
                     res.envelope.end());
  return res;
}

}  // namespace coarse
