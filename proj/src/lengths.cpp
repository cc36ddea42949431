#include "lengths.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>

namespace coarse {

namespace {

std::string fmt_double(double v) {
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, p);
}

double parse_double(std::string_view s) {
  char* end = nullptr;
  std::string tmp(s);
  double v = std::strtod(tmp.c_str(), &end);
  if (end != tmp.c_str() + tmp.size() || tmp.empty()) fail(errc::parse, "invalid number '" + tmp + "'");
  return v;
}

}  // namespace

std::uint64_t default_budget() {
  if (const char* env = std::getenv("COARSE_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return kDefaultBudget;
}

std::string length_function::to_string() const {
  switch (k) {
    case kind::closed_form:
      switch (norm) {
        case norm_kind::l1: return "l1";
        case norm_kind::l2: return "l2";
        case norm_kind::linf: return "linf";
        case norm_kind::free_word: return "l1";  // what parse() accepts on free groups
        case norm_kind::weighted_l1: {
          std::string s = "wnorm:";
          for (std::size_t i = 0; i < weights.size(); ++i) s += (i ? "," : "") + fmt_double(weights[i]);
          return s;
        }
      }
      return "?";
    case kind::word: return "word:" + gens.to_string();
    case kind::smoothed: return "smooth:" + base->to_string() + ":" + fmt_double(radius);
    case kind::rescaled: return "scale:" + base->to_string() + ":" + fmt_double(lambda);
  }
  return "?";
}

length_ptr length_function::closed_form(const group_descriptor& g, norm_kind n, std::vector<double> w) {
  auto lf = std::make_shared<length_function>();
  lf->k = kind::closed_form;
  lf->group = g;
  lf->norm = n;
  switch (g.fam) {
    case family::z:
      if (n == norm_kind::weighted_l1 && w.size() != 1) fail(errc::parse, "wnorm on z takes one weight");
      if (n == norm_kind::free_word) fail(errc::parse, "word-std norm is only defined on free groups");
      break;
    case family::zd:
      if (n == norm_kind::weighted_l1 && static_cast<int>(w.size()) != g.param)
        fail(errc::parse, "wnorm weight count must match the dimension");
      if (n == norm_kind::free_word) fail(errc::parse, "word-std norm is only defined on free groups");
      break;
    case family::cmz2:
      if (n != norm_kind::l1 && n != norm_kind::linf) fail(errc::parse, "cmz2 closed forms are l1 and linf");
      lf->pseudo = true;  // rotations have zero length
      break;
    case family::dinf:
      fail(errc::parse, "dinf has no closed-form norm; use word:...");
    case family::free_group:
      if (n != norm_kind::free_word) fail(errc::parse, "free-group closed form is the standard word length");
      break;
  }
  for (double x : w) {
    if (!(x > 0)) fail(errc::parse, "wnorm weights must be positive");
  }
  lf->weights = std::move(w);
  return lf;
}

length_ptr length_function::word(generating_set gens) {
  check_generates(gens);
  auto lf = std::make_shared<length_function>();
  lf->k = kind::word;
  lf->group = gens.group;
  lf->gens = std::move(gens);
  return lf;
}

length_ptr length_function::smoothed(length_ptr base, double radius) {
  if (!(radius > 0)) fail(errc::parse, "smoothing radius must be positive");
  auto lf = std::make_shared<length_function>();
  lf->k = kind::smoothed;
  lf->group = base->group;
  lf->pseudo = base->pseudo;
  lf->radius = radius;
  lf->base = std::move(base);
  return lf;
}

length_ptr length_function::rescaled(length_ptr base, double lambda) {
  if (!(lambda > 0)) fail(errc::parse, "scale factor must be positive");
  auto lf = std::make_shared<length_function>();
  lf->k = kind::rescaled;
  lf->group = base->group;
  lf->pseudo = base->pseudo;
  lf->lambda = lambda;
  lf->base = std::move(base);
  return lf;
}

length_ptr length_function::parse(const group_descriptor& g, std::string_view spec) {
  if (spec == "l1") {
    if (g.fam == family::free_group) return closed_form(g, norm_kind::free_word);
    return closed_form(g, norm_kind::l1);
  }
  if (spec == "l2") return closed_form(g, norm_kind::l2);
  if (spec == "linf") return closed_form(g, norm_kind::linf);
  if (spec.starts_with("wnorm:")) {
    std::vector<double> w;
    std::string_view rest = spec.substr(6);
    while (!rest.empty()) {
      auto comma = rest.find(',');
      w.push_back(parse_double(rest.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    return closed_form(g, norm_kind::weighted_l1, std::move(w));
  }
  if (spec.starts_with("word:")) return word(parse_generating_set(g, spec.substr(5)));
  if (spec.starts_with("smooth:") || spec.starts_with("scale:")) {
    bool smooth = spec.starts_with("smooth:");
    std::string_view rest = spec.substr(smooth ? 7 : 6);
    auto colon = rest.rfind(':');
    if (colon == std::string_view::npos) fail(errc::parse, "expected " + std::string(smooth ? "smooth" : "scale") + ":BASE:value");
    auto base = parse(g, rest.substr(0, colon));
    double v = parse_double(rest.substr(colon + 1));
    return smooth ? smoothed(base, v) : rescaled(base, v);
  }
  fail(errc::parse, "unknown length spec '" + std::string(spec) + "'");
}

std::optional<double> ball_enumeration::find(const group_element& x) const {
  auto it = index_.find(x);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

length_evaluator::length_evaluator(length_ptr lf, std::uint64_t budget)
    : lf_(std::move(lf)), budget_(budget ? budget : default_budget()) {
  if (lf_->k == length_function::kind::rescaled || lf_->k == length_function::kind::smoothed) {
    base_ = std::make_unique<length_evaluator>(lf_->base, budget_);
  }
}

double length_evaluator::closed_form_value(const group_element& x) const {
  const auto& lf = *lf_;
  auto norm_of = [&lf](const std::int64_t* v, std::size_t d) -> double {
    switch (lf.norm) {
      case norm_kind::l1: {
        double s = 0;
        for (std::size_t i = 0; i < d; ++i) s += std::abs(static_cast<double>(v[i]));
        return s;
      }
      case norm_kind::weighted_l1: {
        double s = 0;
        for (std::size_t i = 0; i < d; ++i) s += lf.weights[i] * std::abs(static_cast<double>(v[i]));
        return s;
      }
      case norm_kind::l2: {
        double s = 0;
        for (std::size_t i = 0; i < d; ++i) s += static_cast<double>(v[i]) * static_cast<double>(v[i]);
        return std::sqrt(s);
      }
      case norm_kind::linf: {
        double s = 0;
        for (std::size_t i = 0; i < d; ++i) s = std::max(s, std::abs(static_cast<double>(v[i])));
        return s;
      }
      case norm_kind::free_word: return 0;
    }
    return 0;
  };
  switch (x.group.fam) {
    case family::z: {
      std::int64_t n = std::get<z_elem>(x.data).n;
      return norm_of(&n, 1);
    }
    case family::zd: {
      const auto& c = std::get<zd_elem>(x.data).coords;
      return norm_of(c.data(), c.size());
    }
    case family::cmz2: {
      const auto& d = std::get<cmz2_elem>(x.data);
      return norm_of(d.v.data(), 2);
    }
    case family::free_group: return static_cast<double>(std::get<free_elem>(x.data).word.size());
    case family::dinf: fail(errc::internal, "no closed form on dinf");
  }
  return 0;
}

namespace {

// Recursive box walk emitting all lattice points with norm < radius.
struct lattice_walker {
  const length_function& lf;
  double radius;
  std::uint64_t budget;
  std::vector<std::int64_t> coords;
  std::vector<ball_entry>* out;
  const group_descriptor* group;
  int rot = -1;  // cmz2 rotation slot, -1 for plain lattices

  double weight(std::size_t i) const {
    if (lf.norm == norm_kind::weighted_l1) return lf.weights[i];
    return 1.0;
  }

  void emit() {
    double v = 0;
    switch (lf.norm) {
      case norm_kind::l1:
      case norm_kind::weighted_l1:
        for (std::size_t i = 0; i < coords.size(); ++i) v += weight(i) * std::abs(static_cast<double>(coords[i]));
        break;
      case norm_kind::l2: {
        for (auto c : coords) v += static_cast<double>(c) * static_cast<double>(c);
        v = std::sqrt(v);
        break;
      }
      case norm_kind::linf:
        for (auto c : coords) v = std::max(v, std::abs(static_cast<double>(c)));
        break;
      case norm_kind::free_word: break;
    }
    if (!(v < radius)) return;
    group_element e{*group, z_elem{}};
    if (group->fam == family::z) {
      e.data = z_elem{coords[0]};
    } else if (group->fam == family::zd) {
      e.data = zd_elem{coords};
    } else {
      e.data = cmz2_elem{rot, {coords[0], coords[1]}};
    }
    out->push_back({std::move(e), v});
    if (out->size() > budget) {
      error err(errc::budget, "ball enumeration exceeded the node budget of " + std::to_string(budget));
      err.radius_reached = radius;
      throw err;
    }
  }

  void rec(std::size_t i) {
    if (i == coords.size()) {
      emit();
      return;
    }
    // conservative per-coordinate bound; exact filtering happens in emit()
    double bound = radius / weight(i);
    auto hi = static_cast<std::int64_t>(std::floor(bound));
    for (std::int64_t c = -hi; c <= hi; ++c) {
      coords[i] = c;
      rec(i + 1);
    }
  }
};

}  // namespace

void length_evaluator::enumerate_closed_ball(double radius, std::vector<ball_entry>& out) const {
  const auto& g = lf_->group;
  if (g.fam == family::free_group) {
    // reduced words of length < radius, generated in shortlex order
    std::vector<group_element> layer{identity(g)};
    out.push_back({layer[0], 0});
    int k = g.param;
    for (double len = 1; len < radius; ++len) {
      std::vector<group_element> next;
      for (const auto& w : layer) {
        for (int l = 1; l <= k; ++l) {
          for (std::int32_t letter : {l, -l}) {
            const auto& word = std::get<free_elem>(w.data).word;
            if (!word.empty() && word.back() == -letter) continue;
            free_elem nw = std::get<free_elem>(w.data);
            nw.word.push_back(letter);
            group_element e{g, std::move(nw)};
            out.push_back({e, len});
            if (out.size() > budget_) {
              error err(errc::budget, "ball enumeration exceeded the node budget of " + std::to_string(budget_));
              err.radius_reached = len;
              throw err;
            }
            next.push_back(std::move(e));
          }
        }
      }
      layer = std::move(next);
    }
    return;
  }
  lattice_walker w{*lf_, radius, budget_, {}, &out, &g, -1};
  if (g.fam == family::cmz2) {
    w.coords.assign(2, 0);
    for (int r = 0; r < g.param; ++r) {
      w.rot = r;
      w.rec(0);
    }
  } else {
    w.coords.assign(static_cast<std::size_t>(g.dimension()), 0);
    w.rec(0);
  }
}

bool length_evaluator::settle_next() {
  while (!frontier_.empty()) {
    heap_item top = frontier_.top();
    frontier_.pop();
    auto it = settled_.find(top.elem);
    if (it != settled_.end()) continue;  // stale heap entry
    settled_.emplace(top.elem, top.dist);
    if (settled_.size() > budget_) {
      error err(errc::budget, "exploration exceeded the node budget of " + std::to_string(budget_));
      err.radius_reached = completed_radius_;
      throw err;
    }
    tentative_.erase(top.elem);
    for (const auto& [gen, w] : edges_) {
      group_element y = multiply(top.elem, gen);
      if (settled_.contains(y)) continue;
      double nd = top.dist + w;
      auto [tit, fresh] = tentative_.try_emplace(y, nd);
      if (!fresh) {
        if (tit->second <= nd) continue;
        tit->second = nd;
      }
      frontier_.push({nd, std::move(y)});
    }
    completed_radius_ = frontier_.empty() ? std::numeric_limits<double>::infinity() : frontier_.top().dist;
    return true;
  }
  exhausted_ = true;
  completed_radius_ = std::numeric_limits<double>::infinity();
  return false;
}

void length_evaluator::ensure_radius(double radius) {
  if (!graph_init_) {
    graph_init_ = true;
    if (lf_->k == length_function::kind::word) {
      for (const auto& e : lf_->gens.elements) edges_.emplace_back(e, 1.0);
    } else {
      // smoothed: edge set is the open base-ball minus the identity; zero
      // weights (pseudolength base) are allowed.
      auto base_ball = base_->ball(lf_->radius);
      for (const auto& be : base_ball.entries) {
        if (is_identity(be.element)) continue;
        edges_.emplace_back(be.element, be.value);
      }
      if (edges_.empty()) fail(errc::domain, "smoothing ball contains no generators at radius " + fmt_double(lf_->radius));
    }
    frontier_.push({0.0, identity(lf_->group)});
    completed_radius_ = 0;
  }
  while (!exhausted_ && completed_radius_ < radius) {
    if (!settle_next()) break;
  }
}

double length_evaluator::evaluate(const group_element& x) {
  if (!(x.group == lf_->group)) fail(errc::domain, "element belongs to a different group");
  switch (lf_->k) {
    case length_function::kind::closed_form: return closed_form_value(x);
    case length_function::kind::rescaled: return lf_->lambda * base_->evaluate(x);
    default: break;
  }
  std::scoped_lock lock(mu_);
  ensure_radius(0);  // init
  while (true) {
    auto it = settled_.find(x);
    if (it != settled_.end()) return it->second;  // settled distances are final
    if (exhausted_) {
      fail(errc::not_generated,
           "element " + coarse::to_string(x) + " is not generated (exploration exhausted after " +
               std::to_string(settled_.size()) + " nodes)");
    }
    try {
      settle_next();
    } catch (error& err) {
      if (err.code() == errc::budget) {
        auto t = tentative_.find(x);
        if (t != tentative_.end()) err.upper_bound = t->second;
      }
      throw;
    }
  }
}

ball_enumeration length_evaluator::ball(double radius) {
  if (!(radius > 0)) fail(errc::domain, "ball radius must be positive");
  ball_enumeration b;
  b.radius = radius;
  switch (lf_->k) {
    case length_function::kind::closed_form: {
      enumerate_closed_ball(radius, b.entries);
      break;
    }
    case length_function::kind::rescaled: {
      auto inner = base_->ball(radius / lf_->lambda);
      b.entries.reserve(inner.entries.size());
      for (auto& e : inner.entries) {
        double v = lf_->lambda * e.value;
        if (v < radius) b.entries.push_back({std::move(e.element), v});
      }
      break;
    }
    default: {
      std::scoped_lock lock(mu_);
      ensure_radius(radius);
      for (const auto& [e, v] : settled_) {
        if (v < radius) b.entries.push_back({e, v});
      }
      break;
    }
  }
  std::sort(b.entries.begin(), b.entries.end(), [](const ball_entry& a, const ball_entry& c) {
    if (a.value != c.value) return a.value < c.value;
    return a.element < c.element;
  });
  for (const auto& e : b.entries) {
    b.annulus_counts[static_cast<long>(std::floor(e.value))]++;
    b.index_.emplace(e.element, e.value);
  }
  return b;
}

std::vector<ball_entry> length_evaluator::annulus(double lo, double hi) {
  if (!(lo > 0) || !(hi > lo)) fail(errc::domain, "annulus bounds must satisfy 0 < lo < hi");
  auto b = ball(hi);
  std::vector<ball_entry> out;
  for (auto& e : b.entries) {
    if (e.value >= lo) out.push_back(std::move(e));
  }
  return out;
}

length_evaluator& evaluator_pool::get(const length_ptr& lf) {
  auto key = lf->to_string();
  auto it = by_spec_.find(key);
  if (it == by_spec_.end()) {
    it = by_spec_.emplace(key, std::make_unique<length_evaluator>(lf, budget_)).first;
  }
  return *it->second;
}

rescale_result rescale_to_unit(const length_ptr& l, const group_element& direction, int horizon,
                               std::uint64_t budget) {
  if (horizon < 1) fail(errc::domain, "rescale horizon must be >= 1");
  if (!has_infinite_order(direction)) fail(errc::domain, "rescale direction must have infinite order");
  length_evaluator ev(l, budget);
  rescale_result res;
  group_element p = identity(l->group);
  for (int n = 1; n <= horizon; ++n) {
    p = multiply(p, direction);
    res.ratios.push_back(ev.evaluate(p) / n);
  }
  double vN = res.ratios.back();
  if (!(vN > 0)) fail(errc::domain, "length vanishes along the rescale direction");
  res.lambda = 1.0 / vN;
  res.scaled = length_function::rescaled(l, res.lambda);
  return res;
}

}  // namespace coarse
