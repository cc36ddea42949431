#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <queue>
#include <unordered_map>
#include <vector>

#include "groups.hpp"

namespace coarse {

inline constexpr std::uint64_t kDefaultBudget = 5'000'000;

// Node cap for graph exploration; COARSE_BUDGET in the environment overrides
// the built-in default, explicit values override both.
std::uint64_t default_budget();

struct length_function;
using length_ptr = std::shared_ptr<const length_function>;

enum class norm_kind : std::uint8_t { l1, l2, linf, weighted_l1, free_word };

// A (pseudo)length specification.  Instances are immutable and shared.
struct length_function {
  enum class kind : std::uint8_t { closed_form, word, smoothed, rescaled };

  kind k = kind::closed_form;
  group_descriptor group;
  bool pseudo = false;  // whether zero values off the identity are allowed

  // closed_form
  norm_kind norm = norm_kind::l1;
  std::vector<double> weights;
  // word
  generating_set gens;
  // smoothed (edge set = open base-ball of the given radius, minus identity)
  // and rescaled share `base`
  length_ptr base;
  double radius = 0;
  double lambda = 1;

  std::string to_string() const;

  static length_ptr closed_form(const group_descriptor& g, norm_kind n, std::vector<double> w = {});
  static length_ptr word(generating_set gens);
  static length_ptr smoothed(length_ptr base, double radius);
  static length_ptr rescaled(length_ptr base, double lambda);

  // Specs: l1 | l2 | linf | wnorm:w1,...,wd | word:GENS | smooth:BASE:r |
  // scale:BASE:lambda.  smooth/scale split at the rightmost colon so BASE
  // may itself contain colons.
  static length_ptr parse(const group_descriptor& g, std::string_view spec);
};

struct ball_entry {
  group_element element;
  double value;
};

// Exact open ball {x : l(x) < radius} with exact values, sorted by
// (value, canonical key).
struct ball_enumeration {
  double radius = 0;
  std::vector<ball_entry> entries;
  std::map<long, std::size_t> annulus_counts;  // floor(value) -> count

  std::optional<double> find(const group_element& x) const;

 private:
  friend class length_evaluator;
  std::unordered_map<group_element, double, element_hash> index_;
};

// Evaluates one length function, growing a persistent Dijkstra/BFS cache for
// word and smoothed kinds.  Same inputs give same outputs regardless of call
// order; a mutex makes concurrent use safe.
class length_evaluator {
 public:
  explicit length_evaluator(length_ptr lf, std::uint64_t budget = 0);

  const length_ptr& spec() const { return lf_; }
  std::uint64_t budget() const { return budget_; }

  double evaluate(const group_element& x);
  ball_enumeration ball(double radius);
  std::vector<ball_entry> annulus(double lo, double hi);

 private:
  struct heap_item {
    double dist;
    group_element elem;
    bool operator>(const heap_item& o) const {
      if (dist != o.dist) return dist > o.dist;
      return o.elem < elem;  // pop ties in canonical key order
    }
  };

  double closed_form_value(const group_element& x) const;
  void enumerate_closed_ball(double radius, std::vector<ball_entry>& out) const;
  void ensure_radius(double radius);
  bool settle_next();  // pops one node; false when the frontier is empty

  length_ptr lf_;
  std::uint64_t budget_;
  std::unique_ptr<length_evaluator> base_;  // rescaled / smoothed base

  std::mutex mu_;
  bool graph_init_ = false;
  std::vector<std::pair<group_element, double>> edges_;
  std::unordered_map<group_element, double, element_hash> settled_;
  std::unordered_map<group_element, double, element_hash> tentative_;  // frontier candidates
  std::priority_queue<heap_item, std::vector<heap_item>, std::greater<>> frontier_;
  double completed_radius_ = 0;  // all x with value < this are settled
  bool exhausted_ = false;
};

// Shared evaluator cache so that repeated uses of the same spec (e.g. in a
// pairwise matrix) reuse one exploration.
class evaluator_pool {
 public:
  explicit evaluator_pool(std::uint64_t budget = 0) : budget_(budget) {}
  length_evaluator& get(const length_ptr& lf);

 private:
  std::uint64_t budget_;
  std::map<std::string, std::unique_ptr<length_evaluator>> by_spec_;
};

struct rescale_result {
  length_ptr scaled;
  double lambda;
  std::vector<double> ratios;  // l(n * direction) / n for n = 1..horizon
};

// Normalises l so that the fitted value along `direction` is 1:
// lambda = horizon / l(direction^horizon).
rescale_result rescale_to_unit(const length_ptr& l, const group_element& direction, int horizon,
                               std::uint64_t budget = 0);

}  // namespace coarse
