#include "coarse/coarse.h"

#include <cstring>
#include <string>

#include "scenarios.hpp"

namespace {

thread_local std::string g_last_error;

coarse_status to_status(coarse::errc c) {
  using coarse::errc;
  switch (c) {
    case errc::usage: return COARSE_ERR_USAGE;
    case errc::budget: return COARSE_ERR_BUDGET;
    case errc::assertion: return COARSE_ERR_ASSERTION;
    case errc::parse: return COARSE_ERR_PARSE;
    case errc::domain: return COARSE_ERR_DOMAIN;
    case errc::not_generated: return COARSE_ERR_NOT_GENERATED;
    case errc::overflow: return COARSE_ERR_OVERFLOW;
    case errc::internal: return COARSE_ERR_INTERNAL;
  }
  return COARSE_ERR_INTERNAL;
}

template <typename F>
coarse_status guarded(F&& f) {
  try {
    f();
    return COARSE_OK;
  } catch (const coarse::error& e) {
    g_last_error = e.what();
    if (e.code() == coarse::errc::budget) {
      if (e.radius_reached) g_last_error += " (radius reached: " + std::to_string(*e.radius_reached) + ")";
      if (e.upper_bound) g_last_error += " (best upper bound: " + std::to_string(*e.upper_bound) + ")";
    }
    return to_status(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return COARSE_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return COARSE_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

coarse::profile_params make_params(double r_max, double width, double r_min, std::uint64_t budget) {
  coarse::profile_params p;
  p.r_max = r_max;
  p.width = width > 0 ? width : 1.0;
  p.r_min = r_min > 0 ? r_min : 1.0;
  p.budget = budget;
  return p;
}

}  // namespace

struct coarse_group {
  coarse::group_descriptor desc;
};

struct coarse_length {
  coarse::length_ptr spec;
  std::uint64_t budget = 0;
  std::unique_ptr<coarse::length_evaluator> eval;

  coarse::length_evaluator& evaluator() {
    if (!eval) eval = std::make_unique<coarse::length_evaluator>(spec, budget);
    return *eval;
  }
};

struct coarse_space {
  coarse::finite_metric_space space;
};

extern "C" {

const char* coarse_version(void) { return coarse::kVersion; }

const char* coarse_status_name(coarse_status status) {
  switch (status) {
    case COARSE_OK: return "ok";
    case COARSE_ERR_USAGE: return "usage";
    case COARSE_ERR_BUDGET: return "budget";
    case COARSE_ERR_ASSERTION: return "assertion";
    case COARSE_ERR_PARSE: return "parse";
    case COARSE_ERR_DOMAIN: return "domain";
    case COARSE_ERR_NOT_GENERATED: return "not-generated";
    case COARSE_ERR_OVERFLOW: return "overflow";
    case COARSE_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* coarse_last_error(void) { return g_last_error.c_str(); }

void coarse_string_free(char* s) { std::free(s); }

coarse_status coarse_group_parse(const char* spec, coarse_group** out) {
  if (!spec || !out) {
    g_last_error = "null argument";
    return COARSE_ERR_USAGE;
  }
  return guarded([&] { *out = new coarse_group{coarse::group_descriptor::parse(spec)}; });
}

void coarse_group_free(coarse_group* g) { delete g; }

coarse_status coarse_group_to_string(const coarse_group* g, char** out) {
  if (!g || !out) {
    g_last_error = "null argument";
    return COARSE_ERR_USAGE;
  }
  return guarded([&] { *out = dup_string(g->desc.to_string()); });
}

coarse_status coarse_element_multiply(const coarse_group* g, const char* a, const char* b, char** out) {
  if (!g || !a || !b || !out) {
    g_last_error = "null argument";
    return COARSE_ERR_USAGE;
  }
  return guarded([&] {
    auto x = coarse::parse_element(g->desc, a);
    auto y = coarse::parse_element(g->desc, b);
    *out = dup_string(coarse::to_string(coarse::multiply(x, y)));
  });
}

coarse_status coarse_element_invert(const coarse_group* g, const char* a, char** out) {
  if (!g || !a || !out) {
    g_last_error = "null argument";
    return COARSE_ERR_USAGE;
  }
  return guarded([&] { *out = dup_string(coarse::to_string(coarse::invert(coarse::parse_element(g->desc, a)))); });
}

coarse_status coarse_length_parse(const coarse_group* g, const char* spec, coarse_length** out) {
  if (!g || !spec || !out) {
    g_last_error = "null argument";
    return COARSE_ERR_USAGE;
  }
  return guarded([&] {
    auto lf = coarse::length_function::parse(g->desc, spec);
    *out = new coarse_length{std::move(lf), 0, nullptr};
  });
}

void coarse_length_free(coarse_length* l) { delete l; }

void coarse_length_set_budget(coarse_length* l, uint64_t max_nodes) {
  if (!l) return;
  l->budget = max_nodes;
  l->eval.reset();
}

coarse_status coarse_length_evaluate(coarse_length* l, const char* element, double* out) {
  if (!l || !element || !out) {
    g_last_error = "null argument";
    return COARSE_ERR_USAGE;
  }
  return guarded([&] { *out = l->evaluator().evaluate(coarse::parse_element(l->spec->group, element)); });
}

coarse_status coarse_ball_csv(coarse_length* l, double radius, char** out) {
  if (!l || !out) {
    g_last_error = "null argument";
    return COARSE_ERR_USAGE;
  }
  return guarded([&] { *out = dup_string(coarse::ball_csv(l->evaluator().ball(radius))); });
}

coarse_status coarse_annulus_csv(coarse_length* l, double lo, double hi, char** out) {
  if (!l || !out) {
    g_last_error = "null argument";
    return COARSE_ERR_USAGE;
  }
  return guarded([&] { *out = dup_string(coarse::entries_csv(l->evaluator().annulus(lo, hi))); });
}

coarse_status coarse_ratio_report(coarse_length* l1, coarse_length* l2, double r_max, double width, double r_min,
                                  int format, char** out) {
  if (!l1 || !l2 || !out) {
    g_last_error = "null argument";
    return COARSE_ERR_USAGE;
  }
  return guarded([&] {
    auto p = make_params(r_max, width, r_min, l1->budget);
    auto profile = coarse::ratio_profile(l1->evaluator(), l2->evaluator(), p);
    if (format == 1) {
      *out = dup_string(coarse::profile_csv(profile));
    } else {
      auto est = coarse::alpha_estimate(profile, 0);
      *out = dup_string(coarse::alpha_report_json(l1->spec->group, profile, est).dump(2));
    }
  });
}

coarse_status coarse_alpha_json(coarse_length* l1, coarse_length* l2, double r_max, double width, double r_min,
                                int window, char** out) {
  if (!l1 || !l2 || !out) {
    g_last_error = "null argument";
    return COARSE_ERR_USAGE;
  }
  return guarded([&] {
    auto p = make_params(r_max, width, r_min, l1->budget);
    auto profile = coarse::ratio_profile(l1->evaluator(), l2->evaluator(), p);
    auto est = coarse::alpha_estimate(profile, window);
    *out = dup_string(coarse::alpha_report_json(l1->spec->group, profile, est).dump(2));
  });
}

coarse_status coarse_diameter_json(coarse_length* const* lengths, size_t count, double r_max, double width,
                                   double r_min, int window, char** out) {
  if (!lengths || !out || count < 2) {
    g_last_error = "need at least two length handles";
    return COARSE_ERR_USAGE;
  }
  return guarded([&] {
    std::vector<coarse::length_ptr> family;
    for (size_t i = 0; i < count; ++i) family.push_back(lengths[i]->spec);
    auto p = make_params(r_max, width, r_min, lengths[0]->budget);
    auto res = coarse::eccentricity_diameter(family, p, window);
    coarse::json j;
    j["group"] = family[0]->group.to_string();
    coarse::json names = coarse::json::array();
    for (const auto& f : family) names.push_back(f->to_string());
    j["lengths"] = names;
    j["alpha"] = res.alpha;
    j["diameter"] = res.diameter;
    j["argmax"] = coarse::json::array({res.arg_i, res.arg_j});
    *out = dup_string(j.dump(2));
  });
}

coarse_status coarse_smooth_conv_json(coarse_length* l, const double* schedule, size_t count, double ball_radius,
                                      char** out) {
  if (!l || !schedule || !out || count == 0) {
    g_last_error = "null argument";
    return COARSE_ERR_USAGE;
  }
  return guarded([&] {
    std::vector<double> R(schedule, schedule + count);
    auto rows = coarse::smoothing_convergence(l->spec, R, ball_radius, l->budget);
    coarse::json j;
    j["group"] = l->spec->group.to_string();
    j["length"] = l->spec->to_string();
    j["ball_radius"] = ball_radius;
    coarse::json arr = coarse::json::array();
    for (const auto& r : rows) {
      arr.push_back(coarse::json{{"R", r.R},
                                 {"sup_ratio", r.sup_ratio},
                                 {"count", r.count},
                                 {"argmax", r.argmax ? coarse::json(coarse::to_string(*r.argmax)) : coarse::json(nullptr)}});
    }
    j["rows"] = std::move(arr);
    *out = dup_string(j.dump(2));
  });
}

coarse_status coarse_word_conv_json(coarse_length* l, const double* schedule, size_t count, double r_max,
                                    char** out) {
  if (!l || !schedule || !out || count == 0) {
    g_last_error = "null argument";
    return COARSE_ERR_USAGE;
  }
  return guarded([&] {
    std::vector<double> r(schedule, schedule + count);
    auto p = make_params(r_max, 1.0, 1.0, l->budget);
    auto rows = coarse::word_quotient_convergence(l->spec, r, p, 0);
    coarse::json j;
    j["group"] = l->spec->group.to_string();
    j["length"] = l->spec->to_string();
    j["r_max"] = r_max;
    coarse::json arr = coarse::json::array();
    for (const auto& row : rows) {
      arr.push_back(coarse::json{{"r", row.r},
                                 {"generators", row.generator_count},
                                 {"alpha_hat", row.alpha_hat},
                                 {"limsup_hat", row.limsup_hat},
                                 {"liminf_hat", row.liminf_hat},
                                 {"log_limsup", row.log_limsup}});
    }
    j["rows"] = std::move(arr);
    *out = dup_string(j.dump(2));
  });
}

coarse_status coarse_space_create(const char* spec, coarse_space** out) {
  if (!spec || !out) {
    g_last_error = "null argument";
    return COARSE_ERR_USAGE;
  }
  return guarded([&] {
    auto s = coarse::finite_metric_space::parse(spec);
    s.validate();
    *out = new coarse_space{std::move(s)};
  });
}

coarse_status coarse_space_from_csv(const char* csv_text, coarse_space** out) {
  if (!csv_text || !out) {
    g_last_error = "null argument";
    return COARSE_ERR_USAGE;
  }
  return guarded([&] { *out = new coarse_space{coarse::finite_metric_space::from_csv(csv_text)}; });
}

void coarse_space_free(coarse_space* s) { delete s; }

coarse_status coarse_chains_json(const coarse_space* s, const double* radii, size_t count, int random_pairs,
                                 uint64_t seed, double interior_margin, char** out) {
  if (!s || !radii || !out || count == 0) {
    g_last_error = "null argument";
    return COARSE_ERR_USAGE;
  }
  return guarded([&] {
    coarse::pair_sample_options opts;
    opts.seed = seed;
    opts.interior_margin = interior_margin;
    if (random_pairs > 0) opts.random_pairs = static_cast<std::size_t>(random_pairs);
    auto pairs = coarse::sample_pairs(s->space, opts);
    std::vector<coarse::geodesicity_scan_result> scans;
    for (size_t i = 0; i < count; ++i) scans.push_back(coarse::geodesicity_scan(s->space, radii[i], pairs));
    *out = dup_string(coarse::chains_report_json(s->space, scans, opts).dump(2));
  });
}

coarse_status coarse_homog_json(const coarse_space* s, const char* action_spec, int quad_samples, uint64_t seed,
                                double interior_margin, char** out) {
  if (!s || !action_spec || !out) {
    g_last_error = "null argument";
    return COARSE_ERR_USAGE;
  }
  return guarded([&] {
    auto action = coarse::isometry_action::parse(s->space, action_spec);
    auto scan = coarse::homogeneity_scan(s->space, action, quad_samples > 0 ? quad_samples : 150, seed,
                                         interior_margin);
    *out = dup_string(coarse::homogeneity_report_json(s->space, scan, seed, interior_margin).dump(2));
  });
}

coarse_status coarse_scenario_list(char** out) {
  if (!out) {
    g_last_error = "null argument";
    return COARSE_ERR_USAGE;
  }
  return guarded([&] {
    std::string s;
    for (const auto& id : coarse::scenario_ids()) {
      s += id;
      s += '\n';
    }
    *out = dup_string(s);
  });
}

coarse_status coarse_verify_json(const char* scenario_id, const char* params_json, char** out) {
  if (!scenario_id || !out) {
    g_last_error = "null argument";
    return COARSE_ERR_USAGE;
  }
  bool passed = false;
  auto st = guarded([&] {
    coarse::scenario_params params;
    if (params_json && *params_json) {
      auto j = coarse::json::parse(params_json, nullptr, false);
      if (j.is_discarded()) coarse::fail(coarse::errc::parse, "params_json is not valid JSON");
      if (j.contains("rmax")) params.r_max = j["rmax"].get<double>();
      if (j.contains("width")) params.width = j["width"].get<double>();
      if (j.contains("window")) params.window = j["window"].get<int>();
      if (j.contains("budget")) params.budget = j["budget"].get<std::uint64_t>();
      if (j.contains("seed")) params.seed = j["seed"].get<std::uint64_t>();
      if (j.contains("gens")) params.gens = j["gens"].get<std::string>();
      if (j.contains("margin")) params.margin = j["margin"].get<double>();
      if (j.contains("slack")) params.slack = j["slack"].get<double>();
    }
    auto rep = coarse::run_scenario(scenario_id, params);
    passed = rep.passed;
    *out = dup_string(rep.to_json().dump(2));
  });
  if (st != COARSE_OK) return st;
  if (!passed) {
    g_last_error = std::string("scenario '") + scenario_id + "' has failing assertions";
    return COARSE_ERR_ASSERTION;
  }
  return COARSE_OK;
}

}  // extern "C"
