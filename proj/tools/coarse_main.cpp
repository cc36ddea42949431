// Command-line surface for the coarse shared library.  Everything goes
// through the C API; this translation unit holds no group theory.

#include <CLI11.hpp>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "coarse/coarse.h"

namespace {

int exit_code(coarse_status st) {
  switch (st) {
    case COARSE_OK: return 0;
    case COARSE_ERR_BUDGET: return 2;
    case COARSE_ERR_ASSERTION: return 3;
    default: return 1;  // usage / parse / domain / overflow / internal
  }
}

int finish(coarse_status st, char* payload, const std::string& out_path) {
  if (payload) {
    if (out_path.empty()) {
      std::fwrite(payload, 1, std::strlen(payload), stdout);
      if (std::strlen(payload) == 0 || payload[std::strlen(payload) - 1] != '\n') std::fputc('\n', stdout);
    } else {
      std::ofstream f(out_path, std::ios::binary);
      f << payload;
    }
    coarse_string_free(payload);
  }
  if (st != COARSE_OK) std::cerr << "error (" << coarse_status_name(st) << "): " << coarse_last_error() << "\n";
  return exit_code(st);
}

struct group_handle {
  coarse_group* g = nullptr;
  ~group_handle() { coarse_group_free(g); }
};

struct length_handle {
  coarse_length* l = nullptr;
  ~length_handle() { coarse_length_free(l); }
};

struct space_handle {
  coarse_space* s = nullptr;
  ~space_handle() { coarse_space_free(s); }
};

coarse_status open_length(const std::string& group, const std::string& spec, std::uint64_t budget,
                          group_handle& gh, length_handle& lh) {
  auto st = coarse_group_parse(group.c_str(), &gh.g);
  if (st != COARSE_OK) return st;
  st = coarse_length_parse(gh.g, spec.c_str(), &lh.l);
  if (st != COARSE_OK) return st;
  if (budget) coarse_length_set_budget(lh.l, budget);
  return COARSE_OK;
}

std::vector<double> parse_schedule(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(std::stod(tok));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coarse - word lengths, smoothed lengths and the alpha pseudometric on finitely generated groups"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(coarse_version()));

  std::string group = "z", length = "l1", l1 = "l1", l2 = "linf";
  std::string element, space_spec = "grid:l1:21", action = "translations+rot4";
  std::string out_path, out_format = "json", scenario, gens, schedule_csv, radii_csv, space_csv;
  double radius = 10, lo = 0, rmax = 100, width = 1, rmin = 1, margin = 0, ball_radius = 60, slack = -1;
  std::uint64_t budget = 0, seed = 1;
  int window = 0, pairs = 200, samples = 150;
  std::vector<std::string> lengths;
  bool have_rmax = false, have_window = false, have_margin = false, have_seed = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--budget", budget, "node cap for exploration (overrides COARSE_BUDGET)");
    cmd->add_option("--output", out_path, "write the report to a file instead of stdout");
  };

  auto* cmd_ball = app.add_subcommand("ball", "enumerate an open ball and dump element,length CSV");
  cmd_ball->add_option("--group", group, "group spec (z, zd:2, dinf, cmz2:4, free:2)")->required();
  cmd_ball->add_option("--length", length, "length spec (l1, linf, l2, wnorm:3,1, word:GENS, smooth:BASE:r, scale:BASE:l)");
  cmd_ball->add_option("--radius", radius, "open-ball radius")->required();
  cmd_ball->add_option("--lo", lo, "annulus lower bound; dumps {x : lo <= l(x) < radius}");
  add_common(cmd_ball);

  auto* cmd_length = app.add_subcommand("length", "evaluate a length function on one element");
  cmd_length->add_option("--group", group)->required();
  cmd_length->add_option("--length", length);
  cmd_length->add_option("--element", element, "element text, e.g. \"(t^1,(2,-3))\"")->required();
  add_common(cmd_length);

  auto* cmd_ratio = app.add_subcommand("ratio", "per-annulus extremes of l1/l2 over annuli of l2");
  auto* cmd_alpha = app.add_subcommand("alpha", "alpha estimate with convergence table");
  for (auto* cmd : {cmd_ratio, cmd_alpha}) {
    cmd->add_option("--group", group)->required();
    cmd->add_option("--l1", l1, "numerator length spec");
    cmd->add_option("--l2", l2, "denominator length spec (annuli index this one)");
    cmd->add_option("--rmax", rmax, "profile radius")->required();
    cmd->add_option("--width", width, "annulus width");
    cmd->add_option("--rmin", rmin, "first annulus lower bound");
    cmd->add_option("--window", window, "tail window (0 = #annuli/4)");
    add_common(cmd);
  }
  cmd_ratio->add_option("--out", out_format, "json or csv");

  auto* cmd_diam = app.add_subcommand("diameter", "pairwise alpha matrix and its maximum");
  cmd_diam->add_option("--group", group)->required();
  cmd_diam->add_option("--length", lengths, "length spec, repeatable (needs >= 2)")->required();
  cmd_diam->add_option("--rmax", rmax)->required();
  cmd_diam->add_option("--width", width);
  cmd_diam->add_option("--rmin", rmin);
  cmd_diam->add_option("--window", window);
  add_common(cmd_diam);

  auto* cmd_smooth = app.add_subcommand("smooth-conv", "sup of smoothed/base length ratios per smoothing radius");
  cmd_smooth->add_option("--group", group)->required();
  cmd_smooth->add_option("--length", length);
  cmd_smooth->add_option("--schedule", schedule_csv, "comma-separated smoothing radii")->required();
  cmd_smooth->add_option("--ball-radius", ball_radius, "enumeration radius for the base length");
  add_common(cmd_smooth);

  auto* cmd_word = app.add_subcommand("word-conv", "alpha of ball word metrics against the base length, per radius");
  cmd_word->add_option("--group", group)->required();
  cmd_word->add_option("--length", length);
  cmd_word->add_option("--schedule", schedule_csv, "comma-separated ball radii")->required();
  cmd_word->add_option("--rmax", rmax, "profile radius");
  add_common(cmd_word);

  auto* cmd_chains = app.add_subcommand("chains", "chain-geodesicity scan of a finite metric space");
  cmd_chains->add_option("--space", space_spec, "grid:l1:21, grid:l2:41, tree:3:6, cycle:10");
  cmd_chains->add_option("--space-csv", space_csv, "CSV distance matrix file");
  cmd_chains->add_option("--radii", radii_csv, "comma-separated step bounds R")->required();
  cmd_chains->add_option("--pairs", pairs, "random pair sample size");
  cmd_chains->add_option("--seed", seed);
  cmd_chains->add_option("--margin", margin, "interior margin excluded from sampling");
  add_common(cmd_chains);

  auto* cmd_homog = app.add_subcommand("homog", "two-point homogeneity scan under an isometry catalog");
  cmd_homog->add_option("--space", space_spec);
  cmd_homog->add_option("--space-csv", space_csv);
  cmd_homog->add_option("--action", action, "translations, translations+rot4, rotations, csv:FILE");
  cmd_homog->add_option("--samples", samples, "quadruple sample size");
  cmd_homog->add_option("--seed", seed);
  cmd_homog->add_option("--margin", margin);
  add_common(cmd_homog);

  auto* cmd_verify = app.add_subcommand("verify", "run a named verification scenario");
  cmd_verify->add_option("scenario", scenario, "scenario id (run `coarse verify list`)")->required();
  auto* opt_rmax = cmd_verify->add_option("--rmax", rmax);
  cmd_verify->add_option("--width", width);
  auto* opt_window = cmd_verify->add_option("--window", window);
  auto* opt_seed = cmd_verify->add_option("--seed", seed);
  cmd_verify->add_option("--gens", gens, "restrict catalog scenarios to one generating set");
  auto* opt_margin = cmd_verify->add_option("--margin", margin);
  cmd_verify->add_option("--slack", slack);
  add_common(cmd_verify);

  CLI11_PARSE(app, argc, argv);

  char* payload = nullptr;

  if (cmd_ball->parsed() || cmd_length->parsed()) {
    group_handle gh;
    length_handle lh;
    auto st = open_length(group, length, budget, gh, lh);
    if (st != COARSE_OK) return finish(st, nullptr, out_path);
    if (cmd_ball->parsed()) {
      st = lo > 0 ? coarse_annulus_csv(lh.l, lo, radius, &payload) : coarse_ball_csv(lh.l, radius, &payload);
    } else {
      double value = 0;
      st = coarse_length_evaluate(lh.l, element.c_str(), &value);
      if (st == COARSE_OK) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g\n", value);
        payload = strdup(buf);
      }
    }
    return finish(st, payload, out_path);
  }

  if (cmd_ratio->parsed() || cmd_alpha->parsed()) {
    group_handle gh;
    length_handle h1, h2;
    auto st = open_length(group, l1, budget, gh, h1);
    if (st != COARSE_OK) return finish(st, nullptr, out_path);
    st = coarse_length_parse(gh.g, l2.c_str(), &h2.l);
    if (st != COARSE_OK) return finish(st, nullptr, out_path);
    if (budget) coarse_length_set_budget(h2.l, budget);
    if (cmd_ratio->parsed()) {
      st = coarse_ratio_report(h1.l, h2.l, rmax, width, rmin, out_format == "csv" ? 1 : 0, &payload);
    } else {
      st = coarse_alpha_json(h1.l, h2.l, rmax, width, rmin, window, &payload);
    }
    return finish(st, payload, out_path);
  }

  if (cmd_diam->parsed()) {
    group_handle gh;
    auto st = coarse_group_parse(group.c_str(), &gh.g);
    if (st != COARSE_OK) return finish(st, nullptr, out_path);
    std::vector<length_handle> handles(lengths.size());
    std::vector<coarse_length*> raw;
    for (std::size_t i = 0; i < lengths.size(); ++i) {
      st = coarse_length_parse(gh.g, lengths[i].c_str(), &handles[i].l);
      if (st != COARSE_OK) return finish(st, nullptr, out_path);
      if (budget) coarse_length_set_budget(handles[i].l, budget);
      raw.push_back(handles[i].l);
    }
    st = coarse_diameter_json(raw.data(), raw.size(), rmax, width, rmin, window, &payload);
    return finish(st, payload, out_path);
  }

  if (cmd_smooth->parsed() || cmd_word->parsed()) {
    group_handle gh;
    length_handle lh;
    auto st = open_length(group, length, budget, gh, lh);
    if (st != COARSE_OK) return finish(st, nullptr, out_path);
    auto schedule = parse_schedule(schedule_csv);
    if (cmd_smooth->parsed()) {
      st = coarse_smooth_conv_json(lh.l, schedule.data(), schedule.size(), ball_radius, &payload);
    } else {
      st = coarse_word_conv_json(lh.l, schedule.data(), schedule.size(), rmax, &payload);
    }
    return finish(st, payload, out_path);
  }

  if (cmd_chains->parsed() || cmd_homog->parsed()) {
    space_handle sh;
    coarse_status st;
    if (!space_csv.empty()) {
      std::ifstream f(space_csv);
      std::stringstream ss;
      ss << f.rdbuf();
      st = coarse_space_from_csv(ss.str().c_str(), &sh.s);
    } else {
      st = coarse_space_create(space_spec.c_str(), &sh.s);
    }
    if (st != COARSE_OK) return finish(st, nullptr, out_path);
    if (cmd_chains->parsed()) {
      auto radii = parse_schedule(radii_csv);
      st = coarse_chains_json(sh.s, radii.data(), radii.size(), pairs, seed, margin, &payload);
    } else {
      std::string action_spec = action;
      if (action.rfind("csv:", 0) == 0) {
        std::ifstream f(action.substr(4));
        std::stringstream ss;
        ss << f.rdbuf();
        action_spec = "csv:" + ss.str();
      }
      st = coarse_homog_json(sh.s, action_spec.c_str(), samples, seed, margin, &payload);
    }
    return finish(st, payload, out_path);
  }

  if (cmd_verify->parsed()) {
    if (scenario == "list") {
      auto st = coarse_scenario_list(&payload);
      return finish(st, payload, out_path);
    }
    std::string params = "{";
    auto append = [&params](const std::string& key, const std::string& value) {
      if (params.size() > 1) params += ",";
      params += "\"" + key + "\":" + value;
    };
    if (opt_rmax->count()) append("rmax", std::to_string(rmax));
    if (width != 1) append("width", std::to_string(width));
    if (opt_window->count()) append("window", std::to_string(window));
    if (budget) append("budget", std::to_string(budget));
    if (opt_seed->count()) append("seed", std::to_string(seed));
    if (!gens.empty()) append("gens", "\"" + gens + "\"");
    if (opt_margin->count()) append("margin", std::to_string(margin));
    if (slack >= 0) append("slack", std::to_string(slack));
    params += "}";
    auto st = coarse_verify_json(scenario.c_str(), params.c_str(), &payload);
    return finish(st, payload, out_path);
  }

  return 1;
}
