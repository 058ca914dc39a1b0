#pragma once

// Command-line front end. Kept in a header so tests can drive it in-process.

#include <CLI11.hpp>
#include <algorithm>
#include <cctype>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "rbss/bounds.hpp"
#include "rbss/output.hpp"
#include "rbss/ssengine.hpp"

namespace rbss::cli {

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kUsage = 2;
constexpr int kIndeterminate = 3;

inline std::pair<int64_t, int64_t> parse_range(const std::string& s) {
  auto colon = s.find(':', 1);  // a leading '-' is a sign
  if (colon == std::string::npos) throw Error("range '" + s + "' must look like lo:hi");
  int64_t lo = std::stoll(s.substr(0, colon)), hi = std::stoll(s.substr(colon + 1));
  if (lo > hi) throw Error("range '" + s + "' is empty");
  return {lo, hi};
}

// "-8:24x0:12" or "-8:24x0:12x-2:2" (stems x filtrations [x twists])
inline Window parse_window(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, 'x')) parts.push_back(part);
  if (parts.size() < 2 || parts.size() > 3) throw Error("window '" + s + "' must be STEMSxFILTRATIONS[xTWISTS]");
  Window w;
  std::tie(w.stem_lo, w.stem_hi) = parse_range(parts[0]);
  std::tie(w.filt_lo, w.filt_hi) = parse_range(parts[1]);
  if (parts.size() == 3) std::tie(w.twist_lo, w.twist_hi) = parse_range(parts[2]);
  return w;
}

inline std::set<std::string> parse_localized(const std::string& s) {
  std::set<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item == "none") continue;
    bool ok = item == "as" || (item.size() >= 2 && item[0] == 'v' &&
                               std::all_of(item.begin() + 1, item.end(), [](unsigned char c) { return std::isdigit(c); }));
    if (!ok) throw Error("cannot localize at '" + item + "' (expected as or v<h>)");
    out.insert(item);
  }
  return out;
}

inline std::string extension(const std::string& path) {
  auto dot = path.rfind('.');
  return dot == std::string::npos ? "" : path.substr(dot + 1);
}

inline void write_file(const std::string& path, const std::string& data) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write " + path);
  f << data;
}

// Flat "key = value" lines; '#' starts a comment.
inline std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot read config file " + path);
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  int lineno = 0;
  auto trim = [](std::string x) {
    size_t a = x.find_first_not_of(" \t\r"), b = x.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : x.substr(a, b - a + 1);
  };
  while (std::getline(f, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(path + ":" + std::to_string(lineno) + ": expected key = value");
    out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return out;
}

constexpr const char* kConfigHelp =
    "Config file (--config FILE): flat 'key = value' lines using the long option\n"
    "names of the chosen command, e.g.\n"
    "  model = slice\n  h = 1\n  localized = v1\n  window = -8:24x0:12\n"
    "Command-line flags override values from the file.";

struct Options {
  int64_t h = 1;
  std::string group = "C2";
  int64_t order = 0;
  std::string model = "slice";
  int64_t n = 0;
  std::string localized;
  std::string window = "-8:24x0:12";
  int64_t weight_max = -1;
  int64_t r_max = 0;
  std::vector<std::string> outs;
  std::string rep = "0";
  std::string t_range = "0:8";
  std::string s_range = "0:8";
  int64_t h_max = 16;
  std::string config;
};

inline RunConfig make_run_config(const Options& o) {
  RunConfig cfg;
  cfg.model = parse_model(o.model);
  cfg.n = static_cast<int>(o.n > 0 ? o.n : o.h);
  if (o.localized.empty()) {
    if (cfg.model != Model::Slice) cfg.localized.insert("as");
  } else {
    cfg.localized = parse_localized(o.localized);
  }
  if (cfg.model != Model::Slice) cfg.localized.insert("as");
  cfg.window = parse_window(o.window);
  cfg.window.weight_max = o.weight_max;
  cfg.r_max = o.r_max > 0 ? o.r_max : (int64_t{1} << (cfg.n + 1));
  return cfg;
}

inline int emit_run(const RunResult& res, const std::vector<std::string>& outs, std::ostream& out) {
  if (outs.empty()) out << page_tsv(res.final_page);
  for (const auto& path : outs) {
    std::string ext = extension(path);
    if (ext == "tsv")
      write_file(path, page_tsv(res.final_page));
    else if (ext == "json")
      write_file(path, run_json(res));
    else if (ext == "svg")
      write_file(path, page_svg(res));
    else if (ext == "md")
      write_file(path, run_markdown(res));
    else
      throw Error("cannot infer output format from '" + path + "' (use .svg, .tsv, .json or .md)");
  }
  return kOk;
}

inline bool window_indeterminate(const Page& page) {
  for (const auto& [k, c] : page.cells)
    if (c.in_window && !c.trusted()) return true;
  return false;
}

inline int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  // Splice config-file values in right after the command word, so flags on
  // the command line (which come later) win.
  std::vector<std::string> args(argv, argv + argc);
  try {
    for (size_t i = 1; i + 1 < args.size(); ++i) {
      if (args[i] != "--config") continue;
      auto kv = read_config(args[i + 1]);
      size_t at = 1;
      while (at < args.size() && !args[at].empty() && args[at][0] == '-') ++at;
      std::vector<std::string> extra;
      for (auto& [k, v] : kv) {
        extra.push_back("--" + k);
        extra.push_back(v);
      }
      args.insert(args.begin() + static_cast<long>(std::min(at + 1, args.size())), extra.begin(), extra.end());
      break;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  CLI::App app{"Equivariant spectral sequence engine and vanishing-line bounds"};
  app.set_help_flag("--help", "print help");  // frees -h/--h for the height
  app.require_subcommand(1);
  app.footer(kConfigHelp);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  Options o;
  auto add_common = [&](CLI::App* sub) { sub->add_option("--config", o.config, "flat key = value config file"); };

  auto* bounds = app.add_subcommand("bounds", "vanishing-line filtration N_{h,H}");
  bounds->add_option("--h", o.h, "height")->required();
  bounds->add_option("--group", o.group, "C2, C4, ..., C256 or Q8");
  bounds->add_option("--order", o.order, "order of an ambient finite group with Sylow 2-subgroup --group");
  add_common(bounds);

  auto* theta = app.add_subcommand("theta", "orientation-order bound Theta");
  theta->add_option("--h", o.h, "height")->required();
  theta->add_option("--group", o.group, "Sylow 2-subgroup");
  theta->add_option("--order", o.order, "order of G (default |H|)");
  add_common(theta);

  auto* regions = app.add_subcommand("regions", "comparison regions as TSV");
  regions->add_option("--group", o.group, "group");
  regions->add_option("--rep", o.rep, "fixed-point-free part V' of V = t + V'");
  regions->add_option("--t", o.t_range, "range of t, lo:hi");
  regions->add_option("--s", o.s_range, "range of filtration s, lo:hi");
  add_common(regions);

  auto add_run_opts = [&](CLI::App* sub) {
    sub->add_option("--model", o.model, "slice, hfpss or tate");
    sub->add_option("--h", o.h, "height (truncation defaults to h)");
    sub->add_option("--n", o.n, "truncation height n");
    sub->add_option("--localized", o.localized, "comma list from as, v1, v2, ...");
    sub->add_option("--window", o.window, "STEMSxFILTRATIONS[xTWISTS], e.g. -8:24x0:12");
    sub->add_option("--weight-max", o.weight_max, "largest vbar weight kept (default automatic)");
    sub->add_option("--rmax", o.r_max, "last page length (default 2^(n+1))");
    add_common(sub);
  };
  auto* run_cmd = app.add_subcommand("run", "run an engine model");
  add_run_opts(run_cmd);
  run_cmd->add_option("--out", o.outs, "output files; format from extension (svg, tsv, json, md)")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);

  auto* report = app.add_subcommand("report", "markdown table of bounds for h <= h-max");
  report->add_option("--h-max", o.h_max, "largest height");
  report->add_option("--out", o.outs, "output file")->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  add_common(report);

  auto* verify = app.add_subcommand("verify", "run the localized slice model and compare with N_{h,C2}");
  add_run_opts(verify);

  std::vector<const char*> cargs;
  for (const auto& a : args) cargs.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  try {
    if (*bounds) {
      Group g = Group::parse(o.group);
      int64_t n = o.order > 0 ? group_bound(o.h, o.order, g) : vanishing_bound(o.h, g);
      out << n << "\n";
      if (auto row = sharp_row(o.h, g); row && !row->sharp)
        err << "note: known actual vanishing line " << *row->actual << " (" << row->provenance << ")\n";
      return kOk;
    }
    if (*theta) {
      Group g = Group::parse(o.group);
      out << theta_bound(o.h, o.order > 0 ? o.order : g.order(), g).str() << "\n";
      return kOk;
    }
    if (*regions) {
      Group g = Group::parse(o.group);
      VirtualRep vp = VirtualRep::parse(g, o.rep);
      if (vp[0] != 0) throw Error("--rep must have no trivial summand; use --t for it");
      auto [t0, t1] = parse_range(o.t_range);
      auto [s0, s1] = parse_range(o.s_range);
      out << "t\ts\tV\tslice_hfpss\thfpss_tate\n";
      for (int64_t t = t0; t <= t1; ++t)
        for (int64_t s = s0; s <= s1; ++s) {
          VirtualRep v = vp + VirtualRep::trivial(g, t);
          out << t << '\t' << s << '\t' << v.to_string() << '\t' << (iso_region_slice_hfpss(v, s) ? "iso" : "-") << '\t'
              << tate_region_name(hfpss_tate_region(s)) << "\n";
        }
      return kOk;
    }
    if (*report) {
      std::string md = "# Vanishing-line bounds\n\n" + bounds_report(o.h_max);
      md += "\nKnown values:\n\n| h | H | bound | actual | provenance |\n|---|---|---|---|---|\n";
      for (const auto& r : known_sharp_table(1)) {
        if (r.group == Group::cyclic(1)) {
          md += "| h | C2 | 2^(h+1)-1 | 2^(h+1)-1 | " + r.provenance + " |\n";
          continue;
        }
        md += "| " + std::to_string(r.h) + " | " + r.group.name() + " | " + std::to_string(r.bound) + " | " +
              std::to_string(*r.actual) + (r.sharp ? " (sharp)" : " (bound not sharp)") + " | " + r.provenance + " |\n";
      }
      if (o.outs.empty())
        out << md;
      else
        for (const auto& p : o.outs) write_file(p, md);
      return kOk;
    }
    if (*run_cmd || *verify) {
      if (*verify) {
        o.model = "slice";
        int64_t nn = o.n > 0 ? o.n : o.h;
        if (o.localized.empty()) o.localized = "v" + std::to_string(nn);
        if (verify->get_option("--window")->count() == 0) {
          int64_t bound = vanishing_bound(nn, Group::cyclic(1));
          o.window = "-8:" + std::to_string(2 * bound + 2) + "x0:" + std::to_string(bound + 1);
        }
      }
      RunConfig cfg = make_run_config(o);
      RunResult res = run(cfg);
      if (*run_cmd) emit_run(res, o.outs, out);
      bool indeterminate = window_indeterminate(res.final_page);
      if (*verify) {
        auto line = vanishing_line(res.final_page);
        int64_t expect = vanishing_bound(cfg.n, Group::cyclic(1));
        out << "vanishing_line " << line.value << "\nbound " << expect << "\ncollapse_page " << collapse_page(res.log)
            << "\n";
        if (line.flagged) {
          err << "indeterminate cells lie above the computed vanishing line\n";
          return kIndeterminate;
        }
        if (line.value != expect) {
          err << "mismatch: engine line " << line.value << " vs bound " << expect << "\n";
          return kMismatch;
        }
        out << "ok\n";
        return kOk;
      }
      if (indeterminate) {
        err << "warning: some window cells are indeterminate (marked [indeterminate]); enlarge --weight-max or the "
               "window\n";
        return kIndeterminate;
      }
      return kOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: bad number (" << e.what() << ")\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace rbss::cli
