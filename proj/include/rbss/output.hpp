#pragma once

// Page dumps: TSV, JSON (page + differential log), SVG chart, Markdown.

#include <json.hpp>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "rbss/bounds.hpp"
#include "rbss/ssengine.hpp"

namespace rbss {

// One chart position (twist, stem, filtration), summed over weights.
struct ChartCell {
  int64_t twist = 0, stem = 0, filtration = 0;
  std::vector<int64_t> orders;  // torsion first, free last
  std::vector<std::pair<int64_t, int64_t>> summands;  // (order, weight), chart order
  std::vector<std::string> generators;
  bool indeterminate = false;
  bool ambiguous = false;
  bool tate_image = false;

  std::string flags() const {
    std::string out;
    if (indeterminate) out += " [indeterminate]";
    if (ambiguous) out += " [ambiguous]";
    if (tate_image) out += " [tate-image (upper bound)]";
    return out;
  }
  std::string group_text() const { return group_string(orders) + flags(); }
};

inline std::vector<ChartCell> chart_cells(const Page& page) {
  std::map<std::tuple<int64_t, int64_t, int64_t>, ChartCell> acc;
  for (const auto& [k, c] : page.cells) {
    if (!c.in_window) continue;
    auto g = c.group();
    if (g.orders.empty() && c.trusted()) continue;
    ChartCell& cc = acc[{k.q, k.p, k.s}];
    cc.twist = k.q;
    cc.stem = k.p;
    cc.filtration = k.s;
    cc.indeterminate |= !(c.z_ok && c.b_ok);
    cc.ambiguous |= c.ambiguous;
    cc.tate_image |= page.config.model == Model::HFPSS && k.s == 0;
    for (size_t i = 0; i < g.orders.size(); ++i) {
      cc.orders.push_back(g.orders[i]);
      cc.summands.push_back({g.orders[i], k.w});
      cc.generators.push_back(combination_name(c, g.generators[i]));
    }
  }
  std::vector<ChartCell> out;
  for (auto& [key, cc] : acc) {
    std::vector<int64_t> sorted = cc.orders;
    std::stable_sort(sorted.begin(), sorted.end(), [](int64_t x, int64_t y) {
      return (x == 0 ? INT64_MAX : x) < (y == 0 ? INT64_MAX : y);
    });
    cc.orders = sorted;
    out.push_back(std::move(cc));
  }
  return out;
}

inline std::string page_tsv(const Page& page) {
  std::ostringstream os;
  os << "stem\tfiltration\ttwist\tgroup\tgenerators\n";
  for (const auto& c : chart_cells(page)) {
    os << c.stem << '\t' << c.filtration << '\t' << c.twist << '\t' << c.group_text() << '\t';
    for (size_t i = 0; i < c.generators.size(); ++i) os << (i ? "; " : "") << c.generators[i];
    os << '\n';
  }
  return os.str();
}

inline nlohmann::ordered_json log_json(const std::vector<LogEntry>& log) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& e : log) {
    nlohmann::ordered_json j;
    j["page"] = e.page;
    j["source"] = e.source;
    j["target"] = e.target;
    j["matrix_rank"] = e.matrix_rank;
    j["stem"] = e.source_cell.p;
    j["filtration"] = e.source_cell.s;
    j["twist"] = e.source_cell.q;
    j["weight"] = e.source_cell.w;
    j["target_weight"] = e.target_cell.w;
    arr.push_back(j);
  }
  return arr;
}

inline std::string run_json(const RunResult& res) {
  const Page& page = res.final_page;
  nlohmann::ordered_json j;
  j["model"] = model_name(page.config.model);
  j["n"] = page.config.n;
  std::vector<std::string> loc(page.config.localized.begin(), page.config.localized.end());
  j["localized"] = loc;
  const Window& w = page.config.window;
  j["window"] = {{"stems", {w.stem_lo, w.stem_hi}},
                 {"filtrations", {w.filt_lo, w.filt_hi}},
                 {"twists", {w.twist_lo, w.twist_hi}},
                 {"weight_max", w.weight_max}};
  j["r_max"] = page.config.r_max;
  j["page"] = page.r;
  auto line = vanishing_line(page);
  j["vanishing_line"] = line.value;
  j["vanishing_line_flagged"] = line.flagged;
  j["collapse_page"] = collapse_page(res.log);
  auto cells = nlohmann::ordered_json::array();
  for (const auto& c : chart_cells(page)) {
    nlohmann::ordered_json cj;
    cj["stem"] = c.stem;
    cj["filtration"] = c.filtration;
    cj["twist"] = c.twist;
    cj["group"] = group_string(c.orders);
    cj["generators"] = c.generators;
    std::vector<std::string> flags;
    if (c.indeterminate) flags.push_back("indeterminate");
    if (c.ambiguous) flags.push_back("ambiguous");
    if (c.tate_image) flags.push_back("tate-image (upper bound)");
    cj["flags"] = flags;
    cells.push_back(cj);
  }
  j["cells"] = cells;
  j["differentials"] = log_json(res.log);
  return j.dump(2) + "\n";
}

// Hand-written SVG: x = stem, y = filtration, origin lower left, one panel
// per twist. Dots are Z/2^k summands, squares are Z summands.
inline std::string page_svg(const RunResult& res) {
  const Page& page = res.final_page;
  const Window& w = page.config.window;
  const int64_t unit = 24, margin = 40;
  int64_t cols = w.stem_hi - w.stem_lo + 1, rows = w.filt_hi - w.filt_lo + 1;
  int64_t panel_h = rows * unit + 2 * margin;
  int64_t width = cols * unit + 2 * margin;
  int64_t panels = w.twist_hi - w.twist_lo + 1;
  static const char* palette[] = {"#1f4e99", "#c0392b", "#2e8b57", "#8e44ad", "#d35400", "#16a085", "#7f8c8d"};

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << panel_h * panels
     << "\" font-family=\"monospace\" font-size=\"10\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  auto cells = chart_cells(page);
  for (int64_t q = w.twist_lo; q <= w.twist_hi; ++q) {
    int64_t top = (q - w.twist_lo) * panel_h;
    auto X = [&](int64_t stem) { return margin + (stem - w.stem_lo) * unit + unit / 2; };
    auto Y = [&](int64_t filt) { return top + margin + (w.filt_hi - filt) * unit + unit / 2; };
    os << "<g id=\"twist" << q << "\">\n";
    os << "<text x=\"" << margin << "\" y=\"" << top + 20 << "\">" << model_name(page.config.model) << " n=" << page.config.n
       << " twist " << q << " E" << page.r << "</text>\n";
    for (int64_t st = w.stem_lo; st <= w.stem_hi; ++st) {
      os << "<line x1=\"" << X(st) << "\" y1=\"" << Y(w.filt_lo) + unit / 2 << "\" x2=\"" << X(st) << "\" y2=\""
         << Y(w.filt_hi) - unit / 2 << "\" stroke=\"#eeeeee\"/>\n";
      if (st % 4 == 0)
        os << "<text x=\"" << X(st) - 4 << "\" y=\"" << Y(w.filt_lo) + unit << "\">" << st << "</text>\n";
    }
    for (int64_t f = w.filt_lo; f <= w.filt_hi; ++f) {
      os << "<line x1=\"" << X(w.stem_lo) - unit / 2 << "\" y1=\"" << Y(f) << "\" x2=\"" << X(w.stem_hi) + unit / 2
         << "\" y2=\"" << Y(f) << "\" stroke=\"#eeeeee\"/>\n";
      if (f % 2 == 0) os << "<text x=\"" << margin - 24 << "\" y=\"" << Y(f) + 3 << "\">" << f << "</text>\n";
    }
    for (const auto& e : res.log) {
      if (e.source_cell.q != q) continue;
      CellKey s = e.source_cell, t = e.target_cell;
      if (!w.contains(s.q, s.p, s.s, s.w) || !w.contains(t.q, t.p, t.s, t.w)) continue;
      os << "<line class=\"d" << e.page << "\" x1=\"" << X(s.p) << "\" y1=\"" << Y(s.s) << "\" x2=\"" << X(t.p)
         << "\" y2=\"" << Y(t.s) << "\" stroke=\"#999999\" stroke-width=\"1\"><title>d" << e.page << ": " << e.source
         << " -> " << e.target << "</title></line>\n";
    }
    for (const auto& c : cells) {
      if (c.twist != q) continue;
      int64_t n = static_cast<int64_t>(c.summands.size());
      for (int64_t i = 0; i < n; ++i) {
        auto [order, weight] = c.summands[static_cast<size_t>(i)];
        int64_t cx = X(c.stem) + (i - (n - 1) / 2) * 5;
        int64_t cy = Y(c.filtration);
        const char* col = palette[std::min<int64_t>(weight, 6)];
        std::string title = c.generators[static_cast<size_t>(i)];
        if (order == 0)
          os << "<rect x=\"" << cx - 4 << "\" y=\"" << cy - 4 << "\" width=\"8\" height=\"8\" fill=\"" << col
             << "\"><title>" << title << "</title></rect>\n";
        else
          os << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"" << (order == 2 ? 3 : 4) << "\" fill=\"" << col
             << "\"><title>" << title << "</title></circle>\n";
      }
      if (c.indeterminate || c.ambiguous)
        os << "<text x=\"" << X(c.stem) + 5 << "\" y=\"" << Y(c.filtration) - 5 << "\" fill=\"#aa0000\">?</text>\n";
      if (n == 0 && c.indeterminate)
        os << "<circle cx=\"" << X(c.stem) << "\" cy=\"" << Y(c.filtration)
           << "\" r=\"3\" fill=\"none\" stroke=\"#aa0000\"/>\n";
    }
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

inline std::string run_markdown(const RunResult& res) {
  const Page& page = res.final_page;
  std::ostringstream os;
  auto line = vanishing_line(page);
  os << "# " << model_name(page.config.model) << " spectral sequence, n = " << page.config.n << "\n\n";
  os << "- page: E" << page.r << "\n";
  os << "- vanishing line: " << line.value << (line.flagged ? " (indeterminate cells above)" : "") << "\n";
  os << "- collapse page: " << collapse_page(res.log) << "\n";
  os << "- differentials logged: " << res.log.size() << "\n\n";
  os << "| stem | filtration | twist | group | generators |\n|---|---|---|---|---|\n";
  for (const auto& c : chart_cells(page)) {
    os << "| " << c.stem << " | " << c.filtration << " | " << c.twist << " | " << c.group_text() << " | ";
    for (size_t i = 0; i < c.generators.size(); ++i) os << (i ? "; " : "") << c.generators[i];
    os << " |\n";
  }
  return os.str();
}

}  // namespace rbss
