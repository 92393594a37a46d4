#include "hedonic/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "hedonic/common.hpp"

namespace hedonic {

namespace {

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(2);
  os << std::fixed << v;
  return os.str();
}

const char* kPalette[] = {"#4878a8", "#e49444", "#5aa469", "#d1605e", "#857aab", "#b0823f"};

}  // namespace

void write_importance_svg(const std::string& path,
                          const std::vector<std::pair<std::string, double>>& gains,
                          const std::vector<std::string>& highlighted,
                          const std::string& title) {
  const std::set<std::string> outline(highlighted.begin(), highlighted.end());
  double max_gain = 0;
  for (const auto& [name, gain] : gains) max_gain = std::max(max_gain, gain);

  const int bar_h = 14, gap = 4, left = 200, top = 40;
  const int plot_w = 560;
  const int height = top + static_cast<int>(gains.size()) * (bar_h + gap) + 20;
  const int width = left + plot_w + 40;

  std::ofstream out(path);
  if (!out) throw FormatError("cannot write SVG to " + path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"sans-serif\">\n";
  out << "<text x=\"" << left << "\" y=\"20\" font-size=\"14\">" << escape_xml(title)
      << "</text>\n";
  out << "<text x=\"" << left << "\" y=\"34\" font-size=\"10\" fill=\"#666\">outlined bars: MLS "
         "numeric features</text>\n";

  int y = top;
  for (const auto& [name, gain] : gains) {
    const double w = max_gain > 0 ? gain / max_gain * plot_w : 0.0;
    out << "<text x=\"" << left - 6 << "\" y=\"" << y + bar_h - 3
        << "\" font-size=\"10\" text-anchor=\"end\">" << escape_xml(name) << "</text>\n";
    out << "<rect x=\"" << left << "\" y=\"" << y << "\" width=\"" << fmt(std::max(w, 0.0))
        << "\" height=\"" << bar_h << "\" fill=\"#4878a8\"";
    if (outline.count(name)) out << " stroke=\"#d1605e\" stroke-width=\"2\"";
    out << "/>\n";
    out << "<text x=\"" << left + w + 4 << "\" y=\"" << y + bar_h - 3 << "\" font-size=\"9\">"
        << format_double(gain) << "</text>\n";
    y += bar_h + gap;
  }
  out << "</svg>\n";
}

void write_report_svg(const std::string& path, const MetricReport& report) {
  // Preserve first-seen order of combinations and models.
  std::vector<std::string> combos, models, targets;
  for (const auto& row : report.rows) {
    if (std::find(combos.begin(), combos.end(), row.combination) == combos.end()) {
      combos.push_back(row.combination);
    }
    if (std::find(models.begin(), models.end(), row.model) == models.end()) {
      models.push_back(row.model);
    }
    if (std::find(targets.begin(), targets.end(), row.target) == targets.end()) {
      targets.push_back(row.target);
    }
  }
  std::sort(combos.begin(), combos.end());
  std::sort(models.begin(), models.end());
  std::sort(targets.begin(), targets.end());

  std::map<std::string, std::map<std::string, std::map<std::string, double>>> r2;
  for (const auto& row : report.rows) r2[row.target][row.combination][row.model] = row.r2;

  const int bar_w = 18, group_gap = 30, left = 60, panel_h = 220, panel_gap = 60;
  const int group_w = static_cast<int>(models.size()) * bar_w + group_gap;
  const int plot_w = static_cast<int>(combos.size()) * group_w;
  const int width = left + plot_w + 160;
  const int height = static_cast<int>(targets.size()) * (panel_h + panel_gap) + 40;

  std::ofstream out(path);
  if (!out) throw FormatError("cannot write SVG to " + path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"sans-serif\">\n";

  int panel_top = 20;
  for (const auto& target : targets) {
    const int base = panel_top + panel_h;
    out << "<text x=\"" << left << "\" y=\"" << panel_top - 4 << "\" font-size=\"13\">test R^2, "
        << escape_xml(target) << "</text>\n";
    out << "<line x1=\"" << left << "\" y1=\"" << base << "\" x2=\"" << left + plot_w << "\" y2=\""
        << base << "\" stroke=\"#333\"/>\n";
    for (std::size_t ci = 0; ci < combos.size(); ++ci) {
      const int gx = left + static_cast<int>(ci) * group_w;
      for (std::size_t mi = 0; mi < models.size(); ++mi) {
        auto t_it = r2.find(target);
        if (t_it == r2.end()) continue;
        auto c_it = t_it->second.find(combos[ci]);
        if (c_it == t_it->second.end()) continue;
        auto m_it = c_it->second.find(models[mi]);
        if (m_it == c_it->second.end()) continue;
        const double v = std::clamp(m_it->second, 0.0, 1.0);
        const double h = v * (panel_h - 30);
        out << "<rect x=\"" << gx + static_cast<int>(mi) * bar_w << "\" y=\"" << fmt(base - h)
            << "\" width=\"" << bar_w - 2 << "\" height=\"" << fmt(h) << "\" fill=\""
            << kPalette[mi % 6] << "\"/>\n";
        out << "<text x=\"" << gx + static_cast<int>(mi) * bar_w << "\" y=\"" << fmt(base - h - 3)
            << "\" font-size=\"8\">" << fmt(m_it->second) << "</text>\n";
      }
      out << "<text x=\"" << gx << "\" y=\"" << base + 12 << "\" font-size=\"9\">"
          << escape_xml(combos[ci]) << "</text>\n";
    }
    // Legend.
    for (std::size_t mi = 0; mi < models.size(); ++mi) {
      const int ly = panel_top + static_cast<int>(mi) * 16;
      out << "<rect x=\"" << left + plot_w + 20 << "\" y=\"" << ly << "\" width=\"12\" height=\"12\" fill=\""
          << kPalette[mi % 6] << "\"/>\n";
      out << "<text x=\"" << left + plot_w + 36 << "\" y=\"" << ly + 10 << "\" font-size=\"10\">"
          << escape_xml(models[mi]) << "</text>\n";
    }
    panel_top += panel_h + panel_gap;
  }
  out << "</svg>\n";
}

}  // namespace hedonic
