#include "gslab/cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace gslab::cli {

namespace {

constexpr double kWidth = 640, kHeight = 420;
constexpr double kLeft = 70, kRight = 150, kTop = 40, kBottom = 50;
constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

struct Axis {
  double lo = 0, hi = 1;
  bool log = false;

  double map(double v) const {
    const double t = log ? (std::log10(v) - lo) / (hi - lo) : (v - lo) / (hi - lo);
    return t;
  }
  std::vector<double> ticks() const {
    std::vector<double> out;
    if (log) {
      const int a = static_cast<int>(std::ceil(lo)), b = static_cast<int>(std::floor(hi));
      const int stride = std::max(1, (b - a) / 6 + 1);
      for (int k = a; k <= b; k += stride) out.push_back(std::pow(10.0, k));
      return out;
    }
    const double span = hi - lo;
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0})
      if (m * mag >= raw) {
        step = m * mag;
        break;
      }
    for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * span; t += step)
      out.push_back(std::abs(t) < 1e-12 * span ? 0.0 : t);
    return out;
  }
};

Axis make_axis(std::vector<double> values, bool log) {
  Axis a;
  a.log = log;
  if (log) {
    for (double& v : values) v = std::log10(v);
  }
  if (values.empty()) return a;
  const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
  a.lo = *mn;
  a.hi = *mx;
  if (a.hi - a.lo < 1e-300 + 1e-12 * std::abs(a.hi)) {
    a.lo -= 0.5;
    a.hi += 0.5;
  } else if (!log) {
    const double pad = 0.05 * (a.hi - a.lo);
    a.lo -= pad;
    a.hi += pad;
  }
  return a;
}

bool usable(double v, bool log) { return std::isfinite(v) && (!log || v > 0.0); }

}  // namespace

std::string line_plot(const PlotSpec& spec, const std::vector<Series>& series) {
  auto yv = [&](double y) { return spec.log_y ? std::abs(y) : y; };
  std::vector<double> xs, ys;
  for (const auto& s : series)
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i)
      if (usable(s.x[i], spec.log_x) && usable(yv(s.y[i]), spec.log_y)) {
        xs.push_back(s.x[i]);
        ys.push_back(yv(s.y[i]));
      }
  if (spec.zero_line && !spec.log_y) ys.push_back(0.0);
  const Axis ax = make_axis(xs, spec.log_x), ay = make_axis(ys, spec.log_y);

  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + ax.map(x) * pw; };
  auto py = [&](double y) { return kTop + (1.0 - ay.map(y)) * ph; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << fixed(kLeft + pw / 2) << "\" y=\"20\" text-anchor=\"middle\" font-size=\"13\">"
     << escape(spec.title) << "</text>\n";
  os << "<rect x=\"" << fixed(kLeft) << "\" y=\"" << fixed(kTop) << "\" width=\"" << fixed(pw) << "\" height=\""
     << fixed(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (double t : ax.ticks()) {
    const double x = px(t);
    os << "<line x1=\"" << fixed(x) << "\" y1=\"" << fixed(kTop + ph) << "\" x2=\"" << fixed(x) << "\" y2=\""
       << fixed(kTop + ph + 5) << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << fixed(x) << "\" y=\"" << fixed(kTop + ph + 18) << "\" text-anchor=\"middle\">"
       << tick_label(t) << "</text>\n";
  }
  for (double t : ay.ticks()) {
    const double y = py(t);
    os << "<line x1=\"" << fixed(kLeft - 5) << "\" y1=\"" << fixed(y) << "\" x2=\"" << fixed(kLeft) << "\" y2=\""
       << fixed(y) << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << fixed(kLeft - 8) << "\" y=\"" << fixed(y + 4) << "\" text-anchor=\"end\">"
       << tick_label(t) << "</text>\n";
  }
  if (spec.zero_line && !spec.log_y && ay.lo < 0.0 && ay.hi > 0.0)
    os << "<line x1=\"" << fixed(kLeft) << "\" y1=\"" << fixed(py(0.0)) << "\" x2=\"" << fixed(kLeft + pw)
       << "\" y2=\"" << fixed(py(0.0)) << "\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n";
  os << "<text x=\"" << fixed(kLeft + pw / 2) << "\" y=\"" << fixed(kHeight - 10) << "\" text-anchor=\"middle\">"
     << escape(spec.x_label) << (spec.log_x ? " (log)" : "") << "</text>\n";
  os << "<text transform=\"translate(16," << fixed(kTop + ph / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
     << escape(spec.y_label) << (spec.log_y ? " (log |.|)" : "") << "</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kColors[k % std::size(kColors)];
    std::ostringstream pts;
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!usable(s.x[i], spec.log_x) || !usable(yv(s.y[i]), spec.log_y)) continue;
      if (s.markers)
        os << "<circle cx=\"" << fixed(px(s.x[i])) << "\" cy=\"" << fixed(py(yv(s.y[i]))) << "\" r=\"3\" fill=\""
           << color << "\"/>\n";
      else
        pts << fixed(px(s.x[i])) << ',' << fixed(py(yv(s.y[i]))) << ' ';
    }
    if (!s.markers) {
      std::string p = pts.str();
      if (!p.empty()) p.pop_back();
      os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"" << p << "\"/>\n";
    }
    const double ly = kTop + 12 + 16 * k;
    os << "<line x1=\"" << fixed(kLeft + pw + 10) << "\" y1=\"" << fixed(ly) << "\" x2=\"" << fixed(kLeft + pw + 30)
       << "\" y2=\"" << fixed(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << fixed(kLeft + pw + 35) << "\" y=\"" << fixed(ly + 4) << "\">" << escape(s.label)
       << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace gslab::cli
