#include "ctap/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <vector>

namespace ctap {

namespace {

constexpr double kWidth = 860.0;
constexpr double kHeight = 560.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 660.0;  // legend lives to the right of this
constexpr double kTop = 30.0;
constexpr double kBottom = 510.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
                          "#bcbd22", "#7f7f7f"};
constexpr int kPaletteSize = 10;

std::string num(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.6g", v);
  return buffer;
}

std::ofstream open_svg(const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw ValidationError("cannot write output file: " + path);
  }
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
      << kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  return out;
}

void close_svg(std::ofstream& out) { out << "</svg>\n"; }

void draw_frame(std::ofstream& out, const std::string& x_label,
                const std::string& y_label) {
  out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\""
      << (kRight - kLeft) << "\" height=\"" << (kBottom - kTop)
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<text x=\"" << (kLeft + kRight) / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\" font-size=\"14\">" << x_label << "</text>\n";
  out << "<text x=\"18\" y=\"" << (kTop + kBottom) / 2
      << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 18 "
      << (kTop + kBottom) / 2 << ")\">" << y_label << "</text>\n";
}

void x_tick(std::ofstream& out, double px, const std::string& label) {
  out << "<line x1=\"" << px << "\" y1=\"" << kBottom << "\" x2=\"" << px
      << "\" y2=\"" << kBottom + 6 << "\" stroke=\"black\"/>\n"
      << "<text x=\"" << px << "\" y=\"" << kBottom + 20
      << "\" text-anchor=\"middle\" font-size=\"12\">" << label << "</text>\n";
}

void y_tick(std::ofstream& out, double py, const std::string& label) {
  out << "<line x1=\"" << kLeft - 6 << "\" y1=\"" << py << "\" x2=\"" << kLeft
      << "\" y2=\"" << py << "\" stroke=\"black\"/>\n"
      << "<text x=\"" << kLeft - 9 << "\" y=\"" << py + 4
      << "\" text-anchor=\"end\" font-size=\"12\">" << label << "</text>\n";
}

void polyline(std::ofstream& out, const std::vector<std::pair<double, double>>& pts,
              const char* color, bool dashed = false) {
  if (pts.size() < 2) return;
  out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"";
  if (dashed) out << " stroke-dasharray=\"6 4\"";
  out << " points=\"";
  for (const auto& [x, y] : pts) {
    out << num(x) << ',' << num(y) << ' ';
  }
  out << "\"/>\n";
}

void legend_entry(std::ofstream& out, int slot, const char* color,
                  const std::string& label, bool dashed = false) {
  const double y = kTop + 16 + 20.0 * slot;
  out << "<line x1=\"" << kRight + 14 << "\" y1=\"" << y << "\" x2=\""
      << kRight + 44 << "\" y2=\"" << y << "\" stroke=\"" << color
      << "\" stroke-width=\"2\"";
  if (dashed) out << " stroke-dasharray=\"6 4\"";
  out << "/>\n<text x=\"" << kRight + 50 << "\" y=\"" << y + 4
      << "\" font-size=\"12\">" << label << "</text>\n";
}

}  // namespace

void write_sweep_svg(const std::string& path, const SweepResult& result) {
  double t_min = 0.0, t_max = 1.0;
  double err_floor = 1.0;
  bool have_range = false;
  for (const SweepRecord& r : result.records) {
    if (!have_range) {
      t_min = t_max = r.t_max;
      have_range = true;
    }
    t_min = std::min(t_min, r.t_max);
    t_max = std::max(t_max, r.t_max);
    if (!r.failed && std::isfinite(r.error) && r.error > 0.0) {
      err_floor = std::min(err_floor, r.error);
    }
  }
  if (t_max <= t_min) t_max = t_min + 1.0;
  const double log_floor =
      std::max(-12.0, std::floor(std::log10(std::max(err_floor, 1e-12))));

  auto px = [&](double t) {
    return kLeft + (t - t_min) / (t_max - t_min) * (kRight - kLeft);
  };
  auto py = [&](double error) {
    const double l =
        std::clamp(std::log10(std::max(error, 1e-300)), log_floor, 0.0);
    return kTop + (0.0 - l) / (0.0 - log_floor) * (kBottom - kTop);
  };

  std::ofstream out = open_svg(path);
  draw_frame(out, "t_max (ns)", "transfer error");

  const int decades = static_cast<int>(-log_floor);
  const int decade_step = decades > 8 ? 2 : 1;
  for (int k = 0; k <= decades; k += decade_step) {
    y_tick(out, py(std::pow(10.0, -k)), k == 0 ? "1" : "1e-" + std::to_string(k));
  }
  std::vector<double> x_values;
  for (const SweepRecord& r : result.records) {
    if (std::find(x_values.begin(), x_values.end(), r.t_max) == x_values.end()) {
      x_values.push_back(r.t_max);
    }
  }
  std::sort(x_values.begin(), x_values.end());
  const std::size_t stride = x_values.size() > 12 ? (x_values.size() + 11) / 12 : 1;
  for (std::size_t i = 0; i < x_values.size(); i += stride) {
    x_tick(out, px(x_values[i]), num(x_values[i]));
  }

  // records are gamma-major: consecutive runs share gamma
  std::map<double, std::vector<const SweepRecord*>> by_gamma;
  for (const SweepRecord& r : result.records) {
    by_gamma[r.gamma].push_back(&r);
  }
  int slot = 0;
  for (const auto& [gamma, records] : by_gamma) {
    const char* color = kPalette[slot % kPaletteSize];
    std::vector<std::pair<double, double>> pts;
    for (const SweepRecord* r : records) {
      if (r->failed || !std::isfinite(r->error)) {
        polyline(out, pts, color);
        pts.clear();
        continue;
      }
      pts.emplace_back(px(r->t_max), py(r->error));
    }
    polyline(out, pts, color);
    legend_entry(out, slot, color, "gamma = " + num(gamma));
    ++slot;
  }
  close_svg(out);
}

void write_trajectory_svg(const std::string& path, const Trajectory& trajectory) {
  if (trajectory.times.empty()) {
    throw ValidationError("write_trajectory_svg: empty trajectory");
  }
  const double t_end = trajectory.times.back();
  auto px = [&](double t) {
    return kLeft + (t_end > 0 ? t / t_end : 0.0) * (kRight - kLeft);
  };
  auto py = [&](double value) {
    return kBottom - std::clamp(value, 0.0, 1.05) / 1.05 * (kBottom - kTop);
  };

  std::ofstream out = open_svg(path);
  draw_frame(out, "t (ns)", "population / purity");
  for (int k = 0; k <= 5; ++k) {
    x_tick(out, px(t_end * k / 5.0), num(t_end * k / 5.0));
  }
  for (int k = 0; k <= 4; ++k) {
    y_tick(out, py(0.25 * k), num(0.25 * k));
  }

  const std::size_t n_sites = trajectory.populations.front().size();
  for (std::size_t site = 0; site < n_sites; ++site) {
    const char* color = kPalette[site % kPaletteSize];
    std::vector<std::pair<double, double>> pts;
    pts.reserve(trajectory.times.size());
    for (std::size_t k = 0; k < trajectory.times.size(); ++k) {
      pts.emplace_back(px(trajectory.times[k]),
                       py(trajectory.populations[k][site]));
    }
    polyline(out, pts, color);
    legend_entry(out, static_cast<int>(site), color,
                 "site " + std::to_string(site + 1));
  }
  std::vector<std::pair<double, double>> purity_pts;
  purity_pts.reserve(trajectory.times.size());
  for (std::size_t k = 0; k < trajectory.times.size(); ++k) {
    purity_pts.emplace_back(px(trajectory.times[k]), py(trajectory.purity[k]));
  }
  polyline(out, purity_pts, "#333333", true);
  legend_entry(out, static_cast<int>(n_sites), "#333333", "purity", true);
  close_svg(out);
}

}  // namespace ctap
