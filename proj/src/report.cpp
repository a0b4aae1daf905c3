#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "bssize/app.hpp"
#include "bssize/error.hpp"

namespace bssize {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 500.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 30.0;
constexpr double kTop = 50.0;
constexpr double kBottom = 60.0;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << content;
  out.close();
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace

std::string render_svg(const RunManifest& m) {
  const ExperimentConfig& e = m.config.experiment;
  double x_max = static_cast<double>(e.grid.back());
  const double x_min = 0.0;
  for (const auto& rep : m.replicates) {
    if (rep.result.optimal_n) x_max = std::max(x_max, static_cast<double>(*rep.result.optimal_n));
  }
  x_max *= 1.05;

  constexpr int kSamples = 200;
  const double curve_from = static_cast<double>(e.grid.front());
  auto curve_x = [&](int i) { return curve_from + (x_max - curve_from) * i / (kSamples - 1); };

  double y_min = std::numeric_limits<double>::infinity();
  double y_max = -std::numeric_limits<double>::infinity();
  auto extend = [&](double y) {
    if (std::isfinite(y)) {
      y_min = std::min(y_min, y);
      y_max = std::max(y_max, y);
    }
  };
  for (const auto& rep : m.replicates) {
    for (const auto& p : rep.points) extend(p.total_cost);
    for (int i = 0; i < kSamples; ++i) extend(rep.result.curve.evaluate(curve_x(i)));
  }
  if (!std::isfinite(y_min)) {
    y_min = 0.0;
    y_max = 1.0;
  }
  if (y_max <= y_min) y_max = y_min + 1.0;
  const double pad = 0.05 * (y_max - y_min);
  y_min -= pad;
  y_max += pad;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto sx = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * plot_w; };
  auto sy = [&](double y) { return kTop + (y_max - y) / (y_max - y_min) * plot_h; };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
         num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  std::string title = "Total cost, loss " + std::string(e.loss.name());
  if (e.loss.kind() == LossKind::IntervalQuantile) title += " (rho=" + label(e.loss.rho()) + ")";
  if (e.loss.kind() == LossKind::IntervalCentered) title += " (gamma=" + label(e.loss.gamma()) + ")";
  title += ", a1=" + label(e.prior.beta.a()) + ", b1=" + label(e.prior.beta.b()) +
           ", c=" + label(e.unit_cost);
  svg += "<text x=\"" + num(kWidth / 2) + "\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" + title + "</text>\n";

  // Axes with five ticks each.
  svg += "<g class=\"axes\" stroke=\"black\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kTop + plot_h) + "\" x2=\"" + num(kLeft + plot_w) + "\" y2=\"" + num(kTop + plot_h) + "\"/>\n";
  svg += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kTop) + "\" x2=\"" + num(kLeft) + "\" y2=\"" + num(kTop + plot_h) + "\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double xv = x_min + (x_max - x_min) * i / 5.0;
    const double yv = y_min + (y_max - y_min) * i / 5.0;
    svg += "<line x1=\"" + num(sx(xv)) + "\" y1=\"" + num(kTop + plot_h) + "\" x2=\"" + num(sx(xv)) + "\" y2=\"" + num(kTop + plot_h + 5) + "\"/>\n";
    svg += "<text stroke=\"none\" x=\"" + num(sx(xv)) + "\" y=\"" + num(kTop + plot_h + 18) + "\" text-anchor=\"middle\">" + label(xv) + "</text>\n";
    svg += "<line x1=\"" + num(kLeft - 5) + "\" y1=\"" + num(sy(yv)) + "\" x2=\"" + num(kLeft) + "\" y2=\"" + num(sy(yv)) + "\"/>\n";
    svg += "<text stroke=\"none\" x=\"" + num(kLeft - 8) + "\" y=\"" + num(sy(yv) + 4) + "\" text-anchor=\"end\">" + label(yv) + "</text>\n";
  }
  svg += "<text stroke=\"none\" x=\"" + num(kLeft + plot_w / 2) + "\" y=\"" + num(kHeight - 15) + "\" text-anchor=\"middle\">n</text>\n";
  svg += "<text stroke=\"none\" x=\"20\" y=\"" + num(kTop + plot_h / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 20 " + num(kTop + plot_h / 2) + ")\">tc(n)</text>\n";
  svg += "</g>\n";

  for (std::size_t r = 0; r < m.replicates.size(); ++r) {
    const ReplicateRun& rep = m.replicates[r];
    const std::string color = kPalette[r % std::size(kPalette)];
    const std::string id = std::to_string(rep.index);

    svg += "<g class=\"replicate\" data-replicate=\"" + id + "\">\n";
    for (const auto& p : rep.points) {
      svg += "<circle class=\"point\" cx=\"" + num(sx(p.n)) + "\" cy=\"" + num(sy(p.total_cost)) +
             "\" r=\"2.5\" fill=\"" + color + "\" fill-opacity=\"0.5\"/>\n";
    }
    std::string path;
    for (int i = 0; i < kSamples; ++i) {
      const double y = rep.result.curve.evaluate(curve_x(i));
      if (!std::isfinite(y)) continue;
      path += num(sx(curve_x(i))) + "," + num(sy(y)) + " ";
    }
    svg += "<polyline class=\"fit-curve\" fill=\"none\" stroke=\"" + color +
           "\" stroke-width=\"1.5\" points=\"" + path + "\"/>\n";
    if (rep.result.optimal_n) {
      const double n_o = *rep.result.optimal_n;
      const double x = sx(n_o);
      svg += "<g class=\"optimal-marker\">\n";
      svg += "<line x1=\"" + num(x) + "\" y1=\"" + num(kTop) + "\" x2=\"" + num(x) + "\" y2=\"" +
             num(kTop + plot_h) + "\" stroke=\"" + color + "\" stroke-dasharray=\"4 3\"/>\n";
      svg += "<circle cx=\"" + num(x) + "\" cy=\"" + num(sy(rep.result.curve.evaluate(n_o))) +
             "\" r=\"5\" fill=\"none\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
      svg += "</g>\n";
    }
    const std::string legend =
        "replicate " + id + ": " +
        (rep.result.optimal_n ? "n_o = " + std::to_string(*rep.result.optimal_n)
                              : std::string("not worth sampling"));
    svg += "<text x=\"" + num(kLeft + plot_w - 10) + "\" y=\"" + num(kTop + 16 + 16.0 * r) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" + color +
           "\">" + legend + "</text>\n";
    svg += "</g>\n";
  }
  svg += "</svg>\n";
  return svg;
}

std::vector<std::filesystem::path> emit_report(const RunManifest& manifest,
                                               const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());

  const std::vector<std::filesystem::path> paths{out_dir / "points.csv", out_dir / "result.json",
                                                 out_dir / "curve.svg"};
  write_file(paths[0], points_csv(manifest));
  write_file(paths[1], manifest_to_json(manifest));
  write_file(paths[2], render_svg(manifest));
  return paths;
}

}  // namespace bssize
