#include "mapgrowth/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mapgrowth {

namespace {

struct Pt {
  double x, y;
};

}  // namespace

std::string render_loglog_svg(const std::vector<GrowthSample>& samples, const FitResult& fit,
                              const std::string& title) {
  if (samples.size() < 2) throw std::invalid_argument("render_loglog_svg: need at least 2 samples");

  std::vector<Pt> pts;
  pts.reserve(samples.size());
  for (const GrowthSample& s : samples) {
    if (s.L < 2 || s.count < 1)
      throw std::invalid_argument("render_loglog_svg: samples must have L >= 2, count >= 1");
    pts.push_back({std::log(static_cast<double>(s.L)), log_big(s.count)});
  }

  double xmin = pts[0].x, xmax = pts[0].x, ymin = pts[0].y, ymax = pts[0].y;
  for (const Pt& p : pts) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  if (xmax - xmin < 1e-9) xmax = xmin + 1.0;
  if (ymax - ymin < 1e-9) ymax = ymin + 1.0;

  const double W = 640, H = 480, ml = 70, mr = 20, mt = 40, mb = 50;
  auto sx = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr); };
  auto sy = [&](double y) { return H - mb - (y - ymin) / (ymax - ymin) * (H - mt - mb); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << title
      << "</text>\n";

  // axes
  out << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr << "\" y2=\""
      << H - mb << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << H - mb
      << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << (ml + W - mr) / 2 << "\" y=\"" << H - 12
      << "\" text-anchor=\"middle\" font-size=\"12\">ln L</text>\n";
  out << "<text x=\"18\" y=\"" << (mt + H - mb) / 2
      << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 18 "
      << (mt + H - mb) / 2 << ")\">ln count</text>\n";

  // tick marks at the sampled scales
  for (const Pt& p : pts) {
    out << "<line x1=\"" << sx(p.x) << "\" y1=\"" << H - mb << "\" x2=\"" << sx(p.x) << "\" y2=\""
        << H - mb + 5 << "\" stroke=\"black\"/>\n";
  }

  // fitted curve: intercept chosen to pass through the mean of the data
  double mean_resid = 0.0;
  auto model_y = [&](double x) {
    double y = fit.r_hat * x;
    if (fit.model == FitModel::power_log) y += fit.gamma_hat * std::log(x);
    return y;
  };
  for (const Pt& p : pts) mean_resid += p.y - model_y(p.x);
  mean_resid /= static_cast<double>(pts.size());
  out << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
  const int kCurvePoints = 64;
  for (int i = 0; i <= kCurvePoints; ++i) {
    const double x = xmin + (xmax - xmin) * i / kCurvePoints;
    out << sx(x) << "," << sy(model_y(x) + mean_resid) << " ";
  }
  out << "\"/>\n";

  for (const Pt& p : pts)
    out << "<circle cx=\"" << sx(p.x) << "\" cy=\"" << sy(p.y)
        << "\" r=\"3.5\" fill=\"#d62728\"/>\n";

  std::ostringstream label;
  label.precision(4);
  label << "fit: " << fit_model_name(fit.model) << ", r_hat=" << fit.r_hat;
  if (fit.model == FitModel::power_log) label << ", gamma_hat=" << fit.gamma_hat;
  out << "<text x=\"" << ml + 10 << "\" y=\"" << mt + 16 << "\" font-size=\"12\">" << label.str()
      << "</text>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace mapgrowth
