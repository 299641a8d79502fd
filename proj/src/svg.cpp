#include "isingloop/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "isingloop/errors.hpp"

namespace isingloop {

namespace {

constexpr double kSize = 400.0;
constexpr double kMargin = 30.0;

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

const char* winding_colour(int w) {
  switch (w) {
    case -2: return "#2c7bb6";
    case -1: return "#abd9e9";
    case 0: return "#ffffbf";
    case 1: return "#fdae61";
    case 2: return "#d7191c";
    default: return "#000000";
  }
}

}  // namespace

std::string winding_label(int winding) {
  return winding > 0 ? "+" + std::to_string(winding) : std::to_string(winding);
}

std::string render_loop_svg(const LoopSamples& samples, const LoopAnnotations& notes) {
  if (samples.points.empty()) throw InvalidArgument("render_loop_svg: no samples");

  // Symmetric square extent around the origin so the origin is always in view.
  double extent = 0.0;
  for (const LoopPoint& p : samples.points) extent = std::max({extent, std::abs(p.x), std::abs(p.y)});
  if (extent == 0.0) extent = 1.0;
  extent *= 1.1;
  const double scale = (kSize - 2.0 * kMargin) / (2.0 * extent);
  const double cx = kSize / 2.0, cy = kSize / 2.0;
  auto sx = [&](double x) { return cx + scale * x; };
  auto sy = [&](double y) { return cy - scale * y; };

  std::ostringstream svg;
  svg.precision(6);
  svg << std::fixed;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kSize
      << "\" height=\"" << kSize << "\" viewBox=\"0 0 " << kSize << ' ' << kSize << "\">\n"
      << "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"5\" refY=\"5\" markerWidth=\"8\""
      << " markerHeight=\"8\" orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 z\" fill=\"#c00\"/></marker></defs>\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!notes.title.empty()) {
    svg << "<title>" << escape(notes.title) << "</title>\n";
  }

  svg << "<g id=\"axes\" stroke=\"#bbb\" stroke-width=\"1\">"
      << "<line x1=\"" << kMargin << "\" y1=\"" << cy << "\" x2=\"" << kSize - kMargin << "\" y2=\"" << cy << "\"/>"
      << "<line x1=\"" << cx << "\" y1=\"" << kMargin << "\" x2=\"" << cx << "\" y2=\"" << kSize - kMargin << "\"/>"
      << "</g>\n";

  svg << "<path id=\"loop\" fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.5\" d=\"";
  for (std::size_t i = 0; i < samples.points.size(); ++i) {
    svg << (i == 0 ? 'M' : 'L') << sx(samples.points[i].x) << ',' << sy(samples.points[i].y) << ' ';
  }
  svg << "Z\"/>\n";

  // Arrowhead at k closest to 0, pointing to the next sample.
  std::size_t i0 = 0;
  for (std::size_t i = 0; i < samples.k_values.size(); ++i) {
    if (std::abs(samples.k_values[i]) < std::abs(samples.k_values[i0])) i0 = i;
  }
  const std::size_t i1 = (i0 + 1) % samples.points.size();
  svg << "<line id=\"direction\" stroke=\"#c00\" stroke-width=\"1.5\" marker-end=\"url(#arrow)\" x1=\""
      << sx(samples.points[i0].x) << "\" y1=\"" << sy(samples.points[i0].y) << "\" x2=\""
      << sx(samples.points[i1].x) << "\" y2=\"" << sy(samples.points[i1].y) << "\"/>\n";

  svg << "<g id=\"origin\" stroke=\"black\" stroke-width=\"1.5\">"
      << "<line x1=\"" << cx - 6 << "\" y1=\"" << cy << "\" x2=\"" << cx + 6 << "\" y2=\"" << cy << "\"/>"
      << "<line x1=\"" << cx << "\" y1=\"" << cy - 6 << "\" x2=\"" << cx << "\" y2=\"" << cy + 6 << "\"/>"
      << "</g>\n";

  if (notes.degenerate || notes.winding) {
    const std::string text = notes.degenerate ? "degenerate" : winding_label(*notes.winding);
    svg << "<text id=\"winding\" x=\"" << kMargin << "\" y=\"" << kMargin - 8
        << "\" font-family=\"sans-serif\" font-size=\"16\">" << text << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string render_phase_svg(const PhaseDiagram& d) {
  const int nx = d.x.steps, ny = d.y.steps;
  const double cell_w = (kSize - 2.0 * kMargin) / nx;
  const double cell_h = (kSize - 2.0 * kMargin) / ny;

  std::ostringstream svg;
  svg.precision(4);
  svg << std::fixed;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kSize
      << "\" height=\"" << kSize << "\" viewBox=\"0 0 " << kSize << ' ' << kSize << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n<g id=\"cells\" stroke=\"none\">\n";
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      const PhaseCell& c = d.at(ix, iy);
      // y grows upwards.
      svg << "<rect x=\"" << kMargin + ix * cell_w << "\" y=\"" << kSize - kMargin - (iy + 1) * cell_h
          << "\" width=\"" << cell_w << "\" height=\"" << cell_h << "\" fill=\""
          << (c.degenerate ? "#808080" : winding_colour(c.winding)) << "\"/>\n";
    }
  }
  svg << "</g>\n";
  svg.precision(3);
  svg << "<text x=\"" << kSize / 2 << "\" y=\"" << kSize - 8 << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
      << to_string(d.x.varied) << " [" << d.x.start << ", " << d.x.end << "]</text>\n"
      << "<text x=\"12\" y=\"" << kSize / 2 << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" transform=\"rotate(-90 12 "
      << kSize / 2 << ")\">" << to_string(d.y.varied) << " [" << d.y.start << ", " << d.y.end << "]</text>\n"
      << "</svg>\n";
  return svg.str();
}

}  // namespace isingloop
