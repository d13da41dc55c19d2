#pragma once

// SVG rendering of the stable-norm unit ball: the sector arc of sphere
// points, its twelve symmetry images, and mu+/- tangent stubs at the
// corners. Rendering runs on enclosure midpoints; no certified arithmetic
// is needed for a picture.

#include <cmath>
#include <cstddef>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mnorm/fock.hpp"
#include "mnorm/norm.hpp"

namespace mnorm {

inline std::size_t write_ball_svg(const std::string& path, long long q_bound,
                                  int precision_bits = 96) {
  if (q_bound < 1) throw std::invalid_argument("ball-svg needs a positive bound");
  auto pairs = detail::sector_pairs_by_fraction(q_bound);
  std::vector<std::pair<double, double>> arc;
  arc.reserve(pairs.size());
  for (const CoprimePair& v : pairs) {
    SpherePoint sp = sphere_point(v, precision_bits);
    arc.emplace_back(sp.x.midpoint_double(), sp.y.midpoint_double());
  }

  const double size = 760.0, margin = 20.0, extent = 0.56;
  auto X = [&](double x) { return margin + (x + extent) / (2 * extent) * size; };
  auto Y = [&](double y) { return margin + (extent - y) / (2 * extent) * size; };

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write SVG: " + path);
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
      << "width=\"800\" height=\"800\" viewBox=\"0 0 800 800\">\n"
      << "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";
  // axes
  out << "<line x1=\"" << X(-extent) << "\" y1=\"" << Y(0) << "\" x2=\"" << X(extent)
      << "\" y2=\"" << Y(0) << "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n"
      << "<line x1=\"" << X(0) << "\" y1=\"" << Y(-extent) << "\" x2=\"" << X(0)
      << "\" y2=\"" << Y(extent) << "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";

  for (const auto& g : norm_symmetries()) {
    out << "<polyline fill=\"none\" stroke=\"#1d3557\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : arc) {
      double gx = g[0] * x + g[1] * y;
      double gy = g[2] * x + g[3] * y;
      out << X(gx) << ',' << Y(gy) << ' ';
    }
    out << "\"/>\n";
  }

  // tangent stubs at the sector corners
  const double stub = 0.016;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    CornerSlopes cs = corner_slopes(pairs[i], precision_bits);
    for (const auto& mu : {cs.mu_minus, cs.mu_plus}) {
      if (!mu) continue;
      double m = mu->midpoint_double();
      double nrm = std::sqrt(1.0 + m * m);
      double dx = stub / nrm, dy = m * stub / nrm;
      const auto& [x, y] = arc[i];
      out << "<line x1=\"" << X(x - dx) << "\" y1=\"" << Y(y - dy) << "\" x2=\""
          << X(x + dx) << "\" y2=\"" << Y(y + dy)
          << "\" stroke=\"#e63946\" stroke-width=\"1\"/>\n";
    }
  }
  out << "</svg>\n";
  return arc.size();
}

}  // namespace mnorm
