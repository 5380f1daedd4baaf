#include "svg.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <limits>

namespace gdam::cli {

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string fixed(double v, int digits) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, digits);
  return std::string(buf, end);
}

Box Box::around(const std::vector<Point2>& pts, double margin) {
  Box b{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
        std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const auto& p : pts) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) continue;
    b.xmin = std::min(b.xmin, p.x);
    b.xmax = std::max(b.xmax, p.x);
    b.ymin = std::min(b.ymin, p.y);
    b.ymax = std::max(b.ymax, p.y);
  }
  if (!(b.xmin <= b.xmax)) return Box{};
  double wx = b.xmax - b.xmin, wy = b.ymax - b.ymin;
  if (wx <= 0.0) wx = std::max(1.0, std::abs(b.xmin));
  if (wy <= 0.0) wy = std::max(1.0, std::abs(b.ymin));
  return {b.xmin - margin * wx, b.xmax + margin * wx, b.ymin - margin * wy, b.ymax + margin * wy};
}

std::vector<Segment> contour_segments(const std::function<double(double, double)>& f,
                                      const Box& box, double level, int nx, int ny) {
  std::vector<double> v((nx + 1) * (ny + 1));
  const double hx = (box.xmax - box.xmin) / nx, hy = (box.ymax - box.ymin) / ny;
  auto at = [&](int i, int j) -> double& { return v[j * (nx + 1) + i]; };
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i <= nx; ++i) at(i, j) = f(box.xmin + i * hx, box.ymin + j * hy) - level;
  }
  std::vector<Segment> out;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const double c[4] = {at(i, j), at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)};
      if (!std::all_of(c, c + 4, [](double x) { return std::isfinite(x); })) continue;
      const Point2 p[4] = {{box.xmin + i * hx, box.ymin + j * hy},
                           {box.xmin + (i + 1) * hx, box.ymin + j * hy},
                           {box.xmin + (i + 1) * hx, box.ymin + (j + 1) * hy},
                           {box.xmin + i * hx, box.ymin + (j + 1) * hy}};
      // edge e joins corners e and e+1
      Point2 cross[4];
      bool has[4];
      int count = 0;
      for (int e = 0; e < 4; ++e) {
        const int a = e, b = (e + 1) % 4;
        has[e] = (c[a] > 0.0) != (c[b] > 0.0);
        if (!has[e]) continue;
        const double t = c[a] / (c[a] - c[b]);
        cross[e] = {p[a].x + t * (p[b].x - p[a].x), p[a].y + t * (p[b].y - p[a].y)};
        ++count;
      }
      if (count == 2) {
        int e0 = -1, e1 = -1;
        for (int e = 0; e < 4; ++e) {
          if (has[e]) (e0 < 0 ? e0 : e1) = e;
        }
        out.push_back({cross[e0], cross[e1]});
      } else if (count == 4) {
        const double centre = 0.25 * (c[0] + c[1] + c[2] + c[3]);
        if ((centre > 0.0) == (c[0] > 0.0)) {
          out.push_back({cross[0], cross[1]});
          out.push_back({cross[2], cross[3]});
        } else {
          out.push_back({cross[3], cross[0]});
          out.push_back({cross[1], cross[2]});
        }
      }
    }
  }
  return out;
}

std::vector<double> quantile_levels(const std::function<double(double, double)>& f,
                                    const Box& box, int count, int samples) {
  std::vector<double> vals;
  for (int j = 0; j <= samples; ++j) {
    for (int i = 0; i <= samples; ++i) {
      const double z = f(box.xmin + i * (box.xmax - box.xmin) / samples,
                         box.ymin + j * (box.ymax - box.ymin) / samples);
      if (std::isfinite(z)) vals.push_back(z);
    }
  }
  std::vector<double> levels;
  if (vals.empty()) return levels;
  std::sort(vals.begin(), vals.end());
  for (int k = 1; k <= count; ++k) {
    const std::size_t idx = (vals.size() - 1) * k / (count + 1);
    if (levels.empty() || vals[idx] > levels.back()) levels.push_back(vals[idx]);
  }
  return levels;
}

Svg::Svg(const Box& world, int width, int height)
    : world_(world), width_(width), height_(height) {}

double Svg::px(double x) const {
  return 64.0 + (x - world_.xmin) / (world_.xmax - world_.xmin) * (width_ - 104.0);
}

double Svg::py(double y) const {
  return height_ - 40.0 - (y - world_.ymin) / (world_.ymax - world_.ymin) * (height_ - 80.0);
}

static std::string dash_attr(const std::string& dash) {
  return dash.empty() ? "" : " stroke-dasharray=\"" + dash + "\"";
}

void Svg::polyline(const std::vector<Point2>& pts, const std::string& color, double stroke,
                   const std::string& dash) {
  std::string d;
  bool pen = false;
  double lx = 0.0, ly = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& p = pts[i];
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      pen = false;
      continue;
    }
    const double x = px(p.x), y = py(p.y);
    // points closer than half a pixel are not drawn, except the last one
    if (pen && std::hypot(x - lx, y - ly) < 0.5 && i + 1 < pts.size()) continue;
    d += (pen ? " L" : " M") + fixed(x, 2) + "," + fixed(y, 2);
    lx = x;
    ly = y;
    pen = true;
  }
  if (d.empty()) return;
  body_ += "<path d=\"" + d.substr(1) + "\" fill=\"none\" stroke=\"" + color +
           "\" stroke-width=\"" + fixed(stroke, 2) + "\"" + dash_attr(dash) + "/>\n";
}

void Svg::segments(const std::vector<Segment>& segs, const std::string& color, double stroke,
                   const std::string& dash) {
  if (segs.empty()) return;
  std::string d;
  for (const auto& [a, b] : segs) {
    d += " M" + fixed(px(a.x), 2) + "," + fixed(py(a.y), 2) + " L" + fixed(px(b.x), 2) + "," +
         fixed(py(b.y), 2);
  }
  body_ += "<path d=\"" + d.substr(1) + "\" fill=\"none\" stroke=\"" + color +
           "\" stroke-width=\"" + fixed(stroke, 2) + "\"" + dash_attr(dash) + "/>\n";
}

void Svg::circles(const std::vector<Point2>& pts, const std::string& color, double radius,
                  bool filled) {
  body_ += "<g fill=\"" + (filled ? color : std::string("none")) + "\" stroke=\"" + color + "\">\n";
  for (const auto& p : pts) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) continue;
    body_ += "<circle cx=\"" + fixed(px(p.x), 2) + "\" cy=\"" + fixed(py(p.y), 2) + "\" r=\"" +
             fixed(radius, 2) + "\"/>\n";
  }
  body_ += "</g>\n";
}

void Svg::squares(const std::vector<Point2>& pts, const std::string& color, double side) {
  body_ += "<g fill=\"" + color + "\">\n";
  for (const auto& p : pts) {
    body_ += "<rect x=\"" + fixed(px(p.x) - side / 2, 2) + "\" y=\"" + fixed(py(p.y) - side / 2, 2) +
             "\" width=\"" + fixed(side, 2) + "\" height=\"" + fixed(side, 2) + "\"/>\n";
  }
  body_ += "</g>\n";
}

void Svg::legend(const std::string& label, const std::string& color) {
  legend_.emplace_back(label, color);
}

void Svg::title(const std::string& text) { title_ = text; }

static std::string escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += ch;
    }
  }
  return out;
}

static std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string Svg::str(bool timestamp) const {
  std::string s = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  if (timestamp) {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    s += std::string("<!-- generated ") + buf + " -->\n";
  }
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width_) +
       "\" height=\"" + std::to_string(height_) + "\" viewBox=\"0 0 " + std::to_string(width_) +
       " " + std::to_string(height_) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<rect x=\"64\" y=\"40\" width=\"" + std::to_string(width_ - 104) + "\" height=\"" +
       std::to_string(height_ - 80) + "\" fill=\"none\" stroke=\"#888\"/>\n";
  s += body_;
  // axis extents
  s += "<text x=\"64\" y=\"" + std::to_string(height_ - 22) + "\">" + label(world_.xmin) + "</text>\n";
  s += "<text x=\"" + std::to_string(width_ - 40) + "\" y=\"" + std::to_string(height_ - 22) +
       "\" text-anchor=\"end\">" + label(world_.xmax) + "</text>\n";
  s += "<text x=\"60\" y=\"" + std::to_string(height_ - 40) + "\" text-anchor=\"end\">" +
       label(world_.ymin) + "</text>\n";
  s += "<text x=\"60\" y=\"50\" text-anchor=\"end\">" + label(world_.ymax) + "</text>\n";
  if (!title_.empty()) {
    s += "<text x=\"" + std::to_string(width_ / 2) + "\" y=\"24\" text-anchor=\"middle\">" +
         escape(title_) + "</text>\n";
  }
  int row = 0;
  for (const auto& [label, color] : legend_) {
    const int y = 58 + 16 * row++;
    s += "<rect x=\"74\" y=\"" + std::to_string(y - 9) + "\" width=\"10\" height=\"10\" fill=\"" +
         color + "\"/>\n";
    s += "<text x=\"90\" y=\"" + std::to_string(y) + "\">" + escape(label) + "</text>\n";
  }
  s += "</svg>\n";
  return s;
}

}  // namespace gdam::cli
