#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace gdam::cli {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

struct Box {
  double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;

  /// Smallest box holding every point, grown by `margin` of its extent.
  static Box around(const std::vector<Point2>& pts, double margin = 0.05);
};

using Segment = std::pair<Point2, Point2>;

/// Marching-squares segments of {f = level} on an nx × ny grid over `box`.
std::vector<Segment> contour_segments(const std::function<double(double, double)>& f,
                                      const Box& box, double level, int nx = 120,
                                      int ny = 120);

/// `count` levels at evenly spaced quantiles of f sampled on a grid.
std::vector<double> quantile_levels(const std::function<double(double, double)>& f,
                                    const Box& box, int count, int samples = 60);

/// Static SVG drawing in world coordinates with y pointing up.
class Svg {
 public:
  Svg(const Box& world, int width = 640, int height = 640);

  void polyline(const std::vector<Point2>& pts, const std::string& color,
                double stroke = 1.5, const std::string& dash = "");
  void segments(const std::vector<Segment>& segs, const std::string& color,
                double stroke = 0.8, const std::string& dash = "");
  void circles(const std::vector<Point2>& pts, const std::string& color,
               double radius = 3.0, bool filled = true);
  void squares(const std::vector<Point2>& pts, const std::string& color,
               double side = 8.0);
  /// Legend entry in the top-left corner.
  void legend(const std::string& label, const std::string& color);
  void title(const std::string& text);

  /// Complete document; a generation timestamp comment is added unless
  /// `timestamp` is false.
  std::string str(bool timestamp = true) const;

 private:
  double px(double x) const;
  double py(double y) const;

  Box world_;
  int width_, height_;
  std::string body_;
  std::vector<std::pair<std::string, std::string>> legend_;
  std::string title_;
};

/// Locale-independent shortest round-trip formatting of a double.
std::string fmt(double v);
/// Fixed-point formatting with `digits` decimals.
std::string fixed(double v, int digits);

}  // namespace gdam::cli
