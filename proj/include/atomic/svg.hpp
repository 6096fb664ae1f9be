#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace atomic {

/// Minimal deterministic SVG builder. Coordinates are written with two
/// decimals so identical input gives identical bytes.
class SvgWriter {
public:
    SvgWriter(double width, double height);

    void rect(double x, double y, double w, double h, std::string_view fill, std::string_view stroke = "none");
    void line(double x1, double y1, double x2, double y2, std::string_view stroke, double width = 1.0,
              std::string_view dash = "");
    void polyline(const std::vector<std::pair<double, double>>& pts, std::string_view stroke, double width = 1.0);
    void polygon(const std::vector<std::pair<double, double>>& pts, std::string_view fill, double opacity = 1.0);
    void circle(double cx, double cy, double r, std::string_view fill);
    void text(double x, double y, std::string_view content, double size = 12.0, std::string_view anchor = "start");

    [[nodiscard]] std::string str() const;

private:
    double width_;
    double height_;
    std::string body_;
};

std::string xml_escape(std::string_view text);

/// Fixed two-decimal rendering used for every coordinate.
std::string svg_number(double v);

/// Rectangle of the figure with a data window mapped onto it.
struct PlotFrame {
    double left = 0.0;
    double top = 0.0;
    double width = 0.0;
    double height = 0.0;
    double x_min = 0.0;
    double x_max = 1.0;
    double y_min = 0.0;
    double y_max = 1.0;

    [[nodiscard]] double px(double x) const;
    [[nodiscard]] double py(double y) const;

    /// Border, five ticks per axis, axis labels and a title.
    void draw_axes(SvgWriter& svg, std::string_view title, std::string_view x_label, std::string_view y_label) const;
};

}  // namespace atomic
