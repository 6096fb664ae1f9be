#include "atomic/svg.hpp"

#include <cmath>
#include <cstdio>

namespace atomic {

std::string svg_number(double v) {
    char buf[64];
    if (std::fabs(v) < 0.005) v = 0.0;  // no "-0.00"
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string xml_escape(std::string_view text) {
    std::string out;
    for (char c : text) {
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

SvgWriter::SvgWriter(double width, double height) : width_(width), height_(height) {}

void SvgWriter::rect(double x, double y, double w, double h, std::string_view fill, std::string_view stroke) {
    body_ += "<rect x=\"" + svg_number(x) + "\" y=\"" + svg_number(y) + "\" width=\"" + svg_number(w) +
             "\" height=\"" + svg_number(h) + "\" fill=\"" + std::string(fill) + "\" stroke=\"" +
             std::string(stroke) + "\"/>\n";
}

void SvgWriter::line(double x1, double y1, double x2, double y2, std::string_view stroke, double width,
                     std::string_view dash) {
    body_ += "<line x1=\"" + svg_number(x1) + "\" y1=\"" + svg_number(y1) + "\" x2=\"" + svg_number(x2) +
             "\" y2=\"" + svg_number(y2) + "\" stroke=\"" + std::string(stroke) + "\" stroke-width=\"" +
             svg_number(width) + "\"";
    if (!dash.empty()) body_ += " stroke-dasharray=\"" + std::string(dash) + "\"";
    body_ += "/>\n";
}

namespace {

std::string point_list(const std::vector<std::pair<double, double>>& pts) {
    std::string out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i > 0) out += ' ';
        out += svg_number(pts[i].first) + "," + svg_number(pts[i].second);
    }
    return out;
}

}  // namespace

void SvgWriter::polyline(const std::vector<std::pair<double, double>>& pts, std::string_view stroke, double width) {
    body_ += "<polyline fill=\"none\" stroke=\"" + std::string(stroke) + "\" stroke-width=\"" + svg_number(width) +
             "\" points=\"" + point_list(pts) + "\"/>\n";
}

void SvgWriter::polygon(const std::vector<std::pair<double, double>>& pts, std::string_view fill, double opacity) {
    body_ += "<polygon fill=\"" + std::string(fill) + "\" fill-opacity=\"" + svg_number(opacity) +
             "\" stroke=\"none\" points=\"" + point_list(pts) + "\"/>\n";
}

void SvgWriter::circle(double cx, double cy, double r, std::string_view fill) {
    body_ += "<circle cx=\"" + svg_number(cx) + "\" cy=\"" + svg_number(cy) + "\" r=\"" + svg_number(r) +
             "\" fill=\"" + std::string(fill) + "\"/>\n";
}

void SvgWriter::text(double x, double y, std::string_view content, double size, std::string_view anchor) {
    body_ += "<text x=\"" + svg_number(x) + "\" y=\"" + svg_number(y) + "\" font-size=\"" + svg_number(size) +
             "\" font-family=\"sans-serif\" text-anchor=\"" + std::string(anchor) + "\">" + xml_escape(content) +
             "</text>\n";
}

std::string SvgWriter::str() const {
    return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
           svg_number(width_) + "\" height=\"" + svg_number(height_) + "\" viewBox=\"0 0 " + svg_number(width_) +
           " " + svg_number(height_) + "\">\n<rect x=\"0\" y=\"0\" width=\"" + svg_number(width_) +
           "\" height=\"" + svg_number(height_) + "\" fill=\"white\"/>\n" + body_ + "</svg>\n";
}

double PlotFrame::px(double x) const {
    const double span = x_max - x_min;
    return left + (span > 0.0 ? (x - x_min) / span : 0.5) * width;
}

double PlotFrame::py(double y) const {
    const double span = y_max - y_min;
    return top + height - (span > 0.0 ? (y - y_min) / span : 0.5) * height;
}

void PlotFrame::draw_axes(SvgWriter& svg, std::string_view title, std::string_view x_label,
                          std::string_view y_label) const {
    svg.rect(left, top, width, height, "none", "black");
    char buf[32];
    for (int i = 0; i <= 4; ++i) {
        const double fx = x_min + (x_max - x_min) * i / 4.0;
        const double fy = y_min + (y_max - y_min) * i / 4.0;
        svg.line(px(fx), top + height, px(fx), top + height + 4, "black");
        std::snprintf(buf, sizeof(buf), "%.3g", fx);
        svg.text(px(fx), top + height + 16, buf, 10, "middle");
        svg.line(left - 4, py(fy), left, py(fy), "black");
        std::snprintf(buf, sizeof(buf), "%.3g", fy);
        svg.text(left - 6, py(fy) + 3, buf, 10, "end");
    }
    svg.text(left + width / 2, top - 8, title, 13, "middle");
    svg.text(left + width / 2, top + height + 32, x_label, 11, "middle");
    svg.text(left - 40, top + height / 2, y_label, 11, "middle");
}

}  // namespace atomic
