#include "rangelab/plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace rangelab {

namespace {

struct Bounds {
    double xmin = -1.0, xmax = 1.0, ymin = -1.0, ymax = 1.0;
    void grow(Complex z) {
        xmin = std::min(xmin, z.real());
        xmax = std::max(xmax, z.real());
        ymin = std::min(ymin, z.imag());
        ymax = std::max(ymax, z.imag());
    }
};

}  // namespace

std::vector<Complex> region_boundary_polygon(const ConvexRegion& region) {
    const std::size_t k = region.grid_size();
    std::vector<Complex> poly;
    poly.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = (i + 1) % k;
        const double t1 = region.directions[i], t2 = region.directions[j];
        // Intersection of Re(e^{-i t} z) = h(t) for the two adjacent lines.
        const double det = std::cos(t1) * std::sin(t2) - std::sin(t1) * std::cos(t2);
        if (std::abs(det) < 1e-12) continue;
        const double x = (region.support[i] * std::sin(t2) - region.support[j] * std::sin(t1)) / det;
        const double y = (std::cos(t1) * region.support[j] - std::cos(t2) * region.support[i]) / det;
        poly.emplace_back(x, y);
    }
    return poly;
}

void write_region_csv(const std::string& path, const ConvexRegion& region) {
    std::ofstream out(path);
    require(out.good(), "write_region_csv: cannot open " + path);
    out << "theta,h\n";
    out.precision(17);
    for (std::size_t k = 0; k < region.grid_size(); ++k)
        out << region.directions[k] << "," << region.support[k] << "\n";
}

void write_points_json(const std::string& path, const std::vector<Complex>& points) {
    std::ofstream out(path);
    require(out.good(), "write_points_json: cannot open " + path);
    out.precision(17);
    out << "[";
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (i) out << ",";
        out << "[" << points[i].real() << "," << points[i].imag() << "]";
    }
    out << "]\n";
}

void write_svg(const std::string& path, const PlotScene& scene, int size_px) {
    Bounds b;
    std::vector<Complex> poly;
    if (scene.region) {
        poly = region_boundary_polygon(*scene.region);
        for (const auto& z : poly) b.grow(z);
        for (const auto& z : scene.region->inner_points) b.grow(z);
    }
    for (const auto& z : scene.points) b.grow(z);
    if (scene.ellipse) {
        b.grow(scene.ellipse->center() + 0.5 * scene.ellipse->major_axis());
        b.grow(scene.ellipse->center() - 0.5 * scene.ellipse->major_axis());
        b.grow(scene.ellipse->center() + Complex(0, 0.5 * scene.ellipse->major_axis()));
        b.grow(scene.ellipse->center() - Complex(0, 0.5 * scene.ellipse->major_axis()));
    }
    for (const auto& m : scene.markers) b.grow(m.first);

    const double margin = 0.08 * std::max(b.xmax - b.xmin, b.ymax - b.ymin) + 1e-9;
    b.xmin -= margin;
    b.xmax += margin;
    b.ymin -= margin;
    b.ymax += margin;
    const double span = std::max(b.xmax - b.xmin, b.ymax - b.ymin);
    const double scale = size_px / span;
    const auto px = [&](Complex z) {
        std::ostringstream s;
        s << (z.real() - b.xmin) * scale << "," << (b.ymax - z.imag()) * scale;
        return s.str();
    };

    std::ofstream out(path);
    require(out.good(), "write_svg: cannot open " + path);
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << size_px << "' height='" << size_px
        << "' viewBox='0 0 " << size_px << " " << size_px << "'>\n";
    out << "<rect width='100%' height='100%' fill='white'/>\n";
    // axes
    out << "<line x1='" << (0.0 - b.xmin) * scale << "' y1='0' x2='" << (0.0 - b.xmin) * scale
        << "' y2='" << size_px << "' stroke='#cccccc'/>\n";
    out << "<line x1='0' y1='" << b.ymax * scale << "' x2='" << size_px << "' y2='"
        << b.ymax * scale << "' stroke='#cccccc'/>\n";
    if (!scene.title.empty())
        out << "<text x='8' y='16' font-size='13' fill='#333333'>" << scene.title << "</text>\n";

    if (!poly.empty()) {
        out << "<polygon points='";
        for (const auto& z : poly) out << px(z) << " ";
        out << "' fill='none' stroke='#1f77b4' stroke-width='1.5'/>\n";
    }
    for (const auto& z : scene.points)
        out << "<circle cx='" << (z.real() - b.xmin) * scale << "' cy='"
            << (b.ymax - z.imag()) * scale << "' r='1.2' fill='#2ca02c' fill-opacity='0.5'/>\n";
    if (scene.ellipse) {
        const Ellipse& e = *scene.ellipse;
        const Complex c = e.center();
        const double angle = std::arg(e.focus2 - e.focus1 + Complex(1e-300, 0.0));
        out << "<g transform='translate(" << (c.real() - b.xmin) * scale << ","
            << (b.ymax - c.imag()) * scale << ") rotate(" << -angle * 180.0 / 3.14159265358979
            << ")'>\n";
        out << "<ellipse rx='" << 0.5 * e.major_axis() * scale << "' ry='"
            << 0.5 * e.minor_axis * scale << "' fill='none' stroke='#d62728' stroke-width='1.2'/>\n";
        out << "</g>\n";
        for (const Complex f : {e.focus1, e.focus2})
            out << "<circle cx='" << (f.real() - b.xmin) * scale << "' cy='"
                << (b.ymax - f.imag()) * scale << "' r='2.5' fill='#d62728'/>\n";
    }
    for (const auto& m : scene.markers) {
        const double x = (m.first.real() - b.xmin) * scale;
        const double y = (b.ymax - m.first.imag()) * scale;
        out << "<path d='M" << x - 4 << " " << y << " H" << x + 4 << " M" << x << " " << y - 4
            << " V" << y + 4 << "' stroke='#9467bd' stroke-width='1.5'/>\n";
        out << "<text x='" << x + 5 << "' y='" << y - 5 << "' font-size='11' fill='#9467bd'>"
            << m.second << "</text>\n";
    }
    out << "</svg>\n";
}

}  // namespace rangelab
