#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rangelab/numerical_range.hpp"

namespace rangelab {

/// Layers composed into one SVG: region boundary (polygon of adjacent
/// support-line intersections), point cloud, ellipse overlay, and marked
/// targets. Any layer may be absent.
struct PlotScene {
    std::optional<ConvexRegion> region;
    std::vector<Complex> points;
    std::optional<Ellipse> ellipse;
    std::vector<std::pair<Complex, std::string>> markers;
    std::string title;
};

void write_region_csv(const std::string& path, const ConvexRegion& region);
void write_points_json(const std::string& path, const std::vector<Complex>& points);
void write_svg(const std::string& path, const PlotScene& scene, int size_px = 640);

/// Vertices of the outer polygon traced by intersecting adjacent support
/// lines; what write_svg draws for a region.
std::vector<Complex> region_boundary_polygon(const ConvexRegion& region);

}  // namespace rangelab
