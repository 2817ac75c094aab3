#pragma once

#include "haptolab/grid.hpp"

#include <cstddef>
#include <vector>

namespace haptolab {

// Ordered polyline. A closed curve stores each vertex once; the closing
// segment back[n-1] -> [0] is implicit.
struct InterfaceCurve {
    std::vector<Point> points;
    bool closed = true;
    double level = 0.0;

    std::size_t size() const { return points.size(); }
    bool empty() const { return points.empty(); }
    std::size_t segment_count() const;
    Point segment_start(std::size_t k) const { return points[k]; }
    Point segment_end(std::size_t k) const { return points[(k + 1) % points.size()]; }
};

// Shoelace area, positive for counter-clockwise curves.
double signed_area(const InterfaceCurve& c);
double curve_length(const InterfaceCurve& c);
// Radius of the disk with the same enclosed area.
double equivalent_radius(const InterfaceCurve& c);
Point area_centroid(const InterfaceCurve& c);

// Marching squares on the lattice of cell centers with linear interpolation
// along lattice edges; ambiguous saddle cells are resolved by the average of
// the four corners. Closed components are oriented counter-clockwise and
// listed longest first. An empty result means the level set is empty.
struct LevelCurves {
    std::vector<InterfaceCurve> components;

    bool empty() const { return components.empty(); }
    // longest component; throws InvalidCurve when empty. On a temporary the
    // component is moved out, so `extract_level_curve(f, l).main()` is safe.
    const InterfaceCurve& main() const&;
    InterfaceCurve main() &&;
};

LevelCurves extract_level_curve(const ScalarField& f, double level);

struct Nearest {
    double distance = 0.0;
    std::size_t segment = 0;
    double param = 0.0;  // position along the segment in [0, 1]
    Point point;
};

double point_segment_distance(Point p, Point a, Point b);

// Bounding-box tree over the segments of a curve for nearest-point queries.
// Segments are split by index range, which keeps boxes tight because
// consecutive segments of a curve are spatially close. The curve must outlive
// the index.
class SegmentIndex {
public:
    explicit SegmentIndex(const InterfaceCurve& curve);

    Nearest nearest(Point p) const;
    double distance(Point p) const { return nearest(p).distance; }

private:
    struct Node {
        double x0, y0, x1, y1;
        std::size_t begin, end;
        int left = -1;
        int right = -1;
    };
    int build(std::size_t begin, std::size_t end);

    const InterfaceCurve* curve_;
    std::vector<Node> nodes_;
};

// sup over points of `a` of the distance to polyline `b`. Segments of `a` are
// sampled at spacing <= `spacing` (0 picks a spacing from the curve) and the
// maximum is then refined to ~1e-13 absolute: between two samples with the
// same nearest segment the distance is convex, so only intervals where the
// nearest segment changes can hide a larger value.
double one_sided_sup_distance(const InterfaceCurve& a, const InterfaceCurve& b, double spacing = 0.0);
double hausdorff(const InterfaceCurve& a, const InterfaceCurve& b, double spacing = 0.0);

// Winding number of a closed curve around p.
int winding_number(const InterfaceCurve& c, Point p);

// Throws InvalidCurve unless the curve is closed, has >= 3 distinct vertices
// and no two non-adjacent segments intersect.
void require_simple_closed(const InterfaceCurve& c);

// Signed distance to a closed simple curve sampled at the cell centers,
// negative where the winding number is nonzero.
ScalarField signed_distance_field(const InterfaceCurve& c, const Grid& grid);

}  // namespace haptolab
