#include "haptolab/curve.hpp"

#include "haptolab/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

namespace haptolab {

namespace {

double cross(Point o, Point a, Point b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }

double dist(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

Nearest project_onto_segment(Point p, Point a, Point b)
{
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double len2 = dx * dx + dy * dy;
    double t = 0.0;
    if (len2 > 0.0) {
        t = std::clamp(((p.x - a.x) * dx + (p.y - a.y) * dy) / len2, 0.0, 1.0);
    }
    Nearest n;
    n.param = t;
    n.point = {a.x + t * dx, a.y + t * dy};
    n.distance = dist(p, n.point);
    return n;
}

}  // namespace

std::size_t InterfaceCurve::segment_count() const
{
    if (points.size() < 2) {
        return 0;
    }
    return closed ? points.size() : points.size() - 1;
}

double signed_area(const InterfaceCurve& c)
{
    if (!c.closed || c.size() < 3) {
        return 0.0;
    }
    // shifted to the first vertex to limit cancellation
    const Point o = c.points[0];
    double a = 0.0;
    for (std::size_t k = 1; k + 1 < c.size(); ++k) {
        a += cross(o, c.points[k], c.points[k + 1]);
    }
    return 0.5 * a;
}

double curve_length(const InterfaceCurve& c)
{
    double len = 0.0;
    for (std::size_t k = 0; k < c.segment_count(); ++k) {
        len += dist(c.segment_start(k), c.segment_end(k));
    }
    return len;
}

double equivalent_radius(const InterfaceCurve& c) { return std::sqrt(std::abs(signed_area(c)) / std::numbers::pi); }

Point area_centroid(const InterfaceCurve& c)
{
    require(c.closed && c.size() >= 3, "centroid needs a closed curve");
    const Point o = c.points[0];
    double a = 0.0;
    double cx = 0.0;
    double cy = 0.0;
    for (std::size_t k = 1; k + 1 < c.size(); ++k) {
        const Point p = c.points[k];
        const Point q = c.points[k + 1];
        const double w = cross(o, p, q);
        a += w;
        cx += w * (p.x + q.x - 2.0 * o.x);
        cy += w * (p.y + q.y - 2.0 * o.y);
    }
    require(a != 0.0, "centroid of a degenerate curve");
    return {o.x + cx / (3.0 * a), o.y + cy / (3.0 * a)};
}

const InterfaceCurve& LevelCurves::main() const&
{
    if (components.empty()) {
        throw InvalidCurve("level set is empty");
    }
    return components.front();
}

InterfaceCurve LevelCurves::main() &&
{
    if (components.empty()) {
        throw InvalidCurve("level set is empty");
    }
    return std::move(components.front());
}

LevelCurves extract_level_curve(const ScalarField& f, double level)
{
    const Grid& g = f.grid();
    const int nx = g.nx();
    const int ny = g.ny();
    const std::size_t n_horizontal = static_cast<std::size_t>(nx - 1) * ny;
    const std::size_t n_edges = n_horizontal + static_cast<std::size_t>(nx) * (ny - 1);
    auto h_edge = [&](int i, int j) { return static_cast<std::size_t>(j) * (nx - 1) + i; };
    auto v_edge = [&](int i, int j) { return n_horizontal + static_cast<std::size_t>(j) * nx + i; };
    auto above = [&](int i, int j) { return f(i, j) > level; };

    constexpr int kNone = -1;
    std::vector<int> vertex_of_edge(n_edges, kNone);
    std::vector<Point> vertices;
    std::vector<std::array<int, 2>> links;

    auto crossing = [&](std::size_t edge, int ia, int ja, int ib, int jb) {
        int& slot = vertex_of_edge[edge];
        if (slot == kNone) {
            const double fa = f(ia, ja);
            const double fb = f(ib, jb);
            const double t = (level - fa) / (fb - fa);
            const Point a = g.center(ia, ja);
            const Point b = g.center(ib, jb);
            slot = static_cast<int>(vertices.size());
            vertices.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
            links.push_back({kNone, kNone});
        }
        return slot;
    };
    auto connect = [&](int a, int b) {
        for (auto [from, to] : {std::pair{a, b}, std::pair{b, a}}) {
            auto& l = links[from];
            (l[0] == kNone ? l[0] : l[1]) = to;
        }
    };

    for (int j = 0; j + 1 < ny; ++j) {
        for (int i = 0; i + 1 < nx; ++i) {
            const int code = (above(i, j) ? 1 : 0) | (above(i + 1, j) ? 2 : 0) | (above(i + 1, j + 1) ? 4 : 0) |
                             (above(i, j + 1) ? 8 : 0);
            if (code == 0 || code == 15) {
                continue;
            }
            // edges: 0 bottom, 1 right, 2 top, 3 left
            auto edge_vertex = [&](int e) {
                switch (e) {
                case 0:
                    return crossing(h_edge(i, j), i, j, i + 1, j);
                case 1:
                    return crossing(v_edge(i + 1, j), i + 1, j, i + 1, j + 1);
                case 2:
                    return crossing(h_edge(i, j + 1), i, j + 1, i + 1, j + 1);
                default:
                    return crossing(v_edge(i, j), i, j, i, j + 1);
                }
            };
            if (code == 5 || code == 10) {
                const double mean = 0.25 * (f(i, j) + f(i + 1, j) + f(i + 1, j + 1) + f(i, j + 1));
                const bool joins_0_2 = (code == 5) == (mean > level);
                if (joins_0_2) {
                    // corners 1 and 3 are cut off
                    connect(edge_vertex(0), edge_vertex(1));
                    connect(edge_vertex(2), edge_vertex(3));
                } else {
                    connect(edge_vertex(3), edge_vertex(0));
                    connect(edge_vertex(1), edge_vertex(2));
                }
                continue;
            }
            const bool b0 = code & 1;
            const bool b1 = code & 2;
            const bool b2 = code & 4;
            const bool b3 = code & 8;
            std::array<int, 2> hit{};
            int n_hit = 0;
            if (b0 != b1) hit[n_hit++] = 0;
            if (b1 != b2) hit[n_hit++] = 1;
            if (b2 != b3) hit[n_hit++] = 2;
            if (b3 != b0) hit[n_hit++] = 3;
            connect(edge_vertex(hit[0]), edge_vertex(hit[1]));
        }
    }

    LevelCurves out;
    std::vector<char> seen(vertices.size(), 0);
    auto trace = [&](int start) {
        InterfaceCurve c;
        c.level = level;
        int prev = kNone;
        int cur = start;
        while (cur != kNone && !seen[cur]) {
            seen[cur] = 1;
            if (c.points.empty() || dist(c.points.back(), vertices[cur]) > 0.0) {
                c.points.push_back(vertices[cur]);
            }
            const auto& l = links[cur];
            const int next = l[0] != prev ? l[0] : l[1];
            prev = cur;
            cur = next;
        }
        c.closed = cur == start;
        if (c.closed && c.size() > 1 && dist(c.points.front(), c.points.back()) == 0.0) {
            c.points.pop_back();
        }
        if (c.closed && signed_area(c) < 0.0) {
            std::reverse(c.points.begin(), c.points.end());
        }
        out.components.push_back(std::move(c));
    };
    // open chains start at a lattice-boundary vertex of degree one
    for (std::size_t k = 0; k < vertices.size(); ++k) {
        if (!seen[k] && (links[k][0] == kNone || links[k][1] == kNone)) {
            trace(static_cast<int>(k));
        }
    }
    for (std::size_t k = 0; k < vertices.size(); ++k) {
        if (!seen[k]) {
            trace(static_cast<int>(k));
        }
    }
    std::stable_sort(out.components.begin(), out.components.end(),
                     [](const InterfaceCurve& a, const InterfaceCurve& b) { return curve_length(a) > curve_length(b); });
    return out;
}

double point_segment_distance(Point p, Point a, Point b) { return project_onto_segment(p, a, b).distance; }

SegmentIndex::SegmentIndex(const InterfaceCurve& curve) : curve_(&curve)
{
    require(!curve.empty(), "cannot index an empty curve");
    const std::size_t n = std::max<std::size_t>(curve.segment_count(), 1);
    nodes_.reserve(2 * n / 4 + 2);
    build(0, n);
}

int SegmentIndex::build(std::size_t begin, std::size_t end)
{
    const InterfaceCurve& c = *curve_;
    const bool single = c.segment_count() == 0;
    Node node{};
    node.x0 = node.y0 = std::numeric_limits<double>::infinity();
    node.x1 = node.y1 = -std::numeric_limits<double>::infinity();
    for (std::size_t k = begin; k < end; ++k) {
        for (const Point& p : {c.points[k], single ? c.points[k] : c.segment_end(k)}) {
            node.x0 = std::min(node.x0, p.x);
            node.y0 = std::min(node.y0, p.y);
            node.x1 = std::max(node.x1, p.x);
            node.y1 = std::max(node.y1, p.y);
        }
    }
    node.begin = begin;
    node.end = end;
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back(node);
    constexpr std::size_t kLeafSize = 4;
    if (end - begin > kLeafSize) {
        const std::size_t mid = begin + (end - begin) / 2;
        const int left = build(begin, mid);
        const int right = build(mid, end);
        nodes_[id].left = left;
        nodes_[id].right = right;
    }
    return id;
}

Nearest SegmentIndex::nearest(Point p) const
{
    const InterfaceCurve& c = *curve_;
    const bool single = c.segment_count() == 0;
    auto box_distance = [&](const Node& n) {
        const double dx = std::max({n.x0 - p.x, 0.0, p.x - n.x1});
        const double dy = std::max({n.y0 - p.y, 0.0, p.y - n.y1});
        return std::hypot(dx, dy);
    };

    Nearest best;
    best.distance = std::numeric_limits<double>::infinity();
    int stack[128];
    int top = 0;
    stack[top++] = 0;
    while (top > 0) {
        const Node& node = nodes_[stack[--top]];
        if (box_distance(node) > best.distance) {
            continue;
        }
        if (node.left < 0) {
            for (std::size_t k = node.begin; k < node.end; ++k) {
                Nearest n = single ? project_onto_segment(p, c.points[0], c.points[0])
                                   : project_onto_segment(p, c.segment_start(k), c.segment_end(k));
                if (n.distance < best.distance || (n.distance == best.distance && k < best.segment)) {
                    n.segment = k;
                    best = n;
                }
            }
            continue;
        }
        // push the farther child first so the nearer one is searched first
        const double dl = box_distance(nodes_[node.left]);
        const double dr = box_distance(nodes_[node.right]);
        if (dl <= dr) {
            stack[top++] = node.right;
            stack[top++] = node.left;
        } else {
            stack[top++] = node.left;
            stack[top++] = node.right;
        }
    }
    return best;
}

double one_sided_sup_distance(const InterfaceCurve& a, const InterfaceCurve& b, double spacing)
{
    require(!a.empty() && !b.empty(), "curve distance needs nonempty curves");
    const SegmentIndex index(b);
    if (a.segment_count() == 0) {
        return index.distance(a.points[0]);
    }
    if (spacing <= 0.0) {
        spacing = 0.5 * curve_length(a) / static_cast<double>(a.segment_count());
    }
    auto g = [&](std::size_t seg, Point p) {
        return b.segment_count() == 0 ? dist(p, b.points[0]) : point_segment_distance(p, b.segment_start(seg), b.segment_end(seg));
    };

    struct Sample {
        double s;
        double d;
        std::size_t seg;
    };
    struct Interval {
        Point p0;
        Point p1;
        Sample lo;
        Sample hi;
    };
    constexpr double kTol = 1e-13;
    double best = 0.0;
    std::vector<Interval> stack;
    auto bound = [&](const Interval& iv) {
        const double len = iv.hi.s - iv.lo.s;
        const double lipschitz = 0.5 * (iv.lo.d + iv.hi.d + len);
        const double via_lo = std::max(iv.lo.d, g(iv.lo.seg, iv.p1));
        const double via_hi = std::max(g(iv.hi.seg, iv.p0), iv.hi.d);
        return std::min({lipschitz, via_lo, via_hi});
    };

    for (std::size_t k = 0; k < a.segment_count(); ++k) {
        const Point p = a.segment_start(k);
        const Point q = a.segment_end(k);
        const double len = dist(p, q);
        const int n_sub = std::max(1, static_cast<int>(std::ceil(len / spacing)));
        auto at = [&](double s) { return Point{p.x + s / len * (q.x - p.x), p.y + s / len * (q.y - p.y)}; };
        auto sample = [&](double s, Point x) {
            const Nearest n = index.nearest(x);
            best = std::max(best, n.distance);
            return Sample{s, n.distance, n.segment};
        };
        Point prev_point = p;
        Sample prev = sample(0.0, p);
        for (int m = 1; m <= n_sub; ++m) {
            const double s = len * m / n_sub;
            const Point x = m == n_sub ? q : at(s);
            const Sample cur = sample(s, x);
            if (len > 0.0) {
                stack.push_back({prev_point, x, prev, cur});
            }
            prev = cur;
            prev_point = x;
        }
        // refine the intervals of this segment that could beat the current max
        while (!stack.empty()) {
            const Interval iv = stack.back();
            stack.pop_back();
            if (bound(iv) <= best + kTol || iv.hi.s - iv.lo.s < kTol) {
                continue;
            }
            const double sm = 0.5 * (iv.lo.s + iv.hi.s);
            const Point xm{0.5 * (iv.p0.x + iv.p1.x), 0.5 * (iv.p0.y + iv.p1.y)};
            const Sample mid = sample(sm, xm);
            stack.push_back({iv.p0, xm, iv.lo, mid});
            stack.push_back({xm, iv.p1, mid, iv.hi});
        }
    }
    return best;
}

double hausdorff(const InterfaceCurve& a, const InterfaceCurve& b, double spacing)
{
    return std::max(one_sided_sup_distance(a, b, spacing), one_sided_sup_distance(b, a, spacing));
}

int winding_number(const InterfaceCurve& c, Point p)
{
    int w = 0;
    for (std::size_t k = 0; k < c.segment_count(); ++k) {
        const Point a = c.segment_start(k);
        const Point b = c.segment_end(k);
        if (a.y <= p.y) {
            if (b.y > p.y && cross(a, b, p) > 0.0) {
                ++w;
            }
        } else if (b.y <= p.y && cross(a, b, p) < 0.0) {
            --w;
        }
    }
    return w;
}

namespace {

int orientation(Point a, Point b, Point c)
{
    const double v = cross(a, b, c);
    return (v > 0.0) - (v < 0.0);
}

bool on_segment(Point a, Point b, Point p)
{
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

bool segments_intersect(Point p1, Point p2, Point q1, Point q2)
{
    const int o1 = orientation(p1, p2, q1);
    const int o2 = orientation(p1, p2, q2);
    const int o3 = orientation(q1, q2, p1);
    const int o4 = orientation(q1, q2, p2);
    if (o1 != o2 && o3 != o4) {
        return true;
    }
    return (o1 == 0 && on_segment(p1, p2, q1)) || (o2 == 0 && on_segment(p1, p2, q2)) ||
           (o3 == 0 && on_segment(q1, q2, p1)) || (o4 == 0 && on_segment(q1, q2, p2));
}

}  // namespace

void require_simple_closed(const InterfaceCurve& c)
{
    if (!c.closed) {
        throw InvalidCurve("curve is open");
    }
    const std::size_t n = c.size();
    if (n < 3) {
        throw InvalidCurve("closed curve needs at least 3 vertices");
    }
    for (std::size_t k = 0; k < n; ++k) {
        if (dist(c.segment_start(k), c.segment_end(k)) == 0.0) {
            throw InvalidCurve("curve has a zero-length segment");
        }
    }
    struct Box {
        double x0, x1, y0, y1;
    };
    std::vector<Box> box(n);
    for (std::size_t k = 0; k < n; ++k) {
        const Point a = c.segment_start(k);
        const Point b = c.segment_end(k);
        box[k] = {std::min(a.x, b.x), std::max(a.x, b.x), std::min(a.y, b.y), std::max(a.y, b.y)};
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) {
                continue;  // closing neighbours share a vertex
            }
            if (box[i].x1 < box[j].x0 || box[j].x1 < box[i].x0 || box[i].y1 < box[j].y0 || box[j].y1 < box[i].y0) {
                continue;
            }
            if (segments_intersect(c.segment_start(i), c.segment_end(i), c.segment_start(j), c.segment_end(j))) {
                throw InvalidCurve("curve self-intersects");
            }
        }
    }
}

ScalarField signed_distance_field(const InterfaceCurve& c, const Grid& grid)
{
    require_simple_closed(c);
    const SegmentIndex index(c);
    ScalarField out(grid);
    std::vector<std::pair<double, int>> hits;
    for (int j = 0; j < grid.ny(); ++j) {
        const double y = grid.y_center(j);
        // half-open rule: an edge counts when y is in [min y, max y)
        hits.clear();
        for (std::size_t k = 0; k < c.segment_count(); ++k) {
            const Point a = c.segment_start(k);
            const Point b = c.segment_end(k);
            if ((a.y <= y) != (b.y <= y)) {
                const double x = a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y);
                hits.emplace_back(x, a.y <= y ? 1 : -1);
            }
        }
        std::sort(hits.begin(), hits.end());
        int winding = 0;
        std::size_t next = hits.size();
        for (int i = grid.nx() - 1; i >= 0; --i) {
            const double x = grid.x_center(i);
            while (next > 0 && hits[next - 1].first > x) {
                winding += hits[--next].second;
            }
            const double d = index.distance({x, y});
            out(i, j) = winding != 0 ? -d : d;
        }
    }
    return out;
}

}  // namespace haptolab
