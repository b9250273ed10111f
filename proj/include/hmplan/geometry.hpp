#pragma once

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hmplan {

using Loop = Eigen::MatrixX2d; // one vertex per row

/// Polygonal domain: one simple outer loop (CCW) and zero or more simple,
/// pairwise disjoint holes (CW) strictly inside it. Coordinates are kept
/// normalized to the unit bounding box; scale/offset map back to the
/// input frame: original = normalized * scale + offset.
struct DomainSpec {
    Loop outer;
    std::vector<Loop> holes;
    double scale = 1.0;
    Eigen::Vector2d offset = Eigen::Vector2d::Zero();

    Eigen::Vector2d to_original(const Eigen::Vector2d& p) const { return p * scale + offset; }
    Eigen::Vector2d to_normalized(const Eigen::Vector2d& p) const { return (p - offset) / scale; }

    /// strictly inside the outer loop and outside every hole
    bool contains(const Eigen::Vector2d& p) const;
    /// distance from p to the nearest boundary segment
    double boundary_distance(const Eigen::Vector2d& p) const;
    /// normalized bounding-box diagonal
    double diameter() const;
};

/// Validates loops (simplicity, containment, disjointness), fixes
/// reversed orientations, and normalizes coordinates. Input loops are in
/// the original frame.
DomainSpec make_domain(Loop outer, std::vector<Loop> holes);

/// Parses the line-oriented domain format: `outer n` followed by n `x y`
/// lines, then zero or more `hole n` blocks. Lines starting with '#' are
/// skipped. Throws on parse or topology errors.
DomainSpec load_domain(const std::string& text);

/// Triangle mesh with ordered boundary loops. Triangles are CCW. The
/// boundary loops are listed outer first and traverse with the domain
/// interior on the left, so the outer loop is CCW and hole loops are CW.
struct TriMesh {
    Eigen::MatrixX2d vertices; // normalized coordinates
    Eigen::MatrixX3i triangles;
    std::vector<std::vector<int>> boundary_loops;
    std::vector<std::uint8_t> is_boundary;
    std::vector<std::vector<int>> neighbors; // vertex adjacency, sorted
    double scale = 1.0;
    Eigen::Vector2d offset = Eigen::Vector2d::Zero();

    int vertex_count() const { return static_cast<int>(vertices.rows()); }
    int triangle_count() const { return static_cast<int>(triangles.rows()); }
    Eigen::Vector2d position(int v) const { return vertices.row(v); }
    Eigen::Vector2d original_position(int v) const {
        return position(v) * scale + offset;
    }
};

/// Constrained Delaunay triangulation of a planar point set. Every
/// constraint segment appears as an edge; all other internal edges pass
/// the empty-circumcircle test restricted by visibility. Predicates use
/// an epsilon guard of 1e-12 on coordinates internally rescaled to the
/// unit bounding box; cocircular ties prefer the diagonal incident to the
/// lowest vertex index. Throws on duplicate points, crossing constraints,
/// or fewer than 3 non-collinear points.
TriMesh constrained_delaunay(const Eigen::MatrixX2d& points,
                             const std::vector<std::array<int, 2>>& segments);

/// Dense mesh of a domain with target edge length h (in the input frame):
/// boundary loops resampled at spacing <= h, interior seeded with an
/// axis-aligned grid of spacing h kept clear of the boundary, CDT
/// constrained by the boundary edges, triangles outside the domain or
/// inside a hole removed. Throws if h cannot resolve the boundary.
TriMesh generate_dense_mesh(const DomainSpec& domain, double h);

/// Index of a triangle containing p (boundary-inclusive, lowest triangle
/// index wins ties), or nullopt if p is outside the mesh. p is in the
/// mesh's stored coordinate frame.
std::optional<int> point_location(const TriMesh& mesh, const Eigen::Vector2d& p);

/// Unique undirected edges, each as (lo, hi).
std::vector<std::array<int, 2>> mesh_edges(const TriMesh& mesh);

double mean_edge_length(const TriMesh& mesh);

/// Cumulative arc length along boundary loop `loop`: entry i is the
/// distance from loop vertex 0 to loop vertex i; one extra trailing entry
/// holds the full loop length.
std::vector<double> loop_arclength(const TriMesh& mesh, int loop);

/// Twice the signed area of a loop (positive for CCW).
double signed_area2(const Loop& loop);

} // namespace hmplan
