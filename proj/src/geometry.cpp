#include "hmplan/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hmplan {

namespace {

constexpr double kEps = 1e-12;

double cross2(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    return a.x() * b.y() - a.y() * b.x();
}

double point_segment_distance(const Eigen::Vector2d& p, const Eigen::Vector2d& a,
                              const Eigen::Vector2d& b) {
    const Eigen::Vector2d d = b - a;
    const double len2 = d.squaredNorm();
    if (len2 <= 0.0) return (p - a).norm();
    const double t = std::clamp((p - a).dot(d) / len2, 0.0, 1.0);
    return (p - (a + t * d)).norm();
}

bool point_in_loop(const Loop& loop, const Eigen::Vector2d& p) {
    // crossing parity against a +x ray
    bool inside = false;
    const int n = static_cast<int>(loop.rows());
    for (int i = 0, j = n - 1; i < n; j = i++) {
        const double xi = loop(i, 0), yi = loop(i, 1);
        const double xj = loop(j, 0), yj = loop(j, 1);
        if ((yi > p.y()) != (yj > p.y())) {
            const double xc = xj + (p.y() - yj) / (yi - yj) * (xi - xj);
            if (p.x() < xc) inside = !inside;
        }
    }
    return inside;
}

bool proper_segment_intersection(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                                 const Eigen::Vector2d& c, const Eigen::Vector2d& d) {
    const double o1 = cross2(b - a, c - a);
    const double o2 = cross2(b - a, d - a);
    const double o3 = cross2(d - c, a - c);
    const double o4 = cross2(d - c, b - c);
    return ((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0)) &&
           std::abs(o1) > kEps && std::abs(o2) > kEps && std::abs(o3) > kEps &&
           std::abs(o4) > kEps;
}

void check_loop_simple(const Loop& loop, const char* what) {
    const int n = static_cast<int>(loop.rows());
    if (n < 3) throw std::invalid_argument(std::string(what) + ": loop needs >= 3 vertices");
    if (!loop.allFinite())
        throw std::invalid_argument(std::string(what) + ": non-finite coordinate");
    for (int i = 0; i < n; ++i) {
        const Eigen::Vector2d a = loop.row(i), b = loop.row((i + 1) % n);
        if ((b - a).norm() <= kEps)
            throw std::invalid_argument(std::string(what) + ": degenerate edge");
        for (int j = i + 1; j < n; ++j) {
            if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
            const Eigen::Vector2d c = loop.row(j), d = loop.row((j + 1) % n);
            if (proper_segment_intersection(a, b, c, d))
                throw std::invalid_argument(std::string(what) + ": self-intersection");
        }
    }
}

void check_loops_disjoint(const Loop& a, const Loop& b, const char* what) {
    const int na = static_cast<int>(a.rows()), nb = static_cast<int>(b.rows());
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < nb; ++j)
            if (proper_segment_intersection(a.row(i), a.row((i + 1) % na), b.row(j),
                                            b.row((j + 1) % nb)))
                throw std::invalid_argument(what);
}

} // namespace

double signed_area2(const Loop& loop) {
    double s = 0.0;
    const int n = static_cast<int>(loop.rows());
    for (int i = 0; i < n; ++i) {
        const Eigen::Vector2d a = loop.row(i), b = loop.row((i + 1) % n);
        s += cross2(a, b);
    }
    return s;
}

bool DomainSpec::contains(const Eigen::Vector2d& p) const {
    if (!point_in_loop(outer, p)) return false;
    for (const auto& h : holes)
        if (point_in_loop(h, p)) return false;
    return true;
}

double DomainSpec::boundary_distance(const Eigen::Vector2d& p) const {
    double best = std::numeric_limits<double>::infinity();
    auto scan = [&](const Loop& loop) {
        const int n = static_cast<int>(loop.rows());
        for (int i = 0; i < n; ++i)
            best = std::min(best,
                            point_segment_distance(p, loop.row(i), loop.row((i + 1) % n)));
    };
    scan(outer);
    for (const auto& h : holes) scan(h);
    return best;
}

double DomainSpec::diameter() const {
    const Eigen::Vector2d lo = outer.colwise().minCoeff();
    const Eigen::Vector2d hi = outer.colwise().maxCoeff();
    return (hi - lo).norm();
}

DomainSpec make_domain(Loop outer, std::vector<Loop> holes) {
    check_loop_simple(outer, "outer loop");
    for (const auto& h : holes) check_loop_simple(h, "hole");

    // fix reversed orientations: outer CCW, holes CW
    if (signed_area2(outer) < 0.0) outer = outer.colwise().reverse().eval();
    for (auto& h : holes)
        if (signed_area2(h) > 0.0) h = h.colwise().reverse().eval();

    for (std::size_t i = 0; i < holes.size(); ++i) {
        check_loops_disjoint(outer, holes[i], "domain: hole crosses the outer loop");
        for (int r = 0; r < holes[i].rows(); ++r)
            if (!point_in_loop(outer, holes[i].row(r)))
                throw std::invalid_argument("domain: hole outside the outer loop");
        for (std::size_t j = i + 1; j < holes.size(); ++j) {
            check_loops_disjoint(holes[i], holes[j], "domain: holes intersect");
            if (point_in_loop(holes[j], holes[i].row(0)) ||
                point_in_loop(holes[i], holes[j].row(0)))
                throw std::invalid_argument("domain: nested holes");
        }
    }

    DomainSpec d;
    const Eigen::Vector2d lo = outer.colwise().minCoeff();
    const Eigen::Vector2d hi = outer.colwise().maxCoeff();
    const double s = std::max(hi.x() - lo.x(), hi.y() - lo.y());
    if (!(s > 0.0)) throw std::invalid_argument("domain: degenerate extent");
    d.scale = s;
    d.offset = lo;
    d.outer = outer;
    d.holes = std::move(holes);
    d.outer.rowwise() -= lo.transpose();
    d.outer /= s;
    for (auto& h : d.holes) {
        h.rowwise() -= lo.transpose();
        h /= s;
    }
    return d;
}

DomainSpec load_domain(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::string> tokens;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] == '#') continue;
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) tokens.push_back(tok);
    }
    std::size_t pos = 0;
    auto next = [&]() -> const std::string& {
        if (pos >= tokens.size()) throw std::invalid_argument("domain file: unexpected end");
        return tokens[pos++];
    };
    auto read_count = [&](const std::string& tok) {
        std::size_t used = 0;
        int n = 0;
        try {
            n = std::stoi(tok, &used);
        } catch (...) {
            throw std::invalid_argument("domain file: bad count '" + tok + "'");
        }
        if (used != tok.size() || n < 3)
            throw std::invalid_argument("domain file: bad count '" + tok + "'");
        return n;
    };
    auto read_xy = [&](Loop& loop, int row) {
        for (int c = 0; c < 2; ++c) {
            const std::string& tok = next();
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(tok, &used);
            } catch (...) {
                throw std::invalid_argument("domain file: bad coordinate '" + tok + "'");
            }
            if (used != tok.size())
                throw std::invalid_argument("domain file: bad coordinate '" + tok + "'");
            loop(row, c) = v;
        }
    };

    if (next() != "outer") throw std::invalid_argument("domain file: expected 'outer'");
    const int n_outer = read_count(next());
    Loop outer(n_outer, 2);
    for (int i = 0; i < n_outer; ++i) read_xy(outer, i);

    std::vector<Loop> holes;
    while (pos < tokens.size()) {
        if (next() != "hole") throw std::invalid_argument("domain file: expected 'hole'");
        const int n = read_count(next());
        Loop h(n, 2);
        for (int i = 0; i < n; ++i) read_xy(h, i);
        holes.push_back(std::move(h));
    }
    return make_domain(std::move(outer), std::move(holes));
}

namespace detail {

TriMesh build_trimesh(const Eigen::MatrixX2d& vertices,
                      const std::vector<std::array<int, 3>>& triangles, double scale,
                      const Eigen::Vector2d& offset, bool drop_isolated) {
    const int nv = static_cast<int>(vertices.rows());

    std::vector<int> remap(nv, -1);
    if (drop_isolated) {
        for (const auto& t : triangles)
            for (int v : t) remap[v] = 0;
        int next = 0;
        for (int v = 0; v < nv; ++v)
            if (remap[v] == 0) remap[v] = next++;
    } else {
        for (int v = 0; v < nv; ++v) remap[v] = v;
    }
    int kept = 0;
    for (int v = 0; v < nv; ++v) kept = std::max(kept, remap[v] + 1);

    TriMesh mesh;
    mesh.scale = scale;
    mesh.offset = offset;
    mesh.vertices.resize(kept, 2);
    for (int v = 0; v < nv; ++v)
        if (remap[v] >= 0) mesh.vertices.row(remap[v]) = vertices.row(v);

    mesh.triangles.resize(static_cast<int>(triangles.size()), 3);
    for (std::size_t t = 0; t < triangles.size(); ++t)
        for (int k = 0; k < 3; ++k) mesh.triangles(static_cast<int>(t), k) = remap[triangles[t][k]];

    // orientation sanity
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const Eigen::Vector2d a = mesh.vertices.row(mesh.triangles(t, 0));
        const Eigen::Vector2d b = mesh.vertices.row(mesh.triangles(t, 1));
        const Eigen::Vector2d c = mesh.vertices.row(mesh.triangles(t, 2));
        if (!(cross2(b - a, c - a) > 0.0))
            throw std::runtime_error("mesh: non-CCW or zero-area triangle");
    }

    // undirected edge incidence
    std::map<std::pair<int, int>, int> edge_count;
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        for (int k = 0; k < 3; ++k) {
            const int u = mesh.triangles(t, k), v = mesh.triangles(t, (k + 1) % 3);
            const auto key = std::minmax(u, v);
            if (++edge_count[key] > 2)
                throw std::runtime_error("mesh: edge shared by more than two triangles");
        }
    }

    // boundary = directed edges whose undirected count is 1; walking them
    // keeps the interior on the left
    std::map<int, int> succ;
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        for (int k = 0; k < 3; ++k) {
            const int u = mesh.triangles(t, k), v = mesh.triangles(t, (k + 1) % 3);
            if (edge_count[std::minmax(u, v)] == 1) {
                if (succ.count(u))
                    throw std::runtime_error("mesh: pinched boundary vertex");
                succ[u] = v;
            }
        }
    }
    mesh.is_boundary.assign(kept, 0);
    std::map<int, int> succ_left = succ;
    std::vector<std::vector<int>> loops;
    while (!succ_left.empty()) {
        const int start = succ_left.begin()->first;
        std::vector<int> loop;
        int cur = start;
        do {
            loop.push_back(cur);
            mesh.is_boundary[cur] = 1;
            const auto it = succ_left.find(cur);
            if (it == succ_left.end()) throw std::runtime_error("mesh: open boundary chain");
            cur = it->second;
            succ_left.erase(it);
        } while (cur != start);
        // canonical start: smallest vertex index
        const auto mn = std::min_element(loop.begin(), loop.end());
        std::rotate(loop.begin(), mn, loop.end());
        loops.push_back(std::move(loop));
    }

    // outer loop (largest enclosed area) first, rest in index order
    auto loop_area = [&](const std::vector<int>& lp) {
        double s = 0.0;
        for (std::size_t i = 0; i < lp.size(); ++i) {
            const Eigen::Vector2d a = mesh.vertices.row(lp[i]);
            const Eigen::Vector2d b = mesh.vertices.row(lp[(i + 1) % lp.size()]);
            s += cross2(a, b);
        }
        return s;
    };
    std::sort(loops.begin(), loops.end(), [&](const auto& a, const auto& b) {
        const double aa = std::abs(loop_area(a)), ab = std::abs(loop_area(b));
        if (aa != ab) return aa > ab;
        return a[0] < b[0];
    });
    if (!loops.empty() && loop_area(loops[0]) < 0.0)
        throw std::runtime_error("mesh: outer boundary loop is not CCW");
    mesh.boundary_loops = std::move(loops);

    // vertex adjacency
    mesh.neighbors.assign(kept, {});
    for (const auto& [key, cnt] : edge_count) {
        mesh.neighbors[key.first].push_back(key.second);
        mesh.neighbors[key.second].push_back(key.first);
    }
    for (auto& nb : mesh.neighbors) std::sort(nb.begin(), nb.end());

    return mesh;
}

std::vector<std::array<int, 3>> triangulate_with_constraints(
    const Eigen::MatrixX2d& points, const std::vector<std::array<int, 2>>& segments);

} // namespace detail

TriMesh generate_dense_mesh(const DomainSpec& domain, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("generate_dense_mesh: h must be positive");
    const double hn = h / domain.scale;
    if (hn >= domain.diameter())
        throw std::invalid_argument(
            "generate_dense_mesh: h too large to resolve the boundary (edge would collapse)");

    std::vector<Eigen::Vector2d> points;
    std::vector<std::array<int, 2>> segments;
    auto resample_loop = [&](const Loop& loop) {
        const int first = static_cast<int>(points.size());
        const int n = static_cast<int>(loop.rows());
        for (int i = 0; i < n; ++i) {
            const Eigen::Vector2d a = loop.row(i), b = loop.row((i + 1) % n);
            const double len = (b - a).norm();
            const int pieces = std::max(1, static_cast<int>(std::ceil(len / hn - 1e-9)));
            for (int t = 0; t < pieces; ++t)
                points.push_back(a + (b - a) * (static_cast<double>(t) / pieces));
        }
        const int count = static_cast<int>(points.size()) - first;
        for (int i = 0; i < count; ++i)
            segments.push_back({first + i, first + (i + 1) % count});
    };
    resample_loop(domain.outer);
    for (const auto& hole : domain.holes) resample_loop(hole);

    // interior grid, kept clear of the boundary so no sliver triangles
    // appear along the constrained edges
    const Eigen::Vector2d lo = domain.outer.colwise().minCoeff();
    const Eigen::Vector2d hi = domain.outer.colwise().maxCoeff();
    const double clearance = 0.45 * hn;
    for (double y = lo.y(); y <= hi.y() + 1e-12; y += hn) {
        for (double x = lo.x(); x <= hi.x() + 1e-12; x += hn) {
            const Eigen::Vector2d p(x, y);
            if (domain.contains(p) && domain.boundary_distance(p) >= clearance)
                points.push_back(p);
        }
    }

    Eigen::MatrixX2d pts(static_cast<int>(points.size()), 2);
    for (std::size_t i = 0; i < points.size(); ++i) pts.row(static_cast<int>(i)) = points[i];

    auto tris = detail::triangulate_with_constraints(pts, segments);

    // cull triangles outside the domain or inside a hole
    std::vector<std::array<int, 3>> kept;
    for (const auto& t : tris) {
        const Eigen::Vector2d centroid =
            (pts.row(t[0]) + pts.row(t[1]) + pts.row(t[2])) / 3.0;
        if (domain.contains(centroid)) kept.push_back(t);
    }
    if (kept.empty()) throw std::runtime_error("generate_dense_mesh: empty mesh after culling");

    // every boundary segment must have survived as an edge
    {
        std::set<std::pair<int, int>> edges;
        for (const auto& t : kept)
            for (int k = 0; k < 3; ++k)
                edges.insert(std::minmax(t[k], t[(k + 1) % 3]));
        for (const auto& s : segments)
            if (!edges.count(std::minmax(s[0], s[1])))
                throw std::runtime_error("generate_dense_mesh: boundary edge lost");
    }

    // connectivity over triangle adjacency
    {
        std::map<std::pair<int, int>, std::vector<int>> by_edge;
        for (std::size_t t = 0; t < kept.size(); ++t)
            for (int k = 0; k < 3; ++k)
                by_edge[std::minmax(kept[t][k], kept[t][(k + 1) % 3])].push_back(
                    static_cast<int>(t));
        std::vector<char> seen(kept.size(), 0);
        std::queue<int> q;
        q.push(0);
        seen[0] = 1;
        std::size_t reached = 1;
        while (!q.empty()) {
            const int t = q.front();
            q.pop();
            for (int k = 0; k < 3; ++k) {
                for (int u : by_edge[std::minmax(kept[t][k], kept[t][(k + 1) % 3])]) {
                    if (!seen[u]) {
                        seen[u] = 1;
                        ++reached;
                        q.push(u);
                    }
                }
            }
        }
        if (reached != kept.size())
            throw std::runtime_error("generate_dense_mesh: mesh is disconnected");
    }

    return detail::build_trimesh(pts, kept, domain.scale, domain.offset, true);
}

std::optional<int> point_location(const TriMesh& mesh, const Eigen::Vector2d& p) {
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const Eigen::Vector2d a = mesh.vertices.row(mesh.triangles(t, 0));
        const Eigen::Vector2d b = mesh.vertices.row(mesh.triangles(t, 1));
        const Eigen::Vector2d c = mesh.vertices.row(mesh.triangles(t, 2));
        if (cross2(b - a, p - a) >= -kEps && cross2(c - b, p - b) >= -kEps &&
            cross2(a - c, p - c) >= -kEps)
            return t;
    }
    return std::nullopt;
}

std::vector<std::array<int, 2>> mesh_edges(const TriMesh& mesh) {
    std::set<std::pair<int, int>> edges;
    for (int t = 0; t < mesh.triangle_count(); ++t)
        for (int k = 0; k < 3; ++k)
            edges.insert(std::minmax(mesh.triangles(t, k), mesh.triangles(t, (k + 1) % 3)));
    std::vector<std::array<int, 2>> out;
    out.reserve(edges.size());
    for (const auto& [u, v] : edges) out.push_back({u, v});
    return out;
}

double mean_edge_length(const TriMesh& mesh) {
    const auto edges = mesh_edges(mesh);
    if (edges.empty()) return 0.0;
    double total = 0.0;
    for (const auto& e : edges) total += (mesh.position(e[0]) - mesh.position(e[1])).norm();
    return total / static_cast<double>(edges.size());
}

std::vector<double> loop_arclength(const TriMesh& mesh, int loop) {
    const auto& lp = mesh.boundary_loops.at(loop);
    std::vector<double> s(lp.size() + 1, 0.0);
    for (std::size_t i = 0; i < lp.size(); ++i) {
        const Eigen::Vector2d a = mesh.position(lp[i]);
        const Eigen::Vector2d b = mesh.position(lp[(i + 1) % lp.size()]);
        s[i + 1] = s[i] + (b - a).norm();
    }
    return s;
}

} // namespace hmplan
