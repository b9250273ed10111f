#include "hmplan/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

// Incremental constrained Delaunay triangulation. Points are inserted
// one by one with Lawson flip legalization; constraint segments are then
// recovered by flipping away crossing edges (Sloan) and re-legalizing
// the leftovers. The three super-triangle vertices are kept far away and
// handled symbolically in the flip test so hull edges convexify
// correctly. Predicates carry an epsilon guard of 1e-12 on coordinates
// rescaled to the unit bounding box; cocircular ties flip toward the
// diagonal incident to the lowest vertex index.

namespace hmplan {

namespace {

constexpr double kEps = 1e-12;
constexpr double kGhost = 1e8;

struct Tri {
    std::array<int, 3> v; // CCW
    std::array<int, 3> n; // n[k] across edge (v[k+1], v[k+2]), -1 if open
};

class Triangulator {
public:
    explicit Triangulator(const Eigen::MatrixX2d& points) {
        nreal_ = static_cast<int>(points.rows());
        if (nreal_ < 3)
            throw std::invalid_argument("constrained_delaunay: fewer than 3 points");
        const Eigen::Vector2d lo = points.colwise().minCoeff();
        const Eigen::Vector2d hi = points.colwise().maxCoeff();
        const double s = std::max(hi.x() - lo.x(), hi.y() - lo.y());
        if (!(s > 0.0))
            throw std::invalid_argument("constrained_delaunay: degenerate point set");
        pts_.resize(nreal_ + 3);
        for (int i = 0; i < nreal_; ++i)
            pts_[i] = (points.row(i).transpose() - lo) / s;
        pts_[nreal_] = {-kGhost, -kGhost};
        pts_[nreal_ + 1] = {kGhost, -kGhost};
        pts_[nreal_ + 2] = {0.0, kGhost};
        check_duplicates();
        tris_.push_back({{nreal_, nreal_ + 1, nreal_ + 2}, {-1, -1, -1}});
        v2t_.assign(nreal_ + 3, 0);
        for (int i = 0; i < nreal_; ++i) insert_point(i);
    }

    void insert_constraint(int a, int b);

    std::vector<std::array<int, 3>> finite_triangles() const {
        std::vector<std::array<int, 3>> out;
        for (const auto& t : tris_)
            if (t.v[0] < nreal_ && t.v[1] < nreal_ && t.v[2] < nreal_)
                out.push_back(t.v);
        return out;
    }

private:
    bool ghost(int v) const { return v >= nreal_; }

    double orient_val(int a, int b, int c) const {
        const auto &A = pts_[a], &B = pts_[b], &C = pts_[c];
        return (B.x() - A.x()) * (C.y() - A.y()) - (B.y() - A.y()) * (C.x() - A.x());
    }
    int orient_sign(int a, int b, int c) const {
        const double d = orient_val(a, b, c);
        if (d > kEps) return 1;
        if (d < -kEps) return -1;
        return 0;
    }

    // > 0 when d lies strictly inside the circumcircle of CCW (a, b, c);
    // all four must be finite
    double incircle_val(int a, int b, int c, int d) const {
        const auto &A = pts_[a], &B = pts_[b], &C = pts_[c], &D = pts_[d];
        const double ax = A.x() - D.x(), ay = A.y() - D.y();
        const double bx = B.x() - D.x(), by = B.y() - D.y();
        const double cx = C.x() - D.x(), cy = C.y() - D.y();
        const double a2 = ax * ax + ay * ay;
        const double b2 = bx * bx + by * by;
        const double c2 = cx * cx + cy * cy;
        return ax * (by * c2 - b2 * cy) - ay * (bx * c2 - b2 * cx) + a2 * (bx * cy - by * cx);
    }

    void check_duplicates() const {
        std::vector<int> order(nreal_);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int i, int j) {
            if (pts_[i].x() != pts_[j].x()) return pts_[i].x() < pts_[j].x();
            return pts_[i].y() < pts_[j].y();
        });
        for (std::size_t i = 0; i < order.size(); ++i) {
            for (std::size_t j = i + 1; j < order.size(); ++j) {
                if (pts_[order[j]].x() - pts_[order[i]].x() > kEps) break;
                if (std::abs(pts_[order[j]].y() - pts_[order[i]].y()) <= kEps)
                    throw std::invalid_argument("constrained_delaunay: duplicate points");
            }
        }
    }

    int index_of(int t, int v) const {
        for (int k = 0; k < 3; ++k)
            if (tris_[t].v[k] == v) return k;
        throw std::logic_error("cdt: vertex not in triangle");
    }
    int opposite_index(int u, int t) const {
        for (int k = 0; k < 3; ++k)
            if (tris_[u].n[k] == t) return k;
        throw std::logic_error("cdt: broken adjacency");
    }
    void relink(int ext, int from, int to) {
        if (ext >= 0) tris_[ext].n[opposite_index(ext, from)] = to;
    }

    struct Loc {
        int t;
        int kind; // 0 interior, 1 on edge, 2 on vertex
        int edge;
    };

    Loc locate(int p) {
        int t = hint_;
        const int cap = 4 * static_cast<int>(tris_.size()) + 64;
        for (int step = 0; step < cap; ++step) {
            double worst = -kEps;
            int out = -1;
            std::array<double, 3> o;
            for (int k = 0; k < 3; ++k) {
                o[k] = orient_val(tris_[t].v[(k + 1) % 3], tris_[t].v[(k + 2) % 3], p);
                if (o[k] < worst) {
                    worst = o[k];
                    out = k;
                }
            }
            if (out >= 0) {
                const int nt = tris_[t].n[out];
                if (nt < 0) break;
                t = nt;
                continue;
            }
            return classify(t, o);
        }
        // degenerate walk; fall back to a full scan
        for (int tt = 0; tt < static_cast<int>(tris_.size()); ++tt) {
            std::array<double, 3> o;
            bool inside = true;
            for (int k = 0; k < 3; ++k) {
                o[k] = orient_val(tris_[tt].v[(k + 1) % 3], tris_[tt].v[(k + 2) % 3], p);
                if (o[k] < -kEps) inside = false;
            }
            if (inside) return classify(tt, o);
        }
        throw std::logic_error("cdt: point location failed");
    }

    Loc classify(int t, const std::array<double, 3>& o) const {
        int zeros = 0, zedge = -1;
        for (int k = 0; k < 3; ++k)
            if (std::abs(o[k]) <= kEps) {
                ++zeros;
                zedge = k;
            }
        if (zeros == 0) return {t, 0, -1};
        if (zeros == 1) return {t, 1, zedge};
        return {t, 2, -1};
    }

    void insert_point(int p) {
        flip_budget_ = 0;
        const Loc loc = locate(p);
        if (loc.kind == 2) throw std::invalid_argument("constrained_delaunay: duplicate points");
        if (loc.kind == 0)
            split_interior(loc.t, p);
        else
            split_edge(loc.t, loc.edge, p);
    }

    void split_interior(int t, int p) {
        const auto [a, b, c] = tris_[t].v;
        const auto [na, nb, nc] = tris_[t].n; // na across (b,c), nb across (c,a), nc across (a,b)
        const int t1 = static_cast<int>(tris_.size());
        const int t2 = t1 + 1;
        tris_[t] = {{a, b, p}, {t1, t2, nc}};
        tris_.push_back({{b, c, p}, {t2, t, na}});
        tris_.push_back({{c, a, p}, {t, t1, nb}});
        relink(na, t, t1);
        relink(nb, t, t2);
        v2t_[a] = t;
        v2t_[b] = t;
        v2t_[c] = t1;
        v2t_[p] = t;
        hint_ = t;
        legalize(t, 2);
        legalize(t1, 2);
        legalize(t2, 2);
    }

    void split_edge(int t, int k, int p) {
        const int u = tris_[t].n[k];
        const int r = tris_[t].v[k];
        const int u1 = tris_[t].v[(k + 1) % 3];
        const int u2 = tris_[t].v[(k + 2) % 3];
        const int et1 = tris_[t].n[(k + 1) % 3]; // across (u2, r)
        const int et2 = tris_[t].n[(k + 2) % 3]; // across (r, u1)
        if (u < 0) {
            // open edge (cannot occur inside the super triangle); split t only
            const int tb = static_cast<int>(tris_.size());
            tris_[t] = {{r, u1, p}, {-1, tb, et2}};
            tris_.push_back({{r, p, u2}, {-1, et1, t}});
            relink(et1, t, tb);
            v2t_[r] = t;
            v2t_[u1] = t;
            v2t_[u2] = tb;
            v2t_[p] = t;
            hint_ = t;
            legalize(t, 2);
            legalize(tb, 1);
            return;
        }
        const int j = opposite_index(u, t);
        const int s = tris_[u].v[j];
        // u = (s, u2, u1) up to rotation: v[(j+1)%3] == u2, v[(j+2)%3] == u1
        const int eu1 = tris_[u].n[(j + 1) % 3]; // across (u1, s)
        const int eu2 = tris_[u].n[(j + 2) % 3]; // across (s, u2)
        const int tb = static_cast<int>(tris_.size()); // becomes (r, p, u2)
        const int ud = tb + 1;                         // becomes (s, u2, p)
        tris_[t] = {{r, u1, p}, {u, tb, et2}};
        tris_.push_back({{r, p, u2}, {ud, et1, t}});
        tris_[u] = {{s, p, u1}, {t, eu1, ud}};
        tris_.push_back({{s, u2, p}, {tb, u, eu2}});
        relink(et1, t, tb);
        relink(eu2, u, ud);
        v2t_[r] = t;
        v2t_[u1] = t;
        v2t_[u2] = tb;
        v2t_[s] = u;
        v2t_[p] = t;
        hint_ = t;
        legalize(t, 2);  // (r, u1)
        legalize(tb, 1); // (u2, r)
        legalize(u, 1);  // (u1, s)
        legalize(ud, 2); // (s, u2)
    }

    bool is_constrained(int a, int b) const {
        return constrained_.count({std::min(a, b), std::max(a, b)}) != 0;
    }

    // should the edge (p, q) with apexes r (this side) and s (far side)
    // be flipped to (r, s)?
    bool should_flip(int p, int q, int r, int s) const {
        if (ghost(r) || ghost(s)) return false;
        const bool gp = ghost(p), gq = ghost(q);
        if (gp && gq) return false;
        if (gp || gq) {
            // circumdisk through the finite endpoint, r, and infinity
            // toward the ghost degenerates to a half-plane: s is inside
            // iff it sits on the ghost's side of the finite pair
            const int g = gp ? p : q;
            const int f = gp ? q : p;
            const int os = orient_sign(f, r, s);
            if (os == 0) return false;
            return (os > 0) == (orient_val(f, r, g) > 0);
        }
        const double det = incircle_val(r, p, q, s);
        if (det > kEps) return true;
        if (det < -kEps) return false;
        // cocircular: prefer the diagonal incident to the lowest index
        return std::minmax(r, s) < std::minmax(p, q);
    }

    void legalize(int t, int i) {
        if (++flip_budget_ > 64 * static_cast<long>(tris_.size()) + 4096)
            throw std::runtime_error("cdt: flip budget exceeded (degenerate input?)");
        const int u = tris_[t].n[i];
        if (u < 0) return;
        const int p = tris_[t].v[(i + 1) % 3];
        const int q = tris_[t].v[(i + 2) % 3];
        if (is_constrained(p, q)) return;
        const int j = opposite_index(u, t);
        const int r = tris_[t].v[i];
        const int s = tris_[u].v[j];
        if (!should_flip(p, q, r, s)) return;
        flip(t, i);
        // the two quad edges not incident to r become suspect
        legalize(t, index_of(t, r));
        legalize(u, index_of(u, r));
    }

    // flips the edge opposite tris_[t].v[i]; afterwards slot t holds
    // (r, p, s) and slot u holds (s, q, r)
    void flip(int t, int i) {
        const int u = tris_[t].n[i];
        const int j = opposite_index(u, t);
        const int r = tris_[t].v[i], s = tris_[u].v[j];
        const int p = tris_[t].v[(i + 1) % 3], q = tris_[t].v[(i + 2) % 3];
        const int B = tris_[t].n[(i + 1) % 3]; // across (q, r)
        const int C = tris_[t].n[(i + 2) % 3]; // across (r, p)
        const int D = tris_[u].n[(j + 1) % 3]; // across (p, s)
        const int E = tris_[u].n[(j + 2) % 3]; // across (s, q)
        tris_[t] = {{r, p, s}, {D, u, C}};
        tris_[u] = {{s, q, r}, {B, t, E}};
        relink(D, u, t);
        relink(B, t, u);
        v2t_[p] = t;
        v2t_[q] = u;
        v2t_[r] = t;
        v2t_[s] = u;
    }

    // circulates around vertex a; returns (triangle, index of the vertex
    // opposite edge (a, b)) or {-1, -1} if (a, b) is not an edge
    std::pair<int, int> find_edge(int a, int b) const {
        const int t0 = v2t_[a];
        int t = t0;
        do {
            const int i = index_of(t, a);
            const int x = tris_[t].v[(i + 1) % 3];
            const int y = tris_[t].v[(i + 2) % 3];
            if (x == b) return {t, (i + 2) % 3};
            if (y == b) return {t, (i + 1) % 3};
            t = tris_[t].n[(i + 1) % 3];
        } while (t != t0 && t >= 0);
        return {-1, -1};
    }

    bool segments_cross(int a, int b, int x, int y) const {
        const int o1 = orient_sign(a, b, x), o2 = orient_sign(a, b, y);
        const int o3 = orient_sign(x, y, a), o4 = orient_sign(x, y, b);
        return o1 * o2 < 0 && o3 * o4 < 0;
    }

    std::vector<Eigen::Vector2d> pts_;
    std::vector<Tri> tris_;
    std::vector<int> v2t_;
    std::set<std::pair<int, int>> constrained_;
    int nreal_ = 0;
    int hint_ = 0;
    long flip_budget_ = 0;
};

void Triangulator::insert_constraint(int a, int b) {
    if (a == b) throw std::invalid_argument("constrained_delaunay: zero-length constraint");
    flip_budget_ = 0;
    if (auto [t0, i0] = find_edge(a, b); t0 >= 0) {
        constrained_.insert({std::min(a, b), std::max(a, b)});
        return;
    }

    // walk the wedge fan around a to find the first crossed edge, or a
    // vertex lying on the segment (split the constraint there)
    int rv = -1, lv = -1;
    {
        const int t0 = v2t_[a];
        int t = t0;
        do {
            const int i = index_of(t, a);
            const int x = tris_[t].v[(i + 1) % 3];
            const int y = tris_[t].v[(i + 2) % 3];
            if (!ghost(x) && orient_sign(a, x, b) == 0 &&
                (pts_[x] - pts_[a]).dot(pts_[b] - pts_[a]) > 0) {
                insert_constraint(a, x);
                insert_constraint(x, b);
                return;
            }
            if (orient_sign(a, x, b) > 0 && orient_sign(a, y, b) < 0) {
                rv = x; // right of a->b
                lv = y; // left of a->b
                break;
            }
            t = tris_[t].n[(i + 1) % 3];
        } while (t != t0 && t >= 0);
        if (rv < 0) throw std::logic_error("cdt: constraint wedge not found");
    }

    // march toward b collecting crossed edges
    std::deque<std::array<int, 2>> crossing;
    const std::size_t march_cap = tris_.size() + 16;
    for (std::size_t step = 0;; ++step) {
        if (step > march_cap) throw std::logic_error("cdt: constraint march failed");
        if (is_constrained(rv, lv))
            throw std::invalid_argument("constrained_delaunay: crossing constraints");
        crossing.push_back({rv, lv});
        const auto [t, i] = find_edge(rv, lv);
        // the far triangle across (rv, lv) is the one whose apex lies on
        // the opposite side from a
        const int near_apex = tris_[t].v[i];
        const int nbr = tris_[t].n[i];
        if (nbr < 0) throw std::logic_error("cdt: constraint march left the hull");
        int w;
        if (orient_sign(rv, lv, near_apex) == orient_sign(rv, lv, a))
            w = tris_[nbr].v[opposite_index(nbr, t)];
        else
            w = near_apex;
        if (w == b) break;
        const int ow = orient_sign(a, b, w);
        if (ow == 0 && !ghost(w) && (pts_[w] - pts_[a]).dot(pts_[b] - pts_[a]) > 0) {
            // vertex on the segment: recover the two halves instead
            insert_constraint(a, w);
            insert_constraint(w, b);
            return;
        }
        if (ow < 0)
            rv = w;
        else
            lv = w;
    }

    // flip crossing edges away; re-queue flips whose new diagonal still
    // crosses the segment
    std::vector<std::array<int, 2>> fresh;
    std::size_t flips_left = 1000 + 200 * crossing.size() * (crossing.size() + 1);
    while (!crossing.empty()) {
        if (flips_left-- == 0)
            throw std::runtime_error("cdt: constraint recovery stalled");
        const auto [x, y] = crossing.front();
        crossing.pop_front();
        const auto [t, i] = find_edge(x, y);
        if (t < 0) continue; // already flipped away
        const int u = tris_[t].n[i];
        const int j = opposite_index(u, t);
        const int r = tris_[t].v[i];
        const int s = tris_[u].v[j];
        // flippable only if the quad is strictly convex
        if (orient_sign(r, s, x) * orient_sign(r, s, y) >= 0) {
            crossing.push_back({x, y});
            continue;
        }
        flip(t, i);
        if (segments_cross(a, b, r, s))
            crossing.push_back({std::min(r, s), std::max(r, s)});
        else
            fresh.push_back({r, s});
    }

    constrained_.insert({std::min(a, b), std::max(a, b)});

    // restore the Delaunay property on the leftover new edges
    for (const auto& [x, y] : fresh) {
        if (std::min(x, y) == std::min(a, b) && std::max(x, y) == std::max(a, b)) continue;
        const auto [t, i] = find_edge(x, y);
        if (t < 0) continue;
        flip_budget_ = 0;
        legalize(t, i);
    }
}

} // namespace

namespace detail {

// shared with geometry.cpp
TriMesh build_trimesh(const Eigen::MatrixX2d& vertices,
                      const std::vector<std::array<int, 3>>& triangles, double scale,
                      const Eigen::Vector2d& offset, bool drop_isolated);

std::vector<std::array<int, 3>> triangulate_with_constraints(
    const Eigen::MatrixX2d& points, const std::vector<std::array<int, 2>>& segments) {
    Triangulator tr(points);
    for (const auto& s : segments) tr.insert_constraint(s[0], s[1]);
    return tr.finite_triangles();
}

} // namespace detail

TriMesh constrained_delaunay(const Eigen::MatrixX2d& points,
                             const std::vector<std::array<int, 2>>& segments) {
    const int n = static_cast<int>(points.rows());
    for (const auto& s : segments) {
        if (s[0] < 0 || s[0] >= n || s[1] < 0 || s[1] >= n || s[0] == s[1])
            throw std::invalid_argument("constrained_delaunay: bad segment endpoints");
    }
    const auto tris = detail::triangulate_with_constraints(points, segments);
    if (tris.empty())
        throw std::invalid_argument("constrained_delaunay: fewer than 3 non-collinear points");
    return detail::build_trimesh(points, tris, 1.0, Eigen::Vector2d::Zero(), false);
}

} // namespace hmplan
