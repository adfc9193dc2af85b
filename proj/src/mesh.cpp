#include "dfm/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "dfm/errors.hpp"

namespace dfm {

BoundaryLayout BoundaryLayout::all_dirichlet(const Rect& d, double value) {
    BoundaryLayout l;
    l.segments = {{kLeft, d.y0, d.y1, BcKind::Dirichlet, value},
                  {kRight, d.y0, d.y1, BcKind::Dirichlet, value},
                  {kBottom, d.x0, d.x1, BcKind::Dirichlet, value},
                  {kTop, d.x0, d.x1, BcKind::Dirichlet, value}};
    return l;
}

BoundaryLayout BoundaryLayout::all_neumann(const Rect& d, double value) {
    BoundaryLayout l = all_dirichlet(d, value);
    for (auto& s : l.segments) s.kind = BcKind::Neumann;
    return l;
}

Mesh Mesh::build_uniform(int nx, int ny, const Rect& domain) {
    if (nx < 1 || ny < 1)
        throw std::invalid_argument("build_uniform: element counts must be positive");
    if (!(domain.width() > 0.0) || !(domain.height() > 0.0))
        throw std::invalid_argument("build_uniform: degenerate domain rectangle");
    Mesh m;
    m.domain_ = domain;
    const double dx = domain.width() / nx;
    const double dy = domain.height() / ny;
    m.vertices_.reserve(static_cast<std::size_t>(nx + 1) * (ny + 1));
    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i) {
            const double x = i == nx ? domain.x1 : domain.x0 + i * dx;
            const double y = j == ny ? domain.y1 : domain.y0 + j * dy;
            m.vertices_.push_back({x, y});
        }
    auto vid = [nx](int i, int j) { return j * (nx + 1) + i; };
    m.elements_.reserve(static_cast<std::size_t>(nx) * ny);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            MeshElement e;
            e.v[0] = vid(i, j);
            e.v[1] = vid(i + 1, j);
            e.v[2] = vid(i + 1, j + 1);
            e.v[3] = vid(i, j + 1);
            e.level = 0;
            e.box = {m.vertices_[e.v[0]].x, m.vertices_[e.v[0]].y, m.vertices_[e.v[2]].x,
                     m.vertices_[e.v[2]].y};
            m.elements_.push_back(e);
        }
    m.finalize();
    return m;
}

Mesh Mesh::refine(const std::vector<int>& flags) const {
    std::vector<char> mark(elements_.size(), 0);
    for (int f : flags) {
        if (f < 0 || f >= n_elements())
            throw std::invalid_argument("refine: unknown element id " + std::to_string(f));
        mark[f] = 1;
    }
    // Cascade so levels of face-adjacent elements differ by at most one after
    // the refinement.
    bool changed = true;
    while (changed) {
        changed = false;
        for (const MeshFace& f : faces_) {
            if (f.boundary()) continue;
            const int a = f.elem_minus, b = f.elem_plus;
            const int la = elements_[a].level + (mark[a] ? 1 : 0);
            const int lb = elements_[b].level + (mark[b] ? 1 : 0);
            if (la - lb > 1 && !mark[b]) {
                mark[b] = 1;
                changed = true;
            } else if (lb - la > 1 && !mark[a]) {
                mark[a] = 1;
                changed = true;
            }
        }
    }

    Mesh out;
    out.domain_ = domain_;
    out.vertices_ = vertices_;
    std::map<std::pair<double, double>, int> vmap;
    for (int i = 0; i < n_vertices(); ++i) vmap[{vertices_[i].x, vertices_[i].y}] = i;
    auto get_vertex = [&](double x, double y) {
        auto it = vmap.find({x, y});
        if (it != vmap.end()) return it->second;
        const int id = static_cast<int>(out.vertices_.size());
        out.vertices_.push_back({x, y});
        vmap[{x, y}] = id;
        return id;
    };
    for (int e = 0; e < n_elements(); ++e) {
        const MeshElement& old = elements_[e];
        if (!mark[e]) {
            MeshElement c = old;
            c.parent = e;
            out.elements_.push_back(c);
            continue;
        }
        const double x0 = old.box.x0, x1 = old.box.x1;
        const double y0 = old.box.y0, y1 = old.box.y1;
        const double xm = 0.5 * (x0 + x1);
        const double ym = 0.5 * (y0 + y1);
        const double xs[3] = {x0, xm, x1};
        const double ys[3] = {y0, ym, y1};
        // children in SW, SE, NE, NW order
        const int ci[4][2] = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
        for (const auto& c : ci) {
            const int i = c[0], j = c[1];
            MeshElement child;
            child.v[0] = get_vertex(xs[i], ys[j]);
            child.v[1] = get_vertex(xs[i + 1], ys[j]);
            child.v[2] = get_vertex(xs[i + 1], ys[j + 1]);
            child.v[3] = get_vertex(xs[i], ys[j + 1]);
            child.level = old.level + 1;
            child.box = {xs[i], ys[j], xs[i + 1], ys[j + 1]};
            child.parent = e;
            out.elements_.push_back(child);
        }
    }
    out.finalize();
    return out;
}

namespace {

struct SideInterval {
    double lo, hi;
    int elem;
};

// Intervals owned by elements on one side of a mesh line, with lookup by
// containment of a query coordinate.
struct IntervalSet {
    std::vector<SideInterval> iv;
    void sort() {
        std::sort(iv.begin(), iv.end(),
                  [](const SideInterval& a, const SideInterval& b) { return a.lo < b.lo; });
    }
    int find(double t) const {
        int lo = 0, hi = static_cast<int>(iv.size()) - 1, ans = -1;
        while (lo <= hi) {
            const int mid = (lo + hi) / 2;
            if (iv[mid].lo <= t) {
                ans = mid;
                lo = mid + 1;
            } else {
                hi = mid - 1;
            }
        }
        if (ans >= 0 && t < iv[ans].hi) return iv[ans].elem;
        return -1;
    }
};

struct LineData {
    IntervalSet before;  // elements on the lower-coordinate side of the line
    IntervalSet after;   // elements on the higher-coordinate side
    std::vector<double> breaks;
};

}  // namespace

void Mesh::finalize() {
    faces_.clear();
    constraints_.clear();
    element_faces_.assign(elements_.size(), {});

    std::map<std::pair<double, double>, int> vmap;
    for (int i = 0; i < n_vertices(); ++i) vmap[{vertices_[i].x, vertices_[i].y}] = i;

    // axis 0: vertical lines x = const (faces with normal +-x)
    // axis 1: horizontal lines y = const
    for (int axis = 0; axis < 2; ++axis) {
        std::map<double, LineData> lines;
        for (int e = 0; e < n_elements(); ++e) {
            const Rect& b = elements_[e].box;
            if (axis == 0) {
                lines[b.x0].after.iv.push_back({b.y0, b.y1, e});
                lines[b.x1].before.iv.push_back({b.y0, b.y1, e});
                lines[b.x0].breaks.push_back(b.y0);
                lines[b.x0].breaks.push_back(b.y1);
                lines[b.x1].breaks.push_back(b.y0);
                lines[b.x1].breaks.push_back(b.y1);
            } else {
                lines[b.y0].after.iv.push_back({b.x0, b.x1, e});
                lines[b.y1].before.iv.push_back({b.x0, b.x1, e});
                lines[b.y0].breaks.push_back(b.x0);
                lines[b.y0].breaks.push_back(b.x1);
                lines[b.y1].breaks.push_back(b.x0);
                lines[b.y1].breaks.push_back(b.x1);
            }
        }
        for (auto& [coord, data] : lines) {
            data.before.sort();
            data.after.sort();
            std::sort(data.breaks.begin(), data.breaks.end());
            data.breaks.erase(std::unique(data.breaks.begin(), data.breaks.end()),
                              data.breaks.end());
            for (std::size_t k = 0; k + 1 < data.breaks.size(); ++k) {
                const double lo = data.breaks[k];
                const double hi = data.breaks[k + 1];
                const double mid = 0.5 * (lo + hi);
                const int eb = data.before.find(mid);
                const int ea = data.after.find(mid);
                if (eb < 0 && ea < 0) continue;
                MeshFace f;
                if (axis == 0) {
                    f.v0 = vmap.at({coord, lo});
                    f.v1 = vmap.at({coord, hi});
                    f.midpoint = {coord, mid};
                } else {
                    f.v0 = vmap.at({lo, coord});
                    f.v1 = vmap.at({hi, coord});
                    f.midpoint = {mid, coord};
                }
                f.length = hi - lo;
                const Vec2 axis_normal = axis == 0 ? Vec2{1.0, 0.0} : Vec2{0.0, 1.0};
                if (eb >= 0 && ea >= 0) {
                    // interior: orient from lower to higher element id
                    if (eb < ea) {
                        f.elem_minus = eb;
                        f.elem_plus = ea;
                        f.normal = axis_normal;
                    } else {
                        f.elem_minus = ea;
                        f.elem_plus = eb;
                        f.normal = -1.0 * axis_normal;
                    }
                } else if (eb >= 0) {
                    // boundary face with outward normal along +axis
                    f.elem_minus = eb;
                    f.normal = axis_normal;
                    f.boundary_side = axis == 0 ? kRight : kTop;
                } else {
                    f.elem_minus = ea;
                    f.normal = -1.0 * axis_normal;
                    f.boundary_side = axis == 0 ? kLeft : kBottom;
                }
                const int fid = static_cast<int>(faces_.size());
                faces_.push_back(f);
                element_faces_[f.elem_minus].push_back(fid);
                if (f.elem_plus >= 0) element_faces_[f.elem_plus].push_back(fid);
            }
            // Hanging constraints: an element side spanning two sub-intervals
            // has its midpoint vertex constrained to the side endpoints.
            auto scan = [&](const IntervalSet& set) {
                for (const SideInterval& s : set.iv) {
                    auto first = std::lower_bound(data.breaks.begin(), data.breaks.end(), s.lo);
                    auto last = std::lower_bound(data.breaks.begin(), data.breaks.end(), s.hi);
                    const int spans = static_cast<int>(last - first);
                    if (spans <= 1) continue;
                    if (spans > 2)
                        throw std::logic_error("mesh: more than one hanging node on a face");
                    const double m = *(first + 1);
                    int vm, p0, p1;
                    if (axis == 0) {
                        vm = vmap.at({coord, m});
                        p0 = vmap.at({coord, s.lo});
                        p1 = vmap.at({coord, s.hi});
                    } else {
                        vm = vmap.at({m, coord});
                        p0 = vmap.at({s.lo, coord});
                        p1 = vmap.at({s.hi, coord});
                    }
                    constraints_.push_back({vm, p0, p1});
                }
            };
            scan(data.before);
            scan(data.after);
        }
    }

    // Deduplicate constraints discovered from both scans of the same side.
    std::sort(constraints_.begin(), constraints_.end(),
              [](const HangingConstraint& a, const HangingConstraint& b) {
                  return a.vertex < b.vertex;
              });
    constraints_.erase(std::unique(constraints_.begin(), constraints_.end(),
                                   [](const HangingConstraint& a, const HangingConstraint& b) {
                                       return a.vertex == b.vertex;
                                   }),
                       constraints_.end());
    constraint_of_.assign(vertices_.size(), -1);
    for (int c = 0; c < static_cast<int>(constraints_.size()); ++c)
        constraint_of_[constraints_[c].vertex] = c;

    // Point-location bins.
    const int nb = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(n_elements()))));
    bins_x_ = nb;
    bins_y_ = nb;
    bins_.assign(static_cast<std::size_t>(nb) * nb, {});
    const double bw = domain_.width() / nb;
    const double bh = domain_.height() / nb;
    for (int e = 0; e < n_elements(); ++e) {
        const Rect& b = elements_[e].box;
        int i0 = std::clamp(static_cast<int>((b.x0 - domain_.x0) / bw), 0, nb - 1);
        int i1 = std::clamp(static_cast<int>((b.x1 - domain_.x0) / bw), 0, nb - 1);
        int j0 = std::clamp(static_cast<int>((b.y0 - domain_.y0) / bh), 0, nb - 1);
        int j1 = std::clamp(static_cast<int>((b.y1 - domain_.y0) / bh), 0, nb - 1);
        for (int j = j0; j <= j1; ++j)
            for (int i = i0; i <= i1; ++i) bins_[j * nb + i].push_back(e);
    }
}

int Mesh::locate(const Vec2& p) const {
    if (!domain_.contains(p, 1e-12 * domain_.diameter())) return -1;
    const double bw = domain_.width() / bins_x_;
    const double bh = domain_.height() / bins_y_;
    const int i = std::clamp(static_cast<int>((p.x - domain_.x0) / bw), 0, bins_x_ - 1);
    const int j = std::clamp(static_cast<int>((p.y - domain_.y0) / bh), 0, bins_y_ - 1);
    int best = -1;
    for (int e : bins_[j * bins_x_ + i]) {
        if (elements_[e].box.contains(p, 1e-12 * domain_.diameter())) {
            if (best < 0 || e < best) best = e;
        }
    }
    return best;
}

double Mesh::min_element_size() const {
    double h = domain_.diameter();
    for (const MeshElement& e : elements_) h = std::min(h, std::min(e.box.width(), e.box.height()));
    return h;
}

FaceSets classify_boundary(const Mesh& mesh, const BoundaryLayout& layout) {
    const Rect& d = mesh.domain();
    const double tol = 1e-9 * d.diameter();
    // The layout must tile each side of the boundary.
    for (int side = 0; side < 4; ++side) {
        const double lo = side <= kRight ? d.y0 : d.x0;
        const double hi = side <= kRight ? d.y1 : d.x1;
        std::vector<std::pair<double, double>> spans;
        for (const auto& s : layout.segments)
            if (s.side == side) spans.emplace_back(s.lo, s.hi);
        std::sort(spans.begin(), spans.end());
        double cur = lo;
        for (const auto& [a, b] : spans) {
            if (a > cur + tol)
                throw ConfigError("boundary layout leaves a gap on side " + std::to_string(side));
            if (a < cur - tol)
                throw ConfigError("boundary layout overlaps on side " + std::to_string(side));
            cur = b;
        }
        if (std::abs(cur - hi) > tol)
            throw ConfigError("boundary layout does not reach the corner on side " +
                              std::to_string(side));
    }

    FaceSets sets;
    sets.layout = layout;
    sets.segment_of_face.assign(mesh.n_faces(), -1);
    for (int fid = 0; fid < mesh.n_faces(); ++fid) {
        const MeshFace& f = mesh.faces()[fid];
        if (!f.boundary()) continue;
        const bool vertical = f.boundary_side == kLeft || f.boundary_side == kRight;
        const double lo = vertical ? mesh.vertices()[f.v0].y : mesh.vertices()[f.v0].x;
        const double hi = vertical ? mesh.vertices()[f.v1].y : mesh.vertices()[f.v1].x;
        int found = -1;
        for (int s = 0; s < static_cast<int>(layout.segments.size()); ++s) {
            const auto& seg = layout.segments[s];
            if (seg.side != f.boundary_side) continue;
            const bool lo_in = lo >= seg.lo - tol && lo <= seg.hi + tol;
            const bool hi_in = hi >= seg.lo - tol && hi <= seg.hi + tol;
            if (lo_in && hi_in) {
                found = s;
                break;
            }
            const bool overlaps = lo < seg.hi - tol && hi > seg.lo + tol;
            if (overlaps)
                throw ConfigError("boundary face straddles two segments; align the mesh with "
                                  "the layout breakpoints");
        }
        if (found < 0)
            throw ConfigError("boundary face not covered by any segment");
        sets.segment_of_face[fid] = found;
        if (layout.segments[found].kind == BcKind::Dirichlet)
            sets.dirichlet.push_back(fid);
        else
            sets.neumann.push_back(fid);
    }
    return sets;
}

}  // namespace dfm
