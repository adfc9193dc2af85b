#include "dfm/fracture.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "dfm/errors.hpp"

namespace dfm {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::stringstream ss(line);
    const char delim = line.find(';') != std::string::npos ? ';' : ',';
    while (std::getline(ss, cell, delim)) out.push_back(trim(cell));
    return out;
}

}  // namespace

FractureNetwork FractureNetwork::from_segments(const std::vector<RawFracture>& raw,
                                               const Rect& domain, double snap_tol) {
    FractureNetwork net;
    net.domain_ = domain;
    const double tol = snap_tol > 0.0 ? snap_tol : 1e-9 * domain.diameter();

    for (std::size_t i = 0; i < raw.size(); ++i) {
        const RawFracture& f = raw[i];
        if (!domain.contains(f.a, tol) || !domain.contains(f.b, tol))
            throw DataError("fracture " + std::to_string(i) +
                            " has an endpoint outside the domain");
        if (norm(f.b - f.a) <= tol)
            throw DataError("fracture " + std::to_string(i) + " degenerates to a point");
        if (!(f.aperture > 0.0) || !(f.permeability > 0.0))
            throw DataError("fracture " + std::to_string(i) +
                            " needs positive aperture and permeability");
        if (!(f.porosity > 0.0) || f.porosity > 1.0)
            throw DataError("fracture " + std::to_string(i) + " porosity must be in (0,1]");
    }

    // Split segments where they cross transversally and where an endpoint of
    // one lands on the interior of another, so that junctions become nodes.
    std::vector<std::vector<double>> cuts(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const double len_i = norm(raw[i].b - raw[i].a);
        for (std::size_t j = 0; j < raw.size(); ++j) {
            if (i == j) continue;
            double s, t;
            if (!segment_intersection(raw[i].a, raw[i].b, raw[j].a, raw[j].b, s, t)) continue;
            const double len_j = norm(raw[j].b - raw[j].a);
            const double si = tol / len_i;
            const double sj = tol / len_j;
            if (s > si && s < 1.0 - si && t > -sj && t < 1.0 + sj) cuts[i].push_back(s);
        }
    }
    struct Piece {
        Vec2 a, b;
        std::size_t origin;
    };
    std::vector<Piece> pieces;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        auto& c = cuts[i];
        c.push_back(0.0);
        c.push_back(1.0);
        std::sort(c.begin(), c.end());
        const double len = norm(raw[i].b - raw[i].a);
        for (std::size_t k = 0; k + 1 < c.size(); ++k) {
            if ((c[k + 1] - c[k]) * len <= tol) continue;  // coincident cuts merge
            const Vec2 a = raw[i].a + c[k] * (raw[i].b - raw[i].a);
            const Vec2 b = raw[i].a + c[k + 1] * (raw[i].b - raw[i].a);
            pieces.push_back({a, b, i});
        }
    }

    auto find_or_add_node = [&](const Vec2& p) {
        for (std::size_t n = 0; n < net.nodes_.size(); ++n)
            if (norm(net.nodes_[n] - p) <= tol) return static_cast<int>(n);
        net.nodes_.push_back(p);
        return static_cast<int>(net.nodes_.size() - 1);
    };

    for (const Piece& p : pieces) {
        const int na = find_or_add_node(p.a);
        const int nb = find_or_add_node(p.b);
        if (na == nb) throw DataError("fracture segment degenerates to a point after snapping");
        FractureEdge e;
        e.n0 = std::min(na, nb);
        e.n1 = std::max(na, nb);
        e.a = net.nodes_[e.n0];
        e.b = net.nodes_[e.n1];
        e.aperture = raw[p.origin].aperture;
        e.permeability = raw[p.origin].permeability;
        e.porosity = raw[p.origin].porosity;
        e.length = norm(e.b - e.a);
        e.tangent = (1.0 / e.length) * (e.b - e.a);
        e.normal = right_normal(e.tangent);
        net.edges_.push_back(e);
    }

    net.node_edges_.assign(net.nodes_.size(), {});
    for (int e = 0; e < static_cast<int>(net.edges_.size()); ++e) {
        net.node_edges_[net.edges_[e].n0].push_back(e);
        net.node_edges_[net.edges_[e].n1].push_back(e);
    }
    return net;
}

double FractureNetwork::total_length() const {
    double l = 0.0;
    for (const auto& e : edges_) l += e.length;
    return l;
}

bool FractureNetwork::edges_share_node(int e0, int e1) const {
    const FractureEdge& a = edges_[e0];
    const FractureEdge& b = edges_[e1];
    return a.n0 == b.n0 || a.n0 == b.n1 || a.n1 == b.n0 || a.n1 == b.n1;
}

FractureNetwork load_network(const std::string& path, const Rect& domain,
                             const NetworkDefaults& defaults) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open fracture table: " + path);
    std::string line;
    if (!std::getline(in, line)) throw DataError("empty fracture table: " + path);
    std::vector<std::string> header = split_row(line);
    for (auto& h : header) std::transform(h.begin(), h.end(), h.begin(), ::toupper);
    auto col = [&](const std::string& name) {
        const auto it = std::find(header.begin(), header.end(), name);
        return it == header.end() ? -1 : static_cast<int>(it - header.begin());
    };
    const int cx0 = col("START_X"), cy0 = col("START_Y");
    const int cx1 = col("END_X"), cy1 = col("END_Y");
    if (cx0 < 0 || cy0 < 0 || cx1 < 0 || cy1 < 0)
        throw DataError("fracture table header must name START_X, START_Y, END_X, END_Y");
    const int cw = col("APERTURE"), ck = col("PERMEABILITY"), cp = col("POROSITY");

    std::vector<RawFracture> raw;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const std::vector<std::string> cells = split_row(line);
        auto value = [&](int c, double fallback) {
            if (c < 0 || c >= static_cast<int>(cells.size()) || cells[c].empty()) return fallback;
            try {
                std::size_t pos = 0;
                const double v = std::stod(cells[c], &pos);
                if (pos != cells[c].size()) throw std::invalid_argument(cells[c]);
                return v;
            } catch (const std::exception&) {
                throw DataError("fracture table line " + std::to_string(line_no) +
                                ": cannot parse '" + cells[c] + "'");
            }
        };
        RawFracture f;
        f.a = {value(cx0, 0.0), value(cy0, 0.0)};
        f.b = {value(cx1, 0.0), value(cy1, 0.0)};
        f.aperture = value(cw, defaults.aperture);
        f.permeability = value(ck, defaults.permeability);
        f.porosity = value(cp, defaults.porosity);
        raw.push_back(f);
    }
    return FractureNetwork::from_segments(raw, domain);
}

namespace {

// An edge lying along a mesh face line is shifted off it by a small multiple
// of the local face size along +n_Gamma; the mesh then sees an ordinary
// transversal fracture on one side of the line.
std::vector<EffectiveEdge> effective_edges(const Mesh& mesh, const FractureNetwork& net,
                                           std::vector<int>& shifted_out) {
    std::vector<EffectiveEdge> out;
    out.reserve(net.edges().size());
    for (int ei = 0; ei < static_cast<int>(net.edges().size()); ++ei) {
        const FractureEdge& e = net.edges()[ei];
        EffectiveEdge eff;
        eff.n0 = e.n0;
        eff.n1 = e.n1;
        eff.a = e.a;
        eff.b = e.b;
        eff.tangent = e.tangent;
        eff.normal = e.normal;
        eff.length = e.length;
        eff.k_eff = e.k_eff();
        eff.aperture = e.aperture;
        eff.porosity = e.porosity;

        double h_coincident = 0.0;
        for (const MeshFace& f : mesh.faces()) {
            const Vec2 fa = mesh.vertices()[f.v0];
            const Vec2 fb = mesh.vertices()[f.v1];
            const double tol = 1e-9 * f.length;
            const double da = std::abs(cross(e.tangent, fa - e.a));
            const double db = std::abs(cross(e.tangent, fb - e.a));
            if (da > tol || db > tol) continue;
            const double ta = dot(fa - e.a, e.tangent);
            const double tb = dot(fb - e.a, e.tangent);
            const double lo = std::min(ta, tb), hi = std::max(ta, tb);
            if (hi <= 0.0 || lo >= e.length) continue;
            h_coincident = h_coincident == 0.0 ? f.length : std::min(h_coincident, f.length);
        }
        if (h_coincident > 0.0) {
            const double eps = 1e-6 * h_coincident;
            eff.a += eps * eff.normal;
            eff.b += eps * eff.normal;
            eff.shifted = true;
            shifted_out.push_back(ei);
        }
        out.push_back(eff);
    }
    return out;
}

}  // namespace

IntersectionData intersect(const Mesh& mesh, const FractureNetwork& network) {
    IntersectionData data;
    data.nodes = network.nodes();
    data.edges = effective_edges(mesh, network, data.shifted_edges);
    const int n_elem = mesh.n_elements();
    const int n_face = mesh.n_faces();
    data.element_segments.assign(n_elem, {});
    data.fractured.assign(n_elem, 0);
    data.fracture_arclength.assign(n_elem, 0.0);
    data.crossings.assign(n_face, {});
    data.face_class.assign(n_face, InteriorFaceClass::Matrix);
    data.subdomain.assign(n_elem, -1);

    for (int ei = 0; ei < static_cast<int>(data.edges.size()); ++ei) {
        const EffectiveEdge& e = data.edges[ei];
        const Rect ebox{std::min(e.a.x, e.b.x), std::min(e.a.y, e.b.y), std::max(e.a.x, e.b.x),
                        std::max(e.a.y, e.b.y)};
        const double len_tol = 1e-12 * e.length;
        for (int el = 0; el < n_elem; ++el) {
            const Rect& box = mesh.elements()[el].box;
            if (ebox.x0 > box.x1 || ebox.x1 < box.x0 || ebox.y0 > box.y1 || ebox.y1 < box.y0)
                continue;
            double t0, t1;
            if (!clip_segment_rect(e.a, e.b, box, t0, t1)) continue;
            const double len = (t1 - t0) * e.length;
            if (len <= len_tol) continue;
            ClippedSegment seg;
            seg.edge = ei;
            seg.element = el;
            seg.p0 = e.a + t0 * (e.b - e.a);
            seg.p1 = e.a + t1 * (e.b - e.a);
            seg.length = len;
            data.element_segments[el].push_back(static_cast<int>(data.segments.size()));
            data.segments.push_back(seg);
            data.fractured[el] = 1;
            data.fracture_arclength[el] += len;
        }
    }

    // Face crossings: transversal intersections with face interiors. A
    // fracture endpoint counts on boundary faces (the fracture mouth) but not
    // on interior faces (a tip carries no through-flow).
    for (int ei = 0; ei < static_cast<int>(data.edges.size()); ++ei) {
        const EffectiveEdge& e = data.edges[ei];
        for (int fi = 0; fi < n_face; ++fi) {
            const MeshFace& f = mesh.faces()[fi];
            const Vec2 fa = mesh.vertices()[f.v0];
            const Vec2 fb = mesh.vertices()[f.v1];
            double s, t;
            if (!segment_intersection(e.a, e.b, fa, fb, s, t)) continue;
            const double face_tol = 1e-9;
            if (t <= face_tol || t >= 1.0 - face_tol) continue;
            const double edge_tol = 1e-9;
            const bool s_inside = s > edge_tol && s < 1.0 - edge_tol;
            const bool s_touching = s >= -edge_tol && s <= 1.0 + edge_tol;
            if (!(s_inside || (f.boundary() && s_touching))) continue;
            const double align = dot(e.tangent, f.normal);
            if (std::abs(align) < 1e-12) continue;
            FaceCrossing c;
            c.edge = ei;
            c.point = e.a + s * (e.b - e.a);
            c.t_gamma_f = align >= 0.0 ? e.tangent : -1.0 * e.tangent;
            data.crossings[fi].push_back(c);
        }
    }

    for (int fi = 0; fi < n_face; ++fi) {
        const MeshFace& f = mesh.faces()[fi];
        if (f.boundary()) continue;
        const bool fm = data.fractured[f.elem_minus] != 0;
        const bool fp = data.fractured[f.elem_plus] != 0;
        if (fm && fp && data.face_crossed(fi))
            data.face_class[fi] = InteriorFaceClass::Fracture;
        else if (fm != fp)
            data.face_class[fi] = InteriorFaceClass::Mixed;
        else
            data.face_class[fi] = InteriorFaceClass::Matrix;
    }

    // Matrix subdomains: connected components over faces not crossed by Gamma.
    int next_label = 0;
    for (int seed = 0; seed < n_elem; ++seed) {
        if (data.fractured[seed] || data.subdomain[seed] >= 0) continue;
        const int label = next_label++;
        std::vector<int> stack{seed};
        data.subdomain[seed] = label;
        while (!stack.empty()) {
            const int el = stack.back();
            stack.pop_back();
            for (int fi : mesh.element_faces(el)) {
                const MeshFace& f = mesh.faces()[fi];
                if (f.boundary() || data.face_crossed(fi)) continue;
                const int other = f.elem_minus == el ? f.elem_plus : f.elem_minus;
                if (data.fractured[other] || data.subdomain[other] >= 0) continue;
                data.subdomain[other] = label;
                stack.push_back(other);
            }
        }
    }
    data.n_subdomains = next_label;
    return data;
}

Mesh refine_around_fractures(const Mesh& mesh, const FractureNetwork& network, int rounds) {
    Mesh out = mesh;
    for (int r = 0; r < rounds; ++r) {
        const IntersectionData data = intersect(out, network);
        std::vector<int> flags;
        for (int e = 0; e < out.n_elements(); ++e)
            if (data.is_fractured(e)) flags.push_back(e);
        if (flags.empty()) break;
        out = out.refine(flags);
    }
    return out;
}

namespace {

// Number of connected components of the patch's edge set, where edges join
// when they share a graph node.
int patch_components(const std::vector<int>& edge_ids, const IntersectionData& data) {
    std::vector<int> parent(edge_ids.size());
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::map<int, int> node_rep;
    for (std::size_t i = 0; i < edge_ids.size(); ++i) {
        for (int n : {data.edges[edge_ids[i]].n0, data.edges[edge_ids[i]].n1}) {
            auto it = node_rep.find(n);
            if (it == node_rep.end()) {
                node_rep[n] = static_cast<int>(i);
            } else {
                const int ra = find(it->second);
                const int rb = find(static_cast<int>(i));
                if (ra != rb) parent[ra] = rb;
            }
        }
    }
    std::set<int> roots;
    for (std::size_t i = 0; i < edge_ids.size(); ++i) roots.insert(find(static_cast<int>(i)));
    return static_cast<int>(roots.size());
}

}  // namespace

Mesh resolve_close_fractures(const Mesh& mesh, const FractureNetwork& network,
                             int max_extra_rounds) {
    Mesh out = mesh;
    for (int round = 0;; ++round) {
        const IntersectionData data = intersect(out, network);
        std::vector<std::vector<int>> vertex_elems(out.n_vertices());
        for (int e = 0; e < out.n_elements(); ++e)
            for (int k = 0; k < 4; ++k) vertex_elems[out.elements()[e].v[k]].push_back(e);

        std::vector<int> flags;
        std::pair<int, int> offending{-1, -1};
        for (int e = 0; e < out.n_elements(); ++e) {
            std::set<int> patch_edges;
            for (int k = 0; k < 4; ++k)
                for (int pe : vertex_elems[out.elements()[e].v[k]])
                    for (int si : data.element_segments[pe])
                        patch_edges.insert(data.segments[si].edge);
            if (patch_edges.size() < 2) continue;
            const std::vector<int> ids(patch_edges.begin(), patch_edges.end());
            if (patch_components(ids, data) > 1) {
                flags.push_back(e);
                if (offending.first < 0) offending = {ids[0], ids[1]};
            }
        }
        if (flags.empty()) return out;
        if (round >= max_extra_rounds)
            throw ResolutionError("resolve_close_fractures: level cap reached with unresolved "
                                  "vertex patches; offending edge pair (" +
                                  std::to_string(offending.first) + ", " +
                                  std::to_string(offending.second) + ")");
        out = out.refine(flags);
    }
}

}  // namespace dfm
