#include "dfm/pressure.hpp"

#include <cmath>
#include <functional>
#include <map>

#include "dfm/errors.hpp"

namespace dfm {

namespace {

// Q1 shape functions on the reference square, in SW SE NE NW corner order.
void shape_values(double xi, double eta, double* phi) {
    phi[0] = (1.0 - xi) * (1.0 - eta);
    phi[1] = xi * (1.0 - eta);
    phi[2] = xi * eta;
    phi[3] = (1.0 - xi) * eta;
}

void shape_gradients(double xi, double eta, double dx, double dy, Vec2* grad) {
    grad[0] = {-(1.0 - eta) / dx, -(1.0 - xi) / dy};
    grad[1] = {(1.0 - eta) / dx, -xi / dy};
    grad[2] = {eta / dx, xi / dy};
    grad[3] = {-eta / dx, (1.0 - xi) / dy};
}

constexpr double kGauss2 = 0.577350269189625764509148780502;  // 1/sqrt(3)

}  // namespace

MaterialField MaterialField::uniform(const Mesh& mesh, const IntersectionData& data,
                                     const Tensor2& kappa, double phi) {
    MaterialField m;
    m.kappa.assign(mesh.n_elements(), kappa);
    m.porosity.assign(mesh.n_elements(), phi);
    m.source.assign(mesh.n_elements(), 0.0);
    m.edge_source.assign(data.edges.size(), 0.0);
    return m;
}

double PressureField::value_in(int elem, const Vec2& p) const {
    const MeshElement& e = mesh->elements()[elem];
    const double xi = (p.x - e.box.x0) / e.box.width();
    const double eta = (p.y - e.box.y0) / e.box.height();
    double phi[4];
    shape_values(xi, eta, phi);
    double v = 0.0;
    for (int k = 0; k < 4; ++k) v += phi[k] * values[e.v[k]];
    return v;
}

Vec2 PressureField::gradient_in(int elem, const Vec2& p) const {
    const MeshElement& e = mesh->elements()[elem];
    const double xi = (p.x - e.box.x0) / e.box.width();
    const double eta = (p.y - e.box.y0) / e.box.height();
    Vec2 g[4];
    shape_gradients(xi, eta, e.box.width(), e.box.height(), g);
    Vec2 out;
    for (int k = 0; k < 4; ++k) out += values[e.v[k]] * g[k];
    return out;
}

double PressureField::value(const Vec2& p) const {
    const int e = mesh->locate(p);
    if (e < 0) throw ConfigError("pressure evaluation outside the domain");
    return value_in(e, p);
}

Vec2 PressureField::gradient(const Vec2& p) const {
    const int e = mesh->locate(p);
    if (e < 0) throw ConfigError("pressure evaluation outside the domain");
    return gradient_in(e, p);
}

Csr PressureSystem::manifest_matrix() const {
    CsrBuilder b(n_dof, n_dof);
    for (int i = 0; i < a.n_rows; ++i) {
        const int vi = vertex_of_free[i];
        for (int k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k)
            b.add(vi, vertex_of_free[a.col[k]], a.val[k]);
    }
    for (int v = 0; v < n_dof; ++v)
        if (free_of_vertex[v] < 0) b.add(v, v, 1.0);
    return b.build();
}

PressureSystem assemble_pressure(const Mesh& mesh, const IntersectionData& data,
                                 const MaterialField& materials, const FaceSets& bcs) {
    const int nv = mesh.n_vertices();
    PressureSystem sys;
    sys.n_dof = nv;
    sys.dirichlet.assign(nv, 0);
    sys.fixed_value.assign(nv, 0.0);

    for (int e = 0; e < mesh.n_elements(); ++e)
        if (!materials.kappa[e].spd())
            throw DataError("matrix permeability must be symmetric positive definite");
    for (const EffectiveEdge& e : data.edges)
        if (!(e.k_eff > 0.0))
            throw DataError("fracture edge with non-positive effective permeability");

    for (int fid : bcs.dirichlet) {
        const MeshFace& f = mesh.faces()[fid];
        const double value = bcs.layout.segments[bcs.segment_of_face[fid]].value;
        for (int v : {f.v0, f.v1}) {
            sys.dirichlet[v] = 1;
            sys.fixed_value[v] = value;
        }
    }

    // Expand hanging-vertex constraints down to free/Dirichlet terminals.
    sys.expansion.assign(nv, {});
    std::vector<char> state(nv, 0);
    std::function<const std::vector<std::pair<int, double>>&(int)> expand =
        [&](int v) -> const std::vector<std::pair<int, double>>& {
        if (state[v] == 2) return sys.expansion[v];
        if (state[v] == 1) throw std::logic_error("cyclic hanging-node constraints");
        state[v] = 1;
        const int c = mesh.constraint_of(v);
        if (c < 0) {
            sys.expansion[v] = {{v, 1.0}};
        } else {
            const HangingConstraint& hc = mesh.constraints()[c];
            std::map<int, double> acc;
            for (int parent : {hc.parent0, hc.parent1})
                for (const auto& [t, w] : expand(parent)) acc[t] += 0.5 * w;
            sys.expansion[v].assign(acc.begin(), acc.end());
        }
        state[v] = 2;
        return sys.expansion[v];
    };
    for (int v = 0; v < nv; ++v) expand(v);

    sys.free_of_vertex.assign(nv, -1);
    for (int v = 0; v < nv; ++v) {
        if (sys.dirichlet[v] || mesh.constraint_of(v) >= 0) continue;
        sys.free_of_vertex[v] = static_cast<int>(sys.vertex_of_free.size());
        sys.vertex_of_free.push_back(v);
    }

    const int nf = static_cast<int>(sys.vertex_of_free.size());
    CsrBuilder builder(nf, nf);
    sys.rhs.assign(nf, 0.0);

    auto scatter_matrix = [&](int va, int vb, double value) {
        if (value == 0.0) return;
        for (const auto& [ta, wa] : sys.expansion[va]) {
            if (sys.dirichlet[ta]) continue;
            const int ia = sys.free_of_vertex[ta];
            for (const auto& [tb, wb] : sys.expansion[vb]) {
                if (sys.dirichlet[tb])
                    sys.rhs[ia] -= wa * wb * value * sys.fixed_value[tb];
                else
                    builder.add(ia, sys.free_of_vertex[tb], wa * wb * value);
            }
        }
    };
    auto scatter_rhs = [&](int va, double value) {
        if (value == 0.0) return;
        for (const auto& [ta, wa] : sys.expansion[va])
            if (!sys.dirichlet[ta]) sys.rhs[sys.free_of_vertex[ta]] += wa * value;
    };

    // Bulk term (kappa grad u, grad v) by 2x2 Gauss, with the load (q, v).
    for (int el = 0; el < mesh.n_elements(); ++el) {
        const MeshElement& e = mesh.elements()[el];
        const Tensor2& k = materials.kappa[el];
        const double dx = e.box.width(), dy = e.box.height();
        double loc[4][4] = {};
        for (int qx = 0; qx < 2; ++qx)
            for (int qy = 0; qy < 2; ++qy) {
                const double xi = 0.5 + (qx == 0 ? -0.5 : 0.5) * kGauss2;
                const double eta = 0.5 + (qy == 0 ? -0.5 : 0.5) * kGauss2;
                Vec2 g[4];
                shape_gradients(xi, eta, dx, dy, g);
                const double w = 0.25 * dx * dy;
                for (int i = 0; i < 4; ++i) {
                    const Vec2 kg = k.apply(g[i]);
                    for (int j = 0; j < 4; ++j) loc[i][j] += w * dot(kg, g[j]);
                }
            }
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) scatter_matrix(e.v[i], e.v[j], loc[i][j]);
        const double q = materials.source[el];
        if (q != 0.0)
            for (int i = 0; i < 4; ++i) scatter_rhs(e.v[i], 0.25 * q * dx * dy);
    }

    // Fracture contributions enter by superposition: tangential line stiffness
    // and the fracture load, 2-point Gauss per clipped segment.
    for (const ClippedSegment& seg : data.segments) {
        const MeshElement& e = mesh.elements()[seg.element];
        const EffectiveEdge& edge = data.edges[seg.edge];
        const Vec2 tangent = edge.tangent;
        const double q_edge =
            materials.edge_source.empty() ? 0.0 : materials.edge_source[seg.edge];
        double loc[4][4] = {};
        double lrhs[4] = {};
        for (int qp = 0; qp < 2; ++qp) {
            const double t = 0.5 + (qp == 0 ? -0.5 : 0.5) * kGauss2;
            const Vec2 x = seg.p0 + t * (seg.p1 - seg.p0);
            const double xi = (x.x - e.box.x0) / e.box.width();
            const double eta = (x.y - e.box.y0) / e.box.height();
            Vec2 g[4];
            shape_gradients(xi, eta, e.box.width(), e.box.height(), g);
            double phi[4];
            shape_values(xi, eta, phi);
            const double w = 0.5 * seg.length;
            for (int i = 0; i < 4; ++i) {
                const double gti = dot(g[i], tangent);
                for (int j = 0; j < 4; ++j)
                    loc[i][j] += w * edge.k_eff * gti * dot(g[j], tangent);
                lrhs[i] += w * q_edge * phi[i];
            }
        }
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) scatter_matrix(e.v[i], e.v[j], loc[i][j]);
            scatter_rhs(e.v[i], lrhs[i]);
        }
    }

    // Neumann boundary term: the load carries -(u.n, v) with the physical
    // Darcy flux u.n, equivalently +(u_N, v) for u_N = (kappa grad p).n.
    for (int fid : bcs.neumann) {
        const MeshFace& f = mesh.faces()[fid];
        const double u_n_physical = bcs.layout.segments[bcs.segment_of_face[fid]].value;
        scatter_rhs(f.v0, -0.5 * f.length * u_n_physical);
        scatter_rhs(f.v1, -0.5 * f.length * u_n_physical);
    }

    // Fracture point terms at graph nodes on the Neumann boundary.
    const Rect& d = mesh.domain();
    const double tol = 1e-9 * d.diameter();
    for (std::size_t ni = 0; ni < data.nodes.size(); ++ni) {
        const Vec2& x = data.nodes[ni];
        int side = -1;
        if (std::abs(x.x - d.x0) <= tol)
            side = kLeft;
        else if (std::abs(x.x - d.x1) <= tol)
            side = kRight;
        else if (std::abs(x.y - d.y0) <= tol)
            side = kBottom;
        else if (std::abs(x.y - d.y1) <= tol)
            side = kTop;
        if (side < 0) continue;
        const double along = (side == kLeft || side == kRight) ? x.y : x.x;
        const BoundarySegment* seg = nullptr;
        for (const auto& s : bcs.layout.segments)
            if (s.side == side && along >= s.lo - tol && along <= s.hi + tol) seg = &s;
        if (seg == nullptr || seg->kind != BcKind::Neumann) continue;
        const double u_n_physical = seg->value;
        if (u_n_physical == 0.0) continue;
        double w_total = 0.0;
        for (const EffectiveEdge& e : data.edges)
            if (e.n0 == static_cast<int>(ni) || e.n1 == static_cast<int>(ni))
                w_total += e.aperture;
        if (w_total == 0.0) continue;
        const int el = mesh.locate(x);
        if (el < 0) continue;
        const MeshElement& e = mesh.elements()[el];
        const double xi = (x.x - e.box.x0) / e.box.width();
        const double eta = (x.y - e.box.y0) / e.box.height();
        double phi[4];
        shape_values(xi, eta, phi);
        for (int i = 0; i < 4; ++i) scatter_rhs(e.v[i], -w_total * u_n_physical * phi[i]);
    }

    sys.a = builder.build();
    return sys;
}

PressureField solve_pressure(const Mesh& mesh, const PressureSystem& sys, double rel_tol) {
    const std::vector<double> x = solve_spd(sys.a, sys.rhs, rel_tol, 500000, "pressure solve");
    PressureField p;
    p.mesh = &mesh;
    p.values.assign(sys.n_dof, 0.0);
    std::vector<double> terminal(sys.n_dof, 0.0);
    for (int v = 0; v < sys.n_dof; ++v) {
        if (sys.dirichlet[v])
            terminal[v] = sys.fixed_value[v];
        else if (sys.free_of_vertex[v] >= 0)
            terminal[v] = x[sys.free_of_vertex[v]];
    }
    for (int v = 0; v < sys.n_dof; ++v) {
        double val = 0.0;
        for (const auto& [t, w] : sys.expansion[v]) val += w * terminal[t];
        p.values[v] = val;
    }
    return p;
}

double estimate_condition(const PressureSystem& sys) {
    return estimate_condition_2norm(sys.manifest_matrix());
}

}  // namespace dfm
