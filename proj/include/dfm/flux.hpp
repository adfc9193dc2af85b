#ifndef DFM_FLUX_HPP
#define DFM_FLUX_HPP

#include <vector>

#include "dfm/fracture.hpp"
#include "dfm/mesh.hpp"
#include "dfm/pressure.hpp"

namespace dfm {

// Integrated normal flux Q_F = int_F U per finest-level face, oriented along
// n_F. Fracture-crossed interior faces carry the fracture flow rate through
// the crossing; Neumann faces are frozen to the prescribed datum.
struct FaceFluxField {
    const Mesh* mesh = nullptr;
    std::vector<double> q;
    std::vector<char> neumann;

    double outflow(int elem, int face) const {
        const MeshFace& f = mesh->faces()[face];
        return f.elem_minus == elem ? q[face] : -q[face];
    }
};

// delta_Kn = n . (kappa n) of the neighboring cell; fractured cells enter
// with kappa = kappa_Gamma I.
double theta_weight(double delta_minus, double delta_plus);
double omega_weight_interior(double delta_minus, double delta_plus);
double omega_weight_boundary(double delta_minus);

FaceFluxField average_flux(const PressureField& pressure, const IntersectionData& data,
                           const MaterialField& materials, const FaceSets& bcs);

// R(U)|_K: per-element discrepancy from local conservation.
std::vector<double> conservation_residual(const FaceFluxField& flux,
                                          const MaterialField& materials,
                                          const IntersectionData& data);

// Minimal piecewise-constant correction restoring local conservation.
FaceFluxField postprocess(const FaceFluxField& flux, const MaterialField& materials,
                          const IntersectionData& data, double rel_tol = 1e-12);

// Analytic velocity adapter: piecewise-constant matrix velocity by region
// (first matching region wins) plus a flow rate along each fracture edge.
struct ExplicitVelocity {
    struct Region {
        Rect box;
        Vec2 u;
    };
    std::vector<Region> regions;
    double fracture_rate = 0.0;  // flow rate along +t_Gamma, aperture included

    Vec2 at(const Vec2& p) const {
        for (const Region& r : regions)
            if (r.box.contains(p)) return r.u;
        return {0.0, 0.0};
    }
};

FaceFluxField explicit_velocity_flux(const Mesh& mesh, const IntersectionData& data,
                                     const ExplicitVelocity& velocity);

}  // namespace dfm

#endif
