#ifndef DFM_PRESSURE_HPP
#define DFM_PRESSURE_HPP

#include <utility>
#include <vector>

#include "dfm/csr.hpp"
#include "dfm/fracture.hpp"
#include "dfm/mesh.hpp"
#include "dfm/solvers.hpp"

namespace dfm {

struct MaterialField {
    std::vector<Tensor2> kappa;       // per element
    std::vector<double> porosity;     // per element
    std::vector<double> source;       // q per element (volume rate per area)
    std::vector<double> edge_source;  // q_Gamma per effective edge (rate per length)

    static MaterialField uniform(const Mesh& mesh, const IntersectionData& data,
                                 const Tensor2& kappa, double phi);
};

// Continuous piecewise-bilinear pressure; hanging vertices carry their
// constrained values so evaluation works element-locally.
struct PressureField {
    const Mesh* mesh = nullptr;
    std::vector<double> values;  // one coefficient per vertex

    double value_in(int elem, const Vec2& p) const;
    Vec2 gradient_in(int elem, const Vec2& p) const;
    double value(const Vec2& p) const;
    Vec2 gradient(const Vec2& p) const;
};

struct PressureSystem {
    Csr a;                      // SPD system in the unconstrained non-Dirichlet unknowns
    std::vector<double> rhs;
    std::vector<int> vertex_of_free;
    std::vector<int> free_of_vertex;   // -1 for Dirichlet/hanging vertices
    std::vector<char> dirichlet;       // per vertex
    std::vector<double> fixed_value;   // Dirichlet vertex values
    std::vector<std::vector<std::pair<int, double>>> expansion;  // vertex -> terminal weights
    int n_dof = 0;  // all mesh vertices, constrained ones included

    // Matrix reported in manifests: the reduced operator padded with identity
    // rows for the constrained dofs (Dirichlet and hanging).
    Csr manifest_matrix() const;
};

PressureSystem assemble_pressure(const Mesh& mesh, const IntersectionData& data,
                                 const MaterialField& materials, const FaceSets& bcs);

PressureField solve_pressure(const Mesh& mesh, const PressureSystem& system,
                             double rel_tol = 1e-10);

double estimate_condition(const PressureSystem& system);

}  // namespace dfm

#endif
