#ifndef DFM_MESH_HPP
#define DFM_MESH_HPP

#include <map>
#include <vector>

#include "dfm/geometry.hpp"

namespace dfm {

// Boundary sides of the rectangular domain.
enum Side : int { kLeft = 0, kRight = 1, kBottom = 2, kTop = 3 };

enum class BcKind { Dirichlet, Neumann };

struct BoundarySegment {
    int side = kLeft;
    double lo = 0.0;   // along-side coordinate range (y for left/right, x for bottom/top)
    double hi = 0.0;
    BcKind kind = BcKind::Dirichlet;
    double value = 0.0;  // p_D for Dirichlet, physical u.n for Neumann
};

struct BoundaryLayout {
    std::vector<BoundarySegment> segments;
    static BoundaryLayout all_dirichlet(const Rect& domain, double value);
    static BoundaryLayout all_neumann(const Rect& domain, double value);
};

struct MeshElement {
    int v[4];        // corner vertices, counterclockwise from SW: SW SE NE NW
    int level = 0;
    Rect box;
    int parent = -1;  // element id in the mesh this one was refined from
};

// Finest-level face: where a coarse element face carries a hanging node it is
// represented by its two sub-faces, so every face has well-defined neighbors.
struct MeshFace {
    int v0 = -1, v1 = -1;  // endpoints, ordered by increasing along-face coordinate
    Vec2 normal;           // n_F: lower to higher element id; outward on the boundary
    int elem_minus = -1;   // element n_F points away from
    int elem_plus = -1;    // element n_F points into; -1 on the boundary
    double length = 0.0;
    Vec2 midpoint;
    int boundary_side = -1;  // -1 for interior faces
    bool boundary() const { return elem_plus < 0; }
};

struct HangingConstraint {
    int vertex = -1;
    int parent0 = -1;
    int parent1 = -1;  // constrained value = (parent0 + parent1) / 2
};

struct FaceSets {
    std::vector<int> dirichlet;  // face ids
    std::vector<int> neumann;
    std::vector<int> segment_of_face;  // per face: boundary segment id, -1 interior
    BoundaryLayout layout;
};

class Mesh {
public:
    static Mesh build_uniform(int nx, int ny, const Rect& domain);

    // Quadrisect the flagged elements, cascading so that face-adjacent levels
    // differ by at most one (at most one hanging node per element face).
    Mesh refine(const std::vector<int>& flags) const;

    const Rect& domain() const { return domain_; }
    const std::vector<Vec2>& vertices() const { return vertices_; }
    const std::vector<MeshElement>& elements() const { return elements_; }
    const std::vector<MeshFace>& faces() const { return faces_; }
    const std::vector<HangingConstraint>& constraints() const { return constraints_; }
    const std::vector<int>& element_faces(int e) const { return element_faces_[e]; }

    int n_vertices() const { return static_cast<int>(vertices_.size()); }
    int n_elements() const { return static_cast<int>(elements_.size()); }
    int n_faces() const { return static_cast<int>(faces_.size()); }

    // -1 when the vertex is unconstrained, else index into constraints().
    int constraint_of(int vertex) const { return constraint_of_[vertex]; }

    // Smallest-id element whose closed box contains p; -1 if outside.
    int locate(const Vec2& p) const;

    double min_element_size() const;

private:
    Rect domain_;
    std::vector<Vec2> vertices_;
    std::vector<MeshElement> elements_;
    std::vector<MeshFace> faces_;
    std::vector<HangingConstraint> constraints_;
    std::vector<int> constraint_of_;
    std::vector<std::vector<int>> element_faces_;

    // point-location bins
    int bins_x_ = 0, bins_y_ = 0;
    std::vector<std::vector<int>> bins_;

    void finalize();  // rebuild faces, constraints, adjacency, bins
};

FaceSets classify_boundary(const Mesh& mesh, const BoundaryLayout& layout);

}  // namespace dfm

#endif
