#ifndef DFM_FRACTURE_HPP
#define DFM_FRACTURE_HPP

#include <string>
#include <vector>

#include "dfm/geometry.hpp"
#include "dfm/mesh.hpp"

namespace dfm {

struct NetworkDefaults {
    double aperture = 1.0;
    double permeability = 1.0;
    double porosity = 1.0;
};

struct RawFracture {
    Vec2 a, b;
    double aperture = 1.0;
    double permeability = 1.0;
    double porosity = 1.0;
};

struct FractureEdge {
    int n0 = -1, n1 = -1;  // graph nodes; oriented from the lower to the higher index
    double aperture = 1.0;
    double permeability = 1.0;
    double porosity = 1.0;
    Vec2 a, b;       // endpoint coordinates (= node positions)
    Vec2 tangent;    // unit tangent from a to b
    Vec2 normal;     // n_Gamma, right of the tangent
    double length = 0.0;
    double k_eff() const { return aperture * permeability; }  // k_Gamma = w * kappa_Gamma
};

// Oriented graph of straight fracture segments. Input segments are split at
// transversal crossings and at endpoints landing on another segment's
// interior, so junctions are always graph nodes.
class FractureNetwork {
public:
    static FractureNetwork from_segments(const std::vector<RawFracture>& raw, const Rect& domain,
                                         double snap_tol = -1.0);

    const std::vector<Vec2>& nodes() const { return nodes_; }
    const std::vector<FractureEdge>& edges() const { return edges_; }
    const std::vector<std::vector<int>>& node_edges() const { return node_edges_; }
    const Rect& domain() const { return domain_; }
    bool empty() const { return edges_.empty(); }
    double total_length() const;
    bool edges_share_node(int e0, int e1) const;

private:
    std::vector<Vec2> nodes_;
    std::vector<FractureEdge> edges_;
    std::vector<std::vector<int>> node_edges_;
    Rect domain_;
};

// Fracture table reader: delimited text with a header row naming START_X,
// START_Y, END_X, END_Y and optional APERTURE, PERMEABILITY, POROSITY.
FractureNetwork load_network(const std::string& path, const Rect& domain,
                             const NetworkDefaults& defaults);

struct ClippedSegment {
    int edge = -1;
    int element = -1;
    Vec2 p0, p1;
    double length = 0.0;
};

struct FaceCrossing {
    int edge = -1;
    Vec2 point;
    Vec2 t_gamma_f;  // fracture tangent oriented along n_F
};

enum class InteriorFaceClass : char {
    Matrix,    // F_I^M (plus faces between two fractured cells not crossed by Gamma)
    Fracture,  // F_I^F: both neighbors fractured and Gamma crosses the face
    Mixed,     // F_I^FM
};

// Effective edge geometry used by assembly and flux evaluation; coincident
// edges carry the perturbed coordinates.
struct EffectiveEdge {
    int n0 = -1, n1 = -1;
    Vec2 a, b;
    Vec2 tangent;
    Vec2 normal;
    double length = 0.0;
    double k_eff = 0.0;
    double aperture = 1.0;
    double porosity = 1.0;
    bool shifted = false;
};

struct IntersectionData {
    std::vector<Vec2> nodes;           // graph node positions (unshifted)
    std::vector<EffectiveEdge> edges;  // effective per-edge geometry
    std::vector<ClippedSegment> segments;
    std::vector<std::vector<int>> element_segments;   // element -> segment indices
    std::vector<char> fractured;                      // element -> in K_h^F
    std::vector<double> fracture_arclength;           // element -> |K cap Gamma|
    std::vector<std::vector<FaceCrossing>> crossings; // face -> crossings
    std::vector<InteriorFaceClass> face_class;        // per face; Matrix for boundary
    std::vector<int> subdomain;                       // element -> Omega_i label; -1 on K_h^F
    int n_subdomains = 0;
    std::vector<int> shifted_edges;

    bool is_fractured(int e) const { return fractured[e] != 0; }
    bool face_crossed(int f) const { return !crossings[f].empty(); }
};

IntersectionData intersect(const Mesh& mesh, const FractureNetwork& network);

// j rounds of refining every element whose closure intersects Gamma.
Mesh refine_around_fractures(const Mesh& mesh, const FractureNetwork& network, int rounds);

// Refine until no vertex patch sees two fractures that are not connected
// within the patch; throws ResolutionError when the level cap is hit first.
Mesh resolve_close_fractures(const Mesh& mesh, const FractureNetwork& network,
                             int max_extra_rounds = 10);

}  // namespace dfm

#endif
