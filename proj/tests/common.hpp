#ifndef DFM_TESTS_COMMON_HPP
#define DFM_TESTS_COMMON_HPP

#include <vector>

#include "dfm/fracture.hpp"
#include "dfm/mesh.hpp"

namespace dfm::testing {

inline const Rect kUnit{0.0, 0.0, 1.0, 1.0};

// The six input segments of the regular fracture network on the unit square.
inline std::vector<RawFracture> regular_network_segments(double w = 1e-4, double kf = 1e4) {
    auto seg = [&](double x0, double y0, double x1, double y1) {
        RawFracture f;
        f.a = {x0, y0};
        f.b = {x1, y1};
        f.aperture = w;
        f.permeability = kf;
        f.porosity = 1.0;
        return f;
    };
    return {seg(0.0, 0.5, 1.0, 0.5),      seg(0.5, 0.0, 0.5, 1.0),
            seg(0.5, 0.75, 1.0, 0.75),    seg(0.75, 0.5, 0.75, 1.0),
            seg(0.5, 0.625, 0.75, 0.625), seg(0.625, 0.5, 0.625, 0.75)};
}

// Left inflow u.n = -1, right Dirichlet p = 1, no-flow top and bottom.
inline BoundaryLayout regular_case_layout() {
    BoundaryLayout l;
    l.segments = {{kLeft, 0.0, 1.0, BcKind::Neumann, -1.0},
                  {kRight, 0.0, 1.0, BcKind::Dirichlet, 1.0},
                  {kBottom, 0.0, 1.0, BcKind::Neumann, 0.0},
                  {kTop, 0.0, 1.0, BcKind::Neumann, 0.0}};
    return l;
}

}  // namespace dfm::testing

#endif
