#include "dfm/mesh.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include "dfm/errors.hpp"
#include "doctest.h"

using namespace dfm;

namespace {
const Rect kUnit{0.0, 0.0, 1.0, 1.0};

double total_area(const Mesh& m) {
    double a = 0.0;
    for (const auto& e : m.elements()) a += e.box.area();
    return a;
}
}  // namespace

TEST_CASE("build_uniform basic counts") {
    const Mesh m37 = Mesh::build_uniform(37, 37, kUnit);
    CHECK(m37.n_elements() == 1369);
    CHECK(m37.n_vertices() == 1444);
    CHECK(m37.constraints().empty());

    const Mesh m1 = Mesh::build_uniform(1, 1, kUnit);
    CHECK(m1.n_elements() == 1);
    CHECK(m1.n_vertices() == 4);

    const Mesh m76 = Mesh::build_uniform(7, 6, Rect{0.0, 0.0, 700.0, 600.0});
    CHECK(m76.n_elements() == 42);
    for (const auto& e : m76.elements()) {
        CHECK(e.box.width() == doctest::Approx(100.0));
        CHECK(e.box.height() == doctest::Approx(100.0));
    }
}

TEST_CASE("build_uniform rejects bad input") {
    CHECK_THROWS_AS(Mesh::build_uniform(0, 3, kUnit), std::invalid_argument);
    CHECK_THROWS_AS(Mesh::build_uniform(2, 2, Rect{0, 0, 0, 1}), std::invalid_argument);
}

TEST_CASE("uniform NxN face and vertex counts") {
    for (int n = 1; n <= 10; ++n) {
        const Mesh m = Mesh::build_uniform(n, n, kUnit);
        CHECK(m.n_vertices() == (n + 1) * (n + 1));
        CHECK(m.n_faces() == 2 * n * (n + 1));
    }
}

TEST_CASE("boundary face normals point outward") {
    const Mesh m = Mesh::build_uniform(3, 2, kUnit);
    for (const auto& f : m.faces()) {
        if (!f.boundary()) continue;
        switch (f.boundary_side) {
            case kLeft: CHECK(f.normal.x == doctest::Approx(-1.0)); break;
            case kRight: CHECK(f.normal.x == doctest::Approx(1.0)); break;
            case kBottom: CHECK(f.normal.y == doctest::Approx(-1.0)); break;
            case kTop: CHECK(f.normal.y == doctest::Approx(1.0)); break;
            default: FAIL("boundary face without side");
        }
    }
}

TEST_CASE("interior faces have two neighbors, boundary faces one") {
    const Mesh m = Mesh::build_uniform(4, 3, kUnit);
    int boundary = 0;
    for (const auto& f : m.faces()) {
        CHECK(f.elem_minus >= 0);
        if (f.boundary())
            ++boundary;
        else
            CHECK(f.elem_plus >= 0);
    }
    CHECK(boundary == 2 * (4 + 3));
}

TEST_CASE("refining every element of a 2x2 mesh equals a 4x4 mesh") {
    const Mesh m = Mesh::build_uniform(2, 2, kUnit);
    const Mesh r = m.refine({0, 1, 2, 3});
    CHECK(r.n_elements() == 16);
    CHECK(r.n_vertices() == 25);
    CHECK(r.constraints().empty());
    CHECK(total_area(r) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("refining one element of a 2x2 mesh introduces two hanging nodes") {
    const Mesh m = Mesh::build_uniform(2, 2, kUnit);
    const Mesh r = m.refine({0});
    CHECK(r.n_elements() == 7);
    CHECK(r.n_vertices() == 14);
    CHECK(r.constraints().size() == 2);
    CHECK(total_area(r) == doctest::Approx(1.0).epsilon(1e-12));
    // Each constrained vertex is the midpoint of its parents.
    for (const auto& c : r.constraints()) {
        const Vec2 mid = 0.5 * (r.vertices()[c.parent0] + r.vertices()[c.parent1]);
        CHECK(r.vertices()[c.vertex].x == doctest::Approx(mid.x));
        CHECK(r.vertices()[c.vertex].y == doctest::Approx(mid.y));
    }
}

TEST_CASE("refining the only element of a 1x1 mesh") {
    const Mesh m = Mesh::build_uniform(1, 1, kUnit);
    const Mesh r = m.refine({0});
    CHECK(r.n_elements() == 4);
    CHECK(r.n_vertices() == 9);
    CHECK(r.constraints().empty());
}

TEST_CASE("refine rejects unknown element ids") {
    const Mesh m = Mesh::build_uniform(2, 2, kUnit);
    CHECK_THROWS_AS(m.refine({17}), std::invalid_argument);
}

TEST_CASE("2:1 balance cascades and keeps one hanging node per face") {
    Mesh m = Mesh::build_uniform(3, 3, kUnit);
    // Refine one corner twice; the cascade must keep neighbors within one level.
    m = m.refine({0});
    m = m.refine({0});
    m = m.refine({0});
    for (const auto& f : m.faces()) {
        if (f.boundary()) continue;
        CHECK(std::abs(m.elements()[f.elem_minus].level - m.elements()[f.elem_plus].level) <= 1);
    }
    CHECK(total_area(m) == doctest::Approx(1.0).epsilon(1e-12));
    // No vertex appears in two constraints.
    std::set<int> seen;
    for (const auto& c : m.constraints()) {
        CHECK(seen.insert(c.vertex).second);
    }
    // Parent provenance points at valid elements of the previous mesh.
    for (const auto& e : m.elements()) CHECK(e.parent >= 0);
}

TEST_CASE("classify_boundary: benchmark-style layout on a 2x2 mesh") {
    const Mesh m = Mesh::build_uniform(2, 2, kUnit);
    BoundaryLayout layout;
    layout.segments = {{kLeft, 0.0, 1.0, BcKind::Neumann, -1.0},
                       {kRight, 0.0, 1.0, BcKind::Dirichlet, 1.0},
                       {kBottom, 0.0, 1.0, BcKind::Neumann, 0.0},
                       {kTop, 0.0, 1.0, BcKind::Neumann, 0.0}};
    const FaceSets sets = classify_boundary(m, layout);
    CHECK(sets.dirichlet.size() == 2);
    CHECK(sets.neumann.size() == 6);
}

TEST_CASE("classify_boundary: all-dirichlet 1x1 mesh") {
    const Mesh m = Mesh::build_uniform(1, 1, kUnit);
    const FaceSets sets = classify_boundary(m, BoundaryLayout::all_dirichlet(kUnit, 0.0));
    CHECK(sets.dirichlet.size() == 4);
    CHECK(sets.neumann.empty());
}

TEST_CASE("classify_boundary: breakpoint inside a face is an error") {
    const Mesh m = Mesh::build_uniform(1, 1, kUnit);
    BoundaryLayout layout;
    layout.segments = {{kLeft, 0.0, 0.4, BcKind::Neumann, 0.0},
                       {kLeft, 0.4, 1.0, BcKind::Dirichlet, 1.0},
                       {kRight, 0.0, 1.0, BcKind::Dirichlet, 1.0},
                       {kBottom, 0.0, 1.0, BcKind::Neumann, 0.0},
                       {kTop, 0.0, 1.0, BcKind::Neumann, 0.0}};
    CHECK_THROWS_AS(classify_boundary(m, layout), ConfigError);
}

TEST_CASE("locate finds the containing element") {
    Mesh m = Mesh::build_uniform(4, 4, kUnit);
    m = m.refine({5});
    const int e = m.locate({0.01, 0.01});
    REQUIRE(e >= 0);
    CHECK(m.elements()[e].box.contains({0.01, 0.01}));
    CHECK(m.locate({2.0, 0.5}) == -1);
}
