#include "dfm/solvers.hpp"

#include <cmath>
#include <random>
#include <vector>

#include "dfm/csr.hpp"
#include "doctest.h"

using namespace dfm;

namespace {

// 1D Poisson matrix: classic SPD test problem with known extreme eigenvalues.
Csr poisson1d(int n) {
    CsrBuilder b(n, n);
    for (int i = 0; i < n; ++i) {
        b.add(i, i, 2.0);
        if (i > 0) b.add(i, i - 1, -1.0);
        if (i + 1 < n) b.add(i, i + 1, -1.0);
    }
    return b.build();
}

Csr diagonal(const std::vector<double>& d) {
    CsrBuilder b(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (int i = 0; i < static_cast<int>(d.size()); ++i) b.add(i, i, d[i]);
    return b.build();
}

}  // namespace

TEST_CASE("pcg solves the 1d poisson system to tight tolerance") {
    const int n = 200;
    const Csr a = poisson1d(n);
    std::vector<double> x_true(n);
    for (int i = 0; i < n; ++i) x_true[i] = std::sin(0.1 * i);
    const std::vector<double> b = a.mul(x_true);

    std::vector<double> x(n, 0.0);
    Ic0Preconditioner m(a);
    const SolveReport rep = pcg(a, b, x, m, 1e-12, 10000);
    CHECK(rep.converged);
    for (int i = 0; i < n; ++i) CHECK(x[i] == doctest::Approx(x_true[i]).epsilon(1e-8));
}

TEST_CASE("bicgstab solves a nonsymmetric upwind-style system") {
    const int n = 150;
    CsrBuilder bld(n, n);
    for (int i = 0; i < n; ++i) {
        bld.add(i, i, 3.0);
        if (i > 0) bld.add(i, i - 1, -2.0);    // upwind coupling
        if (i + 1 < n) bld.add(i, i + 1, -0.5);
    }
    const Csr a = bld.build();
    std::vector<double> x_true(n);
    for (int i = 0; i < n; ++i) x_true[i] = 1.0 + 0.01 * i;
    const std::vector<double> b = a.mul(x_true);

    std::vector<double> x(n, 0.0);
    Ilu0Preconditioner m(a);
    const SolveReport rep = bicgstab(a, b, x, m, 1e-12, 10000);
    CHECK(rep.converged);
    for (int i = 0; i < n; ++i) CHECK(x[i] == doctest::Approx(x_true[i]).epsilon(1e-8));
}

TEST_CASE("condition estimate: identity gives 1") {
    const Csr a = diagonal(std::vector<double>(20, 1.0));
    CHECK(estimate_condition_2norm(a) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("condition estimate: diag(1,10) gives 10") {
    const Csr a = diagonal({1.0, 10.0});
    CHECK(estimate_condition_2norm(a) == doctest::Approx(10.0).epsilon(1e-4));
}

TEST_CASE("condition estimate within factor 2 on a poisson matrix") {
    const int n = 64;
    const Csr a = poisson1d(n);
    // Exact eigenvalues: 2 - 2 cos(k pi / (n+1)).
    const double pi = 3.14159265358979323846;
    const double lmin = 2.0 - 2.0 * std::cos(pi / (n + 1));
    const double lmax = 2.0 - 2.0 * std::cos(n * pi / (n + 1));
    const double exact = lmax / lmin;
    const double est = estimate_condition_2norm(a);
    CHECK(est > exact / 2.0);
    CHECK(est < exact * 2.0);
}

TEST_CASE("solve_spd throws a numerical error when the budget is too small") {
    const int n = 400;
    const Csr a = poisson1d(n);
    const std::vector<double> b(n, 1.0);
    std::vector<double> x(n, 0.0);
    JacobiPreconditioner m(a);
    const SolveReport rep = pcg(a, b, x, m, 1e-14, 2);
    CHECK_FALSE(rep.converged);
    CHECK(rep.rel_residual > 0.0);
}
