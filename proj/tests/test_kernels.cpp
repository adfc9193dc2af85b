#include "dfm/kernels.hpp"

#include <cmath>
#include <random>
#include <vector>

#include "dfm/csr.hpp"
#include "doctest.h"

using namespace dfm;

namespace {

std::vector<double> random_vector(std::size_t n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<double> v(n);
    for (auto& x : v) x = uni(rng);
    return v;
}

Csr random_csr(int n, int per_row, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> cols(0, n - 1);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    CsrBuilder b(n, n);
    for (int i = 0; i < n; ++i) {
        b.add(i, i, 4.0 + uni(rng));
        for (int k = 0; k < per_row; ++k) b.add(i, cols(rng), uni(rng));
    }
    return b.build();
}

}  // namespace

TEST_CASE("scalar kernels match handwritten loops") {
    const auto x = random_vector(257, 1);
    const auto y0 = random_vector(257, 2);

    double expect = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) expect += x[i] * y0[i];
    CHECK(kern::scalar::dot(x.data(), y0.data(), x.size()) == doctest::Approx(expect));

    auto y = y0;
    kern::scalar::axpy(0.75, x.data(), y.data(), y.size());
    for (std::size_t i = 0; i < y.size(); ++i)
        CHECK(y[i] == doctest::Approx(y0[i] + 0.75 * x[i]));

    y = y0;
    kern::scalar::xpby(x.data(), -0.5, y.data(), y.size());
    for (std::size_t i = 0; i < y.size(); ++i)
        CHECK(y[i] == doctest::Approx(x[i] - 0.5 * y0[i]));
}

#if defined(__x86_64__) || defined(_M_X64)
TEST_CASE("avx2 kernels are equivalent to the scalar reference") {
    if (!kern::avx2::supported()) return;
    const kern::Kernels& simd = kern::avx2::table();
    // Sizes straddling the vector width, including remainders.
    for (std::size_t n : {1u, 3u, 4u, 7u, 64u, 1001u}) {
        const auto a = random_vector(n, 10 + static_cast<unsigned>(n));
        const auto b = random_vector(n, 20 + static_cast<unsigned>(n));
        const double ds = kern::scalar::dot(a.data(), b.data(), n);
        const double dv = simd.dot(a.data(), b.data(), n);
        CHECK(std::abs(ds - dv) <= 1e-13 * (1.0 + std::abs(ds)));

        auto ys = b, yv = b;
        kern::scalar::axpy(1.7, a.data(), ys.data(), n);
        simd.axpy(1.7, a.data(), yv.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(ys[i] == doctest::Approx(yv[i]).epsilon(1e-14));

        ys = b;
        yv = b;
        kern::scalar::xpby(a.data(), -2.25, ys.data(), n);
        simd.xpby(a.data(), -2.25, yv.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(ys[i] == doctest::Approx(yv[i]).epsilon(1e-14));
    }

    const Csr m = random_csr(200, 6, 3);
    const auto x = random_vector(200, 4);
    std::vector<double> ys(200), yv(200);
    kern::scalar::csr_spmv(200, m.row_ptr.data(), m.col.data(), m.val.data(), x.data(),
                           ys.data());
    simd.csr_spmv(200, m.row_ptr.data(), m.col.data(), m.val.data(), x.data(), yv.data());
    for (std::size_t i = 0; i < 200; ++i)
        CHECK(std::abs(ys[i] - yv[i]) <= 1e-13 * (1.0 + std::abs(ys[i])));
}
#endif

TEST_CASE("runtime dispatch picks a valid backend") {
    const kern::Kernels& k = kern::active();
    CHECK(k.name != nullptr);
    const auto a = random_vector(33, 5);
    const double ds = kern::scalar::dot(a.data(), a.data(), a.size());
    const double da = k.dot(a.data(), a.data(), a.size());
    CHECK(std::abs(ds - da) <= 1e-13 * (1.0 + std::abs(ds)));
}

TEST_CASE("csr builder sums duplicate entries and sorts columns") {
    CsrBuilder b(3, 3);
    b.add(0, 0, 1.0);
    b.add(0, 2, 2.0);
    b.add(0, 0, 3.0);
    b.add(2, 1, -1.0);
    const Csr m = b.build();
    CHECK(m.nnz() == 3);
    CHECK(m.diag(0) == doctest::Approx(4.0));
    CHECK(m.row_ptr[1] - m.row_ptr[0] == 2);
    CHECK(m.col[0] == 0);
    CHECK(m.col[1] == 2);
    CHECK(m.row_ptr[2] == m.row_ptr[1]);  // empty row
}
