#if defined(__x86_64__) || defined(_M_X64)

#include "dfm/kernels.hpp"

#include <immintrin.h>

#include <cmath>

namespace dfm::kern::avx2 {

bool supported() { return __builtin_cpu_supports("avx2") != 0; }

namespace {

double dot_impl(const double* a, const double* b, std::size_t n) {
    const std::size_t n4 = n - n % 4;
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t i = 0; i < n4; i += 4) {
        const __m256d va = _mm256_loadu_pd(a + i);
        const __m256d vb = _mm256_loadu_pd(b + i);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(va, vb));
    }
    double lanes[4];
    _mm256_storeu_pd(lanes, acc);
    double s = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (std::size_t i = n4; i < n; ++i) s += a[i] * b[i];
    return s;
}

void axpy_impl(double a, const double* x, double* y, std::size_t n) {
    const std::size_t n4 = n - n % 4;
    const __m256d va = _mm256_set1_pd(a);
    for (std::size_t i = 0; i < n4; i += 4) {
        const __m256d vx = _mm256_loadu_pd(x + i);
        const __m256d vy = _mm256_loadu_pd(y + i);
        _mm256_storeu_pd(y + i, _mm256_add_pd(vy, _mm256_mul_pd(va, vx)));
    }
    for (std::size_t i = n4; i < n; ++i) y[i] += a * x[i];
}

void xpby_impl(const double* x, double b, double* y, std::size_t n) {
    const std::size_t n4 = n - n % 4;
    const __m256d vb = _mm256_set1_pd(b);
    for (std::size_t i = 0; i < n4; i += 4) {
        const __m256d vx = _mm256_loadu_pd(x + i);
        const __m256d vy = _mm256_loadu_pd(y + i);
        _mm256_storeu_pd(y + i, _mm256_add_pd(vx, _mm256_mul_pd(vb, vy)));
    }
    for (std::size_t i = n4; i < n; ++i) y[i] = x[i] + b * y[i];
}

double nrm2_impl(const double* a, std::size_t n) { return std::sqrt(dot_impl(a, a, n)); }

void csr_spmv_impl(std::size_t n_rows, const int* row_ptr, const int* col,
                   const double* val, const double* x, double* y) {
    for (std::size_t i = 0; i < n_rows; ++i) {
        const int k0 = row_ptr[i];
        const int k1 = row_ptr[i + 1];
        const int len = k1 - k0;
        const int len4 = len - len % 4;
        __m256d acc = _mm256_setzero_pd();
        for (int k = 0; k < len4; k += 4) {
            const int base = k0 + k;
            const __m256d vv = _mm256_loadu_pd(val + base);
            const __m128i ci = _mm_loadu_si128(reinterpret_cast<const __m128i*>(col + base));
            const __m256d vx = _mm256_i32gather_pd(x, ci, 8);
            acc = _mm256_add_pd(acc, _mm256_mul_pd(vv, vx));
        }
        double lanes[4];
        _mm256_storeu_pd(lanes, acc);
        double s = lanes[0] + lanes[1] + lanes[2] + lanes[3];
        for (int k = k0 + len4; k < k1; ++k) s += val[k] * x[col[k]];
        y[i] = s;
    }
}

}  // namespace

const Kernels& table() {
    static const Kernels t{"avx2", &dot_impl, &axpy_impl, &xpby_impl, &nrm2_impl, &csr_spmv_impl};
    return t;
}

}  // namespace dfm::kern::avx2

#endif
