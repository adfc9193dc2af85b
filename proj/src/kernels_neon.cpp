#if defined(__aarch64__)

#include "dfm/kernels.hpp"

#include <arm_neon.h>

#include <cmath>

namespace dfm::kern::neon {

bool supported() { return true; }  // NEON is baseline on aarch64

namespace {

double dot_impl(const double* a, const double* b, std::size_t n) {
    const std::size_t n2 = n - n % 2;
    float64x2_t acc = vdupq_n_f64(0.0);
    for (std::size_t i = 0; i < n2; i += 2) {
        acc = vfmaq_f64(acc, vld1q_f64(a + i), vld1q_f64(b + i));
    }
    double s = vaddvq_f64(acc);
    for (std::size_t i = n2; i < n; ++i) s += a[i] * b[i];
    return s;
}

void axpy_impl(double a, const double* x, double* y, std::size_t n) {
    const std::size_t n2 = n - n % 2;
    const float64x2_t va = vdupq_n_f64(a);
    for (std::size_t i = 0; i < n2; i += 2) {
        vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
    }
    for (std::size_t i = n2; i < n; ++i) y[i] += a * x[i];
}

void xpby_impl(const double* x, double b, double* y, std::size_t n) {
    const std::size_t n2 = n - n % 2;
    const float64x2_t vb = vdupq_n_f64(b);
    for (std::size_t i = 0; i < n2; i += 2) {
        vst1q_f64(y + i, vfmaq_f64(vld1q_f64(x + i), vb, vld1q_f64(y + i)));
    }
    for (std::size_t i = n2; i < n; ++i) y[i] = x[i] + b * y[i];
}

double nrm2_impl(const double* a, std::size_t n) { return std::sqrt(dot_impl(a, a, n)); }

void csr_spmv_impl(std::size_t n_rows, const int* row_ptr, const int* col,
                   const double* val, const double* x, double* y) {
    for (std::size_t i = 0; i < n_rows; ++i) {
        double s = 0.0;
        for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k) s += val[k] * x[col[k]];
        y[i] = s;
    }
}

}  // namespace

const Kernels& table() {
    static const Kernels t{"neon", &dot_impl, &axpy_impl, &xpby_impl, &nrm2_impl, &csr_spmv_impl};
    return t;
}

}  // namespace dfm::kern::neon

#endif
