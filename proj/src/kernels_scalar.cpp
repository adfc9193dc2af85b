#include "dfm/kernels.hpp"

#include <cmath>

namespace dfm::kern::scalar {

double dot(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void xpby(const double* x, double b, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + b * y[i];
}

double nrm2(const double* a, std::size_t n) {
    return std::sqrt(dot(a, a, n));
}

void csr_spmv(std::size_t n_rows, const int* row_ptr, const int* col,
              const double* val, const double* x, double* y) {
    for (std::size_t i = 0; i < n_rows; ++i) {
        double s = 0.0;
        for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k) s += val[k] * x[col[k]];
        y[i] = s;
    }
}

const Kernels& table() {
    static const Kernels t{"scalar", &dot, &axpy, &xpby, &nrm2, &csr_spmv};
    return t;
}

}  // namespace dfm::kern::scalar
