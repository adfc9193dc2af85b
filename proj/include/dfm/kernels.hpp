#ifndef DFM_KERNELS_HPP
#define DFM_KERNELS_HPP

#include <cstddef>
#include <cstdint>

// Dense vector and CSR kernels underneath the Krylov solvers. Scalar
// reference implementations are always compiled; an AVX2 (x86-64) or NEON
// (aarch64) variant is selected once at startup when the CPU supports it.
// The environment variable DFM_SIMD=scalar|avx2|neon|auto overrides the pick.

namespace dfm::kern {

struct Kernels {
    const char* name;
    double (*dot)(const double*, const double*, std::size_t);
    void (*axpy)(double, const double*, double*, std::size_t);          // y += a*x
    void (*xpby)(const double*, double, double*, std::size_t);          // y = x + b*y
    double (*nrm2)(const double*, std::size_t);
    void (*csr_spmv)(std::size_t n_rows, const int* row_ptr, const int* col,
                     const double* val, const double* x, double* y);    // y = A x
};

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void xpby(const double* x, double b, double* y, std::size_t n);
double nrm2(const double* a, std::size_t n);
void csr_spmv(std::size_t n_rows, const int* row_ptr, const int* col,
              const double* val, const double* x, double* y);
const Kernels& table();
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
bool supported();
const Kernels& table();
}  // namespace avx2
#endif

#if defined(__aarch64__)
namespace neon {
bool supported();
const Kernels& table();
}  // namespace neon
#endif

// Active (runtime selected) kernel table.
const Kernels& active();

inline double dot(const double* a, const double* b, std::size_t n) { return active().dot(a, b, n); }
inline void axpy(double a, const double* x, double* y, std::size_t n) { active().axpy(a, x, y, n); }
inline void xpby(const double* x, double b, double* y, std::size_t n) { active().xpby(x, b, y, n); }
inline double nrm2(const double* a, std::size_t n) { return active().nrm2(a, n); }
inline void csr_spmv(std::size_t n_rows, const int* row_ptr, const int* col,
                     const double* val, const double* x, double* y) {
    active().csr_spmv(n_rows, row_ptr, col, val, x, y);
}

}  // namespace dfm::kern

#endif
