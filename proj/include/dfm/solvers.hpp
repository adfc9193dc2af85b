#ifndef DFM_SOLVERS_HPP
#define DFM_SOLVERS_HPP

#include <memory>
#include <string>
#include <vector>

#include "dfm/csr.hpp"

namespace dfm {

struct SolveReport {
    int iterations = 0;
    double rel_residual = 0.0;
    bool converged = false;
};

// z = M^{-1} r
class Preconditioner {
public:
    virtual ~Preconditioner() = default;
    virtual void apply(const double* r, double* z, std::size_t n) const = 0;
};

class IdentityPreconditioner final : public Preconditioner {
public:
    void apply(const double* r, double* z, std::size_t n) const override;
};

class JacobiPreconditioner final : public Preconditioner {
public:
    explicit JacobiPreconditioner(const Csr& a);
    void apply(const double* r, double* z, std::size_t n) const override;

private:
    std::vector<double> inv_diag_;
};

// Incomplete Cholesky with zero fill for SPD matrices. Retries with a
// boosted diagonal when a pivot goes non-positive.
class Ic0Preconditioner final : public Preconditioner {
public:
    explicit Ic0Preconditioner(const Csr& a);
    void apply(const double* r, double* z, std::size_t n) const override;

private:
    // lower triangle (including diagonal) in CSR layout
    std::vector<int> lptr_, lcol_;
    std::vector<double> lval_;
    bool factor(const Csr& a, double shift);
};

// Incomplete LU with zero fill for the nonsymmetric transport systems.
class Ilu0Preconditioner final : public Preconditioner {
public:
    explicit Ilu0Preconditioner(const Csr& a);
    void apply(const double* r, double* z, std::size_t n) const override;

private:
    Csr lu_;                  // combined L (unit diag, below) and U factors
    std::vector<int> dpos_;   // position of the diagonal in each row
};

// Preconditioned conjugate gradient; x holds the initial guess on entry.
SolveReport pcg(const Csr& a, const std::vector<double>& b, std::vector<double>& x,
                const Preconditioner& m, double rel_tol, int max_iter);

// Preconditioned BiCGstab for the nonsymmetric transport systems.
SolveReport bicgstab(const Csr& a, const std::vector<double>& b, std::vector<double>& x,
                     const Preconditioner& m, double rel_tol, int max_iter);

// Throwing wrappers used by the assembly-level code.
std::vector<double> solve_spd(const Csr& a, const std::vector<double>& b,
                              double rel_tol = 1e-12, int max_iter = 200000,
                              const std::string& what = "spd solve");
std::vector<double> solve_unsymmetric(const Csr& a, const std::vector<double>& b,
                                      const std::vector<double>& guess,
                                      double rel_tol = 1e-12, int max_iter = 100000,
                                      const std::string& what = "transport solve");

// 2-norm condition estimate by power iteration on A and on A^{-1} (the
// inverse applied through preconditioned CG solves).
double estimate_condition_2norm(const Csr& a, int power_iters = 200, unsigned seed = 12345u);

}  // namespace dfm

#endif
