#include "dfm/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "dfm/errors.hpp"
#include "dfm/kernels.hpp"

namespace dfm {

void IdentityPreconditioner::apply(const double* r, double* z, std::size_t n) const {
    std::copy(r, r + n, z);
}

JacobiPreconditioner::JacobiPreconditioner(const Csr& a) {
    inv_diag_.resize(static_cast<std::size_t>(a.n_rows), 1.0);
    for (int i = 0; i < a.n_rows; ++i) {
        const double d = a.diag(i);
        inv_diag_[i] = d != 0.0 ? 1.0 / d : 1.0;
    }
}

void JacobiPreconditioner::apply(const double* r, double* z, std::size_t n) const {
    for (std::size_t i = 0; i < n; ++i) z[i] = r[i] * inv_diag_[i];
}

Ic0Preconditioner::Ic0Preconditioner(const Csr& a) {
    double shift = 0.0;
    for (int attempt = 0; attempt < 10; ++attempt) {
        if (factor(a, shift)) return;
        shift = shift == 0.0 ? 1e-10 : shift * 100.0;
    }
    throw NumericalError("ic0: factorization failed for all diagonal shifts", 0.0);
}

bool Ic0Preconditioner::factor(const Csr& a, double shift) {
    const int n = a.n_rows;
    lptr_.assign(static_cast<std::size_t>(n) + 1, 0);
    lcol_.clear();
    lval_.clear();
    std::vector<int> diag_pos(n, -1);
    for (int i = 0; i < n; ++i) {
        for (int k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
            if (a.col[k] > i) continue;
            if (a.col[k] == i) diag_pos[i] = static_cast<int>(lcol_.size());
            lcol_.push_back(a.col[k]);
            double v = a.val[k];
            if (a.col[k] == i) v *= 1.0 + shift;
            lval_.push_back(v);
        }
        lptr_[i + 1] = static_cast<int>(lcol_.size());
        if (diag_pos[i] < 0) return false;
    }
    // Up-looking IC(0): row i of L from the already factored rows.
    std::vector<double> work(n, 0.0);
    std::vector<int> marker(n, -1);
    for (int i = 0; i < n; ++i) {
        for (int k = lptr_[i]; k < lptr_[i + 1]; ++k) {
            work[lcol_[k]] = lval_[k];
            marker[lcol_[k]] = i;
        }
        for (int k = lptr_[i]; k < diag_pos[i]; ++k) {
            const int j = lcol_[k];
            double s = work[j];
            for (int m = lptr_[j]; m < diag_pos[j]; ++m) {
                const int c = lcol_[m];
                if (marker[c] == i) s -= work[c] * lval_[m];
            }
            work[j] = s / lval_[diag_pos[j]];
        }
        double d = work[i];
        for (int k = lptr_[i]; k < diag_pos[i]; ++k) d -= work[lcol_[k]] * work[lcol_[k]];
        if (d <= 0.0) return false;
        for (int k = lptr_[i]; k < diag_pos[i]; ++k) lval_[k] = work[lcol_[k]];
        lval_[diag_pos[i]] = std::sqrt(d);
    }
    return true;
}

void Ic0Preconditioner::apply(const double* r, double* z, std::size_t n) const {
    // Forward solve L z = r (diagonal stored explicitly).
    for (std::size_t i = 0; i < n; ++i) {
        double s = r[i];
        int dp = lptr_[i + 1] - 1;  // diagonal is the last lower entry in row i
        for (int k = lptr_[i]; k < dp; ++k) s -= lval_[k] * z[lcol_[k]];
        z[i] = s / lval_[dp];
    }
    // Backward solve L^T z = z, sweeping columns of L.
    for (std::size_t i = n; i-- > 0;) {
        const int dp = lptr_[i + 1] - 1;
        z[i] /= lval_[dp];
        const double zi = z[i];
        for (int k = lptr_[i]; k < dp; ++k) z[lcol_[k]] -= lval_[k] * zi;
    }
}

Ilu0Preconditioner::Ilu0Preconditioner(const Csr& a) : lu_(a) {
    const int n = lu_.n_rows;
    dpos_.assign(n, -1);
    for (int i = 0; i < n; ++i)
        for (int k = lu_.row_ptr[i]; k < lu_.row_ptr[i + 1]; ++k)
            if (lu_.col[k] == i) dpos_[i] = k;
    for (int i = 0; i < n; ++i)
        if (dpos_[i] < 0) throw NumericalError("ilu0: missing diagonal entry", 0.0);
    std::vector<int> pos(n, -1);
    for (int i = 0; i < n; ++i) {
        for (int k = lu_.row_ptr[i]; k < lu_.row_ptr[i + 1]; ++k) pos[lu_.col[k]] = k;
        for (int k = lu_.row_ptr[i]; k < lu_.row_ptr[i + 1]; ++k) {
            const int j = lu_.col[k];
            if (j >= i) break;
            const double piv = lu_.val[dpos_[j]];
            if (piv == 0.0) throw NumericalError("ilu0: zero pivot", 0.0);
            const double lij = lu_.val[k] / piv;
            lu_.val[k] = lij;
            for (int m = dpos_[j] + 1; m < lu_.row_ptr[j + 1]; ++m) {
                const int p = pos[lu_.col[m]];
                if (p >= 0) lu_.val[p] -= lij * lu_.val[m];
            }
        }
        for (int k = lu_.row_ptr[i]; k < lu_.row_ptr[i + 1]; ++k) pos[lu_.col[k]] = -1;
    }
}

void Ilu0Preconditioner::apply(const double* r, double* z, std::size_t n) const {
    for (std::size_t i = 0; i < n; ++i) {
        double s = r[i];
        for (int k = lu_.row_ptr[i]; k < dpos_[i]; ++k) s -= lu_.val[k] * z[lu_.col[k]];
        z[i] = s;
    }
    for (std::size_t i = n; i-- > 0;) {
        double s = z[i];
        for (int k = dpos_[i] + 1; k < lu_.row_ptr[i + 1]; ++k) s -= lu_.val[k] * z[lu_.col[k]];
        z[i] = s / lu_.val[dpos_[i]];
    }
}

SolveReport pcg(const Csr& a, const std::vector<double>& b, std::vector<double>& x,
                const Preconditioner& m, double rel_tol, int max_iter) {
    const std::size_t n = b.size();
    SolveReport rep;
    std::vector<double> r(n), z(n), p(n), q(n);
    a.mul(x.data(), r.data());
    for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
    const double bnorm = kern::nrm2(b.data(), n);
    const double stop = rel_tol * (bnorm > 0.0 ? bnorm : 1.0);
    double rnorm = kern::nrm2(r.data(), n);
    if (rnorm <= stop) {
        rep.converged = true;
        rep.rel_residual = bnorm > 0.0 ? rnorm / bnorm : rnorm;
        return rep;
    }
    m.apply(r.data(), z.data(), n);
    p = z;
    double rho = kern::dot(r.data(), z.data(), n);
    for (int it = 1; it <= max_iter; ++it) {
        a.mul(p.data(), q.data());
        const double pq = kern::dot(p.data(), q.data(), n);
        if (pq == 0.0) break;
        const double alpha = rho / pq;
        kern::axpy(alpha, p.data(), x.data(), n);
        kern::axpy(-alpha, q.data(), r.data(), n);
        rnorm = kern::nrm2(r.data(), n);
        rep.iterations = it;
        if (rnorm <= stop) {
            rep.converged = true;
            break;
        }
        m.apply(r.data(), z.data(), n);
        const double rho_new = kern::dot(r.data(), z.data(), n);
        kern::xpby(z.data(), rho_new / rho, p.data(), n);
        rho = rho_new;
    }
    rep.rel_residual = bnorm > 0.0 ? rnorm / bnorm : rnorm;
    return rep;
}

SolveReport bicgstab(const Csr& a, const std::vector<double>& b, std::vector<double>& x,
                     const Preconditioner& m, double rel_tol, int max_iter) {
    const std::size_t n = b.size();
    SolveReport rep;
    std::vector<double> r(n), r0(n), p(n), v(n), s(n), t(n), ph(n), sh(n);
    a.mul(x.data(), r.data());
    for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
    const double bnorm = kern::nrm2(b.data(), n);
    const double stop = rel_tol * (bnorm > 0.0 ? bnorm : 1.0);
    double rnorm = kern::nrm2(r.data(), n);
    if (rnorm <= stop) {
        rep.converged = true;
        rep.rel_residual = bnorm > 0.0 ? rnorm / bnorm : rnorm;
        return rep;
    }
    r0 = r;
    double rho = 1.0, alpha = 1.0, omega = 1.0;
    std::fill(p.begin(), p.end(), 0.0);
    std::fill(v.begin(), v.end(), 0.0);
    for (int it = 1; it <= max_iter; ++it) {
        const double rho_new = kern::dot(r0.data(), r.data(), n);
        if (rho_new == 0.0) break;
        const double beta = (rho_new / rho) * (alpha / omega);
        for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * (p[i] - omega * v[i]);
        m.apply(p.data(), ph.data(), n);
        a.mul(ph.data(), v.data());
        const double r0v = kern::dot(r0.data(), v.data(), n);
        if (r0v == 0.0) break;
        alpha = rho_new / r0v;
        for (std::size_t i = 0; i < n; ++i) s[i] = r[i] - alpha * v[i];
        if (kern::nrm2(s.data(), n) <= stop) {
            kern::axpy(alpha, ph.data(), x.data(), n);
            r = s;
            rnorm = kern::nrm2(r.data(), n);
            rep.iterations = it;
            rep.converged = true;
            break;
        }
        m.apply(s.data(), sh.data(), n);
        a.mul(sh.data(), t.data());
        const double tt = kern::dot(t.data(), t.data(), n);
        if (tt == 0.0) break;
        omega = kern::dot(t.data(), s.data(), n) / tt;
        for (std::size_t i = 0; i < n; ++i) x[i] += alpha * ph[i] + omega * sh[i];
        for (std::size_t i = 0; i < n; ++i) r[i] = s[i] - omega * t[i];
        rho = rho_new;
        rnorm = kern::nrm2(r.data(), n);
        rep.iterations = it;
        if (rnorm <= stop) {
            rep.converged = true;
            break;
        }
        if (omega == 0.0) break;
    }
    rep.rel_residual = bnorm > 0.0 ? rnorm / bnorm : rnorm;
    return rep;
}

std::vector<double> solve_spd(const Csr& a, const std::vector<double>& b, double rel_tol,
                              int max_iter, const std::string& what) {
    std::vector<double> x(b.size(), 0.0);
    Ic0Preconditioner m(a);
    SolveReport rep = pcg(a, b, x, m, rel_tol, max_iter);
    if (!rep.converged)
        throw NumericalError(what + ": pcg stalled at relative residual " +
                                 std::to_string(rep.rel_residual),
                             rep.rel_residual);
    return x;
}

std::vector<double> solve_unsymmetric(const Csr& a, const std::vector<double>& b,
                                      const std::vector<double>& guess, double rel_tol,
                                      int max_iter, const std::string& what) {
    std::vector<double> x = guess;
    x.resize(b.size(), 0.0);
    Ilu0Preconditioner m(a);
    SolveReport rep = bicgstab(a, b, x, m, rel_tol, max_iter);
    if (!rep.converged)
        throw NumericalError(what + ": bicgstab stalled at relative residual " +
                                 std::to_string(rep.rel_residual),
                             rep.rel_residual);
    return x;
}

double estimate_condition_2norm(const Csr& a, int power_iters, unsigned seed) {
    const std::size_t n = static_cast<std::size_t>(a.n_rows);
    if (n == 0) return 1.0;
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<double> v(n), w(n);
    for (auto& vi : v) vi = uni(rng);

    double lambda_max = 0.0;
    for (int it = 0; it < power_iters; ++it) {
        const double nv = kern::nrm2(v.data(), n);
        if (nv == 0.0) break;
        for (auto& vi : v) vi /= nv;
        a.mul(v.data(), w.data());
        lambda_max = kern::dot(v.data(), w.data(), n);
        std::swap(v, w);
    }
    lambda_max = std::abs(lambda_max);

    // Smallest eigenvalue by inverse iteration; each step applies A^{-1}
    // through a preconditioned CG solve.
    Ic0Preconditioner m(a);
    for (auto& vi : v) vi = uni(rng);
    double lambda_min = lambda_max;
    std::vector<double> x(n, 0.0);
    const int inverse_iters = std::max(20, power_iters / 4);
    for (int it = 0; it < inverse_iters; ++it) {
        const double nv = kern::nrm2(v.data(), n);
        if (nv == 0.0) break;
        for (auto& vi : v) vi /= nv;
        std::fill(x.begin(), x.end(), 0.0);
        pcg(a, v, x, m, 1e-9, 100000);
        const double rayleigh = kern::dot(v.data(), x.data(), n);
        if (rayleigh != 0.0) lambda_min = 1.0 / std::abs(rayleigh);
        v = x;
    }
    if (lambda_min == 0.0) return std::numeric_limits<double>::infinity();
    return lambda_max / lambda_min;
}

}  // namespace dfm
