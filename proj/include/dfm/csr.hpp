#ifndef DFM_CSR_HPP
#define DFM_CSR_HPP

#include <algorithm>
#include <cstddef>
#include <vector>

#include "dfm/kernels.hpp"

namespace dfm {

// Compressed sparse row matrix with sorted, unique column indices per row.
struct Csr {
    int n_rows = 0;
    int n_cols = 0;
    std::vector<int> row_ptr;  // size n_rows + 1
    std::vector<int> col;
    std::vector<double> val;

    std::size_t nnz() const { return val.size(); }

    void mul(const double* x, double* y) const {
        kern::csr_spmv(static_cast<std::size_t>(n_rows), row_ptr.data(), col.data(),
                       val.data(), x, y);
    }

    std::vector<double> mul(const std::vector<double>& x) const {
        std::vector<double> y(static_cast<std::size_t>(n_rows));
        mul(x.data(), y.data());
        return y;
    }

    double diag(int i) const {
        for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
            if (col[k] == i) return val[k];
        return 0.0;
    }
};

// Accumulates (row, col, value) contributions; duplicates are summed.
class CsrBuilder {
public:
    CsrBuilder(int n_rows, int n_cols) : n_rows_(n_rows), n_cols_(n_cols) {}

    void add(int r, int c, double v) { entries_.push_back({r, c, v}); }

    Csr build() const {
        std::vector<Entry> e = entries_;
        std::sort(e.begin(), e.end(), [](const Entry& a, const Entry& b) {
            return a.r != b.r ? a.r < b.r : a.c < b.c;
        });
        Csr m;
        m.n_rows = n_rows_;
        m.n_cols = n_cols_;
        m.row_ptr.assign(static_cast<std::size_t>(n_rows_) + 1, 0);
        std::size_t i = 0;
        while (i < e.size()) {
            std::size_t j = i + 1;
            double s = e[i].v;
            while (j < e.size() && e[j].r == e[i].r && e[j].c == e[i].c) {
                s += e[j].v;
                ++j;
            }
            m.col.push_back(e[i].c);
            m.val.push_back(s);
            ++m.row_ptr[static_cast<std::size_t>(e[i].r) + 1];
            i = j;
        }
        for (int r = 0; r < n_rows_; ++r) m.row_ptr[r + 1] += m.row_ptr[r];
        return m;
    }

private:
    struct Entry {
        int r;
        int c;
        double v;
    };
    int n_rows_;
    int n_cols_;
    std::vector<Entry> entries_;
};

}  // namespace dfm

#endif
