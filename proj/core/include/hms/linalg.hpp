#pragma once

#include "hms/scalar.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace hms {

/// Sparse matrix over an exact scalar field with optional row/column labels.
/// Row/column order is the label order; every algorithm below is
/// deterministic given that order (pivot rule: first nonzero in label order).
template <class K>
struct SparseMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::map<std::pair<std::size_t, std::size_t>, K> entries;
    std::vector<std::string> row_labels;  // optional, for reports
    std::vector<std::string> col_labels;

    SparseMatrix() = default;
    SparseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c) {}

    void set(std::size_t r, std::size_t c, const K& v) {
        if (FieldOps<K>::is_zero(v))
            entries.erase({r, c});
        else
            entries[{r, c}] = v;
    }

    void add(std::size_t r, std::size_t c, const K& v) {
        auto it = entries.find({r, c});
        K s = (it == entries.end()) ? v : K(it->second + v);
        set(r, c, s);
    }

    K at(std::size_t r, std::size_t c) const {
        auto it = entries.find({r, c});
        return it == entries.end() ? FieldOps<K>::zero() : it->second;
    }

    std::vector<std::vector<K>> dense() const {
        std::vector<std::vector<K>> m(rows, std::vector<K>(cols, FieldOps<K>::zero()));
        for (const auto& [rc, v] : entries) m[rc.first][rc.second] = v;
        return m;
    }
};

namespace detail {

/// Reduced row echelon form; pivots chosen as the first nonzero column,
/// rows in declared order.
template <class K>
struct Echelon {
    std::vector<std::vector<K>> m;
    std::vector<std::size_t> pivot_cols;  // ascending
};

template <class K>
Echelon<K> rref(std::vector<std::vector<K>> m, std::size_t cols) {
    Echelon<K> e;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
        std::size_t sel = row;
        while (sel < m.size() && FieldOps<K>::is_zero(m[sel][col])) ++sel;
        if (sel == m.size()) continue;
        std::swap(m[row], m[sel]);
        K inv_pivot = FieldOps<K>::one() / m[row][col];
        for (std::size_t c = col; c < cols; ++c) m[row][c] = m[row][c] * inv_pivot;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || FieldOps<K>::is_zero(m[r][col])) continue;
            K f = m[r][col];
            for (std::size_t c = col; c < cols; ++c) m[r][c] = m[r][c] - f * m[row][c];
        }
        e.pivot_cols.push_back(col);
        ++row;
    }
    e.m = std::move(m);
    return e;
}

/// Incremental echelon set for greedy independence tests.
template <class K>
class Span {
  public:
    explicit Span(std::size_t dim) : dim_(dim) {}

    /// Reduces v against the span; if a nonzero remainder is left, inserts it
    /// and returns true.
    bool insert(std::vector<K> v) {
        for (const auto& [lead, w] : rows_) {
            if (FieldOps<K>::is_zero(v[lead])) continue;
            K f = v[lead];
            for (std::size_t c = 0; c < dim_; ++c) v[c] = v[c] - f * w[c];
        }
        std::size_t lead = dim_;
        for (std::size_t c = 0; c < dim_; ++c)
            if (!FieldOps<K>::is_zero(v[c])) { lead = c; break; }
        if (lead == dim_) return false;
        K inv = FieldOps<K>::one() / v[lead];
        for (std::size_t c = 0; c < dim_; ++c) v[c] = v[c] * inv;
        rows_.emplace(lead, std::move(v));
        return true;
    }

    std::size_t rank() const { return rows_.size(); }

  private:
    std::size_t dim_;
    std::map<std::size_t, std::vector<K>> rows_;  // leading index -> reduced vector
};

}  // namespace detail

/// Exact basis of the null space, deterministic given input order.
/// Each vector is indexed by column; the j-th basis vector has 1 at the j-th
/// free column and is reduced elsewhere.
template <class K>
std::vector<std::vector<K>> kernel_basis(const SparseMatrix<K>& m) {
    auto e = detail::rref(m.dense(), m.cols);
    std::vector<bool> is_pivot(m.cols, false);
    for (auto c : e.pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<K>> basis;
    for (std::size_t f = 0; f < m.cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<K> v(m.cols, FieldOps<K>::zero());
        v[f] = FieldOps<K>::one();
        for (std::size_t r = 0; r < e.pivot_cols.size(); ++r)
            v[e.pivot_cols[r]] = FieldOps<K>::zero() - e.m[r][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Kernel basis together with each vector's free (non-pivot) column index.
template <class K>
std::vector<std::pair<std::size_t, std::vector<K>>> kernel_basis_indexed(
    const SparseMatrix<K>& m) {
    auto e = detail::rref(m.dense(), m.cols);
    std::vector<bool> is_pivot(m.cols, false);
    for (auto c : e.pivot_cols) is_pivot[c] = true;
    std::vector<std::pair<std::size_t, std::vector<K>>> basis;
    for (std::size_t f = 0; f < m.cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<K> v(m.cols, FieldOps<K>::zero());
        v[f] = FieldOps<K>::one();
        for (std::size_t r = 0; r < e.pivot_cols.size(); ++r)
            v[e.pivot_cols[r]] = FieldOps<K>::zero() - e.m[r][f];
        basis.emplace_back(f, std::move(v));
    }
    return basis;
}

/// Row indices forming a complement of the image, greedy in row-label order:
/// dimension = rows - rank.
template <class K>
std::vector<std::size_t> cokernel_basis(const SparseMatrix<K>& m) {
    detail::Span<K> span(m.rows);
    for (std::size_t c = 0; c < m.cols; ++c) {
        std::vector<K> col(m.rows, FieldOps<K>::zero());
        for (std::size_t r = 0; r < m.rows; ++r) col[r] = m.at(r, c);
        span.insert(std::move(col));
    }
    std::vector<std::size_t> complement;
    for (std::size_t r = 0; r < m.rows; ++r) {
        std::vector<K> e(m.rows, FieldOps<K>::zero());
        e[r] = FieldOps<K>::one();
        if (span.insert(std::move(e))) complement.push_back(r);
    }
    return complement;
}

template <class K>
std::size_t rank(const SparseMatrix<K>& m) {
    return detail::rref(m.dense(), m.cols).pivot_cols.size();
}

}  // namespace hms
