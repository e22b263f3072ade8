#pragma once

// Column-wise sparse assembly. Every operator in the library is built by a
// per-column generator (one basis state in, a handful of basis states out),
// which makes the columns independent. The OpenMP kernel fills per-column
// buffers in parallel and concatenates them in column order, so the result
// is bit-identical to the serial reference below.

#include <algorithm>
#include <vector>

#include "wicklab/types.hpp"

namespace wicklab {

enum class Exec { Serial, Parallel };

struct Entry {
    Index row;
    cplx value;
};

// Default execution policy used by the operator builders.
Exec default_exec() noexcept;
void set_default_exec(Exec exec) noexcept;

namespace kernels {

// Serial reference: triplets + setFromTriplets (duplicates summed).
template <class ColumnFn>
SparseMat assemble_columns_serial(Index rows, Index cols, ColumnFn&& column)
{
    std::vector<Eigen::Triplet<cplx, Index>> triplets;
    std::vector<Entry> buffer;
    for (Index c = 0; c < cols; ++c) {
        buffer.clear();
        column(c, buffer);
        for (const auto& e : buffer)
            triplets.emplace_back(e.row, c, e.value);
    }
    SparseMat m(rows, cols);
    m.setFromTriplets(triplets.begin(), triplets.end());
    m.prune([](Index, Index, const cplx& v) { return v != cplx(0.0); });
    return m;
}

// Sort rows within a column and merge duplicates in insertion order.
inline void canonicalize_column(std::vector<Entry>& col)
{
    std::stable_sort(col.begin(), col.end(), [](const Entry& a, const Entry& b) { return a.row < b.row; });
    std::size_t w = 0;
    for (std::size_t r = 0; r < col.size(); ++r) {
        if (w > 0 && col[w - 1].row == col[r].row)
            col[w - 1].value += col[r].value;
        else
            col[w++] = col[r];
    }
    col.resize(w);
    col.erase(std::remove_if(col.begin(), col.end(), [](const Entry& e) { return e.value == cplx(0.0); }),
              col.end());
}

template <class ColumnFn>
SparseMat assemble_columns_parallel(Index rows, Index cols, ColumnFn&& column)
{
    std::vector<std::vector<Entry>> per_column(static_cast<std::size_t>(cols));
#pragma omp parallel for schedule(dynamic, 64)
    for (Index c = 0; c < cols; ++c) {
        auto& col = per_column[static_cast<std::size_t>(c)];
        column(c, col);
        canonicalize_column(col);
    }

    SparseMat m(rows, cols);
    std::vector<Index> nnz(static_cast<std::size_t>(cols));
    for (Index c = 0; c < cols; ++c)
        nnz[static_cast<std::size_t>(c)] = static_cast<Index>(per_column[static_cast<std::size_t>(c)].size());
    m.reserve(nnz);
    for (Index c = 0; c < cols; ++c) {
        for (const auto& e : per_column[static_cast<std::size_t>(c)])
            m.insert(e.row, c) = e.value;
    }
    m.makeCompressed();
    return m;
}

template <class ColumnFn>
SparseMat assemble_columns(Index rows, Index cols, ColumnFn&& column, Exec exec)
{
    if (exec == Exec::Serial)
        return assemble_columns_serial(rows, cols, std::forward<ColumnFn>(column));
    return assemble_columns_parallel(rows, cols, std::forward<ColumnFn>(column));
}

} // namespace kernels
} // namespace wicklab
