#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "rle/errors.hpp"
#include "rle/parallel.hpp"

namespace rle {

// Entries whose magnitude falls below this are dropped from sparse results,
// so cancellation never leaves explicitly stored zeros behind.
inline constexpr double kSparseDropTol = 1e-12;

struct DenseMatrix {
  std::size_t n_rows = 0;
  std::size_t n_cols = 0;
  std::vector<double> values;  // row-major

  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols)
      : n_rows(rows), n_cols(cols), values(rows * cols, 0.0) {}

  double& at(std::size_t i, std::size_t j) { return values[i * n_cols + j]; }
  double at(std::size_t i, std::size_t j) const { return values[i * n_cols + j]; }

  std::span<double> row(std::size_t i) { return {values.data() + i * n_cols, n_cols}; }
  std::span<const double> row(std::size_t i) const {
    return {values.data() + i * n_cols, n_cols};
  }
};

// Compressed sparse row matrix. Carrier for the transition matrix A, the
// similarity matrix S and the document-term matrices T, B, P, all of which
// hold non-negative reals. Immutable by convention once built: every kernel
// below returns a fresh matrix.
//
// Invariants: row_offsets has n_rows+1 non-decreasing entries ending at
// nnz(); column indices are strictly increasing within a row and < n_cols;
// no explicitly stored zeros.
struct SparseMatrix {
  std::size_t n_rows = 0;
  std::size_t n_cols = 0;
  std::vector<std::size_t> row_offsets{0};
  std::vector<std::size_t> col_indices;
  std::vector<double> values;

  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols)
      : n_rows(rows), n_cols(cols), row_offsets(rows + 1, 0) {}

  std::size_t nnz() const { return values.size(); }

  std::span<const std::size_t> row_cols(std::size_t i) const {
    return {col_indices.data() + row_offsets[i], row_offsets[i + 1] - row_offsets[i]};
  }
  std::span<const double> row_vals(std::size_t i) const {
    return {values.data() + row_offsets[i], row_offsets[i + 1] - row_offsets[i]};
  }

  double at(std::size_t i, std::size_t j) const {
    const auto cols = row_cols(i);
    const auto it = std::lower_bound(cols.begin(), cols.end(), j);
    if (it == cols.end() || *it != j) return 0.0;
    return values[row_offsets[i] + static_cast<std::size_t>(it - cols.begin())];
  }

  DenseMatrix to_dense() const {
    DenseMatrix d(n_rows, n_cols);
    for (std::size_t i = 0; i < n_rows; ++i) {
      for (std::size_t k = row_offsets[i]; k < row_offsets[i + 1]; ++k) {
        d.at(i, col_indices[k]) = values[k];
      }
    }
    return d;
  }

  // Structural invariant check; used by tests and after file ingestion.
  void validate() const {
    if (row_offsets.size() != n_rows + 1 || row_offsets.front() != 0 ||
        row_offsets.back() != values.size() || col_indices.size() != values.size()) {
      throw ConfigError("sparse matrix: inconsistent CSR arrays");
    }
    for (std::size_t i = 0; i < n_rows; ++i) {
      if (row_offsets[i] > row_offsets[i + 1]) {
        throw ConfigError("sparse matrix: row offsets not non-decreasing");
      }
      for (std::size_t k = row_offsets[i]; k < row_offsets[i + 1]; ++k) {
        if (col_indices[k] >= n_cols) {
          throw ConfigError("sparse matrix: column index out of range");
        }
        if (k > row_offsets[i] && col_indices[k] <= col_indices[k - 1]) {
          throw ConfigError("sparse matrix: columns not strictly increasing in row");
        }
        if (!std::isfinite(values[k]) || values[k] == 0.0) {
          throw ConfigError("sparse matrix: stored zero or non-finite value");
        }
      }
    }
  }

  // Builds from (row, col, value) triplets; duplicates are summed and
  // near-zero results dropped.
  static SparseMatrix from_triplets(
      std::size_t rows, std::size_t cols,
      std::vector<std::tuple<std::size_t, std::size_t, double>> triplets) {
    for (const auto& [r, c, v] : triplets) {
      (void)v;
      if (r >= rows || c >= cols) throw ConfigError("from_triplets: index out of range");
    }
    std::sort(triplets.begin(), triplets.end(),
              [](const auto& a, const auto& b) {
                return std::tie(std::get<0>(a), std::get<1>(a)) <
                       std::tie(std::get<0>(b), std::get<1>(b));
              });
    SparseMatrix m(rows, cols);
    std::size_t k = 0;
    for (std::size_t i = 0; i < rows; ++i) {
      while (k < triplets.size() && std::get<0>(triplets[k]) == i) {
        const std::size_t c = std::get<1>(triplets[k]);
        double sum = 0.0;
        while (k < triplets.size() && std::get<0>(triplets[k]) == i &&
               std::get<1>(triplets[k]) == c) {
          sum += std::get<2>(triplets[k]);
          ++k;
        }
        if (std::abs(sum) >= kSparseDropTol) {
          m.col_indices.push_back(c);
          m.values.push_back(sum);
        }
      }
      m.row_offsets[i + 1] = m.values.size();
    }
    return m;
  }
};

inline double dot(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

inline double l2_norm(std::span<const double> x) { return std::sqrt(dot(x, x)); }

// Cosine similarity in [-1, 1]; zero-norm inputs yield 0 by convention so
// empty documents score neutrally instead of raising.
inline double cosine(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ConfigError("cosine: length mismatch");
  const double nx = l2_norm(x);
  const double ny = l2_norm(y);
  if (nx == 0.0 || ny == 0.0) return 0.0;
  const double c = dot(x, y) / (nx * ny);
  return std::clamp(c, -1.0, 1.0);
}

// Symbolic pass of the sparse product: number of structurally non-zero
// entries of a*b. Used as a memory guard before committing to the numeric
// pass (the square of a transition matrix can densify on hub-heavy graphs).
inline std::size_t spmm_nnz(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.n_cols != b.n_rows) throw ConfigError("spmm: inner dimensions do not match");
  constexpr std::size_t kUnseen = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> mark(b.n_cols, kUnseen);
  std::size_t total = 0;
  for (std::size_t i = 0; i < a.n_rows; ++i) {
    for (std::size_t jj = a.row_offsets[i]; jj < a.row_offsets[i + 1]; ++jj) {
      const std::size_t j = a.col_indices[jj];
      for (std::size_t kk = b.row_offsets[j]; kk < b.row_offsets[j + 1]; ++kk) {
        const std::size_t k = b.col_indices[kk];
        if (mark[k] != i) {
          mark[k] = i;
          ++total;
        }
      }
    }
  }
  return total;
}

// Sparse-sparse product in CSR. Row-parallel two-pass scheme with a dense
// accumulator per worker; output rows are sorted and independent of the
// worker count.
inline SparseMatrix spmm(const SparseMatrix& a, const SparseMatrix& b, int workers = 1) {
  if (a.n_cols != b.n_rows) {
    throw ConfigError("spmm: inner dimensions do not match (" + std::to_string(a.n_cols) +
                      " vs " + std::to_string(b.n_rows) + ")");
  }
  constexpr std::size_t kUnseen = std::numeric_limits<std::size_t>::max();

  // Pass 1: structural nnz upper bound per row.
  std::vector<std::size_t> upper(a.n_rows, 0);
  parallel_chunks(a.n_rows, workers, [&](std::size_t lo, std::size_t hi) {
    std::vector<std::size_t> mark(b.n_cols, kUnseen);
    for (std::size_t i = lo; i < hi; ++i) {
      std::size_t count = 0;
      for (std::size_t jj = a.row_offsets[i]; jj < a.row_offsets[i + 1]; ++jj) {
        const std::size_t j = a.col_indices[jj];
        for (std::size_t kk = b.row_offsets[j]; kk < b.row_offsets[j + 1]; ++kk) {
          const std::size_t k = b.col_indices[kk];
          if (mark[k] != i) {
            mark[k] = i;
            ++count;
          }
        }
      }
      upper[i] = count;
    }
  });

  std::vector<std::size_t> start(a.n_rows + 1, 0);
  for (std::size_t i = 0; i < a.n_rows; ++i) start[i + 1] = start[i] + upper[i];

  std::vector<std::size_t> cols(start.back());
  std::vector<double> vals(start.back());
  std::vector<std::size_t> actual(a.n_rows, 0);

  // Pass 2: numeric accumulation into preallocated slots.
  parallel_chunks(a.n_rows, workers, [&](std::size_t lo, std::size_t hi) {
    std::vector<double> sums(b.n_cols, 0.0);
    std::vector<std::size_t> mark(b.n_cols, kUnseen);
    std::vector<std::size_t> touched;
    for (std::size_t i = lo; i < hi; ++i) {
      touched.clear();
      for (std::size_t jj = a.row_offsets[i]; jj < a.row_offsets[i + 1]; ++jj) {
        const std::size_t j = a.col_indices[jj];
        const double v = a.values[jj];
        for (std::size_t kk = b.row_offsets[j]; kk < b.row_offsets[j + 1]; ++kk) {
          const std::size_t k = b.col_indices[kk];
          if (mark[k] != i) {
            mark[k] = i;
            sums[k] = 0.0;
            touched.push_back(k);
          }
          sums[k] += v * b.values[kk];
        }
      }
      std::sort(touched.begin(), touched.end());
      std::size_t pos = start[i];
      for (const std::size_t k : touched) {
        if (std::abs(sums[k]) >= kSparseDropTol) {
          cols[pos] = k;
          vals[pos] = sums[k];
          ++pos;
        }
      }
      actual[i] = pos - start[i];
    }
  });

  // Compact dropped slots into the final CSR arrays.
  SparseMatrix c(a.n_rows, b.n_cols);
  std::size_t total = 0;
  for (std::size_t i = 0; i < a.n_rows; ++i) total += actual[i];
  c.col_indices.resize(total);
  c.values.resize(total);
  std::size_t pos = 0;
  for (std::size_t i = 0; i < a.n_rows; ++i) {
    std::copy_n(cols.begin() + static_cast<std::ptrdiff_t>(start[i]), actual[i],
                c.col_indices.begin() + static_cast<std::ptrdiff_t>(pos));
    std::copy_n(vals.begin() + static_cast<std::ptrdiff_t>(start[i]), actual[i],
                c.values.begin() + static_cast<std::ptrdiff_t>(pos));
    pos += actual[i];
    c.row_offsets[i + 1] = pos;
  }
  return c;
}

// Sparse times dense, row-parallel.
inline DenseMatrix sp_dense_mm(const SparseMatrix& a, const DenseMatrix& b, int workers = 1) {
  if (a.n_cols != b.n_rows) {
    throw ConfigError("sp_dense_mm: inner dimensions do not match (" +
                      std::to_string(a.n_cols) + " vs " + std::to_string(b.n_rows) + ")");
  }
  DenseMatrix c(a.n_rows, b.n_cols);
  parallel_chunks(a.n_rows, workers, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      double* out = c.values.data() + i * c.n_cols;
      for (std::size_t kk = a.row_offsets[i]; kk < a.row_offsets[i + 1]; ++kk) {
        const double v = a.values[kk];
        const double* in = b.values.data() + a.col_indices[kk] * b.n_cols;
        for (std::size_t j = 0; j < b.n_cols; ++j) out[j] += v * in[j];
      }
    }
  });
  return c;
}

// a^T * y for sparse a and dense y; scatter form, serial (the accumulation
// pattern races across rows of a, and the matrices this runs on are small
// relative to the rest of the pipeline).
inline DenseMatrix spt_dense_mm(const SparseMatrix& a, const DenseMatrix& y) {
  if (a.n_rows != y.n_rows) {
    throw ConfigError("spt_dense_mm: dimensions do not match");
  }
  DenseMatrix c(a.n_cols, y.n_cols);
  for (std::size_t i = 0; i < a.n_rows; ++i) {
    const double* in = y.values.data() + i * y.n_cols;
    for (std::size_t kk = a.row_offsets[i]; kk < a.row_offsets[i + 1]; ++kk) {
      const double v = a.values[kk];
      double* out = c.values.data() + a.col_indices[kk] * c.n_cols;
      for (std::size_t j = 0; j < y.n_cols; ++j) out[j] += v * in[j];
    }
  }
  return c;
}

// Entrywise alpha*a + beta*b. Entries that cancel below kSparseDropTol are
// dropped so the no-stored-zeros invariant survives exact cancellation.
inline SparseMatrix add_scaled(const SparseMatrix& a, double alpha, const SparseMatrix& b,
                               double beta) {
  if (a.n_rows != b.n_rows || a.n_cols != b.n_cols) {
    throw ConfigError("add_scaled: shape mismatch");
  }
  SparseMatrix c(a.n_rows, a.n_cols);
  c.col_indices.reserve(a.nnz() + b.nnz());
  c.values.reserve(a.nnz() + b.nnz());
  for (std::size_t i = 0; i < a.n_rows; ++i) {
    std::size_t ka = a.row_offsets[i];
    std::size_t kb = b.row_offsets[i];
    const std::size_t ea = a.row_offsets[i + 1];
    const std::size_t eb = b.row_offsets[i + 1];
    while (ka < ea || kb < eb) {
      std::size_t col;
      double v;
      if (kb >= eb || (ka < ea && a.col_indices[ka] < b.col_indices[kb])) {
        col = a.col_indices[ka];
        v = alpha * a.values[ka];
        ++ka;
      } else if (ka >= ea || b.col_indices[kb] < a.col_indices[ka]) {
        col = b.col_indices[kb];
        v = beta * b.values[kb];
        ++kb;
      } else {
        col = a.col_indices[ka];
        v = alpha * a.values[ka] + beta * b.values[kb];
        ++ka;
        ++kb;
      }
      if (std::abs(v) >= kSparseDropTol) {
        c.col_indices.push_back(col);
        c.values.push_back(v);
      }
    }
    c.row_offsets[i + 1] = c.values.size();
  }
  return c;
}

struct RowNormalized {
  SparseMatrix matrix;
  std::vector<std::size_t> dangling_rows;  // rows with zero sum, left empty
};

// Divides each row by its sum, turning non-negative rows into probability
// distributions. Zero-sum rows stay empty and are reported so callers can
// apply their own convention for them.
inline RowNormalized row_normalize(const SparseMatrix& a) {
  RowNormalized out;
  out.matrix = SparseMatrix(a.n_rows, a.n_cols);
  out.matrix.col_indices.reserve(a.nnz());
  out.matrix.values.reserve(a.nnz());
  for (std::size_t i = 0; i < a.n_rows; ++i) {
    double sum = 0.0;
    for (std::size_t k = a.row_offsets[i]; k < a.row_offsets[i + 1]; ++k) {
      if (a.values[k] < 0.0) {
        throw DataError("row_normalize: negative entry at row " + std::to_string(i));
      }
      sum += a.values[k];
    }
    if (sum > 0.0) {
      for (std::size_t k = a.row_offsets[i]; k < a.row_offsets[i + 1]; ++k) {
        out.matrix.col_indices.push_back(a.col_indices[k]);
        out.matrix.values.push_back(a.values[k] / sum);
      }
    } else {
      out.dangling_rows.push_back(i);
    }
    out.matrix.row_offsets[i + 1] = out.matrix.values.size();
  }
  return out;
}

}  // namespace rle
