// Copyright 2026 The bpir Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bpir/field.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace bpir {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint32_t modulus) : q_(modulus) {
  if (modulus <= 2 || modulus > kMaxModulus) {
    throw ParameterError("modulus " + std::to_string(modulus) +
                         " outside (2, 2^31 - 1]");
  }
  if (!is_prime(modulus)) {
    throw ParameterError("modulus " + std::to_string(modulus) +
                         " is not prime");
  }
}

FieldElement PrimeField::pow(FieldElement base, std::uint64_t exp) const {
  std::uint64_t result = 1;
  std::uint64_t b = base % q_;
  while (exp != 0) {
    if (exp & 1) result = result * b % q_;
    b = b * b % q_;
    exp >>= 1;
  }
  return static_cast<FieldElement>(result);
}

FieldElement PrimeField::inverse(FieldElement x) const {
  x %= q_;
  if (x == 0) throw ZeroInverseError();
  // Extended Euclid on (q, x).
  std::int64_t r0 = q_, r1 = x;
  std::int64_t t0 = 0, t1 = 1;
  while (r1 != 0) {
    std::int64_t quot = r0 / r1;
    std::int64_t r2 = r0 - quot * r1;
    r0 = r1;
    r1 = r2;
    std::int64_t t2 = t0 - quot * t1;
    t0 = t1;
    t1 = t2;
  }
  if (t0 < 0) t0 += q_;
  return static_cast<FieldElement>(t0);
}

FieldElement PrimeField::dot(std::span<const FieldElement> a,
                             std::span<const FieldElement> b) const {
  if (a.size() != b.size()) {
    throw DimensionError("dot product of vectors with lengths " +
                         std::to_string(a.size()) + " and " +
                         std::to_string(b.size()));
  }
  // Each product is below 2^62, so reducing once acc reaches 2^63 keeps the
  // running sum inside 64 bits.
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    acc += static_cast<std::uint64_t>(a[i]) * b[i];
    if (acc >= (1ULL << 63)) acc %= q_;
  }
  return static_cast<FieldElement>(acc % q_);
}

FieldMatrix::FieldMatrix(std::size_t rows, std::size_t cols,
                         std::vector<FieldElement> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) {
    throw DimensionError("matrix entry count " +
                         std::to_string(entries_.size()) + " != " +
                         std::to_string(rows) + "x" + std::to_string(cols));
  }
}

FieldMatrix FieldMatrix::identity(std::size_t dim) {
  FieldMatrix m(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1;
  return m;
}

FieldMatrix FieldMatrix::row_band(std::size_t first, std::size_t count) const {
  if (first + count > rows_) {
    throw DimensionError("row band exceeds matrix height");
  }
  std::vector<FieldElement> out(entries_.begin() + first * cols_,
                                entries_.begin() + (first + count) * cols_);
  return FieldMatrix(count, cols_, std::move(out));
}

FieldMatrix FieldMatrix::select_rows(std::span<const std::size_t> rows) const {
  FieldMatrix out(rows.size(), cols_);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] >= rows_) throw DimensionError("row index out of range");
    auto src = row(rows[i]);
    std::copy(src.begin(), src.end(), out.row(i).begin());
  }
  return out;
}

namespace {

// out = row * m. Products stay below (q-1)^2, so a 64-bit accumulator
// absorbs many of them between reductions.
void row_times(const PrimeField& f, std::span<const FieldElement> row,
               const FieldMatrix& m, std::vector<std::uint64_t>& acc,
               std::span<FieldElement> out) {
  const std::uint64_t top = f.modulus() - 1;
  const std::uint64_t budget =
      std::max<std::uint64_t>(1, (~std::uint64_t{0} - top) / (top * top));
  std::fill(acc.begin(), acc.end(), 0);
  std::uint64_t pending = 0;
  for (std::size_t t = 0; t < m.rows(); ++t) {
    const std::uint64_t s = row[t];
    if (s == 0) continue;
    if (pending == budget) {
      for (auto& x : acc) x %= f.modulus();
      pending = 0;
    }
    const auto src = m.row(t);
    for (std::size_t j = 0; j < m.cols(); ++j) acc[j] += s * src[j];
    ++pending;
  }
  for (std::size_t j = 0; j < m.cols(); ++j) out[j] = f.reduce(acc[j]);
}

}  // namespace

FieldMatrix mat_mul(const PrimeField& f, const FieldMatrix& a,
                    const FieldMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("mat_mul: inner dimensions differ");
  }
  FieldMatrix out(a.rows(), b.cols());
  std::vector<std::uint64_t> acc(b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) row_times(f, a.row(i), b, acc, out.row(i));
  return out;
}

std::vector<FieldElement> mat_vec(const PrimeField& f, const FieldMatrix& m,
                                  std::span<const FieldElement> v) {
  if (m.cols() != v.size()) {
    throw DimensionError("mat_vec: vector length != matrix width");
  }
  std::vector<FieldElement> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) out[i] = f.dot(m.row(i), v);
  return out;
}

std::vector<FieldElement> vec_mat(const PrimeField& f,
                                  std::span<const FieldElement> row,
                                  const FieldMatrix& m) {
  if (row.size() != m.rows()) {
    throw DimensionError("vec_mat: vector length != matrix height");
  }
  std::vector<FieldElement> out(m.cols());
  std::vector<std::uint64_t> acc(m.cols());
  row_times(f, row, m, acc, out);
  return out;
}

std::size_t mat_rank(const PrimeField& f, FieldMatrix m) {
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
    std::size_t pivot = rank;
    while (pivot < m.rows() && m(pivot, col) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != rank) {
      for (std::size_t j = 0; j < m.cols(); ++j) {
        std::swap(m(pivot, j), m(rank, j));
      }
    }
    // Scale the pivot row to 1, then one multiply per eliminated entry.
    const FieldElement inv = f.inverse(m(rank, col));
    for (std::size_t j = col; j < m.cols(); ++j) m(rank, j) = f.mul(inv, m(rank, j));
    const auto pivot_row = m.row(rank);
    for (std::size_t r = rank + 1; r < m.rows(); ++r) {
      const FieldElement a = m(r, col);
      if (a == 0) continue;
      const FieldElement neg = f.sub(0, a);
      auto row = m.row(r);
      for (std::size_t j = col; j < m.cols(); ++j) {
        row[j] = f.mul_add(row[j], neg, pivot_row[j]);
      }
    }
    ++rank;
  }
  return rank;
}

FieldMatrix mat_invert(const PrimeField& f, const FieldMatrix& m) {
  if (m.rows() != m.cols()) {
    throw DimensionError("mat_invert: matrix is not square");
  }
  const std::size_t n = m.rows();
  FieldMatrix a = m;
  FieldMatrix inv = FieldMatrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a(pivot, col) == 0) ++pivot;
    if (pivot == n) throw SingularMatrixError("mat_invert: singular matrix");
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(pivot, j), a(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    }
    const FieldElement scale = f.inverse(a(col, col));
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) = f.mul(a(col, j), scale);
      inv(col, j) = f.mul(inv(col, j), scale);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a(r, col) == 0) continue;
      const FieldElement factor = f.neg(a(r, col));
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) = f.mul_add(a(r, j), factor, a(col, j));
        inv(r, j) = f.mul_add(inv(r, j), factor, inv(col, j));
      }
    }
  }
  return inv;
}

std::optional<std::vector<FieldElement>> mat_solve(
    const PrimeField& f, FieldMatrix m, std::vector<FieldElement> rhs) {
  if (rhs.size() != m.rows()) {
    throw DimensionError("mat_solve: rhs length != matrix height");
  }
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && m(pivot, col) == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(pivot, j), m(rank, j));
      std::swap(rhs[pivot], rhs[rank]);
    }
    const FieldElement scale = f.inverse(m(rank, col));
    for (std::size_t j = col; j < cols; ++j) m(rank, j) = f.mul(m(rank, j), scale);
    rhs[rank] = f.mul(rhs[rank], scale);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || m(r, col) == 0) continue;
      const FieldElement factor = f.neg(m(r, col));
      for (std::size_t j = col; j < cols; ++j) {
        m(r, j) = f.mul_add(m(r, j), factor, m(rank, j));
      }
      rhs[r] = f.mul_add(rhs[r], factor, rhs[rank]);
    }
    pivot_cols.push_back(col);
    ++rank;
  }
  for (std::size_t r = rank; r < rows; ++r) {
    if (rhs[r] != 0) return std::nullopt;
  }
  std::vector<FieldElement> x(cols, 0);
  for (std::size_t i = 0; i < rank; ++i) x[pivot_cols[i]] = rhs[i];
  return x;
}

FieldMatrix sample_full_rank(const PrimeField& f, std::size_t dim,
                             SeededRng& rng) {
  if (dim == 0) throw ParameterError("sample_full_rank: dim must be >= 1");
  constexpr int kMaxAttempts = 1000;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::vector<FieldElement> entries(dim * dim);
    for (auto& e : entries) e = f.random(rng);
    FieldMatrix m(dim, dim, std::move(entries));
    if (mat_rank(f, m) == dim) return m;
  }
  throw InternalError("sample_full_rank: no full-rank draw in 1000 attempts");
}

}  // namespace bpir
