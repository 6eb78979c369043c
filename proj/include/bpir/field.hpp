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

#ifndef BPIR_FIELD_HPP_
#define BPIR_FIELD_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bpir/errors.hpp"
#include "bpir/rng.hpp"

namespace bpir {

// Canonical representative in [0, q).
using FieldElement = std::uint32_t;

inline constexpr std::uint32_t kDefaultModulus = 65537;

// Largest modulus accepted; keeps every product inside 64 bits.
inline constexpr std::uint32_t kMaxModulus = (1u << 31) - 1;

bool is_prime(std::uint64_t n);

// Arithmetic modulo a prime q with 2 < q <= kMaxModulus.
class PrimeField {
 public:
  explicit PrimeField(std::uint32_t modulus = kDefaultModulus);

  std::uint32_t modulus() const { return q_; }

  FieldElement reduce(std::uint64_t x) const {
    return static_cast<FieldElement>(x % q_);
  }
  FieldElement add(FieldElement a, FieldElement b) const {
    std::uint32_t s = a + b;
    return s >= q_ ? s - q_ : s;
  }
  FieldElement sub(FieldElement a, FieldElement b) const {
    return a >= b ? a - b : a + q_ - b;
  }
  FieldElement neg(FieldElement a) const { return a == 0 ? 0 : q_ - a; }
  FieldElement mul(FieldElement a, FieldElement b) const {
    return static_cast<FieldElement>(static_cast<std::uint64_t>(a) * b % q_);
  }
  // a + b * c
  FieldElement mul_add(FieldElement a, FieldElement b, FieldElement c) const {
    return static_cast<FieldElement>(
        (a + static_cast<std::uint64_t>(b) * c) % q_);
  }
  FieldElement pow(FieldElement base, std::uint64_t exp) const;

  // Throws ZeroInverseError for x == 0.
  FieldElement inverse(FieldElement x) const;

  FieldElement random(SeededRng& rng) const {
    return static_cast<FieldElement>(rng.uniform(q_));
  }
  FieldElement random_nonzero(SeededRng& rng) const {
    return static_cast<FieldElement>(1 + rng.uniform(q_ - 1));
  }

  // <a, b> over the field; spans must have equal length.
  FieldElement dot(std::span<const FieldElement> a,
                   std::span<const FieldElement> b) const;

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint32_t q_;
};

// Free-function form of PrimeField::inverse.
inline FieldElement field_inverse(const PrimeField& f, FieldElement x) {
  return f.inverse(x);
}

// Dense row-major matrix over a prime field. The field is passed to every
// operation instead of being stored, so matrices stay plain values.
class FieldMatrix {
 public:
  FieldMatrix() = default;
  FieldMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols, 0) {}
  FieldMatrix(std::size_t rows, std::size_t cols,
              std::vector<FieldElement> entries);

  static FieldMatrix identity(std::size_t dim);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  FieldElement& operator()(std::size_t r, std::size_t c) {
    return entries_[r * cols_ + c];
  }
  FieldElement operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }

  std::span<FieldElement> row(std::size_t r) {
    return {entries_.data() + r * cols_, cols_};
  }
  std::span<const FieldElement> row(std::size_t r) const {
    return {entries_.data() + r * cols_, cols_};
  }

  const std::vector<FieldElement>& entries() const { return entries_; }

  // Rows [first, first + count) as a new matrix.
  FieldMatrix row_band(std::size_t first, std::size_t count) const;
  FieldMatrix select_rows(std::span<const std::size_t> rows) const;

  friend bool operator==(const FieldMatrix&, const FieldMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<FieldElement> entries_;
};

FieldMatrix mat_mul(const PrimeField& f, const FieldMatrix& a,
                    const FieldMatrix& b);

std::vector<FieldElement> mat_vec(const PrimeField& f, const FieldMatrix& m,
                                  std::span<const FieldElement> v);

// row^T * m, i.e. the linear combination of m's rows weighted by `row`.
std::vector<FieldElement> vec_mat(const PrimeField& f,
                                  std::span<const FieldElement> row,
                                  const FieldMatrix& m);

// Rank by fraction-free elimination: rows are combined by cross
// multiplication, so no inverse is ever taken.
std::size_t mat_rank(const PrimeField& f, FieldMatrix m);

// Gauss-Jordan inverse. Throws SingularMatrixError when m is singular and
// DimensionError when it is not square.
FieldMatrix mat_invert(const PrimeField& f, const FieldMatrix& m);

// Some solution of m * x = rhs, or nullopt if the system is inconsistent.
// Free variables are set to zero.
std::optional<std::vector<FieldElement>> mat_solve(
    const PrimeField& f, FieldMatrix m, std::vector<FieldElement> rhs);

// Uniform sample from the full-rank dim x dim matrices by rejection over
// uniform matrices. Gives up with InternalError after 1000 rejections.
FieldMatrix sample_full_rank(const PrimeField& f, std::size_t dim,
                             SeededRng& rng);

}  // namespace bpir

#endif  // BPIR_FIELD_HPP_
