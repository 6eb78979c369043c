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

#ifndef BPIR_ERRORS_HPP_
#define BPIR_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace bpir {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad arguments: non-prime modulus, k > n, out-of-range index, ...
class ParameterError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class ZeroInverseError : public Error {
 public:
  ZeroInverseError() : Error("zero has no multiplicative inverse") {}
};

class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

// Operation requested in a regime (FULL / TRIVIAL / INFEASIBLE) that does
// not support it.
class RegimeError : public Error {
 public:
  using Error::Error;
};

// Modulus too small for the longest codeword of a parameter set.
class FieldSizeError : public Error {
 public:
  using Error::Error;
};

// Puncturing z >= n - k coordinates; the result is no longer guaranteed MDS.
class PunctureTooDeepError : public Error {
 public:
  using Error::Error;
};

// No codeword within the decoding radius. Inside the protocol this means the
// adversary exceeded its budget, which the model rules out.
class DecodeFailure : public Error {
 public:
  using Error::Error;
};

// Exhaustive routines refuse instances above their enumeration guard.
class InstanceTooLargeError : public Error {
 public:
  using Error::Error;
};

class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace bpir

#endif  // BPIR_ERRORS_HPP_
