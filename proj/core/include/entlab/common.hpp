// Copyright 2026 The entlab Authors
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

#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>

namespace entlab {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Input violates a documented precondition (bad dimensions, non-unit norm, ...).
class ValidationError : public Error {
   public:
    using Error::Error;
};

/// The base spectrum has alpha == 0 (pure or maximally entangled), which the
/// Gaussian-regime statements exclude.
class DegenerateSpectrumError : public ValidationError {
   public:
    using ValidationError::ValidationError;
};

/// A configured size cap (class count, Hilbert dimension) would be exceeded.
class CapExceededError : public Error {
   public:
    using Error::Error;
};

class IoError : public Error {
   public:
    using Error::Error;
};

/// Numeric tolerance ladder shared by every module.
namespace tol {
inline constexpr double kValidity = 1e-10;  // validity checks on inputs
inline constexpr double kEquality = 1e-9;   // equality assertions between routes
inline constexpr double kOracle = 1e-12;    // agreement with exact oracles
inline constexpr double kMass = 1e-12;      // cumulative-mass threshold slack
inline constexpr double kMergeBits = 1e-12; // eigenvalue class merging, in bits
}  // namespace tol

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// log2(2^a + 2^b), with -inf as the additive identity.
double log2_add(double a, double b);

/// log2(sum 2^x_i).
double log2_sum(std::span<const double> xs);

/// log2(2^a - 2^b) for a >= b; returns -inf when equal.
double log2_sub(double a, double b);

/// A nonnegative count that may exceed 2^63. Always carries log2; carries the
/// exact integer as well when it is small enough to be represented.
struct ExtendedCount {
    double log2 = kNegInf;
    std::optional<std::uint64_t> exact;

    static ExtendedCount zero() { return from_exact(0); }
    static ExtendedCount from_exact(std::uint64_t value);
    /// Attaches an exact value when 2^log2 is within 2^52 and integral to 1e-6.
    static ExtendedCount from_log2(double log2_value);

    double approx() const;
    bool is_zero() const { return log2 == kNegInf; }

    friend bool operator<(const ExtendedCount& a, const ExtendedCount& b);
    friend bool operator<=(const ExtendedCount& a, const ExtendedCount& b) { return !(b < a); }
    friend bool operator==(const ExtendedCount& a, const ExtendedCount& b);
};

ExtendedCount operator+(const ExtendedCount& a, const ExtendedCount& b);
ExtendedCount operator*(const ExtendedCount& a, const ExtendedCount& b);

std::string to_string(const ExtendedCount& c);

/// Shortest round-trip decimal representation; used for every CSV/JSON number.
std::string format_double(double value);

}  // namespace entlab
