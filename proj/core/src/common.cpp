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

#include "entlab/common.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>

namespace entlab {

double log2_add(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    const double hi = std::max(a, b);
    const double lo = std::min(a, b);
    return hi + std::log2(1.0 + std::exp2(lo - hi));
}

double log2_sum(std::span<const double> xs) {
    double hi = kNegInf;
    for (double x : xs) hi = std::max(hi, x);
    if (hi == kNegInf) return kNegInf;
    if (hi == kInf) return kInf;
    double acc = 0.0;
    for (double x : xs) acc += std::exp2(x - hi);
    return hi + std::log2(acc);
}

double log2_sub(double a, double b) {
    if (b == kNegInf) return a;
    if (b > a) throw ValidationError("log2_sub: subtrahend exceeds minuend");
    if (a == b) return kNegInf;
    // 1 - 2^(b-a) via expm1 keeps precision when b is close to a.
    return a + std::log2(-std::expm1((b - a) * std::log(2.0)));
}

ExtendedCount ExtendedCount::from_exact(std::uint64_t value) {
    ExtendedCount c;
    c.exact = value;
    c.log2 = value == 0 ? kNegInf : std::log2(static_cast<double>(value));
    return c;
}

ExtendedCount ExtendedCount::from_log2(double log2_value) {
    ExtendedCount c;
    c.log2 = log2_value;
    if (log2_value == kNegInf) {
        c.exact = 0;
    } else if (log2_value < 52.0) {
        const double v = std::exp2(log2_value);
        const double r = std::round(v);
        if (std::abs(v - r) <= 1e-6 * std::max(1.0, r)) {
            c.exact = static_cast<std::uint64_t>(r);
            c.log2 = std::log2(r);
        }
    }
    return c;
}

double ExtendedCount::approx() const {
    if (exact) return static_cast<double>(*exact);
    return std::exp2(log2);
}

bool operator<(const ExtendedCount& a, const ExtendedCount& b) {
    if (a.exact && b.exact) return *a.exact < *b.exact;
    return a.log2 < b.log2;
}

bool operator==(const ExtendedCount& a, const ExtendedCount& b) {
    if (a.exact && b.exact) return *a.exact == *b.exact;
    if (a.log2 == b.log2) return true;
    return std::abs(a.log2 - b.log2) <= tol::kOracle * std::max(1.0, std::abs(a.log2));
}

ExtendedCount operator+(const ExtendedCount& a, const ExtendedCount& b) {
    if (a.exact && b.exact && *a.exact <= (std::uint64_t{1} << 62) && *b.exact <= (std::uint64_t{1} << 62)) {
        return ExtendedCount::from_exact(*a.exact + *b.exact);
    }
    ExtendedCount c;
    c.log2 = log2_add(a.log2, b.log2);
    return c;
}

ExtendedCount operator*(const ExtendedCount& a, const ExtendedCount& b) {
    if (a.exact && b.exact) {
        if (*a.exact == 0 || *b.exact == 0) return ExtendedCount::zero();
        if (*a.exact <= (std::uint64_t{1} << 62) / *b.exact) return ExtendedCount::from_exact(*a.exact * *b.exact);
    }
    ExtendedCount c;
    c.log2 = a.log2 + b.log2;
    return c;
}

std::string to_string(const ExtendedCount& c) {
    if (c.exact) return std::to_string(*c.exact);
    return "2^" + format_double(c.log2);
}

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{}) return std::to_string(value);
    return std::string(buf.data(), ptr);
}

}  // namespace entlab
