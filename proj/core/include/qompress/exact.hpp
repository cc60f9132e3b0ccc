// Copyright 2026 The Qompress Authors
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
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace qompress {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// base^exponent, exact.
Rational pow(const Rational &base, std::uint64_t exponent);

/// "p/q" (or "p" when q == 1).
std::string to_string(const Rational &r);

/// Nearest double.
double to_double(const Rational &r);

/// True when the reduced denominator is 2^n for some n >= 0.
bool has_power_of_two_denominator(const Rational &r);

/// Recovers the exact rational behind a simulated probability: the fraction
/// with the smallest denominator (at most max_denominator) within tol of x,
/// found by walking the continued-fraction convergents. Returns nullopt when
/// no such fraction exists.
std::optional<Rational> recover_rational(double x, double tol = 1e-13, std::uint64_t max_denominator = 1u << 16);

}  // namespace qompress
