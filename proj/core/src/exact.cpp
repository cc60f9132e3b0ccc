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

#include "qompress/exact.hpp"

#include <cmath>

namespace qompress {

Rational pow(const Rational &base, std::uint64_t exponent) {
    Rational result = 1;
    Rational b = base;
    while (exponent > 0) {
        if (exponent & 1) {
            result *= b;
        }
        b *= b;
        exponent >>= 1;
    }
    return result;
}

std::string to_string(const Rational &r) {
    auto num = boost::multiprecision::numerator(r);
    auto den = boost::multiprecision::denominator(r);
    if (den == 1) {
        return num.str();
    }
    return num.str() + "/" + den.str();
}

double to_double(const Rational &r) {
    return r.convert_to<double>();
}

bool has_power_of_two_denominator(const Rational &r) {
    BigInt den = boost::multiprecision::denominator(r);
    return den > 0 && (den & (den - 1)) == 0;
}

std::optional<Rational> recover_rational(double x, double tol, std::uint64_t max_denominator) {
    if (!std::isfinite(x)) {
        return std::nullopt;
    }
    // Convergents h/k of the continued fraction of x.
    BigInt h_prev = 1, h = static_cast<std::int64_t>(std::floor(x));
    BigInt k_prev = 0, k = 1;
    double frac = x - std::floor(x);
    for (int step = 0; step < 64; step++) {
        Rational candidate(h, k);
        if (std::abs(to_double(candidate) - x) <= tol) {
            return candidate;
        }
        if (frac < 1e-300) {
            break;
        }
        double inv = 1.0 / frac;
        auto a = static_cast<std::int64_t>(std::floor(inv));
        frac = inv - std::floor(inv);
        BigInt h_next = a * h + h_prev;
        BigInt k_next = a * k + k_prev;
        if (k_next > max_denominator) {
            break;
        }
        h_prev = h;
        h = h_next;
        k_prev = k;
        k = k_next;
    }
    return std::nullopt;
}

}  // namespace qompress
