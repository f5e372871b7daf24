// Copyright 2026 The qprice Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <string>
#include <system_error>

namespace qprice {

inline constexpr int kSignificantDigits = 15;

/// Locale-independent rendering with 15 significant digits. Plain decimal
/// notation for |x| in [1e-4, 1e15), scientific otherwise. Zero prints as
/// 0.00000000000000 and -0 as +0.
inline std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (x == 0.0) x = 0.0; // drops the sign of -0

    char buf[64];
    if (x == 0.0) {
        auto res = std::to_chars(buf, buf + sizeof buf, 0.0, std::chars_format::fixed, kSignificantDigits - 1);
        return std::string(buf, res.ptr);
    }

    // The exponent after rounding to 15 digits decides the notation.
    auto sci = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::scientific, kSignificantDigits - 1);
    std::string s(buf, sci.ptr);
    const int exponent = std::atoi(s.c_str() + s.find('e') + 1);
    if (exponent < -4 || exponent >= 15) return s;

    const int decimals = kSignificantDigits - 1 - exponent;
    auto fix = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::fixed, decimals);
    return std::string(buf, fix.ptr);
}

} // namespace qprice
