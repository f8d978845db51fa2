#pragma once

#include <functional>
#include <string>
#include <string_view>

namespace wavecoeff::cli {

using Profile = std::function<double(double)>;
using SourceTerm = std::function<double(double, double)>;

/// Function of x from a named preset or a sum of terms.
///
/// Presets: paper_a, paper_b, paper_c, one, zero.
/// Terms, joined by '+':
///   const:c          c
///   poly:c0,c1,...   c0 + c1 x + c2 x^2 + ...
///   sin:A,k          A sin(k pi x)
///   cos:A,k          A cos(k pi x)
///   tent:A           A min(x, 1 - x)
/// Throws ConfigError on anything else.
Profile parse_profile(std::string_view descriptor);

/// F(x, t) from "paper" (x + t + 1), "zero", or "affine:a,b,c" (a x + b t + c).
SourceTerm parse_source(std::string_view descriptor);

/// Strict decimal parse of the whole string.
double parse_number(std::string_view text);

std::string format_number(double v);

std::string_view trim(std::string_view s);

}  // namespace wavecoeff::cli
