#pragma once

// Command-line mini-grammars. All parse failures raise ErrorKind::Usage.
//
//   scalar      "3", "-0.5", "1/2", "1+2i", "-i", "2.5e-3-4i"
//   sequence    "1,0,-2" or "1+i,0,1/3"     (x_1, x_2, ...)
//   polynomial  "1+2x", "x^2-1/2x", "(1+i)x^3"
//   grid        "re0:re1:step,im0:im1:step" (a bare number fixes that axis)
//   space       "lp:<p>", "c0", "poly"

#include <string_view>
#include <vector>

#include "hclab/space.hpp"

namespace hclab::parse {

/// Decimal or a/b rational.
double real_number(std::string_view s);
Scalar complex_scalar(std::string_view s);
std::vector<Scalar> sequence(std::string_view s);
/// Coefficients c_0, c_1, ... (index = power of x).
std::vector<Scalar> polynomial(std::string_view s);
/// Sequence syntax for sequence spaces, polynomial syntax for poly.
Vector vector(std::string_view s, const SpaceTag& space);
std::vector<Scalar> grid(std::string_view s);
/// `a`, `b` are used only for "poly".
SpaceTag space(std::string_view s, double a, double b);

}  // namespace hclab::parse
