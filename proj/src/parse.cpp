#include "hclab/parse.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

#include "hclab/errors.hpp"
#include "hclab/verifier.hpp"

namespace hclab::parse {

namespace {

[[noreturn]] void usage(const std::string& msg) { raise(ErrorKind::Usage, msg); }

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

double decimal(std::string_view s, std::string_view whole) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v))
    usage("invalid number \"" + std::string(whole) + "\"");
  return v;
}

// Index of the sign separating real and imaginary parts, or npos.
std::size_t split_sign(std::string_view s) {
  for (std::size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') return i;
  }
  return std::string_view::npos;
}

double imaginary_part(std::string_view s, std::string_view whole) {
  // s ends with 'i'; the coefficient may be empty or a bare sign
  std::string_view c = trim(s.substr(0, s.size() - 1));
  if (c.empty() || c == "+") return 1.0;
  if (c == "-") return -1.0;
  if (c.back() == '*') c.remove_suffix(1);
  (void)whole;
  return real_number(c);
}

}  // namespace

double real_number(std::string_view s) {
  const std::string_view t = trim(s);
  const auto slash = t.find('/');
  if (slash == std::string_view::npos) return decimal(t, s);
  const double num = decimal(t.substr(0, slash), s);
  const double den = decimal(t.substr(slash + 1), s);
  if (den == 0.0) usage("zero denominator in \"" + std::string(s) + "\"");
  return num / den;
}

Scalar complex_scalar(std::string_view s) {
  const std::string_view t = trim(s);
  if (t.empty()) usage("empty scalar");
  if (t.back() != 'i') return {real_number(t), 0.0};
  const std::size_t k = split_sign(t);
  if (k == std::string_view::npos) return {0.0, imaginary_part(t, s)};
  return {real_number(t.substr(0, k)), imaginary_part(t.substr(k), s)};
}

std::vector<Scalar> sequence(std::string_view s) {
  if (trim(s).empty()) usage("empty sequence");
  std::vector<Scalar> out;
  for (const auto part : split(s, ',')) out.push_back(complex_scalar(part));
  return out;
}

std::vector<Scalar> polynomial(std::string_view s) {
  std::string compact;
  for (const char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);
  if (compact.empty()) usage("empty polynomial");

  std::vector<Scalar> coeffs;
  std::size_t i = 0;
  const std::string_view src = compact;
  while (i < src.size()) {
    double sign = 1.0;
    if (src[i] == '+' || src[i] == '-') {
      sign = src[i] == '-' ? -1.0 : 1.0;
      ++i;
    } else if (i != 0) {
      usage("expected + or - in polynomial \"" + std::string(s) + "\"");
    }
    if (i >= src.size()) usage("dangling sign in polynomial \"" + std::string(s) + "\"");

    Scalar coef{1.0, 0.0};
    if (src[i] == '(') {
      const auto close = src.find(')', i);
      if (close == std::string_view::npos) usage("unbalanced parenthesis in \"" + std::string(s) + "\"");
      coef = complex_scalar(src.substr(i + 1, close - i - 1));
      i = close + 1;
    } else if (src[i] != 'x') {
      std::size_t j = i;
      while (j < src.size() && src[j] != 'x' && src[j] != '*' && !((src[j] == '+' || src[j] == '-') && j > i &&
                                                  src[j - 1] != 'e' && src[j - 1] != 'E'))
        ++j;
      coef = {real_number(src.substr(i, j - i)), 0.0};
      i = j;
    }
    if (i < src.size() && src[i] == '*') ++i;

    std::size_t power = 0;
    if (i < src.size() && src[i] == 'x') {
      power = 1;
      ++i;
      if (i < src.size() && src[i] == '^') {
        ++i;
        std::size_t j = i;
        while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
        if (j == i) usage("missing exponent in \"" + std::string(s) + "\"");
        const auto res = std::from_chars(src.data() + i, src.data() + j, power);
        if (res.ec != std::errc() || power > kMaxPolyDegree) usage("exponent out of range in \"" + std::string(s) + "\"");
        i = j;
      }
    }
    if (i < src.size() && src[i] != '+' && src[i] != '-')
      usage("unexpected character '" + std::string(1, src[i]) + "' in polynomial \"" + std::string(s) + "\"");
    if (coeffs.size() <= power) coeffs.resize(power + 1);
    coeffs[power] += sign * coef;
  }
  return coeffs;
}

Vector vector(std::string_view s, const SpaceTag& space) {
  return Vector(space, space.is_sequence() ? sequence(s) : polynomial(s));
}

std::vector<Scalar> grid(std::string_view s) {
  const auto axes = split(s, ',');
  if (axes.size() != 2) usage("grid must be \"re0:re1:step,im0:im1:step\"");
  double lo[2], hi[2], step[2];
  for (int a = 0; a < 2; ++a) {
    const auto parts = split(axes[static_cast<std::size_t>(a)], ':');
    if (parts.size() == 1) {
      lo[a] = hi[a] = real_number(parts[0]);
      step[a] = 1.0;
    } else if (parts.size() == 3) {
      lo[a] = real_number(parts[0]);
      hi[a] = real_number(parts[1]);
      step[a] = real_number(parts[2]);
    } else {
      usage("grid axis must be \"lo:hi:step\" or a single number");
    }
  }
  try {
    return rectangular_grid(lo[0], hi[0], step[0], lo[1], hi[1], step[1]);
  } catch (const Error& e) {
    usage(e.what());
  }
}

SpaceTag space(std::string_view s, double a, double b) {
  const std::string_view t = trim(s);
  try {
    if (t == "c0") return SpaceTag::c0();
    if (t == "poly") return SpaceTag::poly(a, b);
    if (t.substr(0, 3) == "lp:") return SpaceTag::lp(real_number(t.substr(3)));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Usage) throw;
    usage(e.what());
  }
  usage("space must be lp:<p>, c0 or poly");
}

}  // namespace hclab::parse
