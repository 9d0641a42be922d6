#include "hclab/enumeration.hpp"

#include <set>
#include <utility>

namespace hclab {

std::vector<Vector> canonical_dense_sequence(const SpaceTag& space, std::size_t count) {
  std::vector<Vector> out;
  out.reserve(count);
  std::set<std::vector<std::pair<double, double>>> seen;

  for (int s = 1; out.size() < count; ++s) {
    // odometer over digits in [-s, s], most significant first
    std::vector<int> digit(static_cast<std::size_t>(s), -s);
    while (true) {
      std::vector<Scalar> c(digit.size());
      for (std::size_t i = 0; i < digit.size(); ++i) c[i] = Scalar(static_cast<double>(digit[i]) / s, 0.0);
      Vector v(space, std::move(c));
      if (!v.is_zero()) {
        std::vector<std::pair<double, double>> key;
        key.reserve(v.size());
        for (const Scalar& z : v.coeffs()) key.emplace_back(z.real(), z.imag());
        if (seen.insert(std::move(key)).second) {
          out.push_back(std::move(v));
          if (out.size() == count) return out;
        }
      }
      std::size_t pos = digit.size();
      while (pos > 0 && digit[pos - 1] == s) digit[--pos] = -s;
      if (pos == 0) break;
      ++digit[pos - 1];
    }
  }
  return out;
}

}  // namespace hclab
