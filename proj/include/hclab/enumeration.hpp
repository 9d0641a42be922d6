#pragma once

#include <cstddef>
#include <vector>

#include "hclab/space.hpp"

namespace hclab {

/// First `count` members of the canonical countable dense subset of Y in `space`.
///
/// Level s = 1, 2, 3, ... contributes every vector with support (sequence
/// spaces) or coefficient count (polynomials) at most s and entries in
/// {-s, ..., s} / s, in lexicographic order of (x_1, ..., x_s). The zero vector
/// and vectors already produced at an earlier level are skipped.
std::vector<Vector> canonical_dense_sequence(const SpaceTag& space, std::size_t count);

}  // namespace hclab
