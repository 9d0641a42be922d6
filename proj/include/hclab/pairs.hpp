#pragma once

// Operator/right-inverse pairs (A, B, Y): A is the operator under study, B a
// right inverse on the dense set Y (A B f = f for f in Y).

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hclab/space.hpp"

namespace hclab {

enum class DecayKind { Geometric, Superexponential, Unknown };

/// Which decay hypothesis the pair is known to satisfy. For Geometric,
/// `alpha` bounds max(r(A,f), r(B,f)) uniformly over Y.
struct DecayProfile {
  DecayKind kind = DecayKind::Unknown;
  double alpha = 0.0;
};

struct PairDescriptor {
  enum class Family { BoundedShift, UnboundedShift, Differentiation, Custom };
  enum class TransformKind { Power, Multiple, Swap, RightInverse };

  struct Transform {
    TransformKind kind = TransformKind::Power;
    int n = 1;
    Scalar lambda{1.0, 0.0};
    bool operator==(const Transform&) const = default;
  };

  Family family = Family::BoundedShift;
  Scalar w{2.0, 0.0};
  SpaceTag space = SpaceTag::lp(2.0);
  std::string custom_name;
  std::vector<Transform> transforms;  // applied left to right

  bool operator==(const PairDescriptor&) const = default;
};

using VectorMap = std::function<Vector(const Vector&)>;

/// Raw ingredients of a pair. Factories below fill these in; tests may build
/// their own (e.g. an invertible diagonal double).
struct PairParts {
  SpaceTag space;
  VectorMap apply_a;
  VectorMap apply_b;
  std::function<bool(const Vector&)> dense_member;
  std::function<std::vector<Vector>(int)> kernel_basis;
  DecayProfile decay;
  std::function<double(int)> log_b_norm_bound;  // optional: log of a bound on ||B^n||
  VectorMap adjoint;                        // optional: action of A*
  bool invertible = false;                  // B is a two-sided bounded inverse of A
  bool y_in_kernel_union = false;           // Y is contained in the union of ker A^n
  PairDescriptor descriptor;
};

class OperatorPair {
 public:
  explicit OperatorPair(PairParts parts);

  const SpaceTag& space() const { return parts_->space; }
  Vector apply_a(const Vector& v) const;
  Vector apply_b(const Vector& v) const;
  bool dense_set_member(const Vector& v) const;
  std::vector<Vector> kernel_basis(int n) const;
  const DecayProfile& decay_profile() const { return parts_->decay; }
  std::optional<double> b_norm_bound(int n) const;
  /// Same bound in log form; stays finite where the bound itself underflows.
  std::optional<double> log_b_norm_bound(int n) const;
  bool has_b_norm_bound() const { return static_cast<bool>(parts_->log_b_norm_bound); }
  bool has_adjoint() const { return static_cast<bool>(parts_->adjoint); }
  Vector adjoint_apply(const Vector& v) const;
  bool invertible() const { return parts_->invertible; }
  bool y_in_kernel_union() const { return parts_->y_in_kernel_union; }
  const PairDescriptor& descriptor() const { return parts_->descriptor; }

 private:
  std::shared_ptr<const PairParts> parts_;
};

/// A x = w (x_2, x_3, ...), B x = w^-1 (0, x_1, x_2, ...). Requires |w| > 1.
OperatorPair make_bounded_shift(Scalar w, const SpaceTag& space);

/// A x = (w^k x_{k+1})_k, B x = (w^-(k-1) x_{k-1})_k. Requires |w| > 1.
OperatorPair make_unbounded_shift(Scalar w, const SpaceTag& space);

/// A = d/dx, B = integration from a, on polynomials over [a, b].
OperatorPair make_differentiation(double a, double b);

/// (A^n, B^n) over the same Y.
OperatorPair power_pair(const OperatorPair& p, int n);

/// (lambda A, lambda^-1 B).
OperatorPair multiple_pair(const OperatorPair& p, Scalar lambda);

/// Exchanges the roles of A and B; the pair must be flagged invertible.
OperatorPair swap_pair(const OperatorPair& p);

/// Promotes B to the operator under study, with the adjoint of B attached, for
/// adjoint orbit probes. The result is not a right-inverse pair (its "B" is the
/// left inverse A), and reports no kernel basis or decay profile.
OperatorPair right_inverse_operator(const OperatorPair& p);

OperatorPair build_pair(const PairDescriptor& descriptor);

/// w^k with exact powers for real w.
Scalar int_power(Scalar w, long k);

}  // namespace hclab
