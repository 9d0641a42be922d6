#include "hclab/pairs.hpp"

#include <cmath>

#include "hclab/errors.hpp"

namespace hclab {

namespace {

void require_space(const SpaceTag& expected, const Vector& v) {
  if (!(v.space() == expected))
    raise(ErrorKind::SpaceMismatch, describe(v.space()) + " given to an operator on " + describe(expected));
}

bool is_l2(const SpaceTag& s) { return s.kind == SpaceKind::Lp && s.p == 2.0; }

std::vector<Vector> sequence_kernel(const SpaceTag& space, int n) {
  if (n < 1) raise(ErrorKind::Param, "kernel_basis needs n >= 1");
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) out.push_back(canonical_basis(space, static_cast<std::size_t>(k)));
  return out;
}

// (x_2, x_3, ...) with entry k scaled by weight(k).
template <typename Weight>
Vector drop_first(const Vector& x, Weight weight) {
  if (x.size() <= 1) return Vector(x.space());
  std::vector<Scalar> out(x.size() - 1);
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const Scalar xi = x.coeffs()[i + 1];
    if (xi != Scalar{}) out[i] = weight(static_cast<long>(i + 1)) * xi;
  }
  return Vector(x.space(), std::move(out));
}

// (0, x_1, x_2, ...) with the entry landing at index k scaled by weight(k).
template <typename Weight>
Vector prepend_zero(const Vector& x, Weight weight) {
  if (x.is_zero()) return x;
  std::vector<Scalar> out(x.size() + 1);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const Scalar xi = x.coeffs()[i];
    if (xi != Scalar{}) out[i + 1] = weight(static_cast<long>(i + 2)) * xi;
  }
  return Vector(x.space(), std::move(out));
}

void require_weight(Scalar w) {
  if (!(std::abs(w) > 1.0) || !std::isfinite(std::abs(w))) raise(ErrorKind::Param, "shift weight needs |w| > 1");
}

Vector derivative(const Vector& f) {
  if (f.size() <= 1) return Vector(f.space());
  std::vector<Scalar> out(f.size() - 1);
  for (std::size_t k = 1; k < f.size(); ++k) out[k - 1] = static_cast<double>(k) * f.coeffs()[k];
  return Vector(f.space(), std::move(out));
}

// antiderivative G with G(x0) = 0
Vector integral_from(const Vector& f, double x0) {
  if (f.is_zero()) return f;
  if (f.size() + 1 > kMaxPolyDegree + 1) raise(ErrorKind::DegreeOverflow, "integration would exceed degree 400");
  std::vector<Scalar> out(f.size() + 1);
  for (std::size_t k = 0; k < f.size(); ++k) out[k + 1] = f.coeffs()[k] / static_cast<double>(k + 1);
  if (x0 != 0.0) {
    Scalar value{};
    for (std::size_t k = out.size(); k-- > 1;) value = (value + out[k]) * x0;
    out[0] = -value;
  }
  return Vector(f.space(), std::move(out));
}

}  // namespace

Scalar int_power(Scalar w, long k) {
  if (w.imag() == 0.0) return {std::pow(w.real(), static_cast<double>(k)), 0.0};
  if (k < 0) return int_power(Scalar{1.0, 0.0} / w, -k);
  Scalar result{1.0, 0.0};
  Scalar base = w;
  while (k != 0) {
    if (k & 1) result *= base;
    base *= base;
    k >>= 1;
  }
  return result;
}

OperatorPair::OperatorPair(PairParts parts) : parts_(std::make_shared<const PairParts>(std::move(parts))) {}

Vector OperatorPair::apply_a(const Vector& v) const {
  require_space(parts_->space, v);
  return parts_->apply_a(v);
}

Vector OperatorPair::apply_b(const Vector& v) const {
  require_space(parts_->space, v);
  return parts_->apply_b(v);
}

bool OperatorPair::dense_set_member(const Vector& v) const {
  return v.space() == parts_->space && parts_->dense_member(v);
}

std::vector<Vector> OperatorPair::kernel_basis(int n) const {
  if (n < 1) raise(ErrorKind::Param, "kernel_basis needs n >= 1");
  if (!parts_->kernel_basis) return {};
  return parts_->kernel_basis(n);
}

std::optional<double> OperatorPair::b_norm_bound(int n) const {
  if (!parts_->log_b_norm_bound) return std::nullopt;
  return std::exp(parts_->log_b_norm_bound(n));
}

std::optional<double> OperatorPair::log_b_norm_bound(int n) const {
  if (!parts_->log_b_norm_bound) return std::nullopt;
  return parts_->log_b_norm_bound(n);
}

Vector OperatorPair::adjoint_apply(const Vector& v) const {
  if (!parts_->adjoint) raise(ErrorKind::NoAdjoint, "pair has no adjoint action");
  require_space(parts_->space, v);
  return parts_->adjoint(v);
}

OperatorPair make_bounded_shift(Scalar w, const SpaceTag& space) {
  require_weight(w);
  if (!space.is_sequence()) raise(ErrorKind::Param, "shifts act on l_p or c_0");
  const Scalar w_inv = Scalar{1.0, 0.0} / w;
  PairParts parts;
  parts.space = space;
  parts.apply_a = [w](const Vector& x) { return drop_first(x, [w](long) { return w; }); };
  parts.apply_b = [w_inv](const Vector& x) { return prepend_zero(x, [w_inv](long) { return w_inv; }); };
  parts.dense_member = [](const Vector&) { return true; };
  parts.kernel_basis = [space](int n) { return sequence_kernel(space, n); };
  parts.decay = {DecayKind::Geometric, 1.0 / std::abs(w)};
  const double aw = std::abs(w);
  parts.log_b_norm_bound = [la = std::log(aw)](int n) { return -static_cast<double>(n) * la; };
  if (is_l2(space)) {
    const Scalar wc = std::conj(w);
    parts.adjoint = [wc](const Vector& y) { return prepend_zero(y, [wc](long) { return wc; }); };
  }
  parts.y_in_kernel_union = true;
  parts.descriptor = {PairDescriptor::Family::BoundedShift, w, space, {}, {}};
  return OperatorPair(std::move(parts));
}

OperatorPair make_unbounded_shift(Scalar w, const SpaceTag& space) {
  require_weight(w);
  if (!space.is_sequence()) raise(ErrorKind::Param, "shifts act on l_p or c_0");
  PairParts parts;
  parts.space = space;
  parts.apply_a = [w](const Vector& x) { return drop_first(x, [w](long k) { return int_power(w, k); }); };
  parts.apply_b = [w](const Vector& x) {
    return prepend_zero(x, [w](long k) { return int_power(w, -(k - 1)); });
  };
  parts.dense_member = [](const Vector&) { return true; };
  parts.kernel_basis = [space](int n) { return sequence_kernel(space, n); };
  parts.decay = {DecayKind::Superexponential, 0.0};
  const double aw = std::abs(w);
  parts.log_b_norm_bound = [la = std::log(aw)](int n) {
    return -0.5 * static_cast<double>(n) * static_cast<double>(n + 1) * la;
  };
  if (is_l2(space)) {
    // (A* y)_k = conj(w)^(k-1) y_{k-1}
    parts.adjoint = [w](const Vector& y) {
      return prepend_zero(y, [w](long k) { return std::conj(int_power(w, k - 1)); });
    };
  }
  parts.y_in_kernel_union = true;
  parts.descriptor = {PairDescriptor::Family::UnboundedShift, w, space, {}, {}};
  return OperatorPair(std::move(parts));
}

OperatorPair make_differentiation(double a, double b) {
  if (!(a < b)) raise(ErrorKind::Param, "differentiation needs a < b");
  const SpaceTag space = SpaceTag::poly(a, b);
  PairParts parts;
  parts.space = space;
  parts.apply_a = derivative;
  parts.apply_b = [a](const Vector& f) { return integral_from(f, a); };
  parts.dense_member = [](const Vector&) { return true; };
  parts.kernel_basis = [space](int n) {
    std::vector<Vector> out;
    for (int k = 1; k <= n; ++k) out.push_back(canonical_basis(space, static_cast<std::size_t>(k)));
    return out;
  };
  parts.decay = {DecayKind::Superexponential, 0.0};
  // ||B^n|| = (b - a)^n / n! on C[a, b]
  const double len = b - a;
  // (b - a)^n / n!
  parts.log_b_norm_bound = [ll = std::log(len)](int n) {
    return static_cast<double>(n) * ll - std::lgamma(static_cast<double>(n) + 1.0);
  };
  parts.y_in_kernel_union = true;
  parts.descriptor = {PairDescriptor::Family::Differentiation, {}, space, {}, {}};
  return OperatorPair(std::move(parts));
}

namespace {

VectorMap repeat(VectorMap f, int n) {
  return [f = std::move(f), n](const Vector& v) {
    Vector out = v;
    for (int i = 0; i < n; ++i) out = f(out);
    return out;
  };
}

PairDescriptor with_transform(PairDescriptor d, PairDescriptor::Transform t) {
  d.transforms.push_back(t);
  return d;
}

}  // namespace

OperatorPair power_pair(const OperatorPair& p, int n) {
  if (n < 1) raise(ErrorKind::Param, "power needs n >= 1");
  PairParts parts;
  parts.space = p.space();
  parts.apply_a = repeat([p](const Vector& v) { return p.apply_a(v); }, n);
  parts.apply_b = repeat([p](const Vector& v) { return p.apply_b(v); }, n);
  parts.dense_member = [p](const Vector& v) { return p.dense_set_member(v); };
  parts.kernel_basis = [p, n](int m) { return p.kernel_basis(m * n); };
  parts.decay = p.decay_profile();
  if (parts.decay.kind == DecayKind::Geometric) parts.decay.alpha = std::pow(parts.decay.alpha, n);
  if (p.has_b_norm_bound()) parts.log_b_norm_bound = [p, n](int m) { return *p.log_b_norm_bound(m * n); };
  if (p.has_adjoint()) parts.adjoint = repeat([p](const Vector& v) { return p.adjoint_apply(v); }, n);
  parts.invertible = p.invertible();
  parts.y_in_kernel_union = p.y_in_kernel_union();
  parts.descriptor = with_transform(p.descriptor(), {PairDescriptor::TransformKind::Power, n, {1.0, 0.0}});
  return OperatorPair(std::move(parts));
}

OperatorPair multiple_pair(const OperatorPair& p, Scalar lambda) {
  if (lambda == Scalar{}) raise(ErrorKind::Param, "multiple needs lambda != 0");
  const Scalar inv = Scalar{1.0, 0.0} / lambda;
  const double mod = std::abs(lambda);
  PairParts parts;
  parts.space = p.space();
  parts.apply_a = [p, lambda](const Vector& v) { return scale(lambda, p.apply_a(v)); };
  parts.apply_b = [p, inv](const Vector& v) { return scale(inv, p.apply_b(v)); };
  parts.dense_member = [p](const Vector& v) { return p.dense_set_member(v); };
  parts.kernel_basis = [p](int m) { return p.kernel_basis(m); };
  parts.decay = p.decay_profile();
  if (parts.decay.kind == DecayKind::Geometric) {
    // r(lambda A, f) <= |lambda| alpha and r(lambda^-1 B, f) <= alpha / |lambda|
    const double alpha = std::max(parts.decay.alpha * mod, parts.decay.alpha / mod);
    parts.decay = alpha < 1.0 ? DecayProfile{DecayKind::Geometric, alpha} : DecayProfile{};
  }
  if (p.has_b_norm_bound())
    parts.log_b_norm_bound = [p, lm = std::log(mod)](int m) { return *p.log_b_norm_bound(m) - m * lm; };
  if (p.has_adjoint()) {
    const Scalar lc = std::conj(lambda);
    parts.adjoint = [p, lc](const Vector& v) { return scale(lc, p.adjoint_apply(v)); };
  }
  parts.invertible = p.invertible();
  parts.y_in_kernel_union = p.y_in_kernel_union();
  parts.descriptor = with_transform(p.descriptor(), {PairDescriptor::TransformKind::Multiple, 1, lambda});
  return OperatorPair(std::move(parts));
}

OperatorPair swap_pair(const OperatorPair& p) {
  if (!p.invertible()) raise(ErrorKind::NotInvertible, "swap needs B to be a two-sided inverse of A");
  PairParts parts;
  parts.space = p.space();
  parts.apply_a = [p](const Vector& v) { return p.apply_b(v); };
  parts.apply_b = [p](const Vector& v) { return p.apply_a(v); };
  parts.dense_member = [p](const Vector& v) { return p.dense_set_member(v); };
  parts.kernel_basis = [](int) { return std::vector<Vector>{}; };
  parts.decay = p.decay_profile();
  parts.invertible = true;
  parts.descriptor = with_transform(p.descriptor(), {PairDescriptor::TransformKind::Swap, 1, {1.0, 0.0}});
  return OperatorPair(std::move(parts));
}

OperatorPair right_inverse_operator(const OperatorPair& p) {
  const PairDescriptor& d = p.descriptor();
  PairParts parts;
  parts.space = p.space();
  parts.apply_a = [p](const Vector& v) { return p.apply_b(v); };
  parts.apply_b = [p](const Vector& v) { return p.apply_a(v); };
  parts.dense_member = [p](const Vector& v) { return p.dense_set_member(v); };
  parts.kernel_basis = [](int) { return std::vector<Vector>{}; };
  parts.decay = {};
  // Adjoint of B is only derivable for an untransformed built-in.
  if (d.transforms.empty()) {
    const Scalar w = d.w;
    if (d.family == PairDescriptor::Family::BoundedShift && is_l2(p.space())) {
      const Scalar c = std::conj(Scalar{1.0, 0.0} / w);
      parts.adjoint = [c](const Vector& y) { return drop_first(y, [c](long) { return c; }); };
    } else if (d.family == PairDescriptor::Family::UnboundedShift && is_l2(p.space())) {
      // (B* y)_k = conj(w^-k) y_{k+1}
      parts.adjoint = [w](const Vector& y) {
        return drop_first(y, [w](long k) { return std::conj(int_power(w, -k)); });
      };
    } else if (d.family == PairDescriptor::Family::Differentiation) {
      // (V* g)(x) = int_x^b g(t) dt, adjoint under the L^2 pairing
      const double b = p.space().b;
      parts.adjoint = [b](const Vector& g) { return scale(Scalar{-1.0, 0.0}, integral_from(g, b)); };
    }
  }
  parts.descriptor = with_transform(d, {PairDescriptor::TransformKind::RightInverse, 1, {1.0, 0.0}});
  return OperatorPair(std::move(parts));
}

OperatorPair build_pair(const PairDescriptor& descriptor) {
  OperatorPair p = [&] {
    switch (descriptor.family) {
      case PairDescriptor::Family::BoundedShift: return make_bounded_shift(descriptor.w, descriptor.space);
      case PairDescriptor::Family::UnboundedShift: return make_unbounded_shift(descriptor.w, descriptor.space);
      case PairDescriptor::Family::Differentiation:
        return make_differentiation(descriptor.space.a, descriptor.space.b);
      case PairDescriptor::Family::Custom: break;
    }
    raise(ErrorKind::Param, "custom pairs cannot be rebuilt from a descriptor");
  }();
  for (const auto& t : descriptor.transforms) {
    switch (t.kind) {
      case PairDescriptor::TransformKind::Power: p = power_pair(p, t.n); break;
      case PairDescriptor::TransformKind::Multiple: p = multiple_pair(p, t.lambda); break;
      case PairDescriptor::TransformKind::Swap: p = swap_pair(p); break;
      case PairDescriptor::TransformKind::RightInverse: p = right_inverse_operator(p); break;
    }
  }
  return p;
}

}  // namespace hclab
