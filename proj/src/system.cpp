#include "polytube/system.hpp"

#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

#include "polytube/detail/geometry_internal.hpp"
#include "polytube/errors.hpp"

namespace polytube {

LtvSystem::LtvSystem(int state_dim, int input_dim, MatrixFn a, MatrixFn b,
                     HPolytope input_space, int horizon)
    : state_dim_(state_dim),
      input_dim_(input_dim),
      a_(std::move(a)),
      b_(std::move(b)),
      input_space_(std::move(input_space)),
      horizon_(horizon) {
  if (horizon_ < 0) throw Error("LtvSystem: negative horizon");
  if (input_space_.dim() != input_dim_)
    throw DimensionMismatch("LtvSystem: input space dimension");
  if (input_space_.is_empty())
    throw EmptyInput("LtvSystem: empty input space");
  if (!input_space_.is_bounded())
    throw UnboundedPolytope("LtvSystem: input space must be compact");
  for (int k = 0; k < horizon_; ++k) {
    const Matrix ak = a_(k);
    const Matrix bk = b_(k);
    if (ak.rows() != state_dim_ || ak.cols() != state_dim_)
      throw DimensionMismatch("LtvSystem: A(k) size");
    if (bk.rows() != state_dim_ || bk.cols() != input_dim_)
      throw DimensionMismatch("LtvSystem: B(k) size");
    const Eigen::FullPivLU<Matrix> lu(ak);
    if (!lu.isInvertible())
      throw NonInvertibleMap("LtvSystem: singular A(k) at k=" +
                             std::to_string(k));
  }
}

LtvSystem LtvSystem::lti(const Matrix& a, const Matrix& b,
                         const HPolytope& input_space, int horizon) {
  return LtvSystem(static_cast<int>(a.rows()), static_cast<int>(b.cols()),
                   [a](int) { return a; }, [b](int) { return b; }, input_space,
                   horizon);
}

Matrix LtvSystem::a(int k) const {
  if (k < 0 || k >= horizon_) throw IndexOutOfRange("LtvSystem::a");
  return a_(k);
}

Matrix LtvSystem::b(int k) const {
  if (k < 0 || k >= horizon_) throw IndexOutOfRange("LtvSystem::b");
  return b_(k);
}

TargetTube::TargetTube(std::vector<HPolytope> sets) : sets_(std::move(sets)) {
  if (sets_.empty()) throw EmptyList("TargetTube: needs at least T_0");
  const int n = sets_.front().dim();
  for (const auto& s : sets_)
    if (s.dim() != n) throw DimensionMismatch("TargetTube: mixed dimensions");
}

TargetTube TargetTube::viability_box(int dim, double half_width, int horizon) {
  std::vector<HPolytope> sets(static_cast<size_t>(horizon) + 1,
                              HPolytope::cube(dim, half_width));
  return TargetTube(std::move(sets));
}

const HPolytope& TargetTube::at(int k) const {
  if (k < 0 || k >= static_cast<int>(sets_.size()))
    throw IndexOutOfRange("TargetTube::at");
  return sets_[static_cast<size_t>(k)];
}

std::pair<Matrix, Matrix> double_integrator_matrices(double sampling_time) {
  const double t = sampling_time;
  Matrix a(2, 2);
  a << 1, t, 0, 1;
  Matrix b(2, 1);
  b << 0.5 * t * t, t;
  return {a, b};
}

std::pair<Matrix, Matrix> integrator_chain_matrices(int dim,
                                                    double sampling_time) {
  if (dim < 1) throw Error("integrator_chain_matrices: dim must be >= 1");
  const double t = sampling_time;
  Matrix a = Matrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    double term = 1.0;
    for (int j = i; j < dim; ++j) {
      a(i, j) = term;  // T^(j-i) / (j-i)!
      term *= t / (j - i + 1);
    }
  }
  Matrix b(dim, 1);
  for (int i = 0; i < dim; ++i) {
    const int pow = dim - i;
    double term = 1.0;
    for (int p = 1; p <= pow; ++p) term *= t / p;
    b(i, 0) = term;  // T^(n-i) / (n-i)!
  }
  return {a, b};
}

std::pair<Matrix, Matrix> cwh_matrices(double orbital_rate, double mass,
                                       double sampling_time) {
  const double w = orbital_rate;
  Matrix ac = Matrix::Zero(4, 4);
  ac(0, 2) = 1.0;
  ac(1, 3) = 1.0;
  ac(2, 0) = 3.0 * w * w;
  ac(2, 3) = 2.0 * w;
  ac(3, 2) = -2.0 * w;
  Matrix bc = Matrix::Zero(4, 2);
  bc(2, 0) = 1.0 / mass;
  bc(3, 1) = 1.0 / mass;

  Matrix block = Matrix::Zero(6, 6);
  block.topLeftCorner(4, 4) = ac;
  block.topRightCorner(4, 2) = bc;
  const Matrix expm = (block * sampling_time).exp();
  return {expm.topLeftCorner(4, 4), expm.topRightCorner(4, 2)};
}

HPolytope one_step_backward_reach(const LtvSystem& sys, int k,
                                  const HPolytope& s) {
  if (s.dim() != sys.dim())
    throw DimensionMismatch("one_step_backward_reach: set dimension");
  if (k < 0 || k >= sys.horizon())
    throw IndexOutOfRange("one_step_backward_reach: time index");
  if (s.is_empty()) return HPolytope::empty(sys.dim());

  const VPolytope input_vertices = to_vrep(sys.input_space());
  const VPolytope minus_bu =
      affine_map(input_vertices, -sys.b(k), Vector::Zero(sys.dim()));
  // Raw candidate sums go straight to facet enumeration; interior candidates
  // are harmless there and filtering them first costs one LP each.
  const VPolytope sum(detail::minkowski_candidates(to_vrep(s), minus_bu),
                      sys.dim());
  return detail::light_normalize(
      preimage_under_linear(to_hrep(sum), sys.a(k)));
}

}  // namespace polytube
