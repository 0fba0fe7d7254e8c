#ifndef ICG_IVM_HPP
#define ICG_IVM_HPP

#include <Eigen/Core>
#include <functional>
#include <string>
#include <vector>

#include "icg/interval.hpp"

namespace icg {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// One interval-valued objective, given by its lower and upper endpoint
/// functions together with their gradients. Callables must be pure; the
/// library may evaluate them concurrently from benchmark workers.
struct IntervalFunction {
    std::function<double(const Vector&)> lower_fn;
    std::function<double(const Vector&)> upper_fn;
    std::function<Vector(const Vector&)> lower_grad;
    std::function<Vector(const Vector&)> upper_grad;
    int dim = 0;

    /// Build [c - w, c + w] from a center and a nonnegative width function.
    /// Endpoint ordering then holds by construction; a negative width is
    /// reported as EndpointOrderViolation at evaluation time.
    static IntervalFunction from_center_width(std::function<double(const Vector&)> center_fn,
                                              std::function<Vector(const Vector&)> center_grad,
                                              std::function<double(const Vector&)> width_fn,
                                              std::function<Vector(const Vector&)> width_grad,
                                              int dim);
};

/// Componentwise interval gradient: component j is
/// [min, max] of the two endpoint partial derivatives.
struct GHGradient {
    Vector lo;  // componentwise minima
    Vector hi;  // componentwise maxima

    int dim() const { return static_cast<int>(lo.size()); }
    Interval component(int j) const { return Interval(lo[j], hi[j]); }
};

/// The full objective map G = (G_1, ..., G_m), all on the same space.
struct MultiObjective {
    std::vector<IntervalFunction> objectives;
    std::string name;

    int dim() const { return objectives.empty() ? 0 : objectives.front().dim; }
    int size() const { return static_cast<int>(objectives.size()); }
};

/// Evaluate [lower(x), upper(x)].
/// Throws DimensionMismatch, or EndpointOrderViolation when lower > upper.
Interval eval(const IntervalFunction& f, const Vector& x);

/// Interval gradient assembled from the two endpoint gradients.
GHGradient gh_gradient(const IntervalFunction& f, const Vector& x);

/// Max over endpoints and components of |analytic - central difference|.
/// Test-time gradient validation; not used by the solver itself.
double finite_diff_check(const IntervalFunction& f, const Vector& x, double h);

}  // namespace icg

#endif
