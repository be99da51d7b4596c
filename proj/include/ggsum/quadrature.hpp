#ifndef GGSUM_QUADRATURE_HPP
#define GGSUM_QUADRATURE_HPP

#include <functional>

namespace ggsum {

/// Controls for the adaptive quadrature engine.
struct QuadSpec {
  double rel_tol = 1e-9;
  double abs_tol = 1e-14;
  int max_refinements = 60;     ///< interval-split budget
  double tail_mass_tol = 1e-13; ///< mass allowed beyond the truncation point

  void validate() const;
};

namespace quad {

/// Integrates f over the finite interval [a, b] with a tanh-sinh
/// (double-exponential) rule refined level by level, bisecting intervals
/// that fail to settle.  Endpoint singularities integrable at a or b are
/// handled by the rule; f is never evaluated at the endpoints themselves.
/// Throws AccuracyError when the refinement budget is exhausted.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadSpec& q);

/// Integrates f over [0, upper] where the integrand may span many decades,
/// by seeding the adaptive engine with a geometric ladder of subintervals
/// reaching down to `scale_floor`.
double integrate_ladder(const std::function<double(double)>& f, double upper,
                        double scale_floor, const QuadSpec& q);

}  // namespace quad

}  // namespace ggsum

#endif
