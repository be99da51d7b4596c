#include "ggsum/quadrature.hpp"

#include <cmath>
#include <vector>

#include "ggsum/errors.hpp"

namespace ggsum {

void QuadSpec::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || !(tail_mass_tol > 0.0))
    throw ValidationError("QuadSpec: tolerances must be positive");
  if (rel_tol >= 1.0) throw ValidationError("QuadSpec: rel_tol must be < 1");
  if (max_refinements <= 0)
    throw ValidationError("QuadSpec: max_refinements must be positive");
}

namespace quad {

namespace {

// tanh-sinh node: position tanh((pi/2) sinh t), endpoint gap and weight.
struct Node {
  double gap;     // 1 - tanh((pi/2) sinh t), exact near the endpoint
  double weight;  // (pi/2) cosh t / cosh^2((pi/2) sinh t)
};

constexpr double kTMax = 4.0;
constexpr int kMaxLevel = 9;  // finest step 2^-9

// nodes_for_level[0] holds t = 0, 1, ..., kTMax; level L >= 1 holds the odd
// multiples of 2^-L.  Nodes are for t >= 0 only; the rule is symmetric.
const std::vector<std::vector<Node>>& node_table() {
  static const std::vector<std::vector<Node>> table = [] {
    std::vector<std::vector<Node>> tab(kMaxLevel + 1);
    auto make = [](double t) {
      const double y = 0.5 * M_PI * std::sinh(t);
      const double ch = std::cosh(y);
      Node n;
      n.gap = 2.0 / (std::exp(2.0 * y) + 1.0);  // == 1 - tanh(y)
      n.weight = 0.5 * M_PI * std::cosh(t) / (ch * ch);
      return n;
    };
    for (int k = 0; k * 1.0 <= kTMax; ++k) tab[0].push_back(make(double(k)));
    for (int level = 1; level <= kMaxLevel; ++level) {
      const double h = std::ldexp(1.0, -level);
      for (int k = 1; k * h <= kTMax; k += 2) tab[level].push_back(make(k * h));
    }
    return tab;
  }();
  return table;
}

// One tanh-sinh pass over [a, b]; returns the estimate at the finest level
// reached and the last level-to-level delta.
struct DEResult {
  double value;
  double delta;
  bool converged;
};

DEResult tanh_sinh(const std::function<double(double)>& f, double a, double b,
                   double tol_abs, double tol_rel) {
  const auto& table = node_table();
  const double s = 0.5 * (b - a);
  const double c = 0.5 * (a + b);

  auto eval_pair = [&](const Node& n) {
    double acc = 0.0;
    const double xl = a + s * n.gap;
    const double xr = b - s * n.gap;
    if (xl > a) acc += f(xl);
    if (xr < b && xr > xl) acc += f(xr);
    return n.weight * acc;
  };

  // level 0: t = 0 plus integer nodes
  double sum = table[0][0].weight * f(c);
  for (std::size_t i = 1; i < table[0].size(); ++i) sum += eval_pair(table[0][i]);
  double h = 1.0;
  double prev = sum * h * s;

  for (int level = 1; level <= kMaxLevel; ++level) {
    for (const Node& n : table[level]) sum += eval_pair(n);
    h *= 0.5;
    const double cur = sum * h * s;
    const double delta = std::abs(cur - prev);
    if (level >= 3 && delta <= std::max(tol_abs, tol_rel * std::abs(cur)))
      return {cur, delta, true};
    prev = cur;
  }
  return {prev, std::abs(prev), false};
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadSpec& q) {
  q.validate();
  if (!(b > a)) {
    if (b == a) return 0.0;
    throw ValidationError("quad::integrate: bounds out of order");
  }

  struct Interval {
    double a, b;
  };
  std::vector<Interval> stack{{a, b}};
  int splits_left = q.max_refinements;
  double total = 0.0;
  double worst_delta = 0.0;

  while (!stack.empty()) {
    const Interval iv = stack.back();
    stack.pop_back();
    const DEResult r = tanh_sinh(f, iv.a, iv.b, q.abs_tol, q.rel_tol);
    if (r.converged) {
      total += r.value;
      continue;
    }
    if (splits_left-- <= 0)
      throw AccuracyError(
          "quad::integrate: refinement budget exhausted; achieved error about " +
              std::to_string(r.delta),
          r.delta);
    worst_delta = std::max(worst_delta, r.delta);
    const double mid = 0.5 * (iv.a + iv.b);
    if (!(mid > iv.a && mid < iv.b)) {  // interval no longer splittable
      total += r.value;
      continue;
    }
    stack.push_back({iv.a, mid});
    stack.push_back({mid, iv.b});
  }
  return total;
}

double integrate_ladder(const std::function<double(double)>& f, double upper,
                        double scale_floor, const QuadSpec& q) {
  q.validate();
  if (!(upper > 0.0)) return 0.0;
  if (!(scale_floor > 0.0) || scale_floor >= upper)
    return integrate(f, 0.0, upper, q);

  // breakpoints upper, upper/8, upper/64, ... down to scale_floor
  std::vector<double> cuts{upper};
  double c = upper;
  while (c / 8.0 > scale_floor && cuts.size() < 40) {
    c /= 8.0;
    cuts.push_back(c);
  }
  double total = integrate(f, 0.0, cuts.back(), q);
  for (std::size_t i = cuts.size(); i-- > 1;)
    total += integrate(f, cuts[i], cuts[i - 1], q);
  return total;
}

}  // namespace quad

}  // namespace ggsum
