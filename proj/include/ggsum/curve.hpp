#ifndef GGSUM_CURVE_HPP
#define GGSUM_CURVE_HPP

#include <cmath>
#include <optional>
#include <vector>

namespace ggsum {

/// One row of a metric sweep: dB abscissa, metric value, and the Monte-Carlo
/// standard error when the row came from (or carries) an MC estimate.
struct CurvePoint {
  double abscissa_db;
  double value;
  std::optional<double> std_error;
};

struct MetricCurve {
  std::vector<CurvePoint> points;
};

/// dB to linear power ratio: 10^(db/10).
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double v) { return 10.0 * std::log10(v); }

}  // namespace ggsum

#endif
