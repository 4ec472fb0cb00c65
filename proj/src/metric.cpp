#include "peano/metric.hpp"

#include <cmath>
#include <stdexcept>

namespace peano {

Norm parse_norm(std::string_view text) {
  if (text == "1" || text == "l1") return Norm::L1;
  if (text == "2" || text == "l2") return Norm::L2;
  if (text == "inf" || text == "linf" || text == "oo") return Norm::Linf;
  throw std::invalid_argument("unknown norm '" + std::string(text) + "' (use 1, 2 or inf)");
}

std::string to_string(Norm norm) {
  switch (norm) {
    case Norm::L1:
      return "l1";
    case Norm::L2:
      return "l2";
    case Norm::Linf:
      return "linf";
  }
  return "?";
}

Integer Metric::numerator(const std::int64_t* diffs) const {
  Integer base = 0;
  switch (norm) {
    case Norm::L1:
      for (int a = 0; a < dim; ++a) base += to_integer(diffs[a]);
      return int_pow(base, dim);
    case Norm::Linf:
      for (int a = 0; a < dim; ++a)
        if (to_integer(diffs[a]) > base) base = to_integer(diffs[a]);
      return int_pow(base, dim);
    case Norm::L2:
      for (int a = 0; a < dim; ++a) {
        Integer x = to_integer(diffs[a]);
        base += x * x;
      }
      return int_pow(base, dim % 2 == 0 ? dim / 2 : dim);
  }
  return base;
}

double Metric::numerator_approx(const std::int64_t* diffs) const {
  double base = 0;
  switch (norm) {
    case Norm::L1:
      for (int a = 0; a < dim; ++a) base += static_cast<double>(diffs[a]);
      return std::pow(base, dim);
    case Norm::Linf:
      for (int a = 0; a < dim; ++a) base = std::max(base, static_cast<double>(diffs[a]));
      return std::pow(base, dim);
    case Norm::L2:
      for (int a = 0; a < dim; ++a) base += static_cast<double>(diffs[a]) * static_cast<double>(diffs[a]);
      return std::pow(base, dim % 2 == 0 ? dim / 2 : dim);
  }
  return base;
}

Rational Metric::numerator(const Point& x, const Point& y) const {
  if (static_cast<int>(x.size()) != dim || static_cast<int>(y.size()) != dim)
    throw DimensionMismatch("point dimension differs from metric");
  Rational base = 0;
  for (int a = 0; a < dim; ++a) {
    Rational diff = abs(x[a] - y[a]);
    switch (norm) {
      case Norm::L1:
        base += diff;
        break;
      case Norm::Linf:
        if (diff > base) base = diff;
        break;
      case Norm::L2:
        base += diff * diff;
        break;
    }
  }
  if (norm == Norm::L2) return rat_pow(base, dim % 2 == 0 ? dim / 2 : dim);
  return rat_pow(base, dim);
}

Rational Metric::key(const Point& x, const Point& y, const Rational& dt) const {
  if (dt <= 0) throw std::domain_error("time difference must be positive");
  return numerator(x, y) / rat_pow(dt, time_power());
}

double Metric::value_from_key(const Rational& key) const {
  double k = key.get_d();
  return key_power() == 2 ? std::sqrt(k) : k;
}

std::pair<double, double> Metric::value_bounds(const Rational& key) const {
  double v = value_from_key(key);
  return {std::nextafter(std::nextafter(v, 0.0), 0.0), std::nextafter(std::nextafter(v, INFINITY), INFINITY)};
}

std::string Metric::name() const { return to_string(norm) + "^" + std::to_string(dim); }

}  // namespace peano
