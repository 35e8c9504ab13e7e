#include "otk/jet.hpp"

#include <cmath>
#include <string>

#include "otk/error.hpp"

namespace otk {
namespace {

constexpr double kBinomial[Jet::kMaxOrder + 1][Jet::kMaxOrder + 1] = {
    {1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}};

constexpr double kFactorial[Jet::kMaxOrder + 1] = {1, 1, 2, 6};

void check_order(int order) {
  if (order < 0 || order > Jet::kMaxOrder) {
    throw OrderError("jet order " + std::to_string(order) + " outside [0, " +
                     std::to_string(Jet::kMaxOrder) + "]");
  }
}

}  // namespace

Jet::Jet(int order) : order_(order) { check_order(order); }

Jet Jet::constant(double value, int order) {
  Jet j(order);
  j.c_[0] = value;
  return j;
}

Jet Jet::variable(double value, int direction, int order) {
  Jet j(order);
  j.c_[0] = value;
  if (order >= 1) j.c_[direction == 0 ? index(1, 0) : index(0, 1)] = 1.0;
  return j;
}

double Jet::operator()(int a, int b) const {
  if (a < 0 || b < 0 || a + b > order_) {
    throw OrderError("derivative (" + std::to_string(a) + "," + std::to_string(b) +
                     ") not carried by a jet of order " + std::to_string(order_));
  }
  return c_[index(a, b)];
}

double& Jet::at(int a, int b) {
  if (a < 0 || b < 0 || a + b > order_) {
    throw OrderError("derivative (" + std::to_string(a) + "," + std::to_string(b) +
                     ") not carried by a jet of order " + std::to_string(order_));
  }
  return c_[index(a, b)];
}

bool Jet::is_constant() const noexcept {
  const int n = index(0, order_) + 1;
  for (int k = 1; k < n; ++k) {
    if (c_[k] != 0.0) return false;
  }
  return true;
}

void Jet::require_same_order(const Jet& o) const {
  if (order_ != o.order_) {
    throw OrderError("cannot combine jets of order " + std::to_string(order_) + " and " +
                     std::to_string(o.order_));
  }
}

Jet Jet::operator-() const {
  Jet r = *this;
  for (auto& v : r.c_) v = -v;
  return r;
}

Jet& Jet::operator+=(const Jet& o) {
  require_same_order(o);
  for (int k = 0; k < kSize; ++k) c_[k] += o.c_[k];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  require_same_order(o);
  for (int k = 0; k < kSize; ++k) c_[k] -= o.c_[k];
  return *this;
}

// Leibniz rule in two variables on derivative values.
Jet& Jet::operator*=(const Jet& o) {
  require_same_order(o);
  std::array<double, kSize> out{};
  for (int n = 0; n <= order_; ++n) {
    for (int b = 0; b <= n; ++b) {
      const int a = n - b;
      double sum = 0.0;
      for (int i = 0; i <= a; ++i) {
        for (int j = 0; j <= b; ++j) {
          sum += kBinomial[a][i] * kBinomial[b][j] * c_[index(i, j)] *
                 o.c_[index(a - i, b - j)];
        }
      }
      out[index(a, b)] = sum;
    }
  }
  c_ = out;
  return *this;
}

Jet& Jet::operator/=(const Jet& o) {
  require_same_order(o);
  return *this *= reciprocal(o);
}

Jet& Jet::operator+=(double s) noexcept {
  c_[0] += s;
  return *this;
}

Jet& Jet::operator-=(double s) noexcept {
  c_[0] -= s;
  return *this;
}

Jet& Jet::operator*=(double s) noexcept {
  for (auto& v : c_) v *= s;
  return *this;
}

Jet& Jet::operator/=(double s) {
  if (s == 0.0) throw DomainError("division of a jet by zero");
  for (auto& v : c_) v /= s;
  return *this;
}

Jet operator/(double s, const Jet& a) { return reciprocal(a) * s; }

Jet partial(const Jet& j, int direction) {
  if (j.order() < 1) throw OrderError("cannot differentiate a jet of order 0");
  Jet r = Jet::constant(0.0, j.order() - 1);
  for (int n = 0; n <= r.order(); ++n) {
    for (int b = 0; b <= n; ++b) {
      const int a = n - b;
      r.at(a, b) = direction == 0 ? j(a + 1, b) : j(a, b + 1);
    }
  }
  return r;
}

Jet truncate(const Jet& j, int order) {
  if (order > j.order()) {
    throw OrderError("cannot raise jet order from " + std::to_string(j.order()) + " to " +
                     std::to_string(order));
  }
  Jet r = Jet::constant(0.0, order);
  for (int n = 0; n <= order; ++n) {
    for (int b = 0; b <= n; ++b) r.at(n - b, b) = j(n - b, b);
  }
  return r;
}

Vec2<double> gradient(const Jet& j) { return {j(1, 0), j(0, 1)}; }

QuadraticForm2<double> hessian(const Jet& j) { return {j(2, 0), j(1, 1), j(0, 2)}; }

// f(u0 + d) = sum_k f^(k)(u0) / k! * d^k with d = u - u0 having zero value, so
// powers above the jet order vanish.
Jet compose(const Jet& u, std::span<const double> derivatives) {
  const int order = u.order();
  if (static_cast<int>(derivatives.size()) < order + 1) {
    throw OrderError("compose needs " + std::to_string(order + 1) + " derivatives");
  }
  Jet delta = u;
  delta.at(0, 0) = 0.0;
  Jet result = Jet::constant(derivatives[0], order);
  Jet power = Jet::constant(1.0, order);
  for (int k = 1; k <= order; ++k) {
    power *= delta;
    result += power * (derivatives[k] / kFactorial[k]);
  }
  return result;
}

Jet reciprocal(const Jet& u) {
  const double x = u.value();
  if (x == 0.0) throw DomainError("division by a jet with zero value");
  const double r = 1.0 / x;
  const double d[] = {r, -r * r, 2 * r * r * r, -6 * r * r * r * r};
  return compose(u, d);
}

Jet sqrt(const Jet& u) {
  const double x = u.value();
  if (x < 0.0 || (x == 0.0 && u.order() > 0)) {
    throw DomainError("sqrt of " + std::to_string(x) + " is outside the differentiable domain");
  }
  const double s = std::sqrt(x);
  if (u.order() == 0) return Jet::constant(s, 0);
  const double d[] = {s, 0.5 / s, -0.25 / (s * x), 0.375 / (s * x * x)};
  return compose(u, d);
}

Jet exp(const Jet& u) {
  const double e = std::exp(u.value());
  const double d[] = {e, e, e, e};
  return compose(u, d);
}

Jet log(const Jet& u) {
  const double x = u.value();
  if (x <= 0.0) throw DomainError("ln of nonpositive value " + std::to_string(x));
  const double r = 1.0 / x;
  const double d[] = {std::log(x), r, -r * r, 2 * r * r * r};
  return compose(u, d);
}

Jet sin(const Jet& u) {
  const double s = std::sin(u.value());
  const double c = std::cos(u.value());
  const double d[] = {s, c, -s, -c};
  return compose(u, d);
}

Jet cos(const Jet& u) {
  const double s = std::sin(u.value());
  const double c = std::cos(u.value());
  const double d[] = {c, -s, -c, s};
  return compose(u, d);
}

Jet abs(const Jet& u) {
  const double x = u.value();
  if (x == 0.0 && u.order() > 0) throw DomainError("abs is not differentiable at 0");
  return x < 0.0 ? -u : u;
}

Jet sgn(const Jet& u) {
  const double x = u.value();
  if (x == 0.0 && u.order() > 0) throw DomainError("sgn is not differentiable at 0");
  return Jet::constant(x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0), u.order());
}

Jet pow(const Jet& u, int n) {
  if (n < 0) return reciprocal(pow(u, -n));
  Jet result = Jet::constant(1.0, u.order());
  Jet base = u;
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n > 0) base *= base;
  }
  return result;
}

Jet pow(const Jet& u, double c) {
  if (c == std::nearbyint(c) && std::fabs(c) <= 1024.0) return pow(u, static_cast<int>(c));
  const double x = u.value();
  if (x < 0.0) {
    throw DomainError("non-integer power " + std::to_string(c) + " of negative value " +
                      std::to_string(x));
  }
  if (x == 0.0) {
    if (u.order() == 0 && c > 0.0) return Jet::constant(0.0, 0);
    throw DomainError("non-integer power of zero is not differentiable");
  }
  double d[Jet::kMaxOrder + 1];
  double falling = 1.0;
  for (int k = 0; k <= Jet::kMaxOrder; ++k) {
    d[k] = falling * std::pow(x, c - k);
    falling *= (c - k);
  }
  return compose(u, d);
}

Jet pow(const Jet& u, const Jet& e) {
  if (e.is_constant()) return pow(u, e.value());
  if (u.value() <= 0.0) throw DomainError("variable exponent requires a positive base");
  return exp(e * log(u));
}

}  // namespace otk
