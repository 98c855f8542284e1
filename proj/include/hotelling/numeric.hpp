#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <type_traits>

#include <boost/multiprecision/cpp_int.hpp>

namespace hotelling {

/// Unbounded exact fraction. Equivalence checks and the acceptance suite run on this type.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class NumericKind { exact_rational, floating };

/// Owns every tolerance used for tie handling. Geometry, clustering, the
/// density oracle and the equilibrium tests all consult the same instance.
struct NumericMode {
  NumericKind kind = NumericKind::exact_rational;
  double coincidence_tol = 0.0;  // positions
  double value_tol = 0.0;        // profits, gap sums

  static constexpr NumericMode exact() { return {NumericKind::exact_rational, 0.0, 0.0}; }
  static constexpr NumericMode floating(double coincidence_tol = 1e-12, double value_tol = 1e-9) {
    return {NumericKind::floating, coincidence_tol, value_tol};
  }

  constexpr bool is_exact() const { return kind == NumericKind::exact_rational; }

  friend constexpr bool operator==(const NumericMode&, const NumericMode&) = default;
};

template <class T>
inline constexpr bool is_exact_v = std::is_same_v<T, Rational>;

template <class T>
concept Scalar = std::is_same_v<T, Rational> || std::is_same_v<T, double>;

template <Scalar T>
constexpr NumericMode default_mode() {
  if constexpr (is_exact_v<T>) {
    return NumericMode::exact();
  } else {
    return NumericMode::floating();
  }
}

template <Scalar T>
T make_fraction(std::int64_t num, std::int64_t den) {
  if (den == 0) throw DomainError("zero denominator");
  if constexpr (is_exact_v<T>) {
    return Rational(num, den);
  } else {
    return static_cast<double>(num) / static_cast<double>(den);
  }
}

template <Scalar T>
double to_double(const T& x) {
  if constexpr (is_exact_v<T>) {
    return x.template convert_to<double>();
  } else {
    return x;
  }
}

template <Scalar T>
T abs_value(const T& x) {
  return x < T(0) ? T(-x) : x;
}

/// Largest integer not above x, as a scalar.
template <Scalar T>
T floor_value(const T& x) {
  if constexpr (is_exact_v<T>) {
    const BigInt num = boost::multiprecision::numerator(x);
    const BigInt den = boost::multiprecision::denominator(x);
    BigInt q = num / den;  // truncates toward zero
    if (num < 0 && q * den != num) q -= 1;
    return Rational(q);
  } else {
    return std::floor(x);
  }
}

/// a > b, beyond the mode's value tolerance.
template <Scalar T>
bool strictly_greater(const T& a, const T& b, const NumericMode& mode) {
  if constexpr (is_exact_v<T>) {
    return a > b;
  } else {
    return a > b + mode.value_tol;
  }
}

/// a >= b, allowing the mode's value tolerance.
template <Scalar T>
bool at_least(const T& a, const T& b, const NumericMode& mode) {
  return !strictly_greater(b, a, mode);
}

template <Scalar T>
bool values_equal(const T& a, const T& b, const NumericMode& mode) {
  return !strictly_greater(a, b, mode) && !strictly_greater(b, a, mode);
}

/// "p/q", or "p" for integers.
inline std::string to_string(const Rational& x) {
  const BigInt num = boost::multiprecision::numerator(x);
  const BigInt den = boost::multiprecision::denominator(x);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace hotelling
