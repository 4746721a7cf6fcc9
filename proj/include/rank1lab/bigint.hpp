#pragma once

// Exact integer and rational arithmetic shared by every module.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <tuple>

namespace rank1lab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const BigInt& v) { return v.str(); }

inline std::string to_string(const Rational& r) {
  const BigInt& num = boost::multiprecision::numerator(r);
  const BigInt& den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

// Floor division and non-negative remainder.
inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline BigInt mod_floor(const BigInt& a, const BigInt& m) {
  BigInt r = a % m;
  if (r < 0) r += (m < 0 ? -m : m);
  return r;
}

// Returns (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0.
inline std::tuple<BigInt, BigInt, BigInt> extended_gcd(BigInt a, BigInt b) {
  BigInt x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    BigInt q = a / b;
    BigInt t = a - q * b;
    a = b;
    b = t;
    t = x0 - q * x1;
    x0 = x1;
    x1 = t;
    t = y0 - q * y1;
    y0 = y1;
    y1 = t;
  }
  if (a < 0) return {-a, -x0, -y0};
  return {a, x0, y0};
}

// Nearest integer to p/q, ties rounded toward +infinity.
inline BigInt round_div(const BigInt& p, const BigInt& q) {
  return floor_div(2 * p + q, 2 * q);
}

inline std::int64_t to_int64(const BigInt& v) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min()) {
    throw std::overflow_error("integer " + v.str() + " exceeds 64 bits");
  }
  return static_cast<std::int64_t>(v);
}

inline BigInt pow(const BigInt& base, unsigned exponent) {
  return boost::multiprecision::pow(base, exponent);
}

inline Rational make_rational(const BigInt& num, const BigInt& den) {
  return Rational(num, den);
}

// Renders |r| with `digits` significant digits. Fixed notation is used for
// magnitudes in [1e-4, 1e6), scientific otherwise.
inline std::string to_decimal(const Rational& r, int digits = 6) {
  BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (num == 0) return "0";
  std::string sign;
  if (num < 0) {
    sign = "-";
    num = -num;
  }
  // Find exponent e with 10^e <= num/den < 10^(e+1).
  int e = 0;
  {
    BigInt n = num, d = den;
    while (n >= d * 10) {
      d *= 10;
      ++e;
    }
    while (n < d) {
      n *= 10;
      --e;
    }
  }
  // mantissa = round(num/den * 10^(digits-1-e))
  const int shift = digits - 1 - e;
  BigInt n = num, d = den;
  if (shift >= 0) {
    n *= pow(BigInt(10), static_cast<unsigned>(shift));
  } else {
    d *= pow(BigInt(10), static_cast<unsigned>(-shift));
  }
  BigInt mant = (2 * n + d) / (2 * d);
  if (mant >= pow(BigInt(10), static_cast<unsigned>(digits))) {
    mant /= 10;
    ++e;
  }
  std::string m = mant.str();
  // strip trailing zeros for readability
  while (m.size() > 1 && m.back() == '0') m.pop_back();

  if (e >= -4 && e < 6) {
    std::string out;
    if (e >= 0) {
      std::string intpart = m.substr(0, std::min<std::size_t>(m.size(), e + 1));
      while (static_cast<int>(intpart.size()) < e + 1) intpart += '0';
      std::string frac = m.size() > static_cast<std::size_t>(e + 1) ? m.substr(e + 1) : "";
      out = frac.empty() ? intpart : intpart + "." + frac;
    } else {
      out = "0." + std::string(static_cast<std::size_t>(-e - 1), '0') + m;
    }
    return sign + out;
  }
  std::string out = m.substr(0, 1);
  if (m.size() > 1) out += "." + m.substr(1);
  std::string ex = std::to_string(e < 0 ? -e : e);
  if (ex.size() < 2) ex = "0" + ex;
  return sign + out + "e" + (e < 0 ? "-" : "+") + ex;
}

}  // namespace rank1lab
