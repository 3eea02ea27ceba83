#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "polyfunctor/errors.hpp"

namespace polyfunctor {

/// Exact rational number, always kept in lowest terms.
using Scalar = mpq_class;
using Integer = mpz_class;
using Vec = std::vector<Scalar>;
using IntVec = std::vector<Integer>;

/// p/q in lowest terms.
inline Scalar make_scalar(const Integer& p, const Integer& q) {
  Scalar x(p, q);
  x.canonicalize();
  return x;
}

/// Parses "p", "p/q" or a finite decimal such as "-0.125" exactly.
inline Scalar parse_scalar(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  if (s.empty()) throw InvalidArgument("empty rational string");
  auto bad = [&] { return InvalidArgument("malformed rational string '" + std::string(text) + "'"); };
  auto is_int = [](std::string_view t) {
    if (!t.empty() && (t[0] == '-' || t[0] == '+')) t.remove_prefix(1);
    return !t.empty() && std::all_of(t.begin(), t.end(), [](unsigned char c) { return std::isdigit(c); });
  };
  Scalar out;
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string whole = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    bool negative = !whole.empty() && whole[0] == '-';
    if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) whole.erase(0, 1);
    if (whole.empty()) whole = "0";
    if (!is_int(whole) || (!frac.empty() && !is_int(frac)) || frac.find_first_of("+-") != std::string::npos) throw bad();
    Integer num(whole + frac, 10);
    Integer den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    out = Scalar(num, den);
    if (negative) out = -out;
  } else if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    if (!is_int(num) || !is_int(den) || den[0] == '-' || den[0] == '+') throw bad();
    Integer d(den, 10);
    if (d == 0) throw InvalidArgument("zero denominator in '" + std::string(text) + "'");
    if (num[0] == '+') num.erase(0, 1);
    out = Scalar(Integer(num, 10), d);
  } else {
    if (!is_int(s)) throw bad();
    if (s[0] == '+') s.erase(0, 1);
    out = Scalar(Integer(s, 10));
  }
  out.canonicalize();
  return out;
}

inline std::string to_string(const Scalar& x) { return x.get_str(); }

inline Vec zeros(std::size_t n) { return Vec(n, Scalar(0)); }

/// Integer literal vector.
inline Vec make_vec(std::initializer_list<long> xs) {
  Vec v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

inline Vec unit_vector(std::size_t n, std::size_t i) {
  Vec v = zeros(n);
  v[i] = 1;
  return v;
}

inline Scalar dot(const Vec& a, const Vec& b) {
  Scalar s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Vec operator+(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vec operator-(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vec operator*(const Scalar& s, const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

inline bool is_zero(const Vec& a) {
  return std::all_of(a.begin(), a.end(), [](const Scalar& x) { return sgn(x) == 0; });
}

inline Integer lcm_of_denominators(const Vec& v) {
  Integer l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  return l;
}

/// Divides out the gcd of the entries. The zero vector is returned unchanged.
inline IntVec make_primitive(IntVec v) {
  Integer g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g > 1)
    for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return v;
}

/// Smallest positive integer multiple of a rational vector.
inline IntVec to_primitive(const Vec& v) {
  Integer l = lcm_of_denominators(v);
  IntVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Scalar t = v[i] * l;
    out[i] = t.get_num();
  }
  return make_primitive(std::move(out));
}

inline Vec to_rational(const IntVec& v) {
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = Scalar(v[i]);
  return out;
}

inline double to_double(const Scalar& x) { return x.get_d(); }

}  // namespace polyfunctor
