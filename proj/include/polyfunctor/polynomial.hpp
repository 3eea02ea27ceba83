#pragma once

#include <algorithm>
#include <iterator>
#include <map>
#include <string>
#include <vector>

#include "polyfunctor/scalar.hpp"

namespace polyfunctor {

/// Sparse multivariate polynomial with rational coefficients. A monomial is
/// the sorted multiset of its variable indices.
class Polynomial {
 public:
  using Monomial = std::vector<std::size_t>;

  Polynomial() = default;
  Polynomial(const Scalar& c) {  // NOLINT: implicit constants are convenient
    if (sgn(c) != 0) terms_[{}] = c;
  }
  static Polynomial variable(std::size_t i) {
    Polynomial p;
    p.terms_[{i}] = 1;
    return p;
  }
  /// c + Σ coeffs[i]·x_i
  static Polynomial linear(const Vec& coeffs, const Scalar& c = 0) {
    Polynomial p(c);
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      if (sgn(coeffs[i]) != 0) p.terms_[{i}] = coeffs[i];
    return p;
  }

  const std::map<Monomial, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t degree() const {
    std::size_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.size());
    return d;
  }

  Scalar operator()(const Vec& x) const {
    Scalar total = 0;
    for (const auto& [m, c] : terms_) {
      Scalar t = c;
      for (auto i : m) t *= x[i];
      total += t;
    }
    return total;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) {
    for (const auto& [m, c] : b.terms_) a.add_term(m, c);
    return a;
  }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) {
    for (const auto& [m, c] : b.terms_) a.add_term(m, -c);
    return a;
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial out;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        Monomial m;
        std::merge(ma.begin(), ma.end(), mb.begin(), mb.end(), std::back_inserter(m));
        out.add_term(m, ca * cb);
      }
    return out;
  }
  Polynomial operator-() const { return Polynomial(Scalar(0)) - *this; }
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  /// e.g. "2*x0*x3 - x1 + 1/2"
  std::string to_string(const std::vector<std::string>& names = {}) const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [m, c] = *it;
      Scalar a = abs(c);
      out += out.empty() ? (sgn(c) < 0 ? "-" : "") : (sgn(c) < 0 ? " - " : " + ");
      std::string mono;
      for (auto i : m) mono += (mono.empty() ? "" : "*") + (i < names.size() ? names[i] : "x" + std::to_string(i));
      if (mono.empty()) out += polyfunctor::to_string(a);
      else if (a == 1) out += mono;
      else out += polyfunctor::to_string(a) + "*" + mono;
    }
    return out;
  }

 private:
  void add_term(const Monomial& m, const Scalar& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }
  std::map<Monomial, Scalar> terms_;
};

/// Laplace expansion along the first row; matrices here are at most 4×4.
inline Polynomial determinant(const std::vector<std::vector<Polynomial>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return Polynomial(Scalar(1));
  if (n == 1) return m[0][0];
  Polynomial total;
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    std::vector<std::vector<Polynomial>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Polynomial> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(m[i][c]);
      minor.push_back(std::move(row));
    }
    Polynomial term = m[0][j] * determinant(minor);
    total = j % 2 ? total - term : total + term;
  }
  return total;
}

}  // namespace polyfunctor
