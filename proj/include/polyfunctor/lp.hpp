#pragma once

// Exact two-phase simplex over the rationals with Bland's pivoting rule.

#include <optional>
#include <vector>

#include "polyfunctor/errors.hpp"
#include "polyfunctor/linalg.hpp"
#include "polyfunctor/polytope.hpp"
#include "polyfunctor/scalar.hpp"

namespace polyfunctor {

enum class LpStatus { Optimal, Infeasible, Unbounded, InfeasibleOpen };
enum class Sense { Maximize, Minimize };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Scalar value;
  Vec point;

  bool feasible() const { return status == LpStatus::Optimal || status == LpStatus::Unbounded; }
};

namespace detail {

class Tableau {
 public:
  Tableau(Matrix rows, std::vector<std::size_t> basis, std::size_t ncols)
      : t_(std::move(rows)), basis_(std::move(basis)), n_(ncols) {}

  // Maximizes c·z over the current feasible basis. Returns false when unbounded.
  bool optimize(const Vec& c, const std::vector<bool>& allowed) {
    std::vector<bool> in_basis(n_, false);
    for (auto b : basis_) in_basis[b] = true;
    for (;;) {
      std::size_t enter = n_;
      for (std::size_t j = 0; j < n_ && enter == n_; ++j) {
        if (!allowed[j] || in_basis[j]) continue;
        Scalar r = c[j];
        for (std::size_t i = 0; i < t_.size(); ++i)
          if (sgn(t_[i][j]) != 0 && sgn(c[basis_[i]]) != 0) r -= c[basis_[i]] * t_[i][j];
        if (sgn(r) > 0) enter = j;
      }
      if (enter == n_) return true;
      std::size_t leave = t_.size();
      Scalar best;
      for (std::size_t i = 0; i < t_.size(); ++i) {
        if (sgn(t_[i][enter]) <= 0) continue;
        Scalar ratio = t_[i][n_] / t_[i][enter];
        if (leave == t_.size() || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == t_.size()) return false;
      in_basis[basis_[leave]] = false;
      in_basis[enter] = true;
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    Scalar inv = 1 / t_[r][c];
    for (auto& x : t_[r]) x *= inv;
    for (std::size_t i = 0; i < t_.size(); ++i) {
      if (i == r || sgn(t_[i][c]) == 0) continue;
      Scalar f = t_[i][c];
      for (std::size_t j = 0; j <= n_; ++j)
        if (sgn(t_[r][j]) != 0) t_[i][j] -= f * t_[r][j];
    }
    basis_[r] = c;
  }

  // Removes artificial columns (index >= first_art) from the basis after phase one.
  void drive_out(std::size_t first_art) {
    for (std::size_t i = 0; i < t_.size();) {
      if (basis_[i] < first_art) {
        ++i;
        continue;
      }
      std::size_t col = first_art;
      for (std::size_t j = 0; j < first_art; ++j)
        if (sgn(t_[i][j]) != 0) {
          col = j;
          break;
        }
      if (col < first_art) {
        pivot(i, col);
        ++i;
      } else {
        t_.erase(t_.begin() + static_cast<long>(i));
        basis_.erase(basis_.begin() + static_cast<long>(i));
      }
    }
  }

  Vec solution() const {
    Vec z = zeros(n_);
    for (std::size_t i = 0; i < t_.size(); ++i) z[basis_[i]] = t_[i][n_];
    return z;
  }

 private:
  Matrix t_;
  std::vector<std::size_t> basis_;
  std::size_t n_;
};

inline LpResult solve_closed(const Vec& objective, const HRep& h, Sense sense) {
  const std::size_t n = h.ambient_dim;
  const std::size_t mi = h.inequalities.size();
  const std::size_t me = h.equations.size();
  const std::size_t m = mi + me;

  // Columns: x+ (n), x- (n), slacks (mi), artificials (as needed).
  std::vector<bool> needs_art(m, false);
  std::size_t num_art = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const Halfspace& hs = i < mi ? h.inequalities[i] : h.equations[i - mi];
    if (hs.normal.size() != n) throw DimensionMismatch("lp: constraint dimension differs from ambient dimension");
    needs_art[i] = i >= mi || sgn(hs.offset) < 0;
    if (needs_art[i]) ++num_art;
  }
  const std::size_t first_slack = 2 * n;
  const std::size_t first_art = first_slack + mi;
  const std::size_t ncols = first_art + num_art;

  Matrix rows(m, zeros(ncols + 1));
  std::vector<std::size_t> basis(m);
  std::size_t art = first_art;
  for (std::size_t i = 0; i < m; ++i) {
    const Halfspace& hs = i < mi ? h.inequalities[i] : h.equations[i - mi];
    const int s = sgn(hs.offset) < 0 ? -1 : 1;
    for (std::size_t j = 0; j < n; ++j) {
      rows[i][j] = s * hs.normal[j];
      rows[i][n + j] = -s * hs.normal[j];
    }
    if (i < mi) rows[i][first_slack + i] = s;
    rows[i][ncols] = s * hs.offset;
    if (needs_art[i]) {
      rows[i][art] = 1;
      basis[i] = art++;
    } else {
      basis[i] = first_slack + i;
    }
  }

  Tableau tab(std::move(rows), std::move(basis), ncols);
  std::vector<bool> allowed(ncols, true);
  if (num_art > 0) {
    Vec c1 = zeros(ncols);
    for (std::size_t j = first_art; j < ncols; ++j) c1[j] = -1;
    tab.optimize(c1, allowed);
    Vec z = tab.solution();
    for (std::size_t j = first_art; j < ncols; ++j)
      if (sgn(z[j]) != 0) return {LpStatus::Infeasible, 0, {}};
    tab.drive_out(first_art);
    for (std::size_t j = first_art; j < ncols; ++j) allowed[j] = false;
  }

  Vec c = zeros(ncols);
  const int dir = sense == Sense::Maximize ? 1 : -1;
  for (std::size_t j = 0; j < n; ++j) {
    c[j] = dir * objective[j];
    c[n + j] = -dir * objective[j];
  }
  bool bounded = tab.optimize(c, allowed);
  Vec z = tab.solution();
  Vec x(n);
  for (std::size_t j = 0; j < n; ++j) x[j] = z[j] - z[n + j];
  if (!bounded) return {LpStatus::Unbounded, 0, std::move(x)};
  Scalar value = dot(objective, x);
  return {LpStatus::Optimal, std::move(value), std::move(x)};
}

}  // namespace detail

/// Optimizes objective·x over the constraints of `h`.
///
/// With strict flags (one per inequality), feasibility of the open system is
/// decided first by maximizing a slack t in a·x + t <= b on strict rows,
/// t <= 1. When t* <= 0 the status is InfeasibleOpen. Otherwise `point` is a
/// strictly feasible witness and `value` the supremum over the closure.
inline LpResult lp_solve(const Vec& objective, const HRep& h, Sense sense, const std::vector<bool>& strict = {}) {
  if (objective.size() != h.ambient_dim) throw DimensionMismatch("lp: objective dimension differs from ambient dimension");
  bool any_strict = false;
  for (bool s : strict) any_strict = any_strict || s;
  if (!any_strict) return detail::solve_closed(objective, h, sense);
  if (strict.size() != h.inequalities.size()) throw InvalidArgument("lp: one strictness flag per inequality expected");

  const std::size_t n = h.ambient_dim;
  HRep ext;
  ext.ambient_dim = n + 1;
  auto widen = [](const Halfspace& hs, bool with_t) {
    Halfspace w{hs.normal, hs.offset};
    w.normal.push_back(with_t ? 1 : 0);
    return w;
  };
  for (std::size_t i = 0; i < h.inequalities.size(); ++i) ext.inequalities.push_back(widen(h.inequalities[i], strict[i]));
  for (const auto& e : h.equations) ext.equations.push_back(widen(e, false));
  ext.inequalities.push_back({unit_vector(n + 1, n), 1});
  LpResult slack = detail::solve_closed(unit_vector(n + 1, n), ext, Sense::Maximize);
  if (slack.status == LpStatus::Infeasible) return slack;
  if (sgn(slack.value) <= 0) return {LpStatus::InfeasibleOpen, slack.value, {}};
  Vec witness(slack.point.begin(), slack.point.end() - 1);

  LpResult closed = detail::solve_closed(objective, h, sense);
  closed.point = std::move(witness);
  return closed;
}

/// Whether the system has a solution (strict rows honoured).
inline bool lp_feasible(const HRep& h, const std::vector<bool>& strict = {}) {
  LpResult r = lp_solve(zeros(h.ambient_dim), h, Sense::Maximize, strict);
  return r.feasible();
}

}  // namespace polyfunctor
