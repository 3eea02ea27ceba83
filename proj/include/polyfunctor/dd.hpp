#pragma once

// Double description method for polyhedral cones over the integers.
//
// The cone is {y : a.y >= 0 for each inequality row a, e.y = 0 for each
// equation row e}. Its generators are returned as a lineality basis plus
// extreme rays of the pointed part. All arithmetic is exact: rays are kept as
// primitive integer vectors and combined with integer multipliers.

#include <vector>

#include "polyfunctor/bitset.hpp"
#include "polyfunctor/scalar.hpp"

namespace polyfunctor::detail {

struct ConeGenerators {
  std::vector<IntVec> lineality;
  std::vector<IntVec> rays;
};

inline Integer int_dot(const IntVec& a, const IntVec& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
  return s;
}

// Returns primitive(alpha * x - beta * y).
inline IntVec combine(const Integer& alpha, const IntVec& x, const Integer& beta, const IntVec& y) {
  IntVec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = alpha * x[i] - beta * y[i];
  return make_primitive(std::move(out));
}

inline ConeGenerators cone_generators(std::size_t dim, const std::vector<IntVec>& inequalities,
                                      const std::vector<IntVec>& equations) {
  struct Ray {
    IntVec v;
    Bitset tight;
  };
  std::vector<IntVec> lin;
  for (std::size_t i = 0; i < dim; ++i) {
    IntVec e(dim, 0);
    e[i] = 1;
    lin.push_back(std::move(e));
  }
  std::vector<Ray> rays;
  std::size_t effective_dim = dim;

  // Equations first: they only ever shrink the lineality space.
  for (const auto& eq : equations) {
    std::size_t pick = lin.size();
    Integer a0;
    for (std::size_t i = 0; i < lin.size(); ++i) {
      a0 = int_dot(eq, lin[i]);
      if (sgn(a0) != 0) {
        pick = i;
        break;
      }
    }
    if (pick == lin.size()) continue;
    IntVec l0 = lin[pick];
    lin.erase(lin.begin() + static_cast<long>(pick));
    for (auto& l : lin) {
      Integer al = int_dot(eq, l);
      if (sgn(al) != 0) l = combine(a0, l, al, l0);
    }
    --effective_dim;
  }

  const std::size_t m = inequalities.size();
  for (std::size_t k = 0; k < m; ++k) {
    const IntVec& a = inequalities[k];
    std::size_t pick = lin.size();
    Integer a0;
    for (std::size_t i = 0; i < lin.size(); ++i) {
      a0 = int_dot(a, lin[i]);
      if (sgn(a0) != 0) {
        pick = i;
        break;
      }
    }
    if (pick != lin.size()) {
      IntVec l0 = lin[pick];
      if (sgn(a0) < 0) {
        for (auto& x : l0) x = -x;
        a0 = -a0;
      }
      lin.erase(lin.begin() + static_cast<long>(pick));
      for (auto& l : lin) {
        Integer al = int_dot(a, l);
        if (sgn(al) != 0) l = combine(a0, l, al, l0);
      }
      for (auto& r : rays) {
        Integer ar = int_dot(a, r.v);
        if (sgn(ar) != 0) r.v = combine(a0, r.v, ar, l0);
        r.tight.resize(m);
        r.tight.set(k);
      }
      Bitset t(m);
      for (std::size_t j = 0; j < k; ++j) t.set(j);
      rays.push_back({std::move(l0), std::move(t)});
      continue;
    }

    std::vector<Integer> val(rays.size());
    std::vector<std::size_t> pos, neg;
    std::vector<Ray> next;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      val[i] = int_dot(a, rays[i].v);
      int s = sgn(val[i]);
      if (s > 0) pos.push_back(i);
      if (s < 0) neg.push_back(i);
    }
    if (neg.empty()) {
      for (std::size_t i = 0; i < rays.size(); ++i)
        if (sgn(val[i]) == 0) rays[i].tight.set(k);
      continue;
    }
    const long needed = static_cast<long>(effective_dim) - static_cast<long>(lin.size()) - 2;
    for (std::size_t p : pos) {
      for (std::size_t n : neg) {
        Bitset common = rays[p].tight & rays[n].tight;
        if (static_cast<long>(common.count()) < needed) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r == p || r == n) continue;
          if (common.is_subset_of(rays[r].tight)) adjacent = false;
        }
        if (!adjacent) continue;
        IntVec v = combine(val[p], rays[n].v, val[n], rays[p].v);
        common.set(k);
        next.push_back({std::move(v), std::move(common)});
      }
    }
    for (std::size_t i = 0; i < rays.size(); ++i) {
      int s = sgn(val[i]);
      if (s < 0) continue;
      if (s == 0) rays[i].tight.set(k);
      next.push_back(std::move(rays[i]));
    }
    rays = std::move(next);
  }

  ConeGenerators out;
  out.lineality = std::move(lin);
  for (auto& r : rays) out.rays.push_back(std::move(r.v));
  return out;
}

}  // namespace polyfunctor::detail
