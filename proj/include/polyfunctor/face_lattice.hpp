#pragma once

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "polyfunctor/bitset.hpp"

namespace polyfunctor {

/// Graded poset of all faces, from the empty face (dimension -1) up to the
/// polytope itself. Faces are identified by their vertex sets.
struct FaceLattice {
  struct Face {
    long dim = -1;
    Bitset vertices;
  };
  std::vector<Face> faces;                                  // sorted by (dim, vertices)
  std::vector<std::pair<std::size_t, std::size_t>> covers;  // (smaller, larger)

  /// Number of faces of each dimension 0 .. dim-1.
  std::vector<std::size_t> f_vector() const {
    long top = faces.empty() ? -1 : faces.back().dim;
    std::vector<std::size_t> f(top > 0 ? static_cast<std::size_t>(top) : 0, 0);
    for (const auto& face : faces)
      if (face.dim >= 0 && face.dim < top) ++f[static_cast<std::size_t>(face.dim)];
    return f;
  }

  std::vector<std::size_t> faces_of_dim(long d) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < faces.size(); ++i)
      if (faces[i].dim == d) out.push_back(i);
    return out;
  }

  /// Faces covered by face i (its facets).
  std::vector<std::size_t> subfaces(std::size_t i) const {
    std::vector<std::size_t> out;
    for (const auto& [lo, hi] : covers)
      if (hi == i) out.push_back(lo);
    return out;
  }
};

namespace detail {

/// Builds the lattice top-down: the facets of a face F of dimension >= 1 are
/// the inclusion-maximal nonempty proper sets among F ∩ G, G a facet of P.
inline FaceLattice compute_face_lattice(std::size_t num_vertices, long dim,
                                        const std::vector<Bitset>& facet_incidence) {
  std::map<std::pair<long, Bitset>, std::size_t> index;
  std::vector<FaceLattice::Face> raw;
  std::vector<std::pair<std::size_t, std::size_t>> raw_covers;
  auto intern = [&](long d, const Bitset& b) {
    auto key = std::make_pair(d, b);
    if (auto it = index.find(key); it != index.end()) return it->second;
    raw.push_back({d, b});
    index.emplace(std::move(key), raw.size() - 1);
    return raw.size() - 1;
  };

  Bitset all(num_vertices);
  for (std::size_t i = 0; i < num_vertices; ++i) all.set(i);
  std::vector<std::size_t> level{intern(dim, all)};
  const std::size_t empty_face = intern(-1, Bitset(num_vertices));

  for (long d = dim; d >= 0; --d) {
    std::vector<std::size_t> next;
    for (std::size_t fi : level) {
      const Bitset face = raw[fi].vertices;
      if (d == 0) {
        raw_covers.emplace_back(empty_face, fi);
        continue;
      }
      std::vector<Bitset> candidates;
      if (d == dim) {
        candidates = facet_incidence;
      } else {
        for (const auto& g : facet_incidence) {
          Bitset c = face & g;
          if (c.none() || c == face) continue;
          candidates.push_back(std::move(c));
        }
      }
      std::sort(candidates.begin(), candidates.end());
      candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
      for (std::size_t i = 0; i < candidates.size(); ++i) {
        bool maximal = true;
        for (std::size_t j = 0; j < candidates.size() && maximal; ++j)
          if (i != j && candidates[i].is_subset_of(candidates[j])) maximal = false;
        if (!maximal) continue;
        std::size_t before = raw.size();
        std::size_t sub = intern(d - 1, candidates[i]);
        raw_covers.emplace_back(sub, fi);
        if (sub == before) next.push_back(sub);
      }
    }
    level = std::move(next);
  }

  std::vector<std::size_t> order(raw.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (raw[a].dim != raw[b].dim) return raw[a].dim < raw[b].dim;
    return raw[a].vertices < raw[b].vertices;
  });
  std::vector<std::size_t> rank_of(raw.size());
  FaceLattice lattice;
  for (std::size_t i = 0; i < order.size(); ++i) {
    rank_of[order[i]] = i;
    lattice.faces.push_back(raw[order[i]]);
  }
  for (auto [lo, hi] : raw_covers) lattice.covers.emplace_back(rank_of[lo], rank_of[hi]);
  std::sort(lattice.covers.begin(), lattice.covers.end());
  lattice.covers.erase(std::unique(lattice.covers.begin(), lattice.covers.end()), lattice.covers.end());
  return lattice;
}

}  // namespace detail
}  // namespace polyfunctor
