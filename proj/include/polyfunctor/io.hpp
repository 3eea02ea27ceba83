#pragma once

// JSON documents for polytopes and affine maps. Rationals are "p/q" strings.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "polyfunctor/errors.hpp"
#include "polyfunctor/polytope.hpp"
#include "polyfunctor/scalar.hpp"

namespace polyfunctor {

inline constexpr const char* kFormatVersion = "1.0";

struct PolytopeDocument {
  std::string format_version = kFormatVersion;
  std::string name;
  std::size_t ambient_dim = 0;
  std::optional<std::vector<Vec>> vertices;
  std::optional<std::vector<Halfspace>> inequalities;  // normal·x <= offset
  std::optional<std::vector<Halfspace>> equations;     // normal·x == offset

  friend bool operator==(const PolytopeDocument&, const PolytopeDocument&) = default;
};

struct MapDocument {
  std::string format_version = kFormatVersion;
  std::string name;
  std::size_t domain_dim = 0;
  Matrix matrix;
  Vec translation;
};

namespace detail {

using Json = nlohmann::ordered_json;

inline Json vec_json(const Vec& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

inline Scalar scalar_from(const Json& j) {
  if (j.is_string()) return parse_scalar(j.get<std::string>());
  if (j.is_number_integer()) return Scalar(j.get<long>());
  throw InvalidArgument("expected a rational string such as \"3/7\"");
}

inline Vec vec_from(const Json& j, std::size_t dim) {
  if (!j.is_array() || j.size() != dim) throw InvalidArgument("expected a vector of length " + std::to_string(dim));
  Vec v;
  for (const auto& x : j) v.push_back(scalar_from(x));
  return v;
}

inline Json halfspaces_json(const std::vector<Halfspace>& hs) {
  Json a = Json::array();
  for (const auto& h : hs) a.push_back(Json{{"normal", vec_json(h.normal)}, {"offset", to_string(h.offset)}});
  return a;
}

inline std::vector<Halfspace> halfspaces_from(const Json& j, std::size_t dim) {
  if (!j.is_array()) throw InvalidArgument("expected a list of {normal, offset}");
  std::vector<Halfspace> out;
  for (const auto& h : j) {
    if (!h.is_object() || !h.contains("normal") || !h.contains("offset"))
      throw InvalidArgument("halfspace entries need \"normal\" and \"offset\"");
    out.push_back({vec_from(h.at("normal"), dim), scalar_from(h.at("offset"))});
  }
  return out;
}

inline Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace detail

inline std::string serialize(const PolytopeDocument& d) {
  using detail::Json;
  std::string out = "{\n";
  out += "  \"format_version\": " + Json(d.format_version).dump() + ",\n";
  out += "  \"name\": " + Json(d.name).dump() + ",\n";
  out += "  \"ambient_dim\": " + std::to_string(d.ambient_dim);
  auto list = [&](const char* key, const std::vector<Json>& items) {
    out += ",\n  \"" + std::string(key) + "\": [";
    for (std::size_t i = 0; i < items.size(); ++i) out += (i ? ",\n    " : "\n    ") + items[i].dump();
    out += items.empty() ? "]" : "\n  ]";
  };
  auto hs_items = [](const std::vector<Halfspace>& hs) {
    std::vector<Json> items;
    for (const auto& h : hs) items.push_back(Json{{"normal", detail::vec_json(h.normal)}, {"offset", to_string(h.offset)}});
    return items;
  };
  if (d.vertices) {
    std::vector<Json> items;
    for (const auto& v : *d.vertices) items.push_back(detail::vec_json(v));
    list("vertices", items);
  }
  if (d.inequalities) list("inequalities", hs_items(*d.inequalities));
  if (d.equations) list("equations", hs_items(*d.equations));
  return out + "\n}\n";
}

inline PolytopeDocument parse_polytope_document(const std::string& text) {
  detail::Json j = detail::parse_json(text);
  if (!j.is_object()) throw InvalidArgument("a polytope document is a JSON object");
  if (!j.contains("ambient_dim") || !j.at("ambient_dim").is_number_unsigned())
    throw InvalidArgument("missing or invalid \"ambient_dim\"");
  PolytopeDocument d;
  d.format_version = j.value("format_version", std::string(kFormatVersion));
  d.name = j.value("name", std::string());
  d.ambient_dim = j.at("ambient_dim").get<std::size_t>();
  if (j.contains("vertices")) {
    if (!j.at("vertices").is_array()) throw InvalidArgument("\"vertices\" must be a list");
    std::vector<Vec> vs;
    for (const auto& v : j.at("vertices")) vs.push_back(detail::vec_from(v, d.ambient_dim));
    d.vertices = std::move(vs);
  }
  if (j.contains("inequalities")) d.inequalities = detail::halfspaces_from(j.at("inequalities"), d.ambient_dim);
  if (j.contains("equations")) d.equations = detail::halfspaces_from(j.at("equations"), d.ambient_dim);
  if (!d.vertices && !d.inequalities && !d.equations)
    throw InvalidArgument("a polytope document needs vertices or inequalities");
  return d;
}

/// Vertices and the facet description, equations only when not full-dimensional.
inline PolytopeDocument to_document(const Polytope& p, std::string name = "") {
  PolytopeDocument d;
  d.name = std::move(name);
  d.ambient_dim = p.ambient_dim();
  d.vertices = p.vertices();
  d.inequalities = p.facets();
  if (!p.equations().empty()) d.equations = p.equations();
  return d;
}

/// Vertices win when both representations are present.
inline Polytope to_polytope(const PolytopeDocument& d) {
  if (d.vertices) {
    if (d.vertices->empty()) throw EmptyInput("the document lists no vertices");
    return Polytope::from_vertices(d.ambient_dim, *d.vertices);
  }
  HRep h;
  h.ambient_dim = d.ambient_dim;
  if (d.inequalities) h.inequalities = *d.inequalities;
  if (d.equations) h.equations = *d.equations;
  return Polytope::from_inequalities(h);
}

inline std::string serialize(const MapDocument& m) {
  detail::Json j;
  j["format_version"] = m.format_version;
  j["name"] = m.name;
  j["domain_dim"] = m.domain_dim;
  detail::Json rows = detail::Json::array();
  for (const auto& r : m.matrix) rows.push_back(detail::vec_json(r));
  j["matrix"] = rows;
  j["translation"] = detail::vec_json(m.translation);
  return j.dump(2) + "\n";
}

inline AffineMap parse_map_document(const std::string& text) {
  detail::Json j = detail::parse_json(text);
  if (!j.is_object() || !j.contains("domain_dim") || !j.contains("matrix") || !j.contains("translation"))
    throw InvalidArgument("a map document needs \"domain_dim\", \"matrix\" and \"translation\"");
  const std::size_t n = j.at("domain_dim").get<std::size_t>();
  if (!j.at("matrix").is_array()) throw InvalidArgument("\"matrix\" must be a list of rows");
  Matrix m;
  for (const auto& r : j.at("matrix")) m.push_back(detail::vec_from(r, n));
  Vec t = detail::vec_from(j.at("translation"), m.size());
  return AffineMap(std::move(m), std::move(t), n);
}

inline MapDocument to_document(const AffineMap& f, std::string name = "") {
  return {kFormatVersion, std::move(name), f.domain_dim(), f.matrix(), f.translation()};
}

}  // namespace polyfunctor
