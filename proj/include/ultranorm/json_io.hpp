#pragma once

// JSON forms of vectors, probe maps and axial isometries.
//
//   vector:    {"field": "padic:3", "coords": ["9", "1/3"]}
//   probe map: {"field": ..., "n": ..., "pairs": [[domain, image], ...], "complete": bool}
//              with domain and image written as arrays of scalar strings
//   isometry:  {"field": ..., "n": ..., "sigma": [...],
//               "taus": [{"affine": ["u", "c"]} | {"table": [...]} | {"lookup": [["a", "b"], ...]}],
//               "translation": [...]}
//
// sigma is 0-based: output coordinate i reads input coordinate sigma[i].

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ultranorm/isometry.hpp"
#include "ultranorm/vector.hpp"

namespace ultranorm {

using Json = nlohmann::json;

namespace detail {

inline const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(key, "missing JSON member");
  return j.at(key);
}

inline std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return j.dump();
  throw ParseError(j.dump(), "scalars must be strings or integers");
}

}  // namespace detail

inline Json coords_to_json(const Vector& v) {
  Json out = Json::array();
  for (const auto& c : v) out.push_back(c.to_string());
  return out;
}

inline Vector coords_from_json(const FieldSpec& field, const Json& j) {
  if (!j.is_array() || j.empty()) throw ParseError(j.dump(), "expected a non-empty array of scalars");
  std::vector<Scalar> coords;
  for (const auto& c : j) coords.push_back(Scalar::parse(field, detail::scalar_text(c)));
  return Vector(field, std::move(coords));
}

inline Json vector_to_json(const Vector& v) { return {{"field", v.field().to_string()}, {"coords", coords_to_json(v)}}; }

inline Vector vector_from_json(const Json& j) {
  const auto field = FieldSpec::parse(detail::member(j, "field").get<std::string>());
  return coords_from_json(field, detail::member(j, "coords"));
}

inline Json probe_map_to_json(const ProbeMap& m) {
  Json pairs = Json::array();
  for (std::size_t i = 0; i < m.size(); ++i) pairs.push_back(Json::array({coords_to_json(m.domain()[i]), coords_to_json(m.images()[i])}));
  return {{"field", m.field().to_string()}, {"n", m.dimension()}, {"pairs", std::move(pairs)}, {"complete", m.complete()}};
}

inline ProbeMap probe_map_from_json(const Json& j) {
  const auto field = FieldSpec::parse(detail::member(j, "field").get<std::string>());
  const auto& pairs = detail::member(j, "pairs");
  if (!pairs.is_array()) throw ParseError("pairs", "expected an array");
  std::vector<Vector> domain, images;
  for (const auto& pair : pairs) {
    if (!pair.is_array() || pair.size() != 2) throw ParseError(pair.dump(), "expected [domain, image]");
    domain.push_back(coords_from_json(field, pair[0]));
    images.push_back(coords_from_json(field, pair[1]));
  }
  if (j.contains("n") && !domain.empty() && j.at("n").get<std::size_t>() != domain.front().size()) {
    throw DimensionMismatch("declared n = " + j.at("n").dump() + " but probes have dimension " + std::to_string(domain.front().size()));
  }
  return ProbeMap(std::move(domain), std::move(images), j.value("complete", false));
}

inline Json scalar_isometry_to_json(const ScalarIsometry& tau) {
  if (const auto* a = std::get_if<ScalarIsometry::Affine>(&tau.form())) {
    return {{"affine", Json::array({a->unit.to_string(), a->shift.to_string()})}};
  }
  if (const auto* t = std::get_if<ScalarIsometry::Table>(&tau.form())) return {{"table", t->images}};
  Json entries = Json::array();
  for (const auto& [a, b] : std::get<ScalarIsometry::Lookup>(tau.form()).entries) entries.push_back(Json::array({a.to_string(), b.to_string()}));
  return {{"lookup", std::move(entries)}};
}

inline ScalarIsometry scalar_isometry_from_json(const FieldSpec& field, const Json& j) {
  if (j.contains("affine")) {
    const auto& uc = j.at("affine");
    if (!uc.is_array() || uc.size() != 2) throw ParseError(uc.dump(), "affine needs [u, c]");
    return ScalarIsometry::affine(Scalar::parse(field, detail::scalar_text(uc[0])), Scalar::parse(field, detail::scalar_text(uc[1])));
  }
  if (j.contains("table")) return ScalarIsometry::table(field, j.at("table").get<std::vector<std::uint32_t>>());
  if (j.contains("lookup")) {
    std::vector<std::pair<Scalar, Scalar>> entries;
    for (const auto& e : j.at("lookup")) {
      if (!e.is_array() || e.size() != 2) throw ParseError(e.dump(), "lookup entries are [a, b]");
      entries.emplace_back(Scalar::parse(field, detail::scalar_text(e[0])), Scalar::parse(field, detail::scalar_text(e[1])));
    }
    return ScalarIsometry::lookup(field, std::move(entries));
  }
  throw ParseError(j.dump(), "unknown scalar isometry form");
}

inline Json isometry_to_json(const AxialIsometry& iso) {
  Json taus = Json::array();
  for (const auto& tau : iso.taus()) taus.push_back(scalar_isometry_to_json(tau));
  return {{"field", iso.field().to_string()},
          {"n", iso.size()},
          {"sigma", iso.sigma()},
          {"taus", std::move(taus)},
          {"translation", coords_to_json(iso.translation())}};
}

inline AxialIsometry isometry_from_json(const Json& j) {
  const auto field = FieldSpec::parse(detail::member(j, "field").get<std::string>());
  std::vector<ScalarIsometry> taus;
  for (const auto& t : detail::member(j, "taus")) taus.push_back(scalar_isometry_from_json(field, t));
  return AxialIsometry(detail::member(j, "sigma").get<std::vector<std::size_t>>(), std::move(taus),
                       coords_from_json(field, detail::member(j, "translation")));
}

}  // namespace ultranorm
