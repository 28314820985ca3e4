#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "fgq/branching.hpp"
#include "fgq/errors.hpp"
#include "fgq/formalseries.hpp"
#include "fgq/hamiltonian.hpp"
#include "fgq/khom.hpp"
#include "fgq/repring.hpp"
#include "fgq/rootdata.hpp"

// JSON (de)serialization. nlohmann::json keeps object keys sorted and our
// weight maps iterate lexicographically, so identical inputs produce
// byte-identical documents.

namespace fgq {

using Json = nlohmann::json;

inline Json toJson(const Rational& q) {
  if (ratDen(q) == 1) return Json(ratNum(q));
  return Json::array({ratNum(q), ratDen(q)});
}

inline Rational rationalFromJson(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) return parseRational(j.get<std::string>());
  if (j.is_array() && j.size() == 2 && j[0].is_number_integer() && j[1].is_number_integer())
    return Rational(j[0].get<long long>(), j[1].get<long long>());
  fail(errs::ParseError, "expected a rational (integer, \"p/q\", or [num,den])");
}

inline Json toJson(const Weight& w) {
  Json a = Json::array();
  for (int i = 0; i < w.rank(); ++i) a.push_back(w[i]);
  return a;
}

inline Weight weightFromJson(const Json& j) {
  if (!j.is_array()) fail(errs::ParseError, "expected a weight as an integer array");
  std::vector<int> coords;
  for (const auto& v : j) {
    if (!v.is_number_integer()) fail(errs::ParseError, "weight coordinates must be integers");
    coords.push_back(v.get<int>());
  }
  return Weight(std::move(coords));
}

inline Json toJson(const RootDatum& rd) {
  Json j;
  j["label"] = rd.label;
  j["rank"] = rd.rank;
  j["cartan"] = rd.cartan;
  Json form = Json::array();
  for (const auto& row : rd.form) {
    Json r = Json::array();
    for (const Rational& v : row) r.push_back(Json::array({ratNum(v), ratDen(v)}));
    form.push_back(r);
  }
  j["form"] = form;
  return j;
}

inline RootDatum rootDatumFromJson(const Json& j) {
  if (j.is_string()) return buildRootDatum(j.get<std::string>());
  if (j.is_object() && j.contains("label") && j["label"].is_string())
    return buildRootDatum(j["label"].get<std::string>());
  fail(errs::ParseError, "expected a root datum label or object with \"label\"");
}

inline Json termsToJson(const std::map<Weight, long long>& terms) {
  Json a = Json::array();
  for (const auto& [w, m] : terms) {
    Json t;
    t["weight"] = toJson(w);
    t["mult"] = m;
    a.push_back(t);
  }
  return a;
}

inline Json toJson(const RKElement& x) { return termsToJson(x.terms); }

inline Json truncationToJson(const std::map<Weight, long long>& window, const Rational& radius) {
  Json j;
  j["radius"] = toJson(radius);
  j["terms"] = termsToJson(window);
  return j;
}

inline Json toJson(const Embedding& e) {
  Json j;
  j["source"] = toJson(e.source);
  j["target"] = toJson(e.target);
  j["map"] = e.weightMap;
  j["kind"] = e.kind;
  return j;
}

inline Embedding embeddingFromJson(const Json& j) {
  if (!j.is_object() || !j.contains("source") || !j.contains("target") || !j.contains("map") ||
      !j.contains("kind"))
    fail(errs::ParseError, "embedding needs source, target, map, kind");
  RootDatum source = rootDatumFromJson(j["source"]);
  RootDatum target = rootDatumFromJson(j["target"]);
  std::vector<std::vector<int>> map;
  for (const auto& row : j["map"]) {
    std::vector<int> r;
    for (const auto& v : row) r.push_back(v.get<int>());
    map.push_back(std::move(r));
  }
  return makeEmbedding(std::move(source), std::move(target), std::move(map),
                       j["kind"].get<std::string>());
}

inline Json modelToJson(const GroupModel& m) {
  Json j;
  j["name"] = m.name;
  j["compact"] = toJson(m.compact);
  j["d"] = m.d;
  return j;
}

inline Json classToJson(const KHomologyClass& c, const Rational& radius) {
  Json j;
  j["model"] = modelToJson(c.model);
  j["series"] = truncationToJson(truncate(c.series, radius), radius);
  j["radius"] = toJson(radius);
  return j;
}

using ModelVariant = std::variant<LinearModel, CoadjointOrbitModel, InducedModel>;

namespace detail {

inline std::vector<Weight> weightsFromJson(const Json& j) {
  std::vector<Weight> out;
  for (const auto& w : j) out.push_back(weightFromJson(w));
  return out;
}

inline LinearModel linearFromJson(const RootDatum& rd, const Json& j) {
  if (!j.contains("weights")) fail(errs::ParseError, "linear model needs \"weights\"");
  std::vector<Weight> weights = weightsFromJson(j["weights"]);
  std::optional<RatVec> xi;
  if (j.contains("xi")) {
    RatVec v;
    for (const auto& q : j["xi"]) v.push_back(rationalFromJson(q));
    xi = std::move(v);
  }
  const bool proper = j.value("proper", false);
  std::optional<std::function<long long(const Weight&)>> bound;
  if (proper && !rd.isTorus()) {
    // the one nonabelian shape with a shipped exact bound: V = C^2 over A1
    const LinearModel su2 = su2C2Model();
    std::vector<Weight> sorted = weights;
    std::sort(sorted.begin(), sorted.end());
    std::vector<Weight> ref = su2.repWeights;
    std::sort(ref.begin(), ref.end());
    if (sameDatum(rd, su2.datum) && sorted == ref) bound = su2.degreeBound;
  }
  std::string tag = j.value("tag", std::string{});
  return makeLinearModel(rd, std::move(weights), std::move(xi), std::move(bound), proper,
                         std::move(tag));
}

inline CoadjointOrbitModel coadjointFromJson(const RootDatum& rd, const Json& j) {
  if (!j.contains("weight") || !j.contains("sign"))
    fail(errs::ParseError, "coadjoint model needs \"weight\" and \"sign\"");
  const std::string sign = j["sign"].get<std::string>();
  if (sign != "+" && sign != "-") fail(errs::ParseError, "sign must be \"+\" or \"-\"");
  return makeCoadjointModel(rd, weightFromJson(j["weight"]), sign[0]);
}

}  // namespace detail

// Flattened model schema: {"kind": "linear"|"coadjoint"|"induced",
// "datum": ..., then per kind: "weights"/"xi"/"proper", or "weight"/"sign";
// induced adds "d" and carries its inner model's fields inline.
inline ModelVariant modelFromJson(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.contains("datum"))
    fail(errs::ParseError, "model needs \"kind\" and \"datum\"");
  const std::string kind = j["kind"].get<std::string>();
  RootDatum rd = rootDatumFromJson(j["datum"]);
  if (kind == "linear") return detail::linearFromJson(rd, j);
  if (kind == "coadjoint") return detail::coadjointFromJson(rd, j);
  if (kind == "induced") {
    if (!j.contains("d") || !j["d"].is_number_integer() || j["d"].get<int>() < 0)
      fail(errs::ParseError, "induced model needs a nonnegative integer \"d\"");
    const int d = j["d"].get<int>();
    GroupModel gm;
    gm.compact = rd;
    gm.d = d;
    gm.name = j.value("name", rd.label + "_d" + std::to_string(d));
    if (d == 0) {
      gm.stronglyElliptic = [](const Weight&) { return true; };
    } else {
      const RootDatum datum = rd;
      gm.stronglyElliptic = [datum](const Weight& w) {
        for (int i = 0; i < datum.rank; ++i)
          if (datum.semisimpleCoord[static_cast<std::size_t>(i)] && w[i] < 1) return false;
        return true;
      };
    }
    std::variant<LinearModel, CoadjointOrbitModel> inner =
        j.contains("weights") ? std::variant<LinearModel, CoadjointOrbitModel>(
                                    detail::linearFromJson(rd, j))
                              : std::variant<LinearModel, CoadjointOrbitModel>(
                                    detail::coadjointFromJson(rd, j));
    return makeInducedModel(std::move(gm), std::move(inner));
  }
  fail(errs::ParseError, "unknown model kind " + kind);
}

inline Json loadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errs::ParseError, "cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    fail(errs::ParseError, std::string("invalid JSON in ") + path + ": " + e.what());
  }
  return j;
}

inline ModelVariant loadModelFile(const std::string& path) { return modelFromJson(loadJsonFile(path)); }

}  // namespace fgq
