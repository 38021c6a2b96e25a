// SPDX-License-Identifier: Apache-2.0
#include "gft/instance_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gft/error.hpp"

namespace gft {

namespace {

using nlohmann::json;

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::Parse, what); }

double number(const json& j, const char* what) {
  if (!j.is_number()) parse_error(std::string(what) + " must be a number");
  return j.get<double>();
}

ScaledDistribution distribution_from(const json& j, const std::string& where) {
  if (!j.is_object()) parse_error(where + " must be an object");
  for (const auto& [key, _] : j.items()) {
    if (key != "type" && key != "knots" && key != "support") {
      parse_error(where + ": unknown field '" + key + "'");
    }
  }
  if (!j.contains("type") || j["type"] != "piecewise_linear_cdf") {
    parse_error(where + ": type must be \"piecewise_linear_cdf\"");
  }
  if (!j.contains("knots") || !j["knots"].is_array()) parse_error(where + ": knots must be an array");

  std::vector<Knot> knots;
  for (const json& k : j["knots"]) {
    if (!k.is_array() || k.size() != 2) parse_error(where + ": each knot must be [x, q]");
    knots.push_back({number(k[0], "knot x"), number(k[1], "knot q")});
  }
  if (!j.contains("support")) return {Distribution(std::move(knots)), AffineMap{}};

  const json& s = j["support"];
  if (!s.is_array() || s.size() != 2) parse_error(where + ": support must be [lo, hi]");
  const double lo = number(s[0], "support lo");
  const double hi = number(s[1], "support hi");
  if (lo == hi) throw Error(ErrorCode::DegenerateSupport, where + ": support has zero width");
  if (knots.size() >= 2 && (knots.front().x != lo || knots.back().x != hi)) {
    throw Error(ErrorCode::BadEndpoints, where + ": knots must span the declared support");
  }
  return rescale_to_unit(std::move(knots));
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    parse_error(std::string("malformed JSON: ") + e.what());
  }
}

json distribution_json(const Distribution& d, const AffineMap& map) {
  json knots = json::array();
  for (const Knot& k : d.knots()) knots.push_back({map.from_unit(k.x), k.q});
  json out{{"type", "piecewise_linear_cdf"}, {"knots", std::move(knots)}};
  if (!map.is_identity()) out["support"] = {map.lo, map.hi};
  return out;
}

}  // namespace

ScaledDistribution parse_distribution(std::string_view json_text) {
  return distribution_from(parse_json(json_text), "distribution");
}

LoadedInstance parse_instance(std::string_view json_text) {
  const json j = parse_json(json_text);
  if (!j.is_object()) parse_error("instance must be an object");
  for (const auto& [key, _] : j.items()) {
    if (key != "buyer" && key != "seller") parse_error("instance: unknown field '" + key + "'");
  }
  if (!j.contains("buyer") || !j.contains("seller")) {
    parse_error("instance needs both \"buyer\" and \"seller\"");
  }
  ScaledDistribution buyer = distribution_from(j["buyer"], "buyer");
  ScaledDistribution seller = distribution_from(j["seller"], "seller");
  if (!(buyer.map == seller.map)) {
    parse_error("buyer and seller must declare the same support");
  }
  return {Instance{std::move(buyer.unit), std::move(seller.unit)}, buyer.map};
}

LoadedInstance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

std::string distribution_to_json(const Distribution& d, const AffineMap& map) {
  return distribution_json(d, map).dump();
}

std::string instance_to_json(const Instance& inst, const AffineMap& map) {
  return json{{"buyer", distribution_json(inst.buyer, map)},
              {"seller", distribution_json(inst.seller, map)}}
      .dump();
}

}  // namespace gft
