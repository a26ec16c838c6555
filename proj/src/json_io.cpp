#include "flatcensus/json_io.hpp"

#include <json.hpp>

#include <stdexcept>

namespace flatcensus {

namespace {

using nlohmann::json;

std::vector<Slot> pairs_to_partner(const json& pairs, int n_slots, const char* kind) {
  std::vector<Slot> partner(n_slots, -1);
  if (!pairs.is_array()) throw std::invalid_argument(std::string(kind) + " must be an array");
  for (const auto& p : pairs) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() || !p[1].is_number_integer())
      throw std::invalid_argument(std::string(kind) + " entries must be [slot, slot]");
    int a = p[0].get<int>(), b = p[1].get<int>();
    if (a < 0 || a >= n_slots || b < 0 || b >= n_slots)
      throw std::invalid_argument(std::string(kind) + " slot out of range");
    if (partner[a] != -1 || partner[b] != -1)
      throw std::invalid_argument(std::string(kind) + " slot paired twice");
    if (a == b) throw std::invalid_argument(std::string(kind) + " has a fixed slot");
    partner[a] = b;
    partner[b] = a;
  }
  for (int s = 0; s < n_slots; ++s)
    if (partner[s] == -1)
      throw std::invalid_argument(std::string(kind) + " leaves slot " + std::to_string(s) + " unpaired");
  return partner;
}

json parse(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw std::invalid_argument("malformed JSON");
  return j;
}

}  // namespace

GluingTable table_from_json(const std::string& text) {
  json j = parse(text);
  if (!j.is_object() || !j.contains("n_squares") || !j["n_squares"].is_number_integer())
    throw std::invalid_argument("table JSON requires integer n_squares");
  GluingTable t;
  t.n_squares = j["n_squares"].get<int>();
  if (t.n_squares <= 0) throw std::invalid_argument("n_squares must be positive");
  if (!j.contains("h_pairs") || !j.contains("v_pairs"))
    throw std::invalid_argument("table JSON requires h_pairs and v_pairs");
  t.h_partner = pairs_to_partner(j["h_pairs"], 2 * t.n_squares, "h_pairs");
  t.v_partner = pairs_to_partner(j["v_pairs"], 2 * t.n_squares, "v_pairs");
  return t;
}

MarkedTiling tiling_from_json(const std::string& text) {
  GluingTable t = table_from_json(text);
  json j = parse(text);
  std::vector<int> marked;
  if (j.contains("marked")) {
    if (!j["marked"].is_array()) throw std::invalid_argument("marked must be an array");
    for (const auto& m : j["marked"]) {
      if (!m.is_number_integer()) throw std::invalid_argument("marked entries must be integers");
      marked.push_back(m.get<int>());
    }
  }
  return MarkedTiling(t, std::move(marked));
}

std::string tiling_to_json(const MarkedTiling& mt) {
  json j;
  j["n_squares"] = mt.table.n_squares;
  json h = json::array(), v = json::array();
  for (int s = 0; s < 2 * mt.table.n_squares; ++s) {
    if (mt.table.h_partner[s] > s) h.push_back({s, mt.table.h_partner[s]});
    if (mt.table.v_partner[s] > s) v.push_back({s, mt.table.v_partner[s]});
  }
  j["h_pairs"] = h;
  j["v_pairs"] = v;
  j["marked"] = mt.marked;
  return j.dump();
}

}  // namespace flatcensus
