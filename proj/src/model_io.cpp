#include "deontic/model_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace deontic {

using nlohmann::json;

namespace {

std::vector<std::string> string_list(const json& j, const std::string& where) {
  if (!j.is_array()) throw std::runtime_error(where + ": expected a list of worlds");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) throw std::runtime_error(where + ": world identifiers must be strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

std::map<std::string, std::vector<std::vector<std::string>>> neighbourhoods(const json& doc,
                                                                            const char* key) {
  std::map<std::string, std::vector<std::vector<std::string>>> out;
  if (!doc.contains(key)) return out;
  const json& n = doc.at(key);
  if (!n.is_object()) throw std::runtime_error(std::string(key) + ": expected an object");
  for (const auto& [world, sets] : n.items()) {
    if (!sets.is_array()) throw std::runtime_error(std::string(key) + "." + world + ": expected a list of sets");
    auto& dest = out[world];
    for (const auto& s : sets) dest.push_back(string_list(s, std::string(key) + "." + world));
  }
  return out;
}

}  // namespace

ModelDescription parse_model_description(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("malformed model document: ") + e.what());
  }
  if (!doc.is_object()) throw std::runtime_error("model document must be an object");
  if (!doc.contains("worlds")) throw std::runtime_error("model document lacks `worlds`");
  ModelDescription d;
  d.worlds = string_list(doc.at("worlds"), "worlds");
  if (doc.contains("valuation")) {
    const json& v = doc.at("valuation");
    if (!v.is_object()) throw std::runtime_error("valuation: expected an object");
    for (const auto& [atom, worlds] : v.items()) d.valuation[atom] = string_list(worlds, "valuation." + atom);
  }
  d.obligation = neighbourhoods(doc, "N_O");
  d.permission = neighbourhoods(doc, "N_P");
  return d;
}

NeighbourhoodModel parse_model(std::string_view json_text) {
  return NeighbourhoodModel::from_description(parse_model_description(json_text));
}

std::filesystem::path resolve_with_extension(const std::filesystem::path& p, std::string_view ext) {
  if (std::filesystem::is_regular_file(p)) return p;
  std::filesystem::path q = p;
  q += std::string(ext);
  if (std::filesystem::is_regular_file(q)) return q;
  throw std::runtime_error("no such file: " + p.string());
}

std::string read_text_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

NeighbourhoodModel load_model(const std::filesystem::path& path) {
  return parse_model(read_text_file(resolve_with_extension(path, ".json")));
}

std::string model_to_json(const NeighbourhoodModel& m, int indent) {
  const ModelDescription d = m.describe();
  json doc = json::object();
  doc["worlds"] = d.worlds;
  doc["valuation"] = json::object();
  for (const auto& [atom, ws] : d.valuation) doc["valuation"][atom] = ws;
  doc["N_O"] = json::object();
  doc["N_P"] = json::object();
  for (const auto& w : d.worlds) {
    doc["N_O"][w] = d.obligation.contains(w) ? json(d.obligation.at(w)) : json::array();
    doc["N_P"][w] = d.permission.contains(w) ? json(d.permission.at(w)) : json::array();
  }
  return doc.dump(indent);
}

}  // namespace deontic
