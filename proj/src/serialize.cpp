#include "olab/serialize.hpp"

#include <json.hpp>

namespace olab {

using nlohmann::json;

namespace {

std::vector<Cell> cell_list(const json& arr, const char* what) {
  std::vector<Cell> out;
  if (!arr.is_array()) throw InputError(std::string(what) + " must be an array");
  for (const auto& e : arr) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
        !e[1].is_number_integer())
      throw InputError(std::string(what) + " entries must be [x,t] pairs");
    out.push_back({e[0].get<int>(), e[1].get<int>()});
  }
  return out;
}

ParsedInput parse_grid(const json& j) {
  if (!j.contains("width") || !j.contains("height"))
    throw InputError("grid input needs width and height");
  int w = j["width"].get<int>(), h = j["height"].get<int>();
  int up = j.value("up_slope", 1), down = j.value("down_slope", 1);
  std::vector<Cell> holes;
  if (j.contains("holes")) holes = cell_list(j["holes"], "holes");
  ParsedInput out;
  out.grid = build_grid(w, h, up, down, std::move(holes));
  if (j.contains("regions")) {
    const auto& r = j["regions"];
    if (!r.is_object()) throw InputError("regions must be an object");
    if (r.contains("A")) out.region_a = out.grid->region(cell_list(r["A"], "A"));
    if (r.contains("U")) out.region_u = out.grid->region(cell_list(r["U"], "U"));
  }
  return out;
}

ParsedInput parse_space(const json& j) {
  if (!j.contains("points") || !j["points"].is_array())
    throw InputError("space input needs a points array");
  std::vector<std::string> points;
  for (const auto& p : j["points"]) {
    if (!p.is_string()) throw InputError("points must be strings");
    points.push_back(p.get<std::string>());
  }
  std::vector<std::pair<std::string, std::string>> order;
  if (j.contains("order")) {
    for (const auto& e : j["order"]) {
      if (!e.is_array() || e.size() != 2)
        throw InputError("order entries must be [p,q] pairs");
      order.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
    }
  }
  TopologySpec topo = TopologySpec::discrete();
  if (j.contains("topology")) {
    const auto& t = j["topology"];
    std::string kind = t.value("kind", "discrete");
    if (kind == "subbase") {
      std::vector<Mask> sets;
      // Subbase sets are resolved after the point list exists; collect label
      // lists first, then translate below.
      FiniteSpace probe;
      probe.points = points;
      if (!t.contains("sets")) throw InputError("subbase topology needs sets");
      for (const auto& s : t["sets"]) {
        std::vector<std::string> labels;
        for (const auto& l : s) labels.push_back(l.get<std::string>());
        sets.push_back(probe.mask_of(labels));
      }
      topo = TopologySpec::from_subbase(std::move(sets));
    } else if (kind != "discrete") {
      throw InputError("unknown topology kind: " + kind);
    }
  }
  ParsedInput out;
  out.space = build_space_labels(j.value("name", "space"), std::move(points),
                                 order, topo);
  return out;
}

}  // namespace

ParsedInput parse_input_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw InputError("malformed JSON input");
  if (!j.is_object()) throw InputError("input must be a JSON object");
  std::string kind = j.value("kind", "space");
  if (kind == "grid") return parse_grid(j);
  if (kind == "space") return parse_space(j);
  throw InputError("unknown input kind: " + kind);
}

std::string space_to_json(const FiniteSpace& s) {
  json j;
  j["kind"] = "space";
  j["name"] = s.name;
  j["points"] = s.points;
  json order = json::array();
  for (int i = 0; i < s.n(); ++i)
    for (int k : mask_indices(s.up_of[i]))
      if (k != i) order.push_back({s.points[i], s.points[k]});
  j["order"] = order;
  if (s.discrete) {
    j["topology"] = {{"kind", "discrete"}};
  } else {
    json sets = json::array();
    for (Mask m : s.explicit_opens) {
      json labels = json::array();
      for (int i : mask_indices(m)) labels.push_back(s.points[i]);
      sets.push_back(labels);
    }
    j["topology"] = {{"kind", "subbase"}, {"sets", sets}};
  }
  return j.dump(2);
}

std::string grid_to_json(const GridSpacetime& g, Mask a, Mask u) {
  json j;
  j["kind"] = "grid";
  j["width"] = g.width;
  j["height"] = g.height;
  j["up_slope"] = g.up_slope;
  j["down_slope"] = g.down_slope;
  json holes = json::array();
  for (Cell h : g.holes) holes.push_back({h.x, h.t});
  j["holes"] = holes;
  json regions = json::object();
  json ra = json::array(), ru = json::array();
  for (Cell c : g.cells_of(a)) ra.push_back({c.x, c.t});
  for (Cell c : g.cells_of(u)) ru.push_back({c.x, c.t});
  regions["A"] = ra;
  regions["U"] = ru;
  j["regions"] = regions;
  return j.dump(2);
}

}  // namespace olab
