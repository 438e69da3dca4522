#include "kboxkit/serialize.hpp"

#include <fstream>
#include <sstream>

#include "kboxkit/error.hpp"

namespace kboxkit {

Json rational_json(const Rational& value) { return format_rational(value); }

Rational rational_from_json(const Json& value) {
  if (value.is_string()) return parse_rational(value.get<std::string>());
  if (value.is_number_unsigned()) return Rational(value.get<std::uint64_t>());
  if (value.is_number_integer()) return Rational(value.get<std::int64_t>());
  if (value.is_number_float()) return rational_from_decimal_double(value.get<double>());
  throw parse_error("expected a rational, got " + value.dump());
}

Json node_json(const NodeIndex& node) { return Json(node); }

Json point_json(const Point& point) {
  Json j = Json::array();
  for (const auto& t : point) j.push_back(rational_json(t));
  return j;
}

namespace {

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw parse_error(std::string("missing field '") + name + "'");
  return j.at(name);
}

std::vector<Rational> rational_list(const Json& j, const char* what) {
  if (!j.is_array()) throw parse_error(std::string(what) + " must be an array");
  std::vector<Rational> out;
  out.reserve(j.size());
  for (const auto& v : j) out.push_back(rational_from_json(v));
  return out;
}

NodeIndex node_from_json(const Json& j) {
  if (!j.is_array()) throw parse_error("node must be an array of axis indices");
  NodeIndex node;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw parse_error("node index must be an integer, got " + v.dump());
    node.push_back(v.get<int>());
  }
  return node;
}

Json rational_array(const std::vector<Rational>& values) {
  Json j = Json::array();
  for (const auto& v : values) j.push_back(rational_json(v));
  return j;
}

Json optional_rational(const std::optional<Rational>& value) {
  return value ? rational_json(*value) : Json(nullptr);
}

}  // namespace

Json to_json(const GridFunction& f) {
  Json j;
  j["n"] = f.mesh.dim();
  Json axes = Json::array();
  for (const auto& axis : f.mesh.axes()) axes.push_back(rational_array(axis));
  j["axes"] = std::move(axes);
  j["values"] = rational_array(f.values);
  if (f.label) j["label"] = *f.label;
  return j;
}

GridFunction grid_function_from_json(const Json& j) {
  const Json& n = field(j, "n");
  if (!n.is_number_integer()) throw parse_error("'n' must be an integer");
  const Json& axes_json = field(j, "axes");
  if (!axes_json.is_array()) throw parse_error("'axes' must be an array");
  if (static_cast<long>(axes_json.size()) != n.get<long>()) {
    throw parse_error("'n' is " + n.dump() + " but " + std::to_string(axes_json.size()) + " axes are given");
  }
  std::vector<std::vector<Rational>> axes;
  for (const auto& axis : axes_json) axes.push_back(rational_list(axis, "axis"));
  std::optional<std::string> label;
  if (j.contains("label") && !j.at("label").is_null()) {
    if (!j.at("label").is_string()) throw parse_error("'label' must be a string");
    label = j.at("label").get<std::string>();
  }
  return GridFunction(GridMesh(std::move(axes)), rational_list(field(j, "values"), "values"), label);
}

GridFunction parse_grid_function(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("malformed JSON: ") + e.what());
  }
  return grid_function_from_json(j);
}

GridFunction load_grid_function(const std::string& path) {
  try {
    return parse_grid_function(read_file(path));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::IoError) throw;
    throw Error(e.kind(), path + ": " + e.what());
  }
}

Json to_json(const KBox& box) {
  Json j;
  j["lower"] = node_json(box.lower);
  j["upper"] = node_json(box.upper);
  return j;
}

Json to_json(const BoxUnion& dub) {
  Json j;
  j["k"] = dub.order();
  Json boxes = Json::array();
  for (const auto& [box, count] : dub.boxes()) {
    Json b = to_json(box);
    b["count"] = count;
    boxes.push_back(std::move(b));
  }
  j["boxes"] = std::move(boxes);
  return j;
}

BoxUnion box_union_from_json(const Json& j) {
  const Json& k = field(j, "k");
  if (!k.is_number_integer()) throw parse_error("'k' must be an integer");
  BoxUnion dub(k.get<int>());
  for (const auto& b : field(j, "boxes")) {
    const Json& count = field(b, "count");
    if (!count.is_number_integer()) throw parse_error("'count' must be an integer");
    dub.add(KBox(node_from_json(field(b, "lower")), node_from_json(field(b, "upper"))), count.get<std::int64_t>());
  }
  return dub;
}

Json to_json(const StructuralReport& report) {
  Json j;
  j["grounded"] = report.grounded;
  j["one_increasing"] = report.one_increasing;
  j["uniform_marginals"] = report.uniform_marginals;
  j["value_at_one"] = rational_json(report.value_at_one);
  j["standardized"] = report.standardized();
  j["semicopula"] = report.semicopula();
  Json witnesses = Json::array();
  for (const auto& w : report.witnesses) {
    Json entry;
    entry["property"] = w.property;
    Json nodes = Json::array();
    for (const auto& node : w.nodes) nodes.push_back(node_json(node));
    entry["nodes"] = std::move(nodes);
    witnesses.push_back(std::move(entry));
  }
  j["witnesses"] = std::move(witnesses);
  return j;
}

Json to_json(const KIncreasingReport& report) {
  Json j;
  j["passed"] = report.passed;
  j["boxes_checked"] = report.boxes_checked;
  if (report.violating_box) {
    j["violating_box"] = to_json(*report.violating_box);
    j["volume"] = rational_json(report.volume);
  }
  return j;
}

Json to_json(const FunctionalValue& value) {
  Json j;
  j["status"] = to_string(value.status);
  j["value"] = value.status == InfimumStatus::Unbounded ? Json(nullptr) : rational_json(value.value);
  j["attained"] = value.attained;
  if (value.witness) j["witness"] = to_json(*value.witness);
  return j;
}

Json to_json(const std::vector<FunctionalRecord>& table) {
  Json records = Json::array();
  for (const auto& r : table) {
    Json j;
    j["node"] = node_json(r.node);
    j["p_neg"] = to_json(r.neg);
    j["p_pos"] = to_json(r.pos);
    j["gamma"] = optional_rational(r.gamma);
    j["delta"] = optional_rational(r.delta);
    records.push_back(std::move(j));
  }
  return records;
}

Json to_json(const SumInequalityReport& report) {
  Json j;
  Json records = Json::array();
  for (const auto& r : report.records) {
    Json e;
    e["node"] = node_json(r.node);
    e["p_neg"] = to_json(r.neg);
    e["p_pos"] = to_json(r.pos);
    e["gap"] = rational_json(r.gap);
    e["holds"] = r.holds;
    records.push_back(std::move(e));
  }
  j["records"] = std::move(records);
  Json violations = Json::array();
  for (const auto& node : report.violations) violations.push_back(node_json(node));
  j["violations"] = std::move(violations);
  return j;
}

Json to_json(const AslVerdict& verdict) {
  Json j;
  j["satisfied"] = verdict.satisfied;
  j["min_l"] = rational_json(verdict.min_l_value);
  j["violating_union"] = verdict.violating_union ? to_json(*verdict.violating_union) : Json(nullptr);
  j["feasible_C"] = verdict.feasible ? to_json(*verdict.feasible) : Json(nullptr);
  return j;
}

Json to_json(const SweepTrace& trace) {
  Json j;
  j["direction"] = to_string(trace.direction);
  j["k"] = trace.k;
  Json order = Json::array();
  for (const auto& node : trace.order) order.push_back(node_json(node));
  j["order"] = std::move(order);
  Json steps = Json::array();
  for (const auto& s : trace.steps) {
    Json e;
    e["node"] = node_json(s.node);
    e["old_value"] = rational_json(s.old_value);
    e["change"] = rational_json(s.change);
    steps.push_back(std::move(e));
  }
  j["steps"] = std::move(steps);
  j["result"] = to_json(trace.result);
  return j;
}

Json to_json(const CoherenceReport& report) {
  Json j;
  j["side"] = to_string(report.side);
  j["k"] = report.k;
  j["coherent"] = report.coherent;
  Json records = Json::array();
  for (const auto& r : report.records) {
    Json e;
    e["node"] = node_json(r.node);
    e["functional"] = to_json(r.functional);
    e["gap"] = rational_json(r.gap);
    e[report.side == CoherenceSide::Upper ? "sup" : "inf"] = rational_json(r.extreme);
    e["functional_test"] = r.functional_test;
    e["extreme_test"] = r.extreme_test;
    e["equality"] = r.equality;
    records.push_back(std::move(e));
  }
  j["records"] = std::move(records);
  Json witnesses = Json::array();
  for (const auto& node : report.witnesses) witnesses.push_back(node_json(node));
  j["witnesses"] = std::move(witnesses);
  j["bound_lipschitz"] = report.bound_lipschitz ? Json(*report.bound_lipschitz) : Json(nullptr);
  return j;
}

Json to_json(const LipschitzReport& report) {
  Json j;
  j["passed"] = report.passed;
  Json violations = Json::array();
  for (const auto& v : report.violations) {
    Json e;
    e["from"] = node_json(v.from);
    e["to"] = node_json(v.to);
    e["jump"] = rational_json(v.jump);
    e["distance"] = rational_json(v.distance);
    violations.push_back(std::move(e));
  }
  j["violations"] = std::move(violations);
  return j;
}

std::vector<NodeIndex> parse_order(const std::string& text, const GridMesh& mesh) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("malformed order file: ") + e.what());
  }
  if (!j.is_array()) throw parse_error("order file must hold an array of nodes");
  std::vector<NodeIndex> order;
  for (const auto& node : j) {
    order.push_back(node_from_json(node));
    if (!mesh.contains(order.back())) throw parse_error("order lists a node outside the mesh: " + node.dump());
  }
  return order;
}

std::vector<NodeIndex> load_order(const std::string& path, const GridMesh& mesh) {
  return parse_order(read_file(path), mesh);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot open '" + path + "' for writing");
  out << contents;
  if (!out) throw Error(ErrorKind::IoError, "write to '" + path + "' failed");
}

}  // namespace kboxkit
