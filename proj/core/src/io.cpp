// SPDX-License-Identifier: Apache-2.0
#include "bordertn/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace bordertn::io {

using nlohmann::json;

namespace {

json complex_to_json(cx v) { return json::array({v.real(), v.imag()}); }
cx complex_from_json(const json& j) { return cx{j.at(0).get<double>(), j.at(1).get<double>()}; }

json legs_to_json(const std::vector<Leg>& legs) {
  json out = json::array();
  for (const auto& l : legs) out.push_back({{"id", l.id}, {"dim", l.dim}});
  return out;
}

std::vector<Leg> legs_from_json(const json& j) {
  std::vector<Leg> legs;
  for (const auto& e : j) legs.push_back({e.at("id").get<std::string>(), e.at("dim").get<std::size_t>()});
  return legs;
}

json data_to_json(const std::vector<cx>& data) {
  json out = json::array();
  for (const auto& v : data) out.push_back(complex_to_json(v));
  return out;
}

std::vector<cx> data_from_json(const json& j) {
  std::vector<cx> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(complex_from_json(e));
  return out;
}

json tensor_to_obj(const DenseTensor& t) {
  return json{{"legs", legs_to_json(t.legs())}, {"data", data_to_json(t.data())}};
}

DenseTensor tensor_from_obj(const json& j) {
  return DenseTensor(legs_from_json(j.at("legs")), data_from_json(j.at("data")));
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

Matrix matrix_from_json(const json& j) {
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = rows == 0 ? 0 : static_cast<Eigen::Index>(j.at(0).size());
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index c = 0; c < cols; ++c) m(i, c) = complex_from_json(j.at(i).at(c));
  return m;
}

json matrix_poly_to_json(const MatrixPoly& p) {
  json out = json::array();
  for (const auto& [e, m] : p.terms())
    out.push_back({{"exponent", e}, {"matrix", matrix_to_json(m)}});
  return out;
}

MatrixPoly matrix_poly_from_json(const json& j) {
  MatrixPoly p;
  for (const auto& term : j)
    p.add_term(term.at("exponent").get<int>(), matrix_from_json(term.at("matrix")));
  return p;
}

json plaquette_to_json(const PlaquetteSpec& s) {
  if (auto* p = std::get_if<PlaquetteSpec::MaxEntangled>(&s.kind))
    return json{{"kind", "max_entangled"}, {"dim", p->dim}};
  if (auto* p = std::get_if<PlaquetteSpec::Ghz>(&s.kind))
    return json{{"kind", "ghz"}, {"parties", p->parties}, {"levels", p->levels}};
  if (auto* p = std::get_if<PlaquetteSpec::MaMu>(&s.kind))
    return json{{"kind", "mamu"}, {"dims", p->dims}};
  if (std::get_if<PlaquetteSpec::Lambda>(&s.kind)) return json{{"kind", "lambda"}};
  return json{{"kind", "custom"},
              {"tensor", tensor_to_obj(std::get<PlaquetteSpec::Custom>(s.kind).tensor)}};
}

PlaquetteSpec plaquette_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "max_entangled")
    return PlaquetteSpec{PlaquetteSpec::MaxEntangled{j.at("dim").get<std::size_t>()}};
  if (kind == "ghz")
    return PlaquetteSpec{
        PlaquetteSpec::Ghz{j.at("parties").get<std::size_t>(), j.at("levels").get<std::size_t>()}};
  if (kind == "mamu")
    return PlaquetteSpec{PlaquetteSpec::MaMu{j.at("dims").get<std::vector<std::size_t>>()}};
  if (kind == "lambda") return PlaquetteSpec{PlaquetteSpec::Lambda{}};
  if (kind == "custom")
    return PlaquetteSpec{PlaquetteSpec::Custom{tensor_from_obj(j.at("tensor"))}};
  throw std::invalid_argument("unknown plaquette kind '" + kind + "'");
}

std::string dump(const json& j, int indent) { return indent < 0 ? j.dump() : j.dump(indent); }

}  // namespace

std::string tensor_to_json(const DenseTensor& t, int indent) {
  return dump(tensor_to_obj(t), indent);
}

DenseTensor tensor_from_json(const std::string& s) { return tensor_from_obj(json::parse(s)); }

std::string poly_tensor_to_json(const PolyTensor& p, int indent) {
  json terms = json::object();
  for (const auto& [e, t] : p.terms()) terms[std::to_string(e)] = data_to_json(t.data());
  return dump(json{{"legs", legs_to_json(p.legs())}, {"terms", terms}}, indent);
}

PolyTensor poly_tensor_from_json(const std::string& s) {
  const json j = json::parse(s);
  const std::vector<Leg> legs = legs_from_json(j.at("legs"));
  PolyTensor p(legs);
  for (const auto& [key, value] : j.at("terms").items())
    p.add_term(std::stoi(key), DenseTensor(legs, data_from_json(value)));
  return p;
}

std::string family_to_json(const LocalMapFamily& f, int indent) {
  json out = json::object();
  for (const auto& [v, mp] : f.maps) out[v] = matrix_poly_to_json(mp);
  return dump(out, indent);
}

LocalMapFamily family_from_json(const std::string& s) {
  LocalMapFamily f;
  const json j = json::parse(s);
  for (const auto& [v, terms] : j.items()) f.maps.emplace(v, matrix_poly_from_json(terms));
  return f;
}

std::string certificate_to_json(const DegenerationCertificate& c, int indent) {
  json residual = json::array();
  for (const auto& [e, t] : c.residual_terms) residual.push_back(e);
  json out{{"d", c.d},
           {"e", c.e},
           {"leading_norm", c.leading_norm},
           {"proportionality", complex_to_json(c.proportionality)},
           {"residual_exponents", residual},
           {"cancellation_warning", c.cancellation_warning}};
  return dump(out, indent);
}

std::string structure_to_json(const EntanglementStructure& s, int indent) {
  json edges = json::array();
  for (const auto& [id, vs] : s.graph.edges) edges.push_back({{"id", id}, {"vertices", vs}});
  json plq = json::object();
  for (const auto& [id, spec] : s.plaquettes) plq[id] = plaquette_to_json(spec);
  json grouping = json::object();
  for (const auto& [v, slots] : s.vertex_slots) {
    json list = json::array();
    for (const auto& slot : slots) list.push_back(json::array({slot.edge, slot.slot}));
    grouping[v] = list;
  }
  return dump(json{{"vertices", s.graph.vertices},
                   {"edges", edges},
                   {"plaquettes", plq},
                   {"grouping", grouping}},
              indent);
}

EntanglementStructure structure_from_json(const std::string& str) {
  const json j = json::parse(str);
  EntanglementStructure s;
  s.graph.vertices = j.at("vertices").get<std::vector<std::string>>();
  for (const auto& e : j.at("edges"))
    s.graph.edges.push_back(
        {e.at("id").get<std::string>(), e.at("vertices").get<std::vector<std::string>>()});
  for (const auto& [id, spec] : j.at("plaquettes").items())
    s.plaquettes.emplace(id, plaquette_from_json(spec));
  for (const auto& [v, slots] : j.at("grouping").items()) {
    std::vector<SlotRef> list;
    for (const auto& slot : slots)
      list.push_back({slot.at(0).get<std::string>(), slot.at(1).get<std::size_t>()});
    s.vertex_slots.emplace(v, list);
  }
  s.validate();
  return s;
}

std::string network_to_json(const PepsNetwork& n, int indent) {
  json sites = json::array();
  for (const auto& s : n.sites)
    sites.push_back(
        {{"id", s.id}, {"tensor", tensor_to_obj(s.tensor)}, {"physical", s.physical}});
  json bonds = json::array();
  for (const auto& b : n.bonds)
    bonds.push_back(json::array({b.site_a, b.leg_a, b.site_b, b.leg_b}));
  json out{{"schedule", n.schedule == Schedule::kSquare ? "square" : "kagome"},
           {"rows", n.rows},
           {"sites", sites},
           {"bonds", bonds}};
  if (n.model_d1 > 0) {
    out["model"] = {{"d1", n.model_d1}, {"d2", n.model_d2}, {"d", n.model_phys}};
  }
  if (n.kagome_dims) {
    out["kagome_dims"] = {{"K", n.kagome_dims->K}, {"D", n.kagome_dims->D},
                          {"d", n.model_phys}};
  }
  return dump(out, indent);
}

PepsNetwork network_from_json(const std::string& str) {
  const json j = json::parse(str);
  PepsNetwork n;
  const std::string schedule = j.at("schedule").get<std::string>();
  if (schedule == "square")
    n.schedule = Schedule::kSquare;
  else if (schedule == "kagome")
    n.schedule = Schedule::kKagome;
  else
    throw std::invalid_argument("unknown schedule '" + schedule + "'");
  n.rows = j.at("rows").get<std::vector<std::vector<std::string>>>();
  for (const auto& s : j.at("sites"))
    n.sites.push_back({s.at("id").get<std::string>(), tensor_from_obj(s.at("tensor")),
                       s.at("physical").get<std::vector<std::string>>()});
  for (const auto& b : j.at("bonds"))
    n.bonds.push_back({b.at(0).get<std::string>(), b.at(1).get<std::string>(),
                       b.at(2).get<std::string>(), b.at(3).get<std::string>()});
  if (j.contains("model")) {
    n.model_d1 = j["model"].at("d1").get<double>();
    n.model_d2 = j["model"].at("d2").get<double>();
    n.model_phys = j["model"].at("d").get<double>();
  }
  if (j.contains("kagome_dims")) {
    KagomeDims kd;
    kd.K = j["kagome_dims"].at("K").get<std::array<double, 3>>();
    kd.D = j["kagome_dims"].at("D").get<std::array<double, 3>>();
    n.kagome_dims = kd;
    n.model_phys = j["kagome_dims"].at("d").get<double>();
  }
  n.validate();
  return n;
}

std::string report_to_json(const ContractionReport& r, int indent) {
  json out{{"value", complex_to_json(r.value)},
           {"discarded_weight", r.total_discarded_weight},
           {"multiply_count", r.multiply_count},
           {"model_cost", r.model_cost},
           {"chi", r.chi},
           {"schedule", r.schedule},
           {"max_bond_reached", r.max_bond_reached}};
  return dump(out, indent);
}

std::string observable_to_json(const ProductObservable& o, int indent) {
  json out = json::object();
  for (const auto& [v, m] : o) out[v] = matrix_to_json(m);
  return dump(out, indent);
}

ProductObservable observable_from_json(const std::string& s) {
  ProductObservable o;
  const json j = json::parse(s);
  for (const auto& [v, m] : j.items()) o.emplace(v, matrix_from_json(m));
  return o;
}

void save_file(const std::string& path, const std::string& contents) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << contents;
  if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

std::string load_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace bordertn::io
