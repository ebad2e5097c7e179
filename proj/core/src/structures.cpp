// SPDX-License-Identifier: Apache-2.0
#include "bordertn/structures.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace bordertn {

bool Hypergraph::has_vertex(const std::string& v) const {
  return std::find(vertices.begin(), vertices.end(), v) != vertices.end();
}

const std::vector<std::string>& Hypergraph::edge_vertices(const std::string& edge_id) const {
  for (const auto& [id, vs] : edges)
    if (id == edge_id) return vs;
  throw std::invalid_argument("no edge with id '" + edge_id + "'");
}

void Hypergraph::validate() const {
  std::set<std::string> vset(vertices.begin(), vertices.end());
  if (vset.size() != vertices.size())
    throw std::invalid_argument("duplicate vertex id");
  std::set<std::string> eset;
  for (const auto& [id, vs] : edges) {
    if (!eset.insert(id).second) throw std::invalid_argument("duplicate edge id '" + id + "'");
    std::set<std::string> members;
    for (const auto& v : vs) {
      if (!vset.count(v))
        throw std::invalid_argument("edge '" + id + "' references unknown vertex '" + v + "'");
      if (!members.insert(v).second)
        throw std::invalid_argument("edge '" + id + "' lists vertex '" + v + "' twice");
    }
  }
}

std::size_t PlaquetteSpec::party_count() const {
  if (auto* p = std::get_if<MaxEntangled>(&kind)) return 2;
  if (auto* p = std::get_if<Ghz>(&kind)) return p->parties;
  if (auto* p = std::get_if<MaMu>(&kind)) return p->dims.size();
  if (std::get_if<Lambda>(&kind)) return 3;
  return std::get<Custom>(kind).tensor.rank();
}

std::size_t PlaquetteSpec::party_dim(std::size_t slot) const {
  if (auto* p = std::get_if<MaxEntangled>(&kind)) return p->dim;
  if (auto* p = std::get_if<Ghz>(&kind)) return p->levels;
  if (auto* p = std::get_if<MaMu>(&kind)) {
    const auto& d = p->dims;
    return d[slot] * d[(slot + 1) % d.size()];
  }
  if (std::get_if<Lambda>(&kind)) return 3;
  return std::get<Custom>(kind).tensor.legs()[slot].dim;
}

std::string slot_leg_id(const std::string& edge_id, std::size_t slot) {
  return edge_id + "." + std::to_string(slot);
}

DenseTensor make_plaquette(const PlaquetteSpec& spec, const std::string& edge_id) {
  const std::size_t m = spec.party_count();
  std::vector<Leg> legs;
  for (std::size_t s = 0; s < m; ++s) legs.push_back({slot_leg_id(edge_id, s), spec.party_dim(s)});

  if (auto* p = std::get_if<PlaquetteSpec::MaxEntangled>(&spec.kind)) {
    DenseTensor t(legs);
    for (std::size_t i = 0; i < p->dim; ++i) t.at({i, i}) = 1.0;
    return t;
  }
  if (auto* p = std::get_if<PlaquetteSpec::Ghz>(&spec.kind)) {
    if (p->parties < 1 || p->levels < 1)
      throw std::invalid_argument("GHZ needs parties >= 1 and levels >= 1");
    DenseTensor t(legs);
    std::vector<std::size_t> idx(m);
    for (std::size_t i = 0; i < p->levels; ++i) {
      std::fill(idx.begin(), idx.end(), i);
      t.at(std::span<const std::size_t>(idx)) = 1.0;
    }
    return t;
  }
  if (auto* p = std::get_if<PlaquetteSpec::MaMu>(&spec.kind)) {
    const auto& d = p->dims;
    if (d.size() < 2) throw std::invalid_argument("MaMu needs at least 2 parties");
    for (auto v : d)
      if (v < 1) throw std::invalid_argument("MaMu dims must be >= 1");
    DenseTensor t(legs);
    std::size_t ncombo = 1;
    for (auto v : d) ncombo *= v;
    for (std::size_t flat = 0; flat < ncombo; ++flat) {
      std::vector<std::size_t> i(m);
      std::size_t f = flat;
      for (std::size_t l = m; l-- > 0;) {
        i[l] = f % d[l];
        f /= d[l];
      }
      std::vector<std::size_t> idx(m);
      for (std::size_t l = 0; l < m; ++l) idx[l] = i[l] * d[(l + 1) % m] + i[(l + 1) % m];
      t.at(std::span<const std::size_t>(idx)) = 1.0;
    }
    return t;
  }
  if (std::get_if<PlaquetteSpec::Lambda>(&spec.kind)) {
    DenseTensor t(legs);
    auto set = [&t](std::size_t i, std::size_t j, std::size_t k, double v) {
      t.at({i, j, k}) = v;
    };
    set(0, 1, 2, 1.0);
    set(1, 2, 0, 1.0);
    set(2, 0, 1, 1.0);
    set(0, 2, 1, -1.0);
    set(2, 1, 0, -1.0);
    set(1, 0, 2, -1.0);
    set(2, 2, 2, 1.0);
    return t;
  }
  const auto& c = std::get<PlaquetteSpec::Custom>(spec.kind);
  DenseTensor t = c.tensor;
  for (std::size_t s = 0; s < m; ++s) t = t.renamed(t.legs()[s].id, legs[s].id);
  return t;
}

std::size_t EntanglementStructure::vertex_dim(const std::string& v) const {
  auto it = vertex_slots.find(v);
  if (it == vertex_slots.end())
    throw std::invalid_argument("vertex '" + v + "' has no slot assignment");
  std::size_t d = 1;
  for (const auto& s : it->second) d *= plaquettes.at(s.edge).party_dim(s.slot);
  return d;
}

std::size_t EntanglementStructure::vertex_degree(const std::string& v) const {
  std::size_t deg = 0;
  for (const auto& [id, vs] : graph.edges)
    if (std::find(vs.begin(), vs.end(), v) != vs.end()) ++deg;
  return deg;
}

double EntanglementStructure::bond_dimension() const {
  double best = 0.0;
  for (const auto& v : graph.vertices) {
    const double dv = static_cast<double>(vertex_dim(v));
    const double deg = static_cast<double>(vertex_degree(v));
    if (deg == 0) continue;
    best = std::max(best, std::pow(dv, 1.0 / deg));
  }
  return best;
}

void EntanglementStructure::validate() const {
  graph.validate();
  // every edge has a plaquette of matching arity
  for (const auto& [id, vs] : graph.edges) {
    auto it = plaquettes.find(id);
    if (it == plaquettes.end())
      throw std::invalid_argument("edge '" + id + "' has no plaquette");
    if (it->second.party_count() != vs.size())
      throw std::invalid_argument("plaquette on '" + id + "' has wrong party count");
  }
  // every party slot assigned to exactly one vertex, every vertex nonempty
  std::set<std::pair<std::string, std::size_t>> assigned;
  for (const auto& [v, slots] : vertex_slots) {
    if (!graph.has_vertex(v))
      throw std::invalid_argument("grouping references unknown vertex '" + v + "'");
    for (const auto& s : slots) {
      const auto& vs = graph.edge_vertices(s.edge);
      if (s.slot >= vs.size())
        throw std::invalid_argument("slot out of range on edge '" + s.edge + "'");
      if (vs[s.slot] != v)
        throw std::invalid_argument("slot " + std::to_string(s.slot) + " of edge '" + s.edge +
                                    "' belongs to vertex '" + vs[s.slot] + "', not '" + v + "'");
      if (!assigned.insert({s.edge, s.slot}).second)
        throw std::invalid_argument("slot assigned twice on edge '" + s.edge + "'");
    }
  }
  for (const auto& [id, vs] : graph.edges)
    for (std::size_t s = 0; s < vs.size(); ++s)
      if (!assigned.count({id, s}))
        throw std::invalid_argument("orphan party slot " + std::to_string(s) + " on edge '" + id + "'");
  for (const auto& v : graph.vertices) {
    auto it = vertex_slots.find(v);
    if (it == vertex_slots.end() || it->second.empty())
      throw std::invalid_argument("vertex '" + v + "' absorbs no legs");
  }
}

BuiltStructure build_structure(const Hypergraph& g,
                               const std::map<std::string, PlaquetteSpec>& plaquettes,
                               const std::map<std::string, std::vector<SlotRef>>& grouping,
                               std::size_t budget) {
  EntanglementStructure s{g, plaquettes, grouping};
  return build_structure(s, budget);
}

BuiltStructure build_structure(const EntanglementStructure& s, std::size_t budget) {
  s.validate();
  std::size_t total = 1;
  for (const auto& v : s.graph.vertices) {
    const std::size_t dv = s.vertex_dim(v);
    if (dv != 0 && total > budget / dv)
      throw std::runtime_error("structure tensor exceeds the dense entry budget");
    total *= dv;
  }

  DenseTensor t = DenseTensor::scalar(1.0);
  for (const auto& [id, vs] : s.graph.edges)
    t = outer(t, make_plaquette(s.plaquettes.at(id), id));

  std::vector<std::pair<std::string, std::vector<std::string>>> groups;
  for (const auto& v : s.graph.vertices) {
    std::vector<std::string> members;
    for (const auto& slot : s.vertex_slots.at(v)) members.push_back(slot_leg_id(slot.edge, slot.slot));
    groups.push_back({v, members});
  }
  DenseTensor grouped = group_legs(t, groups);
  return BuiltStructure{s, grouped, s.bond_dimension()};
}

DenseTensor structure_tensor(const EntanglementStructure& s, std::size_t budget) {
  return build_structure(s, budget).tensor;
}

EntanglementStructure cycle_structure(std::size_t L, std::size_t D) {
  if (L < 2) throw std::invalid_argument("cycle needs L >= 2");
  EntanglementStructure s;
  for (std::size_t l = 0; l < L; ++l) s.graph.vertices.push_back("v" + std::to_string(l));
  for (std::size_t l = 0; l < L; ++l) {
    const std::string id = "b" + std::to_string(l);
    s.graph.edges.push_back({id, {s.graph.vertices[l], s.graph.vertices[(l + 1) % L]}});
    s.plaquettes.emplace(id, PlaquetteSpec{PlaquetteSpec::MaxEntangled{D}});
  }
  for (std::size_t l = 0; l < L; ++l) {
    const std::string prev = "b" + std::to_string((l + L - 1) % L);
    const std::string next = "b" + std::to_string(l);
    s.vertex_slots[s.graph.vertices[l]] = {{prev, 1}, {next, 0}};
  }
  return s;
}

EntanglementStructure path_structure(std::size_t L, std::size_t D) {
  if (L < 2) throw std::invalid_argument("path needs L >= 2");
  EntanglementStructure s;
  for (std::size_t l = 0; l < L; ++l) s.graph.vertices.push_back("v" + std::to_string(l));
  for (std::size_t l = 0; l + 1 < L; ++l) {
    const std::string id = "b" + std::to_string(l);
    s.graph.edges.push_back({id, {s.graph.vertices[l], s.graph.vertices[l + 1]}});
    s.plaquettes.emplace(id, PlaquetteSpec{PlaquetteSpec::MaxEntangled{D}});
  }
  for (std::size_t l = 0; l < L; ++l) {
    std::vector<SlotRef> slots;
    if (l > 0) slots.push_back({"b" + std::to_string(l - 1), 1});
    if (l + 1 < L) slots.push_back({"b" + std::to_string(l), 0});
    s.vertex_slots[s.graph.vertices[l]] = slots;
  }
  return s;
}

EntanglementStructure square_ghz_structure(std::size_t L, std::size_t k) {
  if (L < 1) throw std::invalid_argument("square lattice needs L >= 1");
  EntanglementStructure s;
  auto vid = [](std::size_t x, std::size_t y) {
    return "x" + std::to_string(x) + ".y" + std::to_string(y);
  };
  for (std::size_t y = 0; y <= L; ++y)
    for (std::size_t x = 0; x <= L; ++x) s.graph.vertices.push_back(vid(x, y));
  for (std::size_t y = 0; y < L; ++y)
    for (std::size_t x = 0; x < L; ++x) {
      const std::string id = "f" + std::to_string(x) + "." + std::to_string(y);
      s.graph.edges.push_back({id, {vid(x, y), vid(x + 1, y), vid(x, y + 1), vid(x + 1, y + 1)}});
      s.plaquettes.emplace(id, PlaquetteSpec{PlaquetteSpec::Ghz{4, k}});
    }
  for (const auto& [id, vs] : s.graph.edges)
    for (std::size_t slot = 0; slot < vs.size(); ++slot)
      s.vertex_slots[vs[slot]].push_back({id, slot});
  return s;
}

EntanglementStructure kagome_structure(std::size_t rows, std::size_t cols,
                                       const PlaquetteSpec& plaquette) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("kagome patch needs rows, cols >= 1");
  if (plaquette.party_count() != 3)
    throw std::invalid_argument("kagome plaquettes must have 3 parties");
  EntanglementStructure s;
  auto vid = [](std::size_t r, std::size_t c, const char* which) {
    return "r" + std::to_string(r) + ".c" + std::to_string(c) + "." + which;
  };
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      s.graph.vertices.push_back(vid(r, c, "top"));
      s.graph.vertices.push_back(vid(r, c, "bl"));
      s.graph.vertices.push_back(vid(r, c, "br"));
    }
  // upwards triangles
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      const std::string id = "U" + std::to_string(r) + "." + std::to_string(c);
      s.graph.edges.push_back({id, {vid(r, c, "top"), vid(r, c, "bl"), vid(r, c, "br")}});
      s.plaquettes.emplace(id, plaquette);
    }
  // downwards triangles between neighbouring up-triangles of adjacent rows
  for (std::size_t r = 0; r + 1 < rows; ++r)
    for (std::size_t c = 0; c + 1 < cols; ++c) {
      const std::string id = "D" + std::to_string(r) + "." + std::to_string(c);
      s.graph.edges.push_back({id, {vid(r, c, "br"), vid(r, c + 1, "bl"), vid(r + 1, c, "top")}});
      s.plaquettes.emplace(id, plaquette);
    }
  for (const auto& [id, vs] : s.graph.edges)
    for (std::size_t slot = 0; slot < vs.size(); ++slot)
      s.vertex_slots[vs[slot]].push_back({id, slot});
  return s;
}

EntanglementStructure kagome_lambda_structure(std::size_t rows, std::size_t cols) {
  return kagome_structure(rows, cols, PlaquetteSpec{PlaquetteSpec::Lambda{}});
}

DenseTensor w_state(std::size_t L) {
  if (L < 1) throw std::invalid_argument("W state needs L >= 1");
  std::vector<Leg> legs;
  for (std::size_t i = 0; i < L; ++i) legs.push_back({"w" + std::to_string(i), 2});
  DenseTensor t(legs);
  std::vector<std::size_t> idx(L, 0);
  for (std::size_t i = 0; i < L; ++i) {
    idx[i] = 1;
    t.at(std::span<const std::size_t>(idx)) = 1.0;
    idx[i] = 0;
  }
  return t;
}

DenseTensor ghz_state(std::size_t parties, std::size_t levels) {
  return make_plaquette(PlaquetteSpec{PlaquetteSpec::Ghz{parties, levels}}, "p");
}

DenseTensor mamu_state(const std::vector<std::size_t>& dims) {
  return make_plaquette(PlaquetteSpec{PlaquetteSpec::MaMu{dims}}, "p");
}

DenseTensor lambda_state() {
  return make_plaquette(PlaquetteSpec{PlaquetteSpec::Lambda{}}, "p");
}

}  // namespace bordertn
