// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bordertn/dense_tensor.hpp"

namespace bordertn {

struct Hypergraph {
  std::vector<std::string> vertices;
  // edge id -> ordered vertex list (party slots in order)
  std::vector<std::pair<std::string, std::vector<std::string>>> edges;

  bool has_vertex(const std::string& v) const;
  const std::vector<std::string>& edge_vertices(const std::string& edge_id) const;
  void validate() const;
};

/// Per-edge plaquette states.
struct PlaquetteSpec {
  struct MaxEntangled { std::size_t dim; };
  struct Ghz { std::size_t parties; std::size_t levels; };
  struct MaMu { std::vector<std::size_t> dims; };  // index dims around the cycle
  struct Lambda {};
  struct Custom { DenseTensor tensor; };  // legs define party count/dims

  std::variant<MaxEntangled, Ghz, MaMu, Lambda, Custom> kind;

  std::size_t party_count() const;
  std::size_t party_dim(std::size_t slot) const;
};

/// GHZ[m](k) = sum_i |i...i> on m legs named "<edge>.0" .. "<edge>.m-1".
/// MaMu legs carry the paired bond indices (i_l, i_{l+1}) row-major.
/// lambda has the antisymmetric entries plus |222>.
DenseTensor make_plaquette(const PlaquetteSpec& spec, const std::string& edge_id);

/// Leg id of party `slot` of edge `edge_id` inside a structure tensor
/// before vertex grouping.
std::string slot_leg_id(const std::string& edge_id, std::size_t slot);

struct SlotRef {
  std::string edge;
  std::size_t slot;
  friend bool operator==(const SlotRef& a, const SlotRef& b) {
    return a.edge == b.edge && a.slot == b.slot;
  }
};

/// Hypergraph + per-edge plaquettes + per-vertex leg grouping.
struct EntanglementStructure {
  Hypergraph graph;
  std::map<std::string, PlaquetteSpec> plaquettes;           // by edge id
  std::map<std::string, std::vector<SlotRef>> vertex_slots;  // by vertex id

  std::size_t vertex_dim(const std::string& v) const;
  std::size_t vertex_degree(const std::string& v) const;
  /// max_v D_v^(1/deg(v)) per the graph/hypergraph definition.
  double bond_dimension() const;
  void validate() const;
};

struct BuiltStructure {
  EntanglementStructure structure;
  DenseTensor tensor;       // legs named by vertex id, dims D_v
  double bond_dimension;
};

/// Tensor product of the plaquettes with legs grouped per vertex.
/// Throws if the dense tensor would exceed `budget` entries.
BuiltStructure build_structure(const Hypergraph& g,
                               const std::map<std::string, PlaquetteSpec>& plaquettes,
                               const std::map<std::string, std::vector<SlotRef>>& grouping,
                               std::size_t budget = 10000000);
BuiltStructure build_structure(const EntanglementStructure& s,
                               std::size_t budget = 10000000);

/// Dense structure tensor only (same as build_structure().tensor).
DenseTensor structure_tensor(const EntanglementStructure& s,
                             std::size_t budget = 10000000);

// ---- canonical lattices -------------------------------------------------

/// Cycle of L maximally entangled pairs of dimension D: Psi_D(C_L).
/// Vertex "v<l>" absorbs (edge l-1, slot 1) then (edge l, slot 0), so its
/// grouped leg carries the pair (i_l, i_{l+1}) and the tensor equals
/// MaMu[L](D) entrywise.
EntanglementStructure cycle_structure(std::size_t L, std::size_t D);

/// Open chain of L-1 pairs on L vertices.
EntanglementStructure path_structure(std::size_t L, std::size_t D);

/// (L+1)x(L+1) vertices, one 4-party GHZ(k) hyperedge per unit square.
/// Vertex ids "x<i>.y<j>", faces "f<i>.<j>" over ((i,j),(i+1,j),(i,j+1),(i+1,j+1)).
EntanglementStructure square_ghz_structure(std::size_t L, std::size_t k);

/// Kagome patch of rows x cols up-triangles with the lambda plaquette on
/// every face. Up-triangle U<r>.<c> has ordered slots
/// (top, bottom-left, bottom-right) on vertices "r<r>.c<c>.{top,bl,br}";
/// the (rows-1)*(cols-1) down-triangles D<r>.<c> have ordered slots
/// (br(r,c), bl(r,c+1), top(r+1,c)). Open boundary; corner vertices keep
/// local dimension 3, vertices shared by two triangles get 9.
EntanglementStructure kagome_lambda_structure(std::size_t rows, std::size_t cols);

/// Same kagome wiring with an arbitrary 3-party plaquette per triangle.
EntanglementStructure kagome_structure(std::size_t rows, std::size_t cols,
                                       const PlaquetteSpec& plaquette);

/// W(L) = sum of the L one-excitation basis states on L qubits,
/// legs "w0".."w<L-1>".
DenseTensor w_state(std::size_t L);

/// GHZ / MaMu plaquettes as standalone states with legs "p0..".
DenseTensor ghz_state(std::size_t parties, std::size_t levels);
DenseTensor mamu_state(const std::vector<std::size_t>& dims);
DenseTensor lambda_state();

}  // namespace bordertn
