// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bordertn/poly.hpp"
#include "bordertn/structures.hpp"

namespace bordertn {

/// One polynomial map per vertex of a structure.
struct LocalMapFamily {
  std::map<std::string, MatrixPoly> maps;

  std::map<std::string, Matrix> eval(cx eps) const;
  int max_total_exponent() const;  // sum of per-vertex max exponents
  int min_total_exponent() const;  // sum of per-vertex min exponents
};

/// Result of certifying (x)A_v(eps) psi = eps^d (c * phi) + higher orders.
struct DegenerationCertificate {
  int d = 0;  // approximation degree: minimal nonzero exponent
  int e = 0;  // error degree: max exponent - d
  cx proportionality{1.0, 0.0};   // leading term = proportionality * target
  double leading_norm = 0.0;
  DenseTensor leading;
  std::map<int, DenseTensor> residual_terms;  // exponents d+1 .. d+e
  bool cancellation_warning = false;  // actual d exceeded the declared one
};

/// Applies one constant matrix per vertex leg. Identity where absent.
DenseTensor apply_restriction(const DenseTensor& structure_tensor,
                              const std::map<std::string, Matrix>& maps);

/// Symbolically expands the family on `source`, locates the minimal
/// nonzero exponent and checks the leading term against `target` up to a
/// scalar. Throws on zero polynomials or a leading-term mismatch.
DegenerationCertificate analyze_degeneration(const DenseTensor& source,
                                             const LocalMapFamily& family,
                                             const DenseTensor& target,
                                             double tol = kDefaultRankTol,
                                             std::optional<int> declared_d = std::nullopt,
                                             std::size_t budget = kDefaultSymbolicBudget);

/// A certified plaquette-level conversion: per-party maps turning `source`
/// into eps^d * target + O(eps^{d+1}).
struct PlaquetteConversion {
  std::string name;
  PlaquetteSpec source;
  PlaquetteSpec target;
  std::vector<MatrixPoly> party_maps;  // one per party slot
  int d = 0;
  int e = 0;
};

/// The conversion's maps keyed by the plaquette leg names "p.0".."p.m-1".
LocalMapFamily plaquette_family(const PlaquetteConversion& conv);

/// Runs analyze_degeneration on the conversion's own plaquette, checking
/// the declared (d, e) along the way.
DegenerationCertificate certify_plaquette(const PlaquetteConversion& conv,
                                          double tol = kDefaultRankTol);

/// Per-vertex maps for a whole lattice: the Kronecker product of the
/// per-slot maps absorbed by each vertex, face by face. Every plaquette of
/// `target_structure` must match the conversion's target arity.
LocalMapFamily lift_to_lattice(const PlaquetteConversion& conv,
                               const EntanglementStructure& target_structure);

/// The resource structure: same hypergraph with the conversion's source
/// plaquette on every face.
EntanglementStructure source_structure_of(const PlaquetteConversion& conv,
                                          const EntanglementStructure& target_structure);

/// A lifted degeneration bundled with everything Theorem-1 style
/// interpolation needs: the dense resource state, the family, the exponent
/// d_total divided out, and the polynomial degree of T(eps).
struct LiftedDegeneration {
  EntanglementStructure source;
  DenseTensor source_tensor;
  LocalMapFamily family;
  int d_total = 0;
  int degree = 0;
  /// Minimal exponent of the lattice polynomial: certified exactly when
  /// `certified`, the declared d*F otherwise (generic non-cancellation).
  int min_exponent = 0;
  std::size_t faces = 0;
  bool certified = false;  // true when the symbolic expansion was checked
  bool cancellation_warning = false;
};

/// Lifts, and when the symbolic expansion fits the budget also certifies
/// against the dense target structure (actual d_total, actual degree).
LiftedDegeneration lift(const PlaquetteConversion& conv,
                        const EntanglementStructure& target_structure,
                        std::size_t budget = kDefaultSymbolicBudget);

/// Composes the lifted family with constant per-vertex maps B_v, giving the
/// family of T(eps) = eps^{-d} (x)B_v (x)A_v(eps) Psi. Throws if `d` would
/// exceed the family's minimal total exponent (a pole at eps = 0).
LiftedDegeneration compose_with_restriction(const LiftedDegeneration& lifted,
                                            const std::map<std::string, Matrix>& b_maps);

/// T(eps) = eps^{-d_total} (x)family(eps) applied to the source tensor.
DenseTensor evaluate_t(const LiftedDegeneration& lifted, cx eps);

/// The constant maps representing scale * T(eps0) as a restriction of the
/// source structure (scale and eps0^{-d} folded into the first vertex).
std::map<std::string, Matrix> constant_family_at(const LiftedDegeneration& lifted,
                                                 cx eps0, cx scale = cx{1.0, 0.0});

}  // namespace bordertn
