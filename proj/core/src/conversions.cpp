// SPDX-License-Identifier: Apache-2.0
#include "bordertn/conversions.hpp"

#include <cmath>
#include <stdexcept>

namespace bordertn {

std::map<std::string, Matrix> LocalMapFamily::eval(cx eps) const {
  std::map<std::string, Matrix> out;
  for (const auto& [v, mp] : maps) out.emplace(v, mp.eval(eps));
  return out;
}

int LocalMapFamily::max_total_exponent() const {
  int s = 0;
  for (const auto& [v, mp] : maps) s += mp.max_exponent();
  return s;
}

int LocalMapFamily::min_total_exponent() const {
  int s = 0;
  for (const auto& [v, mp] : maps) s += mp.min_exponent();
  return s;
}

DenseTensor apply_restriction(const DenseTensor& structure_tensor,
                              const std::map<std::string, Matrix>& maps) {
  DenseTensor out = structure_tensor;
  for (const auto& [v, m] : maps) out = apply_local_map(out, v, m);
  return out;
}

DegenerationCertificate analyze_degeneration(const DenseTensor& source,
                                             const LocalMapFamily& family,
                                             const DenseTensor& target,
                                             double tol,
                                             std::optional<int> declared_d,
                                             std::size_t budget) {
  std::vector<std::pair<std::string, MatrixPoly>> maps;
  for (const auto& [v, mp] : family.maps) maps.push_back({v, mp});
  PolyTensor p = poly_apply(source, maps, budget);
  if (p.empty()) throw std::runtime_error("degeneration produced the zero polynomial");

  // terms below tol relative to the largest term are floating-point dust
  // (exact cancellations such as tr(M_0^L) = 0 leave ~1e-16 residue)
  double max_norm = 0.0;
  for (const auto& [e, t] : p.terms()) max_norm = std::max(max_norm, t.norm());
  std::map<int, DenseTensor> significant;
  for (const auto& [e, t] : p.terms())
    if (t.norm() > tol * max_norm) significant.emplace(e, t);
  if (significant.empty())
    throw std::runtime_error("degeneration produced the zero polynomial");

  DegenerationCertificate cert;
  cert.d = significant.begin()->first;
  cert.e = significant.rbegin()->first - cert.d;
  cert.leading = significant.begin()->second;
  cert.leading_norm = cert.leading.norm();
  if (declared_d && cert.d > *declared_d) cert.cancellation_warning = true;
  if (declared_d && cert.d < *declared_d)
    throw std::runtime_error("minimal exponent below the declared approximation degree");

  const double tnorm2 = std::pow(target.norm(), 2.0);
  if (tnorm2 == 0.0) throw std::invalid_argument("target tensor is zero");
  const cx c = inner_product(target, cert.leading) / tnorm2;
  DenseTensor diff = sub(cert.leading, scalar_mul(c, target));
  if (std::abs(c) == 0.0 || diff.norm() > tol * cert.leading_norm)
    throw std::runtime_error("leading term is not proportional to the target");
  cert.proportionality = c;

  for (const auto& [exp, t] : significant)
    if (exp > cert.d) cert.residual_terms.emplace(exp, t);
  return cert;
}

LocalMapFamily plaquette_family(const PlaquetteConversion& conv) {
  LocalMapFamily fam;
  for (std::size_t s = 0; s < conv.party_maps.size(); ++s)
    fam.maps.emplace(slot_leg_id("p", s), conv.party_maps[s]);
  return fam;
}

DegenerationCertificate certify_plaquette(const PlaquetteConversion& conv, double tol) {
  const DenseTensor source = make_plaquette(conv.source, "p");
  const DenseTensor target = make_plaquette(conv.target, "p");
  DegenerationCertificate cert =
      analyze_degeneration(source, plaquette_family(conv), target, tol, conv.d);
  if (cert.e > conv.e)
    throw std::runtime_error("certified error degree exceeds the declared one");
  return cert;
}

LocalMapFamily lift_to_lattice(const PlaquetteConversion& conv,
                               const EntanglementStructure& target_structure) {
  target_structure.validate();
  const std::size_t m = conv.party_maps.size();
  if (m != conv.source.party_count() || m != conv.target.party_count())
    throw std::invalid_argument("party map count does not match plaquette arity");
  for (const auto& [id, vs] : target_structure.graph.edges)
    if (vs.size() != m)
      throw std::invalid_argument("face '" + id + "' has arity " + std::to_string(vs.size()) +
                                  ", conversion expects " + std::to_string(m));
  for (std::size_t s = 0; s < m; ++s) {
    if (static_cast<std::size_t>(conv.party_maps[s].cols()) != conv.source.party_dim(s))
      throw std::invalid_argument("map columns do not match source party dim at slot " +
                                  std::to_string(s));
    if (static_cast<std::size_t>(conv.party_maps[s].rows()) != conv.target.party_dim(s))
      throw std::invalid_argument("map rows do not match target party dim at slot " +
                                  std::to_string(s));
  }

  LocalMapFamily fam;
  for (const auto& v : target_structure.graph.vertices) {
    MatrixPoly acc;
    bool first = true;
    for (const auto& slot : target_structure.vertex_slots.at(v)) {
      const MatrixPoly& mp = conv.party_maps[slot.slot];
      acc = first ? mp : kron(acc, mp);
      first = false;
    }
    fam.maps.emplace(v, acc);
  }
  return fam;
}

EntanglementStructure source_structure_of(const PlaquetteConversion& conv,
                                          const EntanglementStructure& target_structure) {
  EntanglementStructure s = target_structure;
  for (auto& [id, spec] : s.plaquettes) spec = conv.source;
  return s;
}

LiftedDegeneration lift(const PlaquetteConversion& conv,
                        const EntanglementStructure& target_structure,
                        std::size_t budget) {
  LiftedDegeneration out;
  out.source = source_structure_of(conv, target_structure);
  out.source_tensor = structure_tensor(out.source, budget);
  out.family = lift_to_lattice(conv, target_structure);
  out.faces = target_structure.graph.edges.size();
  const int declared_d = conv.d * static_cast<int>(out.faces);
  out.d_total = declared_d;
  out.min_exponent = declared_d;
  out.degree = out.family.max_total_exponent() - out.d_total;

  // certify symbolically when the expansion stays within budget
  std::size_t target_entries = 1;
  bool fits = true;
  for (const auto& v : target_structure.graph.vertices) {
    const std::size_t dv = target_structure.vertex_dim(v);
    if (dv != 0 && target_entries > budget / (dv * (out.degree + 1))) {
      fits = false;
      break;
    }
    target_entries *= dv;
  }
  if (fits) {
    try {
      DenseTensor target = structure_tensor(target_structure, budget);
      DegenerationCertificate cert =
          analyze_degeneration(out.source_tensor, out.family, target, kDefaultRankTol,
                               declared_d, budget);
      out.certified = true;
      out.cancellation_warning = cert.cancellation_warning;
      out.min_exponent = cert.d;
      if (cert.cancellation_warning) {
        out.d_total = cert.d;  // re-certify with the actual minimal exponent
        out.degree = cert.e;
      } else {
        out.degree = cert.d + cert.e - out.d_total;
      }
    } catch (const BudgetExceeded&) {
      // budget blown mid-expansion: fall back to declared bookkeeping
      out.certified = false;
    }
  }
  return out;
}

LiftedDegeneration compose_with_restriction(const LiftedDegeneration& lifted,
                                            const std::map<std::string, Matrix>& b_maps) {
  if (lifted.d_total > lifted.min_exponent)
    throw std::invalid_argument("d exceeds the minimal exponent (pole at eps = 0)");
  LiftedDegeneration out = lifted;
  for (auto& [v, mp] : out.family.maps) {
    auto it = b_maps.find(v);
    if (it != b_maps.end()) mp = mp.left_composed(it->second);
  }
  return out;
}

DenseTensor evaluate_t(const LiftedDegeneration& lifted, cx eps) {
  if (eps == cx{0.0, 0.0}) throw std::invalid_argument("eps must be nonzero");
  DenseTensor t = apply_restriction(lifted.source_tensor, lifted.family.eval(eps));
  return scalar_mul(std::pow(eps, -lifted.d_total), t);
}

std::map<std::string, Matrix> constant_family_at(const LiftedDegeneration& lifted,
                                                 cx eps0, cx scale) {
  if (eps0 == cx{0.0, 0.0}) throw std::invalid_argument("eps must be nonzero");
  std::map<std::string, Matrix> maps = lifted.family.eval(eps0);
  if (maps.empty()) throw std::invalid_argument("empty family");
  maps.begin()->second *= scale * std::pow(eps0, -lifted.d_total);
  return maps;
}

}  // namespace bordertn
