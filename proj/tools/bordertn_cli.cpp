// SPDX-License-Identifier: Apache-2.0
//
// bordertn: entanglement structures, restrictions/degenerations, Lagrange
// interpolation of expectation values, and boundary-MPS contraction.
// All commands read and write JSON; see the README for the formats.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "bordertn/boundary_mps.hpp"
#include "bordertn/interpolation.hpp"
#include "bordertn/io.hpp"
#include "bordertn/zoo.hpp"

using namespace bordertn;
using nlohmann::json;

namespace {

struct ZooEntry {
  std::string name;
  std::string description;
};

const std::vector<ZooEntry> kZoo = {
    {"lambda_restriction_223", "lambda as an exact restriction of MaMu(3,2,2)"},
    {"lambda_restriction_333", "lambda as an exact restriction of MaMu(3,3,3)"},
    {"lambda_degeneration_222", "border-bond-2 degeneration MaMu(2,2,2) -> lambda (d=2, e=2)"},
    {"w_border_mps", "translation-invariant border-bond-2 family for W(L); needs --L"},
    {"diag_mamu_to_ghz", "diagonal MaMu(k1,k2,k3) -> GHZ degeneration; needs --k1 --k2 --k3 [--g]"},
    {"mamu4_to_ghz", "MaMu[4](k) -> GHZ(ceil(k^2/2)) via the cycle system; needs --k"},
};

struct FamilyArgs {
  std::size_t L = 4;
  std::size_t k1 = 2, k2 = 2, k3 = 3;
  std::size_t k = 2;
  std::optional<long long> g;
};

struct NamedConversion {
  PlaquetteConversion conversion;
  json extra = json::object();
};

NamedConversion make_conversion(const std::string& name, const FamilyArgs& args) {
  if (name == "lambda_restriction_223") return {lambda_restriction_223()};
  if (name == "lambda_restriction_333") return {lambda_restriction_333()};
  if (name == "lambda_degeneration_222") return {lambda_degeneration_222()};
  if (name == "w_border_mps") return {w_border_mps(args.L), {{"L", args.L}}};
  if (name == "diag_mamu_to_ghz") {
    const long long g = args.g ? *args.g : best_inhomogeneity_m3(args.k1, args.k2, args.k3);
    DiagonalDegenResult r = diag_mamu_to_ghz(args.k1, args.k2, args.k3, g);
    json extra{{"g", g},
               {"g_zero_based", r.g_zero_based},
               {"ghz_level", r.solutions.ghz_level()},
               {"ghz_equivalent", r.ghz.ok},
               {"solutions", r.solutions.solutions},
               {"index_base", r.solutions.index_base}};
    return {r.conversion, extra};
  }
  if (name == "mamu4_to_ghz") {
    DiagonalDegenResult r = mamu4_to_ghz(args.k);
    json extra{{"g_zero_based", r.g_zero_based},
               {"ghz_level", r.solutions.ghz_level()},
               {"ghz_equivalent", r.ghz.ok},
               {"solutions", r.solutions.solutions},
               {"index_base", r.solutions.index_base}};
    return {r.conversion, extra};
  }
  throw std::invalid_argument("unknown family '" + name + "'; see `bordertn zoo --list`");
}

std::string target_name(const PlaquetteConversion& conv) {
  if (std::get_if<PlaquetteSpec::Lambda>(&conv.target.kind)) return "lambda";
  if (auto* g = std::get_if<PlaquetteSpec::Ghz>(&conv.target.kind))
    return "ghz(" + std::to_string(g->parties) + "," + std::to_string(g->levels) + ")";
  if (conv.name == "w_border_mps") return "w_state";
  return "custom";
}

EntanglementStructure single_face_structure(const PlaquetteSpec& spec) {
  EntanglementStructure s;
  const std::size_t m = spec.party_count();
  std::vector<std::string> vs;
  for (std::size_t i = 0; i < m; ++i) vs.push_back("p." + std::to_string(i));
  s.graph.vertices = vs;
  s.graph.edges = {{"p", vs}};
  s.plaquettes.emplace("p", spec);
  for (std::size_t i = 0; i < m; ++i) s.vertex_slots[vs[i]] = {{"p", i}};
  return s;
}

/// Structure argument: a JSON file path or a builtin descriptor
/// (kagome:R,C | cycle:L,D | path:L,D | square:L,k | face:<family>).
EntanglementStructure parse_structure(const std::string& arg, const FamilyArgs& fargs) {
  if (std::filesystem::exists(arg)) return io::structure_from_json(io::load_file(arg));
  const auto colon = arg.find(':');
  const std::string kind = arg.substr(0, colon);
  std::vector<std::size_t> nums;
  if (colon != std::string::npos && kind != "face") {
    std::string rest = arg.substr(colon + 1);
    std::size_t pos = 0;
    while (pos < rest.size()) {
      std::size_t next = rest.find(',', pos);
      if (next == std::string::npos) next = rest.size();
      nums.push_back(static_cast<std::size_t>(std::stoul(rest.substr(pos, next - pos))));
      pos = next + 1;
    }
  }
  auto need = [&](std::size_t n) {
    if (nums.size() != n)
      throw std::invalid_argument("descriptor '" + arg + "' needs " + std::to_string(n) +
                                  " numbers");
  };
  if (kind == "kagome") {
    need(2);
    return kagome_lambda_structure(nums[0], nums[1]);
  }
  if (kind == "cycle") {
    need(2);
    return cycle_structure(nums[0], nums[1]);
  }
  if (kind == "path") {
    need(2);
    return path_structure(nums[0], nums[1]);
  }
  if (kind == "square") {
    need(2);
    return square_ghz_structure(nums[0], nums[1]);
  }
  if (kind == "face") {
    NamedConversion nc = make_conversion(arg.substr(colon + 1), fargs);
    return single_face_structure(nc.conversion.target);
  }
  throw std::invalid_argument("unknown structure descriptor '" + arg + "'");
}

void emit(const json& j, const std::string& out_path) {
  const std::string text = j.dump(2) + "\n";
  if (out_path.empty())
    std::fputs(text.c_str(), stdout);
  else
    io::save_file(out_path, text);
}

json certificate_json(const DegenerationCertificate& cert) {
  return json::parse(io::certificate_to_json(cert));
}

json plan_json(const InterpolationPlan& plan) {
  json pts = json::array(), ws = json::array();
  for (const auto& p : plan.points) pts.push_back({p.real(), p.imag()});
  for (const auto& w : plan.weights) ws.push_back({w.real(), w.imag()});
  return json{{"degree", plan.degree},
              {"points", pts},
              {"weights", ws},
              {"condition", plan.condition()}};
}

SampleMode parse_mode(const std::string& mode) {
  if (mode == "real") return SampleMode::kReal;
  if (mode == "complex") return SampleMode::kComplex;
  throw std::invalid_argument("--mode must be real or complex");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"border-rank tensor network toolkit"};
  app.require_subcommand(1);

  std::string out_path;
  app.add_option("--out", out_path, "write the JSON report to a file instead of stdout");

  FamilyArgs fargs;
  std::string family, structure_arg, observable_path, mode = "complex";
  double radius = 0.7, tol = kDefaultRankTol;
  std::size_t chi = 0;
  bool exact = false;
  std::uint64_t seed = 0;

  // ---- build ----
  auto* cmd_build = app.add_subcommand("build", "build an entanglement structure");
  std::string build_desc;
  bool build_dense = false;
  cmd_build
      ->add_option("--structure", build_desc,
                   "JSON file or descriptor (kagome:R,C cycle:L,D path:L,D square:L,k)")
      ->required();
  cmd_build->add_flag("--dense", build_dense, "include the dense tensor (desk scale only)");

  // ---- zoo ----
  auto* cmd_zoo = app.add_subcommand("zoo", "list or emit the built-in conversions");
  bool zoo_list = false;
  cmd_zoo->add_flag("--list", zoo_list, "list construction names");
  cmd_zoo->add_option("--family", family, "construction name");
  cmd_zoo->add_option("--L", fargs.L, "cycle length for w_border_mps");
  cmd_zoo->add_option("--k1", fargs.k1, "first MaMu dimension");
  cmd_zoo->add_option("--k2", fargs.k2, "second MaMu dimension");
  cmd_zoo->add_option("--k3", fargs.k3, "third MaMu dimension");
  cmd_zoo->add_option("--k", fargs.k, "uniform MaMu dimension for mamu4_to_ghz");
  long long g_opt = -1;
  cmd_zoo->add_option("--g", g_opt, "inhomogeneity (default: exhaustive scan)");

  // ---- verify ----
  auto* cmd_verify = app.add_subcommand("verify", "certify a conversion");
  cmd_verify->add_option("--family", family, "built-in construction name")->required();
  cmd_verify->add_option("--L", fargs.L, "cycle length for w_border_mps");
  cmd_verify->add_option("--k1", fargs.k1, "first MaMu dimension");
  cmd_verify->add_option("--k2", fargs.k2, "second MaMu dimension");
  cmd_verify->add_option("--k3", fargs.k3, "third MaMu dimension");
  cmd_verify->add_option("--k", fargs.k, "uniform MaMu dimension");
  cmd_verify->add_option("--g", g_opt, "inhomogeneity");
  cmd_verify->add_option("--tol", tol, "certificate tolerance");

  // ---- reconstruct ----
  auto* cmd_rec =
      app.add_subcommand("reconstruct", "Theorem-1 state reconstruction from eF+1 samples");
  cmd_rec->add_option("--family", family, "built-in conversion")->required();
  cmd_rec->add_option("--structure", structure_arg, "target structure (file or descriptor)")
      ->required();
  cmd_rec->add_option("--mode", mode, "real | complex sample points");
  cmd_rec->add_option("--radius", radius, "sample radius");
  cmd_rec->add_option("--L", fargs.L, "cycle length for w_border_mps");
  bool rec_state = false;
  cmd_rec->add_flag("--state", rec_state, "embed the reconstructed tensor");

  // ---- expect ----
  auto* cmd_expect =
      app.add_subcommand("expect", "interpolated expectation value from 2eF+1 contractions");
  cmd_expect->add_option("--family", family, "built-in conversion")->required();
  cmd_expect->add_option("--structure", structure_arg, "target structure")->required();
  cmd_expect->add_option("--observable", observable_path,
                         "product observable JSON (identity if omitted)");
  cmd_expect->add_option("--mode", mode, "real | complex");
  cmd_expect->add_option("--radius", radius, "sample radius");
  cmd_expect->add_option("--L", fargs.L, "cycle length for w_border_mps");

  // ---- contract ----
  auto* cmd_contract = app.add_subcommand("contract", "boundary-MPS contraction");
  std::string net_path, bra_path, gen;
  std::vector<std::size_t> gen_dims;
  cmd_contract->add_option("--network", net_path, "ket network JSON");
  cmd_contract->add_option("--bra", bra_path, "bra network JSON (default: ket)");
  cmd_contract->add_option("--observable", observable_path, "per-site operator JSON");
  cmd_contract->add_option("--chi", chi, "boundary bond dimension (0 = exact)");
  cmd_contract->add_flag("--exact", exact, "skip every truncation");
  cmd_contract->add_option("--seed", seed, "seed for generated networks");
  cmd_contract
      ->add_option("--generate", gen,
                   "builtin network: random-square | random-kagome | rvb-kagome | product")
      ->check(CLI::IsMember({"random-square", "random-kagome", "rvb-kagome", "product"}));
  cmd_contract->add_option("--dims", gen_dims,
                           "generator sizes (square: Lx Ly D1 D2 d; kagome: R C K1 K2 K3 "
                           "D1 D2 D3 d; rvb: R C; product: Lx Ly d)");
  bool with_dense = false;
  cmd_contract->add_flag("--dense-check", with_dense, "also run the dense oracle");

  // ---- cost ----
  auto* cmd_cost = app.add_subcommand("cost", "evaluate the contraction cost model");
  bool cost_square_f = false, cost_kagome_f = false, cost_rvb = false;
  double cD1 = 2, cD2 = 2, cd = 2, cmm = 1, csvd = 1, cchi = 4;
  std::vector<double> kag_up, kag_down;
  std::size_t cost_L = 2, cost_e = 2;
  double cost_D = 2;
  cmd_cost->add_flag("--square", cost_square_f, "square-lattice bulk step");
  cmd_cost->add_flag("--kagome", cost_kagome_f, "kagome bulk step (upper bound)");
  cmd_cost->add_flag("--exact-rvb", cost_rvb, "exact RVB contraction comparison");
  cmd_cost->add_option("--chi", cchi, "boundary MPS bond dimension");
  cmd_cost->add_option("--D1", cD1, "first bond dimension");
  cmd_cost->add_option("--D2", cD2, "second bond dimension");
  cmd_cost->add_option("--d", cd, "physical dimension");
  cmd_cost->add_option("--Cmm", cmm, "matrix-multiply constant");
  cmd_cost->add_option("--Csvd", csvd, "truncated-SVD constant");
  cmd_cost->add_option("--up", kag_up, "kagome ket-layer dims K1 K2 K3 D1 D2 D3");
  cmd_cost->add_option("--down", kag_down, "kagome bra-layer dims (default: ket)");
  cmd_cost->add_option("--L", cost_L, "RVB lattice parameter");
  cmd_cost->add_option("--D", cost_D, "RVB bond dimension");
  cmd_cost->add_option("--e", cost_e, "RVB degeneration error degree");

  // ---- demos ----
  auto* cmd_demo_rvb =
      app.add_subcommand("demo-rvb", "border-bond-2 RVB pipeline on a kagome patch");
  std::size_t rvb_rows = 1, rvb_cols = 2;
  cmd_demo_rvb->add_option("--rows", rvb_rows, "up-triangle rows");
  cmd_demo_rvb->add_option("--cols", rvb_cols, "up-triangle columns");

  auto* cmd_demo_w = app.add_subcommand("demo-w", "W-state border-bond-2 pipeline");
  cmd_demo_w->add_option("--L", fargs.L, "number of qubits");

  for (auto* sub : {cmd_build, cmd_zoo, cmd_verify, cmd_rec, cmd_expect, cmd_contract,
                    cmd_cost, cmd_demo_rvb, cmd_demo_w})
    sub->fallthrough();

  CLI11_PARSE(app, argc, argv);
  if (g_opt >= 0) fargs.g = g_opt;

  try {
    if (*cmd_build) {
      EntanglementStructure s = parse_structure(build_desc, fargs);
      json rep{{"structure", json::parse(io::structure_to_json(s))},
               {"bond_dimension", s.bond_dimension()}};
      json dims = json::object();
      for (const auto& v : s.graph.vertices) dims[v] = s.vertex_dim(v);
      rep["vertex_dims"] = dims;
      if (build_dense) {
        BuiltStructure b = build_structure(s);
        rep["tensor"] = json::parse(io::tensor_to_json(b.tensor));
      }
      emit(rep, out_path);
      return 0;
    }

    if (*cmd_zoo) {
      if (zoo_list || family.empty()) {
        json list = json::array();
        for (const auto& e : kZoo)
          list.push_back({{"name", e.name}, {"description", e.description}});
        emit(json{{"constructions", list}}, out_path);
        return 0;
      }
      NamedConversion nc = make_conversion(family, fargs);
      DegenerationCertificate cert = certify_plaquette(nc.conversion, tol);
      json rep{{"family", family},
               {"source",
                json::parse(io::structure_to_json(single_face_structure(nc.conversion.source)))},
               {"maps", json::parse(io::family_to_json(plaquette_family(nc.conversion)))},
               {"certificate", certificate_json(cert)}};
      for (const auto& [k, v] : nc.extra.items()) rep[k] = v;
      emit(rep, out_path);
      return 0;
    }

    if (*cmd_verify) {
      NamedConversion nc = make_conversion(family, fargs);
      // re-verify before emitting: no unchecked certificates leave the process
      DegenerationCertificate cert = certify_plaquette(nc.conversion, tol);
      json rep{{"family", family},
               {"d", cert.d},
               {"e", cert.e},
               {"leading", target_name(nc.conversion)},
               {"proportionality", {cert.proportionality.real(), cert.proportionality.imag()}},
               {"leading_norm", cert.leading_norm},
               {"certificate", certificate_json(cert)}};
      for (const auto& [k, v] : nc.extra.items()) rep[k] = v;
      emit(rep, out_path);
      return 0;
    }

    if (*cmd_rec) {
      NamedConversion nc = make_conversion(family, fargs);
      EntanglementStructure target = parse_structure(structure_arg, fargs);
      LiftedDegeneration lifted = lift(nc.conversion, target);
      ReconstructionResult r = reconstruct_state(lifted, parse_mode(mode), radius);
      json rep{{"family", family},
               {"faces", lifted.faces},
               {"d_total", lifted.d_total},
               {"degree", lifted.degree},
               {"certified", lifted.certified},
               {"samples", r.plan.points.size()},
               {"plan", plan_json(r.plan)},
               {"norm", r.state.norm()},
               {"holdout_residual", r.holdout_residual}};
      if (rec_state) rep["state"] = json::parse(io::tensor_to_json(r.state));
      emit(rep, out_path);
      return 0;
    }

    if (*cmd_expect) {
      NamedConversion nc = make_conversion(family, fargs);
      EntanglementStructure target = parse_structure(structure_arg, fargs);
      LiftedDegeneration lifted = lift(nc.conversion, target);
      ProductObservable obs;
      if (!observable_path.empty())
        obs = io::observable_from_json(io::load_file(observable_path));
      const SampleMode m = parse_mode(mode);
      ExpectationResult r = (m == SampleMode::kReal) ? expectation_real(lifted, obs, radius)
                                                     : expectation_complex(lifted, obs, radius);
      json per_point = json::array();
      for (const auto& v : r.per_point) per_point.push_back({v.real(), v.imag()});
      json rep{{"family", family},
               {"mode", mode},
               {"value", {r.value.real(), r.value.imag()}},
               {"plan", plan_json(r.plan)},
               {"per_point_values", per_point},
               {"condition_estimate", r.condition},
               {"holdout_residual", r.holdout_residual}};
      emit(rep, out_path);
      return 0;
    }

    if (*cmd_contract) {
      PepsNetwork ket;
      if (!gen.empty()) {
        if (gen == "random-square") {
          if (gen_dims.size() != 5)
            throw std::invalid_argument("--dims Lx Ly D1 D2 d for random-square");
          ket = random_square_network(gen_dims[0], gen_dims[1], gen_dims[2], gen_dims[3],
                                      gen_dims[4], seed);
        } else if (gen == "random-kagome") {
          if (gen_dims.size() != 9)
            throw std::invalid_argument("--dims R C K1 K2 K3 D1 D2 D3 d for random-kagome");
          ket = random_kagome_network(gen_dims[0], gen_dims[1],
                                      {gen_dims[2], gen_dims[3], gen_dims[4]},
                                      {gen_dims[5], gen_dims[6], gen_dims[7]}, gen_dims[8],
                                      seed);
        } else if (gen == "rvb-kagome") {
          if (gen_dims.size() != 2) throw std::invalid_argument("--dims R C for rvb-kagome");
          ket = rvb_kagome_network(gen_dims[0], gen_dims[1]);
        } else {
          if (gen_dims.size() != 3) throw std::invalid_argument("--dims Lx Ly d for product");
          ket = product_square_network(gen_dims[0], gen_dims[1], gen_dims[2], seed);
        }
      } else if (!net_path.empty()) {
        ket = io::network_from_json(io::load_file(net_path));
      } else {
        throw std::invalid_argument("need --network or --generate");
      }
      PepsNetwork bra = bra_path.empty() ? ket : io::network_from_json(io::load_file(bra_path));
      SiteOperators ops;
      if (!observable_path.empty()) {
        ProductObservable po = io::observable_from_json(io::load_file(observable_path));
        for (const auto& [k, v] : po) ops.emplace(k, v);
      }
      const std::size_t chi_eff = exact ? 0 : chi;
      ContractionReport rep = contract_boundary(ket, bra, chi_eff, ops);
      json out = json::parse(io::report_to_json(rep));
      if (with_dense) {
        const cx dense = dense_sandwich(ket, bra, ops);
        out["dense_value"] = {dense.real(), dense.imag()};
        out["dense_relative_error"] =
            std::abs(rep.value - dense) / std::max(1e-300, std::abs(dense));
      }
      emit(out, out_path);
      return 0;
    }

    if (*cmd_cost) {
      CostModel m{cmm, csvd};
      json rep;
      if (cost_square_f) {
        rep = json{{"cost", cost_square(m, cchi, cD1, cD2, cd)}, {"model", "square"}};
      } else if (cost_kagome_f) {
        KagomeDims up;
        if (!kag_up.empty()) {
          if (kag_up.size() != 6) throw std::invalid_argument("--up K1 K2 K3 D1 D2 D3");
          up.K = {kag_up[0], kag_up[1], kag_up[2]};
          up.D = {kag_up[3], kag_up[4], kag_up[5]};
        } else {
          up.K = {cD1, cD2, cD1};
          up.D = {cD1, cD2, cD1};
        }
        KagomeDims down = up;
        if (!kag_down.empty()) {
          if (kag_down.size() != 6) throw std::invalid_argument("--down K1 K2 K3 D1 D2 D3");
          down.K = {kag_down[0], kag_down[1], kag_down[2]};
          down.D = {kag_down[3], kag_down[4], kag_down[5]};
        }
        rep = json{{"cost", cost_kagome(m, cchi, cd, up, down)}, {"model", "kagome"}};
      } else if (cost_rvb) {
        const double restr3 = cost_exact_rvb_restriction(cost_L, 3.0, cd);
        const double degen = cost_exact_rvb_degeneration(cost_L, cost_D, cd, cost_e);
        rep = json{{"model", "exact-rvb"},
                   {"L", cost_L},
                   {"restriction_cost_D", cost_exact_rvb_restriction(cost_L, cost_D, cd)},
                   {"restriction_cost_D3", restr3},
                   {"degeneration_cost", degen},
                   {"ratio_D3_over_degeneration", restr3 / degen}};
      } else {
        throw std::invalid_argument("pick one of --square, --kagome, --exact-rvb");
      }
      emit(rep, out_path);
      return 0;
    }

    if (*cmd_demo_rvb) {
      EntanglementStructure target = kagome_lambda_structure(rvb_rows, rvb_cols);
      const PlaquetteConversion conv = lambda_degeneration_222();
      DegenerationCertificate cert = certify_plaquette(conv);
      LiftedDegeneration lifted = lift(conv, target);
      ReconstructionResult rec = reconstruct_state(lifted);

      DenseTensor dense = structure_tensor(target);
      const double rec_err = sub(rec.state, dense).norm() / dense.norm();

      ExpectationResult ev = expectation_complex(lifted, {});
      PepsNetwork rvb = rvb_kagome_network(rvb_rows, rvb_cols);
      ContractionReport bmps = contract_kagome(rvb, rvb, 0);
      const double norm_err =
          std::abs(ev.value - bmps.value) / std::max(1e-300, std::abs(bmps.value));

      json rep{{"faces", lifted.faces},
               {"plaquette_certificate", certificate_json(cert)},
               {"d_total", lifted.d_total},
               {"degree", lifted.degree},
               {"samples_state", rec.plan.points.size()},
               {"samples_expectation", ev.plan.points.size()},
               {"reconstruction_relative_error", rec_err},
               {"norm_sq_interpolated", {ev.value.real(), ev.value.imag()}},
               {"norm_sq_boundary_mps", {bmps.value.real(), bmps.value.imag()}},
               {"norm_cross_check_relative_error", norm_err},
               {"cost_ratio_bond3_vs_border2",
                cost_exact_rvb_restriction(4, 3.0, 2.0) /
                    cost_exact_rvb_degeneration(4, 2.0, 2.0, 2)}};
      emit(rep, out_path);
      return 0;
    }

    if (*cmd_demo_w) {
      const std::size_t L = fargs.L;
      const PlaquetteConversion conv = w_border_mps(L);
      DegenerationCertificate cert = certify_plaquette(conv);
      LiftedDegeneration lifted = lift(conv, single_face_structure(conv.target));
      ReconstructionResult rec = reconstruct_state(lifted);
      DenseTensor w = w_state(L);
      for (std::size_t i = 0; i < L; ++i)
        w = w.renamed("w" + std::to_string(i), "p." + std::to_string(i));
      const double err = sub(rec.state, w).norm() / w.norm();

      json rep{{"L", L},
               {"certificate", certificate_json(cert)},
               {"trace_m0_pow_L_exactly_zero", w_mps_trace(L, L, 0).exactly_zero},
               {"samples", rec.plan.points.size()},
               {"reconstruction_relative_error", err}};
      emit(rep, out_path);
      return 0;
    }
  } catch (const std::exception& e) {
    json err{{"error", e.what()}};
    std::fputs((err.dump(2) + "\n").c_str(), stderr);
    return 1;
  }
  return 1;
}
