// SPDX-License-Identifier: Apache-2.0
#include "bordertn/boundary_mps.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

#include "bordertn/zoo.hpp"

namespace bordertn {

const PepsSite& PepsNetwork::site(const std::string& id) const {
  for (const auto& s : sites)
    if (s.id == id) return s;
  throw std::invalid_argument("no site with id '" + id + "'");
}

std::size_t PepsNetwork::row_of(const std::string& id) const {
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto& s : rows[r])
      if (s == id) return r;
  throw std::invalid_argument("site '" + id + "' is not in any row");
}

void PepsNetwork::validate() const {
  std::set<std::string> in_rows;
  for (const auto& row : rows)
    for (const auto& s : row) {
      if (!in_rows.insert(s).second)
        throw std::invalid_argument("site '" + s + "' listed twice in rows");
      site(s);
    }
  for (const auto& s : sites)
    if (!in_rows.count(s.id))
      throw std::invalid_argument("site '" + s.id + "' missing from rows");

  // each non-physical leg is covered by exactly one bond
  std::map<std::pair<std::string, std::string>, int> covered;
  for (const auto& b : bonds) {
    const auto& sa = site(b.site_a);
    const auto& sb = site(b.site_b);
    if (sa.tensor.leg(b.leg_a).dim != sb.tensor.leg(b.leg_b).dim)
      throw std::invalid_argument("bond dimension mismatch between '" + b.site_a + "' and '" +
                                  b.site_b + "'");
    const std::size_t ra = row_of(b.site_a), rb = row_of(b.site_b);
    const std::size_t dist = ra > rb ? ra - rb : rb - ra;
    if (dist > 1)
      throw std::invalid_argument("bond between non-adjacent rows is not sweepable");
    ++covered[{b.site_a, b.leg_a}];
    ++covered[{b.site_b, b.leg_b}];
  }
  for (const auto& [key, n] : covered)
    if (n != 1)
      throw std::invalid_argument("leg '" + key.second + "' of site '" + key.first +
                                  "' covered by several bonds");
  for (const auto& s : sites) {
    std::set<std::string> phys(s.physical.begin(), s.physical.end());
    for (const auto& l : s.tensor.legs()) {
      const bool is_phys = phys.count(l.id) > 0;
      const bool is_bonded = covered.count({s.id, l.id}) > 0;
      if (is_phys == is_bonded)
        throw std::invalid_argument("leg '" + l.id + "' of site '" + s.id +
                                    "' must be either physical or bonded");
    }
  }
}

// ---- cost model -------------------------------------------------------------

double cost_square(const CostModel& m, double chi, double d1, double d2, double d) {
  return (m.c_mm + m.c_svd) * chi * chi * chi * d1 * d1 * d2 * d2 +
         2.0 * m.c_mm * chi * chi * d1 * d1 * d1 * d2 * d2 * d2 * d;
}

double cost_kagome(const CostModel& m, double chi, double d, const KagomeDims& up,
                   const KagomeDims& down) {
  const double K1 = up.K[0], K2 = up.K[1], K3 = up.K[2];
  const double D1 = up.D[0], D2 = up.D[1], D3 = up.D[2];
  const double k1 = down.K[0], k2 = down.K[1], k3 = down.K[2];
  const double d1 = down.D[0], d2 = down.D[1], d3 = down.D[2];
  const double chi2 = chi * chi, chi3 = chi2 * chi;

  const double svd_term = std::max({D1 * d1 * D2 * d2, D3 * d3 * K2 * k2, K1 * k1 * K3 * k3});
  const double mm_term = std::max({K2 * k2 * K3 * k3, D1 * d1 * K1 * k1, D2 * d2 * D3 * d3});
  const double step1 = K2 * k2 * K3 * k3 * D1 * D2 + k2 * k3 * D1 * d1 * D2 * d2;
  const double step2 = D1 * d1 * K1 * k1 * D3 * K2 + d1 * k1 * D3 * d3 * K2 * k2;
  const double step3 = D2 * d2 * D3 * d3 * K1 * K3 + d2 * d3 * K1 * k1 * K3 * k3;
  const double phys_term = std::max({step1, step2, step3});

  return m.c_svd * chi3 * svd_term + m.c_mm * chi3 * mm_term + m.c_mm * chi2 * d * phys_term;
}

double cost_exact_rvb_restriction(std::size_t L, double D, double d) {
  const double D4 = std::pow(D, 4.0);
  const double geom = (std::pow(D4, static_cast<double>(L)) - 1.0) / (D4 - 1.0);
  return 2.0 * (static_cast<double>(L) + 1.0) * geom * std::pow(D, 10.0) * d;
}

double cost_exact_rvb_degeneration(std::size_t L, double D, double d, std::size_t e) {
  return (2.0 * static_cast<double>(e) * static_cast<double>(L) + 1.0) *
         cost_exact_rvb_restriction(L, D, d);
}

// ---- boundary-MPS engine ----------------------------------------------------

namespace {

std::string bond_key(const PepsBond& b) {
  const std::string a = b.site_a + "|" + b.leg_a;
  const std::string c = b.site_b + "|" + b.leg_b;
  return a < c ? a + "~" + c : c + "~" + a;
}

struct PreparedSite {
  std::string id;
  DenseTensor ket;  // virtual legs renamed to "<bond>:k", physical to "p|<site>|<i>"
  DenseTensor bra;  // conjugated, virtual legs "<bond>:b", same physical ids
  std::vector<std::string> phys_ids;
  std::vector<std::string> consume_bonds;  // bond keys toward the previous row
  std::vector<std::string> emit_bonds;     // ordered left-to-right
  std::vector<std::string> left_bonds, right_bonds;
};

struct PreparedNetwork {
  std::vector<std::vector<PreparedSite>> rows;
};

/// Builds the sweep plan for `order` = processing order of row indices.
PreparedNetwork prepare(const PepsNetwork& ket_net, const PepsNetwork& bra_net,
                        const SiteOperators& ops, const std::vector<std::size_t>& order) {
  // bonds must have identical topology in the two layers (dims may differ)
  std::set<std::string> ket_keys, bra_keys;
  for (const auto& b : ket_net.bonds) ket_keys.insert(bond_key(b));
  for (const auto& b : bra_net.bonds) bra_keys.insert(bond_key(b));
  if (ket_keys != bra_keys)
    throw std::invalid_argument("ket and bra layers have different bond topology");

  std::map<std::size_t, std::size_t> pos_in_order;
  for (std::size_t i = 0; i < order.size(); ++i) pos_in_order[order[i]] = i;

  // site id -> (row, index within row)
  std::map<std::string, std::pair<std::size_t, std::size_t>> location;
  for (std::size_t r = 0; r < ket_net.rows.size(); ++r)
    for (std::size_t i = 0; i < ket_net.rows[r].size(); ++i)
      location[ket_net.rows[r][i]] = {r, i};

  struct BondRef {
    std::string key;
    std::string partner;
    std::string ket_leg, bra_leg;
  };
  std::map<std::string, std::vector<BondRef>> by_site;
  std::map<std::string, std::pair<std::string, std::string>> bra_leg_of;  // key -> (site, leg)
  for (const auto& b : bra_net.bonds) {
    bra_leg_of[bond_key(b) + "@" + b.site_a] = {b.site_a, b.leg_a};
    bra_leg_of[bond_key(b) + "@" + b.site_b] = {b.site_b, b.leg_b};
  }
  for (const auto& b : ket_net.bonds) {
    const std::string key = bond_key(b);
    auto bra_a = bra_leg_of.find(key + "@" + b.site_a);
    auto bra_b = bra_leg_of.find(key + "@" + b.site_b);
    if (bra_a == bra_leg_of.end() || bra_b == bra_leg_of.end())
      throw std::invalid_argument("bra layer misses bond '" + key + "'");
    by_site[b.site_a].push_back({key, b.site_b, b.leg_a, bra_a->second.second});
    by_site[b.site_b].push_back({key, b.site_a, b.leg_b, bra_b->second.second});
  }

  PreparedNetwork out;
  out.rows.resize(order.size());
  for (std::size_t oi = 0; oi < order.size(); ++oi) {
    const std::size_t r = order[oi];
    for (const auto& sid : ket_net.rows[r]) {
      PreparedSite ps;
      ps.id = sid;
      const PepsSite& ks = ket_net.site(sid);
      const PepsSite& bs = bra_net.site(sid);
      if (ks.physical.size() != bs.physical.size())
        throw std::invalid_argument("physical leg count differs on site '" + sid + "'");

      DenseTensor kt = ks.tensor;
      DenseTensor bt = bs.tensor.conj();
      for (std::size_t i = 0; i < ks.physical.size(); ++i) {
        const std::string pid = "p|" + sid + "|" + std::to_string(i);
        if (kt.leg(ks.physical[i]).dim != bt.leg(bs.physical[i]).dim)
          throw std::invalid_argument("physical dimension mismatch on site '" + sid + "'");
        kt = kt.renamed(ks.physical[i], pid);
        bt = bt.renamed(bs.physical[i], pid + "'");
        ps.phys_ids.push_back(pid);
      }
      // operator overlay on the ket physical space
      auto op = ops.find(sid);
      if (op != ops.end()) {
        std::vector<std::string> members;
        std::vector<Leg> parts;
        for (const auto& pid : ps.phys_ids) {
          members.push_back(pid);
          parts.push_back(kt.leg(pid));
        }
        DenseTensor g = group_legs(kt, [&] {
          std::vector<std::pair<std::string, std::vector<std::string>>> groups;
          groups.push_back({"_phys", members});
          for (const auto& l : kt.legs())
            if (std::find(members.begin(), members.end(), l.id) == members.end())
              groups.push_back({l.id, {l.id}});
          return groups;
        }());
        g = apply_local_map(g, "_phys", op->second);
        kt = split_leg(g, "_phys", parts);
      }

      std::vector<BondRef> refs = by_site.count(sid) ? by_site[sid] : std::vector<BondRef>{};
      for (const auto& ref : refs) {
        kt = kt.renamed(ref.ket_leg, ref.key + ":k");
        bt = bt.renamed(ref.bra_leg, ref.key + ":b");
        const auto [pr, pi] = location.at(ref.partner);
        const auto [sr, si] = location.at(sid);
        if (pr == sr) {
          if (pi < si)
            ps.left_bonds.push_back(ref.key);
          else
            ps.right_bonds.push_back(ref.key);
        } else if (pos_in_order.count(pr) == 0) {
          // partner lies beyond the meeting cut of this sweep
          ps.emit_bonds.push_back(ref.key);
        } else if (pos_in_order.at(pr) < pos_in_order.at(sr)) {
          ps.consume_bonds.push_back(ref.key);
        } else {
          ps.emit_bonds.push_back(ref.key);
        }
      }
      // emissions ordered by the partner's position within its row
      std::sort(ps.emit_bonds.begin(), ps.emit_bonds.end(),
                [&](const std::string& a, const std::string& b2) {
                  auto partner_pos = [&](const std::string& key) {
                    for (const auto& ref : refs)
                      if (ref.key == key) return location.at(ref.partner).second;
                    return std::size_t{0};
                  };
                  const auto pa = partner_pos(a), pb = partner_pos(b2);
                  return pa != pb ? pa < pb : a < b2;
                });
      ps.ket = kt;
      ps.bra = bt;
      out.rows[oi].push_back(std::move(ps));
    }
  }
  return out;
}

struct MpsPos {
  DenseTensor t;
  std::string lb, rb;
  std::string bond;           // network bond key carried by this position
  std::string open_k, open_b;
};

struct Carry {
  DenseTensor t;
  std::string lb, rb;
  std::vector<std::pair<std::string, std::string>> pending_k, pending_b;  // (bond key, leg id)
};

struct Engine {
  std::size_t chi = 0;  // 0 = exact
  double discarded = 0.0;
  std::size_t max_bond = 1;
  std::size_t absorbed = 0;
  std::size_t fresh_counter = 0;
  cx scalar_accum{1.0, 0.0};

  std::string fresh(const char* base) {
    return std::string("_") + base + std::to_string(fresh_counter++);
  }

  void track_bond(std::size_t d) { max_bond = std::max(max_bond, d); }

  /// Right-canonicalizes the boundary MPS with exact LQ factorizations, so
  /// each truncation SVD during the next absorption sees a canonical right
  /// environment and discards the locally optimal weight.
  void canonicalize_right(std::vector<MpsPos>& mps) {
    flops::CatScope cat(flops::Cat::canon);
    using RowMat = Eigen::Matrix<cx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    for (std::size_t i = mps.size(); i-- > 1;) {
      MpsPos& p = mps[i];
      std::vector<std::string> order{p.lb};
      for (const auto& l : p.t.legs())
        if (l.id != p.lb) order.push_back(l.id);
      DenseTensor perm = p.t.permuted(order);
      const std::size_t m = perm.legs()[0].dim;
      const std::size_t n = perm.size() / m;
      Matrix mat(m, n);
      mat = Eigen::Map<const RowMat>(perm.data().data(), m, n);

      // M = L Q via the QR of M^dagger
      Eigen::HouseholderQR<Matrix> qr(mat.adjoint());
      const std::size_t r = std::min(m, n);
      flops::add(static_cast<std::uint64_t>(2 * n * r * r));
      Matrix thin_q = qr.householderQ() * Matrix::Identity(static_cast<Eigen::Index>(n),
                                                           static_cast<Eigen::Index>(r));
      Matrix lfac = qr.matrixQR()
                        .topRows(static_cast<Eigen::Index>(r))
                        .triangularView<Eigen::Upper>();
      lfac.adjointInPlace();  // m x r

      std::vector<Leg> q_legs{{p.lb, r}};
      for (std::size_t j = 1; j < perm.rank(); ++j) q_legs.push_back(perm.legs()[j]);
      DenseTensor q(q_legs);
      Eigen::Map<RowMat>(q.data().data(), r, n) = thin_q.adjoint();
      p.t = q;

      const std::string tmp = fresh("q");
      DenseTensor l_t(std::vector<Leg>{{tmp, m}, {p.lb, r}});
      Eigen::Map<RowMat>(l_t.data().data(), m, r) = lfac;
      MpsPos& left = mps[i - 1];
      left.t = contract(left.t, l_t, {{left.rb, tmp}});
      // the shared bond keeps its id, now of dimension r
    }
  }

  void absorb_row(std::vector<MpsPos>& mps, const std::vector<PreparedSite>& row) {
    std::vector<MpsPos> out;
    std::size_t cursor = 0;

    Carry carry;
    const std::string lb0 = fresh("t"), rb0 = fresh("t");
    carry.t = DenseTensor(std::vector<Leg>{{lb0, 1}, {rb0, 1}});
    carry.t.data()[0] = 1.0;
    carry.lb = lb0;
    carry.rb = rb0;
    bool carry_linked = false;  // whether carry.rb is the bond into mps[cursor]

    for (const auto& site : row) {
      ++absorbed;
      // 1) gather the contiguous frontier segment belonging to this site
      std::set<std::string> want(site.consume_bonds.begin(), site.consume_bonds.end());
      std::vector<std::tuple<std::string, std::string, std::string>> consumed;  // key, ok, ob
      {
        flops::CatScope cat(flops::Cat::gather);
        while (consumed.size() < want.size()) {
          if (cursor >= mps.size())
            throw std::runtime_error("frontier exhausted while absorbing '" + site.id + "'");
          const MpsPos& p = mps[cursor];
          if (!want.count(p.bond))
            throw std::runtime_error("non-contiguous frontier consumption at '" + site.id + "'");
          if (!carry_linked) {
            // splice the trivial carry onto the left terminator of this position
            carry.t = carry.t.renamed(carry.rb, p.lb);
            carry.rb = p.lb;
            carry_linked = true;
          }
          carry.t = contract(carry.t, p.t, {{carry.rb, p.lb}});
          carry.rb = p.rb;
          consumed.push_back({p.bond, p.open_k, p.open_b});
          ++cursor;
        }
      }

      // 2) ket absorb
      {
        flops::CatScope cat(flops::Cat::ket);
        std::vector<std::pair<std::string, std::string>> pairs;
        for (const auto& [key, ok, ob] : consumed) pairs.push_back({ok, key + ":k"});
        for (const auto& key : site.left_bonds) {
          auto it = std::find_if(carry.pending_k.begin(), carry.pending_k.end(),
                                 [&](const auto& p) { return p.first == key; });
          if (it == carry.pending_k.end())
            throw std::runtime_error("missing pending ket bond '" + key + "'");
          pairs.push_back({it->second, key + ":k"});
          carry.pending_k.erase(it);
        }
        carry.t = contract(carry.t, site.ket, pairs);
      }
      // 3) bra absorb (closes the physical indices)
      {
        flops::CatScope cat(flops::Cat::bra);
        std::vector<std::pair<std::string, std::string>> pairs;
        for (const auto& [key, ok, ob] : consumed) pairs.push_back({ob, key + ":b"});
        for (const auto& key : site.left_bonds) {
          auto it = std::find_if(carry.pending_b.begin(), carry.pending_b.end(),
                                 [&](const auto& p) { return p.first == key; });
          if (it == carry.pending_b.end())
            throw std::runtime_error("missing pending bra bond '" + key + "'");
          pairs.push_back({it->second, key + ":b"});
          carry.pending_b.erase(it);
        }
        for (const auto& pid : site.phys_ids) pairs.push_back({pid, pid + "'"});
        carry.t = contract(carry.t, site.bra, pairs);
      }
      for (const auto& key : site.right_bonds) {
        carry.pending_k.push_back({key, key + ":k"});
        carry.pending_b.push_back({key, key + ":b"});
      }

      // 4) emit new MPS positions, SVD-compressing in truncated mode; the
      // zip-up works at a doubled cut, the final canonical sweep truncates
      // to chi with locally optimal discards
      for (std::size_t j = 0; j < site.emit_bonds.size(); ++j) {
        const std::string& key = site.emit_bonds[j];
        const std::string ok = key + ":k", ob = key + ":b";
        if (chi > 0) {
          flops::CatScope cat(flops::Cat::svd);
          const std::string nb = fresh("m");
          SvdResult r = svd_truncate(carry.t, {carry.lb, ok, ob}, 2 * chi, nb);
          discarded += r.discarded_weight;
          track_bond(r.u.leg(nb).dim);
          out.push_back({r.u, carry.lb, nb, key, ok, ob});
          carry.t = r.sv;
          carry.lb = nb;
        } else {
          // exact mode: no SVD, split off the position by regrouping and a
          // copy tensor on the fused remainder
          std::vector<std::pair<std::string, std::vector<std::string>>> groups;
          groups.push_back({carry.lb, {carry.lb}});
          groups.push_back({ok, {ok}});
          groups.push_back({ob, {ob}});
          const std::string nb = fresh("m");
          std::vector<std::string> rest;
          std::vector<Leg> rest_legs;
          for (const auto& l : carry.t.legs())
            if (l.id != carry.lb && l.id != ok && l.id != ob) {
              rest.push_back(l.id);
              rest_legs.push_back(l);
            }
          groups.push_back({nb, rest});
          DenseTensor grouped = group_legs(carry.t, groups);
          const std::size_t fdim = grouped.leg(nb).dim;
          track_bond(fdim);
          out.push_back({grouped, carry.lb, nb, key, ok, ob});

          DenseTensor delta(std::vector<Leg>{{nb, fdim}, {"_tmp", fdim}});
          for (std::size_t i = 0; i < fdim; ++i) delta.at({i, i}) = 1.0;
          carry.t = split_leg(delta, "_tmp", rest_legs);
          carry.lb = nb;
        }
      }
    }

    if (cursor != mps.size())
      throw std::runtime_error("row finished with unconsumed frontier positions");
    if (!carry.pending_k.empty() || !carry.pending_b.empty())
      throw std::runtime_error("row finished with dangling horizontal bonds");

    if (out.empty()) {
      // fully scalar row (no emissions); fold its value and keep the frontier empty
      cx v{0.0, 0.0};
      for (const auto& x : carry.t.data()) v += x;
      scalar_accum *= v;
      mps.clear();
      return;
    }
    // fold the carry remainder into the last position
    {
      flops::CatScope cat(flops::Cat::gather);
      MpsPos& last = out.back();
      last.t = contract(last.t, carry.t, {{last.rb, carry.lb}});
      last.rb = carry.rb;
    }
    if (chi > 0 && out.size() > 1) truncation_sweep(out);
    mps = std::move(out);
  }

  /// One canonical left-to-right truncation pass down to chi.
  void truncation_sweep(std::vector<MpsPos>& mps) {
    canonicalize_right(mps);
    flops::CatScope cat(flops::Cat::svd);
    for (std::size_t i = 0; i + 1 < mps.size(); ++i) {
      MpsPos& p = mps[i];
      if (p.t.leg(p.rb).dim <= chi) continue;
      SvdResult r = svd_truncate(p.t, {p.lb, p.open_k, p.open_b}, chi, p.rb + "'");
      discarded += r.discarded_weight;
      MpsPos& next = mps[i + 1];
      next.t = contract(r.sv, next.t, {{p.rb, p.rb}});
      p.t = r.u.renamed(p.rb + "'", p.rb);
      next.t = next.t.renamed(p.rb + "'", p.rb);
      next.lb = p.rb;
      track_bond(p.t.leg(p.rb).dim);
    }
  }

  cx zip(const std::vector<MpsPos>& top, const std::vector<MpsPos>& bottom) {
    if (top.size() != bottom.size())
      throw std::runtime_error("boundary MPSs meet with different frontier sizes");
    flops::CatScope cat(flops::Cat::zip);
    DenseTensor x = DenseTensor::scalar(1.0);
    std::string top_rb, bot_rb;
    for (std::size_t i = 0; i < top.size(); ++i) {
      if (top[i].bond != bottom[i].bond)
        throw std::runtime_error("boundary MPSs meet with misaligned bonds");
      x = contract(x, top[i].t,
                   i == 0 ? std::vector<std::pair<std::string, std::string>>{}
                          : std::vector<std::pair<std::string, std::string>>{{top_rb, top[i].lb}});
      std::vector<std::pair<std::string, std::string>> pairs{{top[i].open_k, bottom[i].open_k},
                                                             {top[i].open_b, bottom[i].open_b}};
      if (i > 0) pairs.push_back({bot_rb, bottom[i].lb});
      x = contract(x, bottom[i].t, pairs);
      top_rb = top[i].rb;
      bot_rb = bottom[i].rb;
    }
    cx v{0.0, 0.0};
    for (const auto& d : x.data()) v += d;  // remaining terminator legs all have dim 1
    return v;
  }
};

}  // namespace

ContractionReport contract_boundary(const PepsNetwork& ket, const PepsNetwork& bra,
                                    std::size_t chi, const SiteOperators& ops) {
  ket.validate();
  bra.validate();
  if (ket.rows.size() != bra.rows.size())
    throw std::invalid_argument("layer row counts differ");
  for (std::size_t r = 0; r < ket.rows.size(); ++r)
    if (ket.rows[r] != bra.rows[r]) throw std::invalid_argument("layer row contents differ");
  if (ket.rows.empty()) throw std::invalid_argument("empty network");

  const std::size_t n = ket.rows.size();
  const std::size_t mid = (n - 1) / 2;
  std::vector<std::size_t> top_order, bottom_order;
  for (std::size_t r = 0; r <= mid; ++r) top_order.push_back(r);
  for (std::size_t r = n; r-- > mid + 1;) bottom_order.push_back(r);

  const flops::Counts before = flops::snapshot();
  Engine eng;
  eng.chi = chi;

  PreparedNetwork top_net = prepare(ket, bra, ops, top_order);
  std::vector<MpsPos> top_mps;
  for (const auto& row : top_net.rows) eng.absorb_row(top_mps, row);

  cx value;
  if (bottom_order.empty()) {
    if (!top_mps.empty())
      throw std::runtime_error("single-sweep contraction left open frontier positions");
    value = eng.scalar_accum;
  } else {
    PreparedNetwork bot_net = prepare(ket, bra, ops, bottom_order);
    std::vector<MpsPos> bot_mps;
    for (const auto& row : bot_net.rows) eng.absorb_row(bot_mps, row);
    value = eng.zip(top_mps, bot_mps) * eng.scalar_accum;
  }

  ContractionReport rep;
  rep.value = value;
  rep.total_discarded_weight = eng.discarded;
  rep.counts = flops::snapshot() - before;
  rep.multiply_count = rep.counts.total();
  rep.chi = chi;
  rep.max_bond_reached = eng.max_bond;
  rep.schedule = ket.schedule == Schedule::kSquare ? "square" : "kagome";

  // model cost: per-MPO-tensor bulk bound times the number of absorbed
  // tensors beyond the two initial boundary rows
  std::size_t bulk_sites = 0;
  for (std::size_t r = 1; r + 1 < n; ++r) bulk_sites += ket.rows[r].size();
  const double chi_eff = static_cast<double>(chi > 0 ? chi : eng.max_bond);
  CostModel cm;
  if (ket.schedule == Schedule::kSquare && ket.model_d1 > 0) {
    rep.model_cost = static_cast<double>(bulk_sites) *
                     cost_square(cm, chi_eff, ket.model_d1, ket.model_d2, ket.model_phys);
  } else if (ket.schedule == Schedule::kKagome && ket.kagome_dims && bra.kagome_dims) {
    rep.model_cost = static_cast<double>(bulk_sites) *
                     cost_kagome(cm, chi_eff, ket.model_phys, *ket.kagome_dims, *bra.kagome_dims);
  }
  rep.absorbed_sites = eng.absorbed;
  return rep;
}

ContractionReport contract_square(const PepsNetwork& ket, const PepsNetwork& bra,
                                  std::size_t chi, const SiteOperators& ops) {
  if (ket.schedule != Schedule::kSquare) throw std::invalid_argument("not a square network");
  return contract_boundary(ket, bra, chi, ops);
}

ContractionReport contract_kagome(const PepsNetwork& ket, const PepsNetwork& bra,
                                  std::size_t chi, const SiteOperators& ops) {
  if (ket.schedule != Schedule::kKagome) throw std::invalid_argument("not a kagome network");
  return contract_boundary(ket, bra, chi, ops);
}

cx dense_sandwich(const PepsNetwork& ket, const PepsNetwork& bra, const SiteOperators& ops) {
  ket.validate();
  bra.validate();

  auto fold = [](const PepsNetwork& net, const SiteOperators& site_ops) {
    std::map<std::pair<std::string, std::string>, std::string> leg_to_bond;
    for (const auto& b : net.bonds) {
      leg_to_bond[{b.site_a, b.leg_a}] = bond_key(b);
      leg_to_bond[{b.site_b, b.leg_b}] = bond_key(b);
    }
    DenseTensor state = DenseTensor::scalar(1.0);
    std::set<std::string> open_bonds;
    for (const auto& row : net.rows)
      for (const auto& sid : row) {
        const PepsSite& s = net.site(sid);
        DenseTensor t = s.tensor;
        for (std::size_t i = 0; i < s.physical.size(); ++i)
          t = t.renamed(s.physical[i], "p|" + sid + "|" + std::to_string(i));
        auto op = site_ops.find(sid);
        if (op != site_ops.end()) {
          std::vector<std::string> members;
          std::vector<Leg> parts;
          std::vector<std::pair<std::string, std::vector<std::string>>> groups;
          for (std::size_t i = 0; i < s.physical.size(); ++i) {
            const std::string pid = "p|" + sid + "|" + std::to_string(i);
            members.push_back(pid);
            parts.push_back(t.leg(pid));
          }
          groups.push_back({"_phys", members});
          for (const auto& l : t.legs())
            if (std::find(members.begin(), members.end(), l.id) == members.end())
              groups.push_back({l.id, {l.id}});
          DenseTensor g = group_legs(t, groups);
          g = apply_local_map(g, "_phys", op->second);
          t = split_leg(g, "_phys", parts);
        }
        std::vector<std::pair<std::string, std::string>> pairs;
        for (const auto& l : s.tensor.legs()) {
          auto it = leg_to_bond.find({sid, l.id});
          if (it == leg_to_bond.end()) continue;
          t = t.renamed(l.id, it->second);
          if (open_bonds.count(it->second)) {
            pairs.push_back({it->second, it->second});
            open_bonds.erase(it->second);
          } else {
            open_bonds.insert(it->second);
          }
        }
        state = contract(state, t, pairs);
      }
    return state;
  };

  DenseTensor ket_state = fold(ket, ops);
  DenseTensor bra_state = fold(bra, {});
  return inner_product(bra_state, ket_state);
}

// ---- builders ---------------------------------------------------------------

namespace {

DenseTensor random_tensor(const std::vector<Leg>& legs, std::mt19937_64& rng) {
  DenseTensor t(legs);
  std::normal_distribution<double> dist(0.0, 1.0);
  for (auto& v : t.data()) v = cx{dist(rng), dist(rng)};
  return t;
}

std::string sq_id(std::size_t x, std::size_t y) {
  return "s" + std::to_string(x) + "." + std::to_string(y);
}

}  // namespace

PepsNetwork random_square_network(std::size_t lx, std::size_t ly, std::size_t d1,
                                  std::size_t d2, std::size_t d, std::uint64_t seed) {
  if (lx < 1 || ly < 1) throw std::invalid_argument("lattice sizes must be >= 1");
  std::mt19937_64 rng(seed);
  PepsNetwork net;
  net.schedule = Schedule::kSquare;
  net.model_d1 = static_cast<double>(d1);
  net.model_d2 = static_cast<double>(d2);
  net.model_phys = static_cast<double>(d);
  for (std::size_t y = 0; y < ly; ++y) {
    net.rows.push_back({});
    for (std::size_t x = 0; x < lx; ++x) net.rows.back().push_back(sq_id(x, y));
  }
  for (std::size_t y = 0; y < ly; ++y)
    for (std::size_t x = 0; x < lx; ++x) {
      std::vector<Leg> legs;
      if (x > 0) legs.push_back({"l", d1});
      if (x + 1 < lx) legs.push_back({"r", d1});
      if (y > 0) legs.push_back({"u", d2});
      if (y + 1 < ly) legs.push_back({"d", d2});
      legs.push_back({"p", d});
      net.sites.push_back({sq_id(x, y), random_tensor(legs, rng), {"p"}});
      if (x + 1 < lx) net.bonds.push_back({sq_id(x, y), "r", sq_id(x + 1, y), "l"});
      if (y + 1 < ly) net.bonds.push_back({sq_id(x, y), "d", sq_id(x, y + 1), "u"});
    }
  return net;
}

PepsNetwork product_square_network(std::size_t lx, std::size_t ly, std::size_t d,
                                   std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  PepsNetwork net;
  net.schedule = Schedule::kSquare;
  net.model_d1 = 1;
  net.model_d2 = 1;
  net.model_phys = static_cast<double>(d);
  for (std::size_t y = 0; y < ly; ++y) {
    net.rows.push_back({});
    for (std::size_t x = 0; x < lx; ++x) net.rows.back().push_back(sq_id(x, y));
  }
  for (std::size_t y = 0; y < ly; ++y)
    for (std::size_t x = 0; x < lx; ++x)
      net.sites.push_back({sq_id(x, y), random_tensor({{"p", d}}, rng), {"p"}});
  return net;
}

namespace {

struct KagomeGeometry {
  std::size_t rows, cols;
  std::string vid(std::size_t r, std::size_t c, const char* w) const {
    return "r" + std::to_string(r) + ".c" + std::to_string(c) + "." + w;
  }
  // triangles as (id, [3 vertex ids], up?)
  struct Tri {
    std::string id;
    std::array<std::string, 3> v;
    bool up;
  };
  std::vector<Tri> triangles() const {
    std::vector<Tri> ts;
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c)
        ts.push_back({"U" + std::to_string(r) + "." + std::to_string(c),
                      {vid(r, c, "top"), vid(r, c, "bl"), vid(r, c, "br")},
                      true});
    for (std::size_t r = 0; r + 1 < rows; ++r)
      for (std::size_t c = 0; c + 1 < cols; ++c)
        ts.push_back({"D" + std::to_string(r) + "." + std::to_string(c),
                      {vid(r, c, "br"), vid(r, c + 1, "bl"), vid(r + 1, c, "top")},
                      false});
    return ts;
  }
  std::vector<std::vector<std::string>> sweep_rows() const {
    std::vector<std::vector<std::string>> out;
    for (std::size_t r = 0; r < rows; ++r) {
      std::vector<std::string> apex;
      for (std::size_t c = 0; c < cols; ++c) apex.push_back(vid(r, c, "top"));
      out.push_back(apex);
      std::vector<std::string> base;
      for (std::size_t c = 0; c < cols; ++c) {
        base.push_back(vid(r, c, "bl"));
        base.push_back(vid(r, c, "br"));
      }
      out.push_back(base);
    }
    return out;
  }
};

}  // namespace

PepsNetwork random_kagome_network(std::size_t rows, std::size_t cols,
                                  const std::array<std::size_t, 3>& K,
                                  const std::array<std::size_t, 3>& D, std::size_t d,
                                  std::uint64_t seed) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("kagome sizes must be >= 1");
  std::mt19937_64 rng(seed);
  KagomeGeometry geo{rows, cols};
  PepsNetwork net;
  net.schedule = Schedule::kKagome;
  net.model_phys = static_cast<double>(d);
  KagomeDims kd;
  for (int i = 0; i < 3; ++i) {
    kd.K[i] = static_cast<double>(K[i]);
    kd.D[i] = static_cast<double>(D[i]);
  }
  net.kagome_dims = kd;
  net.rows = geo.sweep_rows();

  // edges of each triangle: (v0-v1, v1-v2, v2-v0) with dims K or D
  std::map<std::string, std::vector<Leg>> site_legs;
  for (const auto& row : net.rows)
    for (const auto& s : row) site_legs[s] = {};
  for (const auto& tri : geo.triangles()) {
    const auto& dims = tri.up ? K : D;
    for (int e = 0; e < 3; ++e) {
      const std::string leg = tri.id + "|e" + std::to_string(e);
      const std::string& va = tri.v[e];
      const std::string& vb = tri.v[(e + 1) % 3];
      site_legs[va].push_back({leg, dims[e]});
      site_legs[vb].push_back({leg, dims[e]});
      net.bonds.push_back({va, leg, vb, leg});
    }
  }
  for (const auto& row : net.rows)
    for (const auto& s : row) {
      std::vector<Leg> legs = site_legs[s];
      legs.push_back({"p", d});
      net.sites.push_back({s, random_tensor(legs, rng), {"p"}});
    }
  return net;
}

PepsNetwork rvb_kagome_network(std::size_t rows, std::size_t cols) {
  KagomeGeometry geo{rows, cols};
  PepsNetwork net;
  net.schedule = Schedule::kKagome;
  net.model_phys = 3;
  KagomeDims kd;
  kd.K = {2.0, 2.0, 3.0};
  kd.D = {2.0, 2.0, 3.0};
  net.kagome_dims = kd;
  net.rows = geo.sweep_rows();

  // slot l of a triangle: G[p, in, out] = (M^{(l)}_p)_{in,out} with the
  // bond l-1 -> l on `in` and l -> l+1 on `out`
  const PlaquetteConversion conv = lambda_restriction_223();
  std::array<Matrix, 3> slot_map;
  for (int l = 0; l < 3; ++l) slot_map[l] = conv.party_maps[l].terms().at(0);
  // party l map is (3 x in*out); bond dims follow from the map shapes
  const std::array<std::size_t, 3> in_dim{3, 2, 2};   // bond (l-1 -> l) dims for l = 0,1,2
  const std::array<std::size_t, 3> out_dim{2, 2, 3};  // bond (l -> l+1)

  std::map<std::string, DenseTensor> site_tensors;
  std::map<std::string, std::vector<std::string>> site_phys;
  for (const auto& tri : geo.triangles()) {
    for (int l = 0; l < 3; ++l) {
      const std::string in_leg = tri.id + "|b" + std::to_string((l + 2) % 3);
      const std::string out_leg = tri.id + "|b" + std::to_string(l);
      const std::string phys = tri.id + "|p" + std::to_string(l);
      DenseTensor g(std::vector<Leg>{{phys, 3}, {in_leg, in_dim[l]}, {out_leg, out_dim[l]}});
      for (std::size_t p = 0; p < 3; ++p)
        for (std::size_t a = 0; a < in_dim[l]; ++a)
          for (std::size_t b = 0; b < out_dim[l]; ++b)
            g.at({p, a, b}) = slot_map[l](static_cast<Eigen::Index>(p),
                                          static_cast<Eigen::Index>(a * out_dim[l] + b));
      const std::string& v = tri.v[l];
      auto it = site_tensors.find(v);
      if (it == site_tensors.end())
        site_tensors.emplace(v, g);
      else
        it->second = outer(it->second, g);
      site_phys[v].push_back(phys);
      // party l+1 names its incoming leg by the same bond index l
      net.bonds.push_back({tri.v[l], out_leg, tri.v[(l + 1) % 3], out_leg});
    }
  }
  for (const auto& row : net.rows)
    for (const auto& s : row) net.sites.push_back({s, site_tensors.at(s), site_phys.at(s)});
  return net;
}

}  // namespace bordertn
