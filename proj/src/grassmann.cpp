#include "lrtherm/grassmann.hpp"

#include <stdexcept>

namespace lrtherm::grassmann {

namespace {
int popcount64(std::uint64_t x) { return __builtin_popcountll(x); }
}  // namespace

Poly Poly::constant(Complex c) {
  Poly p;
  if (c != Complex(0.0)) p.terms[0] = c;
  return p;
}

Poly Poly::generator(int id) {
  Poly p;
  p.terms[std::uint64_t(1) << id] = 1.0;
  return p;
}

void Poly::add(std::uint64_t mask, Complex c) {
  auto it = terms.find(mask);
  if (it == terms.end()) {
    if (c != Complex(0.0)) terms.emplace(mask, c);
    return;
  }
  it->second += c;
  if (it->second == Complex(0.0)) terms.erase(it);
}

int reorder_sign(std::uint64_t a, std::uint64_t b) {
  // Count pairs (i in a, j in b) with i > j.
  int inversions = 0;
  std::uint64_t bb = b;
  while (bb) {
    const int j = __builtin_ctzll(bb);
    bb &= bb - 1;
    inversions += popcount64(a >> (j + 1));
  }
  return (inversions % 2 == 0) ? 1 : -1;
}

Poly mul(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ma, ca] : a.terms) {
    for (const auto& [mb, cb] : b.terms) {
      if (ma & mb) continue;  // repeated generator annihilates the term
      const int sign = reorder_sign(ma, mb);
      out.add(ma | mb, ca * cb * static_cast<double>(sign));
    }
  }
  return out;
}

Poly add(const Poly& a, const Poly& b) {
  Poly out = a;
  for (const auto& [m, c] : b.terms) out.add(m, c);
  return out;
}

Poly scale(const Poly& a, Complex c) {
  Poly out;
  if (c == Complex(0.0)) return out;
  for (const auto& [m, v] : a.terms) out.terms[m] = v * c;
  return out;
}

Poly integrate(const Poly& p, int id) {
  const std::uint64_t bit = std::uint64_t(1) << id;
  Poly out;
  for (const auto& [m, c] : p.terms) {
    if (!(m & bit)) continue;
    const int below = popcount64(m & (bit - 1));
    out.add(m & ~bit, (below % 2 == 0) ? c : -c);
  }
  return out;
}

Poly integrate_all(const Poly& p, const std::vector<int>& written_order) {
  Poly cur = p;
  for (auto it = written_order.rbegin(); it != written_order.rend(); ++it)
    cur = integrate(cur, *it);
  return cur;
}

Poly exp_pair_sum(const std::vector<int>& bar_ids, const std::vector<int>& fwd_ids) {
  if (bar_ids.size() != fwd_ids.size())
    throw std::invalid_argument("exp_pair_sum: id lists must have equal length");
  Poly out = Poly::constant(1.0);
  for (std::size_t j = 0; j < bar_ids.size(); ++j) {
    // (1 - bar_j fwd_j)
    Poly factor = Poly::constant(1.0);
    factor = add(factor, scale(mul(Poly::generator(bar_ids[j]), Poly::generator(fwd_ids[j])),
                               Complex(-1.0)));
    out = mul(out, factor);
  }
  return out;
}

KetPoly coherent_ket(int n_modes, const std::vector<CoherentParam>& params) {
  if (static_cast<int>(params.size()) != n_modes)
    throw std::invalid_argument("coherent_ket: one parameter per mode required");
  KetPoly ket;
  ket.n_modes = n_modes;
  ket.comp[0] = Poly::constant(1.0);
  for (int j = 0; j < n_modes; ++j) {
    // ket <- (1 - s theta c_j^dag) ket
    KetPoly next = ket;
    const Poly theta = scale(Poly::generator(params[j].generator), params[j].scale);
    for (const auto& [n, g] : ket.comp) {
      if (n & (1u << j)) continue;
      const std::uint32_t np = n | (1u << j);
      const int fsign = jw_sign(n, j);
      // c_j^dag crosses the Grassmann coefficient term by term.
      Poly crossed;
      for (const auto& [m, c] : g.terms)
        crossed.add(m, (popcount64(m) % 2 == 0) ? c : -c);
      Poly contrib = scale(mul(theta, crossed), Complex(-1.0 * fsign));
      auto it = next.comp.find(np);
      if (it == next.comp.end())
        next.comp[np] = contrib;
      else
        it->second = add(it->second, contrib);
    }
    ket = std::move(next);
  }
  return ket;
}

BraPoly coherent_bra(int n_modes, const std::vector<CoherentParam>& params) {
  if (static_cast<int>(params.size()) != n_modes)
    throw std::invalid_argument("coherent_bra: one parameter per mode required");
  BraPoly bra;
  bra.n_modes = n_modes;
  bra.comp[0] = Poly::constant(1.0);
  for (int j = 0; j < n_modes; ++j) {
    // bra <- bra (1 - s theta c_j)
    BraPoly next = bra;
    const Poly theta = scale(Poly::generator(params[j].generator), params[j].scale);
    for (const auto& [m, g] : bra.comp) {
      if (m & (1u << j)) continue;  // <m| c_j vanishes unless mode j can be added
      const std::uint32_t mp = m | (1u << j);
      const int fsign = jw_sign(m, j);
      // <m| theta = (-1)^{|m|} theta <m|
      const int cross = (__builtin_popcount(m) % 2 == 0) ? 1 : -1;
      Poly contrib = scale(mul(g, theta), Complex(-1.0 * fsign * cross));
      auto it = next.comp.find(mp);
      if (it == next.comp.end())
        next.comp[mp] = contrib;
      else
        it->second = add(it->second, contrib);
    }
    bra = std::move(next);
  }
  return bra;
}

OperatorPoly outer(const KetPoly& ket, const BraPoly& bra) {
  OperatorPoly op;
  op.n_modes = ket.n_modes;
  for (const auto& [n, g1] : ket.comp) {
    const int ket_parity = __builtin_popcount(n) % 2;
    for (const auto& [m, g2] : bra.comp) {
      // move g2 across |n>: each odd term picks up (-1)^{|n|}
      Poly g2c;
      for (const auto& [mask, c] : g2.terms) {
        const bool odd = (popcount64(mask) % 2) != 0;
        g2c.add(mask, (odd && ket_parity) ? -c : c);
      }
      Poly coeff = mul(g1, g2c);
      if (coeff.empty()) continue;
      const std::uint64_t key = (static_cast<std::uint64_t>(n) << ket.n_modes) | m;
      auto it = op.comp.find(key);
      if (it == op.comp.end())
        op.comp[key] = std::move(coeff);
      else
        it->second = add(it->second, coeff);
    }
  }
  return op;
}

OperatorPoly mul_left(const Poly& scalar, const OperatorPoly& op) {
  OperatorPoly out;
  out.n_modes = op.n_modes;
  for (const auto& [key, g] : op.comp) {
    Poly coeff = mul(scalar, g);
    if (!coeff.empty()) out.comp[key] = std::move(coeff);
  }
  return out;
}

Eigen::MatrixXcd integrate_all(const OperatorPoly& op, const std::vector<int>& written_order) {
  const int dim = 1 << op.n_modes;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  const std::uint64_t mmask = (std::uint64_t(1) << op.n_modes) - 1;
  for (const auto& [key, g] : op.comp) {
    const Poly val = integrate_all(g, written_order);
    if (val.empty()) continue;
    auto it = val.terms.find(0);
    if (it == val.terms.end()) continue;  // leftover generators integrate to zero here
    const std::uint32_t n = static_cast<std::uint32_t>(key >> op.n_modes);
    const std::uint32_t m = static_cast<std::uint32_t>(key & mmask);
    out(n, m) += it->second;
  }
  return out;
}

}  // namespace lrtherm::grassmann
