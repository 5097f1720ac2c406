#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <map>
#include <vector>

namespace lrtherm::grassmann {

// Exterior algebra over up to 64 anticommuting generators, with fermionic
// Fock states carried alongside so coherent-state manipulations can be done
// directly from their definitions. Monomials are stored in canonical
// ascending generator order; every product and Berezin integral tracks the
// reordering sign explicitly.

using Complex = std::complex<double>;

struct Poly {
  // monomial mask -> coefficient
  std::map<std::uint64_t, Complex> terms;

  static Poly zero() { return {}; }
  static Poly constant(Complex c);
  static Poly generator(int id);
  void add(std::uint64_t mask, Complex c);
  bool empty() const { return terms.empty(); }
};

// Sign of concatenating ascending monomials a and b into one ascending
// monomial: (-1)^{#pairs (i in a, j in b) with i > j}.
int reorder_sign(std::uint64_t a, std::uint64_t b);

Poly mul(const Poly& a, const Poly& b);
Poly add(const Poly& a, const Poly& b);
Poly scale(const Poly& a, Complex c);

// Berezin integral over one generator: terms lacking it vanish; in the rest
// the generator is moved to the front and stripped.
Poly integrate(const Poly& p, int id);

// Integral against a differential list written left to right (the rightmost
// differential acts first).
Poly integrate_all(const Poly& p, const std::vector<int>& written_order);

// prod_{j} (1 - theta_{ids[j]} * eta_{ids2[j]}) style exponential factor,
// expanded exactly: exp(-sum_j bar_j fwd_j) for Grassmann pairs.
Poly exp_pair_sum(const std::vector<int>& bar_ids, const std::vector<int>& fwd_ids);

// Fock states with Grassmann-valued coefficients. Coefficients always stand
// to the left of |n> or <m|; the basis convention is
// |n> = (c_0^dag)^{n_0} (c_1^dag)^{n_1} ... |0>.
struct KetPoly {
  int n_modes = 0;
  std::map<std::uint32_t, Poly> comp;  // basis index -> coefficient
};
struct BraPoly {
  int n_modes = 0;
  std::map<std::uint32_t, Poly> comp;
};

// Jordan-Wigner sign of c_j^dag acting on |n>.
inline int jw_sign(std::uint32_t n, int j) {
  const std::uint32_t below = n & ((1u << j) - 1u);
  return (__builtin_popcount(below) % 2 == 0) ? 1 : -1;
}

struct CoherentParam {
  int generator = 0;   // Grassmann generator id carried by this mode
  Complex scale = 1.0; // premultiplier (i for time-reversed modes)
};

// |eta> = prod_j (1 - scale_j theta_j c_j^dag) |0>
KetPoly coherent_ket(int n_modes, const std::vector<CoherentParam>& params);
// <eta| = <0| prod_j (1 - scale_j theta_j c_j)
BraPoly coherent_bra(int n_modes, const std::vector<CoherentParam>& params);

// Operator-valued polynomial, coefficients left of |n><m|.
struct OperatorPoly {
  int n_modes = 0;
  std::map<std::uint64_t, Poly> comp;  // key = (n << n_modes) | m
};

// |ket><bra| with the bra coefficient commuted across the ket state.
OperatorPoly outer(const KetPoly& ket, const BraPoly& bra);
OperatorPoly mul_left(const Poly& scalar, const OperatorPoly& op);
Eigen::MatrixXcd integrate_all(const OperatorPoly& op, const std::vector<int>& written_order);

}  // namespace lrtherm::grassmann
