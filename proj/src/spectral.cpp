#include "mzs/spectral.hpp"

#include "mzs/fft.hpp"

#include <cmath>
#include <map>

namespace mzs {

ArrayXd signed_freq(Index n) {
  ArrayXd m(n);
  for (Index j = 0; j <= n / 2; ++j) m[j] = static_cast<double>(j);
  for (Index j = n / 2 + 1; j < n; ++j) m[j] = static_cast<double>(j - n);
  return m;
}

ArrayXcd diff_symbol(const GridPtr& grid, int k) {
  require(grid != nullptr, "diff_symbol: null grid");
  require(k >= 0 && k <= 6, "diff_symbol: order out of range");
  const Index n = grid->n;
  ArrayXd m = signed_freq(n);
  ArrayXcd c(n);
  const double w = 2.0 * M_PI / grid->length;
  for (Index j = 0; j < n; ++j) c[j] = std::pow(iu * (w * m[j]), k);
  if (k % 2 == 1) c[n / 2] = 0.0; // no symmetric counterpart for the Nyquist mode
  return c;
}

Wavefunction deriv(const Wavefunction& u, int k) {
  ArrayXcd c = diff_symbol(u.grid, k);
  return {u.grid, fft_inverse(c * fft_forward(u.v))};
}

GridFunction deriv(const GridFunction& f, int k) {
  Wavefunction tmp{f.grid, f.v.cast<cplx>()};
  return {f.grid, deriv(tmp, k).v.real()};
}

Wavefunction apply_symop(const SymOpSum& op, const Wavefunction& u) {
  require(op.grid != nullptr, "apply_symop: empty operator");
  require_same_grid(op.grid, u.grid);
  const Index n = u.grid->n;

  // Collapse terms sharing a derivative order into one effective multiplier.
  std::map<int, ArrayXcd> eff;
  for (const SymTerm& t : op.terms) {
    auto it = eff.find(t.k);
    if (it == eff.end())
      eff.emplace(t.k, t.coeff * t.f.values().cast<cplx>());
    else
      it->second += t.coeff * t.f.values().cast<cplx>();
  }

  ArrayXcd y = ArrayXcd::Zero(n);
  auto it0 = eff.find(0);
  if (it0 != eff.end()) y += it0->second * u.v;

  bool any_deriv = false;
  for (const auto& [k, f] : eff)
    if (k > 0) any_deriv = true;
  if (!any_deriv) return {u.grid, y};

  const ArrayXcd u_hat = fft_forward(u.v);
  ArrayXcd acc_hat = ArrayXcd::Zero(n); // Fourier accumulator for K_k D_f u
  for (const auto& [k, f] : eff) {
    if (k == 0) continue;
    const ArrayXcd c = diff_symbol(u.grid, k);
    y += 0.5 * f * fft_inverse(c * u_hat); // D_f K_k u
    acc_hat += c * fft_forward(f * u.v);   // K_k D_f u, summed in Fourier space
  }
  y += 0.5 * fft_inverse(acc_hat);
  return {u.grid, y};
}

Wavefunction exp_circulant(cplx a, int k, const Wavefunction& u) {
  require(k % 2 == 0, "exp_circulant: odd-order symbols are not circulant-exponentiable here");
  ArrayXcd c = diff_symbol(u.grid, k);
  ArrayXcd phase = (a * c).exp();
  return {u.grid, fft_inverse(phase * fft_forward(u.v))};
}

Wavefunction exp_diag(const GridFunction& f, cplx scale, const Wavefunction& u) {
  require_same_grid(f.grid, u.grid);
  ArrayXcd phase = (scale * f.v.cast<cplx>()).exp();
  return {u.grid, phase * u.v};
}

double l2_norm(const Wavefunction& u) {
  return std::sqrt(u.grid->dx * u.v.abs2().sum());
}

double l2_error(const Wavefunction& a, const Wavefunction& b) {
  require_same_grid(a.grid, b.grid);
  return std::sqrt(a.grid->dx * (a.v - b.v).abs2().sum());
}

double energy(const Wavefunction& u, const GridFunction& V, double eps) {
  require_same_grid(u.grid, V.grid);
  require(eps > 0, "energy: eps must be positive");
  Wavefunction du = deriv(u, 1);
  double kin = eps * u.grid->dx * du.v.abs2().sum();
  double pot = (1.0 / eps) * u.grid->dx * (V.v * u.v.abs2()).sum();
  return kin + pot;
}

} // namespace mzs
