#pragma once

#include <complex>
#include <span>
#include <vector>

namespace landau {

/// Unit-normalized harmonic-oscillator eigenfunction
/// Psi_n(s) = (2^n n! sqrt(pi))^{-1/2} H_n(s) exp(-s^2/2).
///
/// Evaluated with the three-term recurrence on the normalized functions, so
/// magnitudes stay O(1) for large n.  Returns exactly 0 once the result would
/// be subnormal, and for |s| >= 60.
double psi_n(int n, double s);

/// Fills out[0..nmax] with Psi_0(s) .. Psi_nmax(s).
void psi_upto(int nmax, double s, std::span<double> out);

/// Gauss-Hermite rule for the weight exp(-s^2).
///
/// `weights` integrate p(s) exp(-s^2) exactly for deg p <= 2 order - 1;
/// `scaled_weights` are weights * exp(+s^2), for integrands that already carry
/// their Gaussian decay.
struct QuadratureRule {
  int order = 0;
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> scaled_weights;
};

inline constexpr int kMaxQuadratureOrder = 200;

/// Cached; safe to call concurrently.  Throws DomainError outside [1, 200].
const QuadratureRule& gauss_hermite(int order);

/// (2 pi)^{-1/2} * integral of Psi_n(s) exp(-i t s) ds, which equals
/// (-i)^n Psi_n(t).  Throws AccuracyError when the rule is too short for n
/// (order < 2n + 20) or the parity-forbidden part exceeds 1e-10.
std::complex<double> fourier_of_psi(int n, double t, const QuadratureRule& rule);

}  // namespace landau
