#include <array>
#include <cmath>

#include "fock/specfun.hpp"

namespace fock::specfun {

namespace {

// Lanczos approximation, g = 7, nine coefficients.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

const double kHalfLog2Pi = 0.5 * std::log(2.0 * M_PI);

bool is_nonpositive_integer(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && std::floor(z.real()) == z.real();
}

// log Gamma(z) for Re z >= 1/2.
cplx lanczos_log_gamma(cplx z) {
  z -= 1.0;
  cplx x = kLanczos[0];
  for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  const cplx t = z + kLanczosG + 0.5;
  return kHalfLog2Pi + (z + 0.5) * std::log(t) - t + std::log(x);
}

}  // namespace

cplx log_gamma(cplx z) {
  if (is_nonpositive_integer(z)) throw std::domain_error("log_gamma: pole at a nonpositive integer");
  if (z.real() >= 0.5) return lanczos_log_gamma(z);
  // Upward recurrence keeps the branch continuous: log Gamma(z) = log Gamma(z+n) - sum log(z+k).
  const int n = static_cast<int>(std::ceil(0.5 - z.real()));
  cplx acc = 0.0;
  for (int k = 0; k < n; ++k) acc += std::log(z + static_cast<double>(k));
  return lanczos_log_gamma(z + static_cast<double>(n)) - acc;
}

cplx gamma(cplx z) {
  if (is_nonpositive_integer(z)) throw std::domain_error("gamma: pole at a nonpositive integer");
  if (z.real() >= 0.5) return std::exp(lanczos_log_gamma(z));
  // Reflection avoids the long recurrence product for far-left arguments.
  return M_PI / (std::sin(M_PI * z) * std::exp(lanczos_log_gamma(1.0 - z)));
}

cplx rgamma(cplx z) {
  if (is_nonpositive_integer(z)) return 0.0;
  if (z.real() >= 0.5) return std::exp(-lanczos_log_gamma(z));
  return std::sin(M_PI * z) * std::exp(lanczos_log_gamma(1.0 - z)) / M_PI;
}

cplx pochhammer(cplx a, int k) {
  if (k < 0) throw std::invalid_argument("pochhammer: k must be >= 0");
  cplx p = 1.0;
  for (int j = 0; j < k; ++j) p *= a + static_cast<double>(j);
  return p;
}

}  // namespace fock::specfun
