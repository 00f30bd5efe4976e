// Olver's regularised confluent hypergeometric function M(a;b;z) = 1F1(a;b;z)/Gamma(b).
//
// Convergent regime: Maclaurin series for |z| <= kMaclaurinRadius, continued along the
// ray through z by re-centred Taylor expansions of Kummer's equation
//     z w'' + (b - z) w' - a w = 0,
// all in extended precision. Each re-centred step has length at most half the distance
// to the regular singular point z = 0, so the local series converge geometrically and
// the cancellation per step is bounded by roughly e^{kMaxStep}.
//
// Asymptotic regime: the two-branch Poincare expansion
//     M ~ e^{+-i pi a} z^{-a}/Gamma(b-a) sum (a)_s (a-b+1)_s / s! (-z)^{-s}
//       + e^z z^{a-b}/Gamma(a)      sum (1-a)_s (b-a)_s / s! z^{-s},
// with the upper sign for Im z >= 0, truncated at the smallest term.
#include <cmath>
#include <limits>
#include <vector>

#include "fock/specfun.hpp"

namespace fock::specfun {

namespace {

using ldouble = long double;
using lcplx = std::complex<long double>;

constexpr ldouble kMaclaurinRadius = 8.0L;
constexpr ldouble kMaxStep = 4.0L;
constexpr ldouble kTermEps = 1e-21L;

lcplx widen(cplx z) { return {static_cast<ldouble>(z.real()), static_cast<ldouble>(z.imag())}; }
cplx narrow(lcplx z) { return {static_cast<double>(z.real()), static_cast<double>(z.imag())}; }

bool is_nonpositive_integer(cplx z, int& n) {
  if (z.imag() == 0.0 && z.real() <= 0.0 && std::floor(z.real()) == z.real()) {
    n = static_cast<int>(-z.real());
    return true;
  }
  return false;
}

struct ValueAndSlope {
  lcplx w;
  lcplx dw;
};

// 1F1(a;b;z) and its derivative by the Maclaurin series.
ValueAndSlope maclaurin_1f1(lcplx a, lcplx b, lcplx z) {
  lcplx term = 1.0L;
  lcplx sum = 1.0L, dsum = 0.0L;
  ldouble peak = 1.0L;
  const ldouble az = std::abs(z);
  const ldouble settle = 2.0L * az + std::abs(a) + std::abs(b) + 5.0L;
  for (int k = 0; k < 100000; ++k) {
    const ldouble kk = static_cast<ldouble>(k);
    // (k+1) c_{k+1} z^k = term_k (a+k)/(b+k) is the k-th term of the derivative series.
    const lcplx ratio = (a + kk) / (b + kk);
    dsum += term * ratio;
    term = term * ratio * z / (kk + 1.0L);
    sum += term;
    peak = std::max(peak, std::abs(term));
    if (kk > settle && std::abs(term) <= kTermEps * std::max(std::abs(sum), peak * 1e-30L)) break;
    if (term == lcplx(0.0L)) break;
  }
  return {sum, dsum};
}

// One re-centred Taylor step of Kummer's equation from z0 to z0 + h.
ValueAndSlope taylor_step(lcplx a, lcplx b, lcplx z0, const ValueAndSlope& start, lcplx h) {
  lcplx cn = start.w, cn1 = start.dw;  // c_n, c_{n+1}
  lcplx hp = h;                        // h^{n+1}
  lcplx w = cn + cn1 * h;
  lcplx dw = cn1;
  int small_run = 0;
  for (int n = 0; n < 100000; ++n) {
    const ldouble nn = static_cast<ldouble>(n);
    const lcplx c2 = ((nn + a) * cn - (nn + 1.0L) * (nn + b - z0) * cn1) / (z0 * (nn + 2.0L) * (nn + 1.0L));
    const lcplx dterm = (nn + 2.0L) * c2 * hp;  // (n+2) c_{n+2} h^{n+1}
    hp *= h;
    const lcplx term = c2 * hp;                  // c_{n+2} h^{n+2}
    w += term;
    dw += dterm;
    cn = cn1;
    cn1 = c2;
    if (std::abs(term) <= kTermEps * std::abs(w) && std::abs(dterm) <= kTermEps * std::abs(dw) + kTermEps * std::abs(w)) {
      if (++small_run >= 3 && n > 8) break;
    } else {
      small_run = 0;
    }
  }
  return {w, dw};
}

// 1F1(a;b;z) in extended precision, b not a nonpositive integer.
lcplx hyp1f1_convergent(lcplx a, lcplx b, lcplx z) {
  const ldouble R = std::abs(z);
  if (R <= kMaclaurinRadius) return maclaurin_1f1(a, b, z).w;
  const lcplx u = z / R;
  ldouble r = kMaclaurinRadius;
  ValueAndSlope s = maclaurin_1f1(a, b, u * r);
  while (r < R) {
    const ldouble step = std::min({R - r, 0.5L * r, kMaxStep});
    s = taylor_step(a, b, u * r, s, u * step);
    r = (R - r <= step) ? R : r + step;
  }
  return s.w;
}

}  // namespace

void RegimePolicy::validate() const {
  if (!(series_radius > 0.0)) throw std::invalid_argument("RegimePolicy: series_radius must be positive");
  if (asymptotic_terms < 1) throw std::invalid_argument("RegimePolicy: asymptotic_terms must be >= 1");
}

cplx olver_M_series(cplx a, cplx b, cplx z) {
  int n = 0;
  if (is_nonpositive_integer(b, n)) {
    // M(a;-n;z) = (a)_{n+1} z^{n+1} M(a+n+1; n+2; z)
    return pochhammer(a, n + 1) * std::pow(z, n + 1) * olver_M_series(a + static_cast<double>(n + 1), n + 2.0, z);
  }
  if (z == cplx(0.0)) return rgamma(b);
  const lcplx f = hyp1f1_convergent(widen(a), widen(b), widen(z));
  return narrow(f * widen(rgamma(b)));
}

MEvaluation olver_M_asymptotic(cplx a, cplx b, cplx z, int max_terms) {
  if (max_terms < 1) throw std::invalid_argument("olver_M_asymptotic: max_terms must be >= 1");
  if (z == cplx(0.0)) throw std::domain_error("olver_M_asymptotic: z = 0 is outside the asymptotic regime");
  int n = 0;
  if (is_nonpositive_integer(b, n)) {
    MEvaluation inner = olver_M_asymptotic(a + static_cast<double>(n + 1), n + 2.0, z, max_terms);
    inner.value *= pochhammer(a, n + 1) * std::pow(z, n + 1);
    return inner;
  }
  const lcplx A = widen(a), B = widen(b), Z = widen(z);
  const lcplx logz = std::log(Z);
  const ldouble sign = (z.imag() >= 0.0) ? 1.0L : -1.0L;
  const lcplx ipi(0.0L, sign * static_cast<ldouble>(M_PI));

  struct Truncated {
    lcplx sum;
    ldouble omitted;  // magnitude of the first omitted term
  };
  // sum_s (p)_s (q)_s / s! x^s truncated at its smallest term (or earlier, once the
  // terms fall below extended-precision resolution of the partial sum).
  auto poincare = [&](lcplx p, lcplx q, lcplx x) -> Truncated {
    std::vector<lcplx> partial;  // partial[s] = sum of terms 0..s-1
    partial.reserve(max_terms + 2);
    lcplx sum = 0.0L, t = 1.0L;
    ldouble best = std::numeric_limits<ldouble>::infinity();
    std::size_t best_index = 0;
    const ldouble hump = std::abs(p) + std::abs(q) + 1.0L;
    for (int s = 0; s <= max_terms; ++s) {
      partial.push_back(sum);
      const ldouble mag = std::abs(t);
      if (mag == 0.0L) return {sum, 0.0L};
      if (s >= 1 && mag < best) {
        best = mag;
        best_index = static_cast<std::size_t>(s);
      }
      if (mag <= kTermEps * std::abs(sum)) return {sum, mag};
      if (s >= 1 && mag > best && static_cast<ldouble>(s) > hump) break;  // past the smallest term
      sum += t;
      const ldouble ss = static_cast<ldouble>(s);
      t = t * (p + ss) * (q + ss) / (ss + 1.0L) * x;
    }
    if (best_index == 0) return {sum, std::abs(t)};
    return {partial[best_index], best};
  };

  lcplx total = 0.0L;
  ldouble err = 0.0L;
  const lcplx r1 = widen(rgamma(b - a));
  if (r1 != lcplx(0.0L)) {
    const lcplx pref = std::exp(ipi * A - A * logz) * r1;
    const Truncated s1 = poincare(A, A - B + 1.0L, -1.0L / Z);
    total += pref * s1.sum;
    err += std::abs(pref) * s1.omitted;
  }
  const lcplx r2 = widen(rgamma(a));
  if (r2 != lcplx(0.0L)) {
    const lcplx pref = std::exp(Z + (A - B) * logz) * r2;
    const Truncated s2 = poincare(1.0L - A, B - A, 1.0L / Z);
    total += pref * s2.sum;
    err += std::abs(pref) * s2.omitted;
  }
  MEvaluation out;
  out.value = narrow(total);
  out.regime = MRegime::asymptotic;
  const ldouble mag = std::abs(total);
  out.remainder_estimate = static_cast<double>(mag > 0.0L ? err / mag : err);
  out.precision_loss = out.remainder_estimate > 1e-8;
  return out;
}

MEvaluation olver_M_eval(cplx a, cplx b, cplx z, const RegimePolicy& policy) {
  policy.validate();
  if (std::abs(z) <= policy.series_radius) {
    MEvaluation out;
    out.value = olver_M_series(a, b, z);
    out.regime = MRegime::series;
    return out;
  }
  return olver_M_asymptotic(a, b, z, policy.asymptotic_terms);
}

}  // namespace fock::specfun
