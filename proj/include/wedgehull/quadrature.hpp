#pragma once

namespace wedge {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

// H(α, n) = ∫_0^{nα} ∫_0^ε s^{d-1} t^{d-1} (1 − st/n)^{n-d} dt ds.
// Requires αε < 1 so the integrand base stays nonnegative. Throws
// QuadratureError when the adaptive rule misses the 1e-8 relative target.
QuadratureResult limit_lemma_H(int d, double alpha, double n, double epsilon);

// G(α, γ) = ∫_0^{αγ} ∫_0^ε s^{d-1} t^{d-1} e^{-st} dt ds.
QuadratureResult limit_lemma_G(int d, double alpha, double gamma, double epsilon);

}  // namespace wedge
