#pragma once

// Error-free transformations used by the compensated kernels.
namespace gibbs::simd::eft {

inline void two_sum(double a, double b, double& s, double& e) {
  s = a + b;
  const double bb = s - a;
  e = (a - (s - bb)) + (b - bb);
}

}  // namespace gibbs::simd::eft
