#include "wiretap/precoder.hpp"

#include <cmath>

namespace wiretap {

Precoder mrt_precoder(const ComplexMatrix& h_eff) {
  const double fro2 = h_eff.squaredNorm();
  if (fro2 == 0.0) {
    throw DegenerateChannelError("mrt_precoder: all-zero effective channel");
  }
  Precoder p;
  p.beta = 1.0 / std::sqrt(fro2);
  p.w = p.beta * h_eff.conjugate();
  return p;
}

double precoder_trace(const Precoder& precoder) {
  return precoder.w.squaredNorm();
}

}  // namespace wiretap
