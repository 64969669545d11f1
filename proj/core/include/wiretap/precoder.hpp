#pragma once

#include "wiretap/types.hpp"

namespace wiretap {

/// MRT signal shaping matrix W = beta * conj(H_eff) with its normalizer
/// beta = 1 / ||H_eff||_F, so that tr(W W^H) = 1.
struct Precoder {
  ComplexMatrix w;  // L x K
  double beta = 0.0;
};

/// MRT precoder of the effective channel. Throws DegenerateChannelError if
/// h_eff is identically zero.
Precoder mrt_precoder(const ComplexMatrix& h_eff);

/// tr(W W^H), the total transmit-power normalization of a precoder.
double precoder_trace(const Precoder& precoder);

}  // namespace wiretap
