#pragma once

#include <string>
#include <vector>

#include "wiretap/rng.hpp"
#include "wiretap/types.hpp"

namespace wiretap {

/// i.i.d. CN(0, 1) matrix (unit-variance Rayleigh fading coefficients).
/// Entries are drawn in row-major order from the given stream, so the result
/// is fully determined by the stream state.
ComplexMatrix generate_rayleigh(int rows, int cols, Rng& rng);

/// Submatrix made of the listed rows, in list order. Indices are 0-based,
/// must be distinct and within range.
ComplexMatrix select_rows(const ComplexMatrix& mat, const std::vector<int>& indices);

/// Plain-text dump, one row per line, entries as "a+bi" pairs. Debug aid only.
std::string to_debug_string(const ComplexMatrix& mat);

}  // namespace wiretap
