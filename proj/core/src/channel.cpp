#include "wiretap/channel.hpp"

#include <sstream>

namespace wiretap {

ComplexMatrix generate_rayleigh(int rows, int cols, Rng& rng) {
  if (rows < 1 || cols < 1) {
    throw ShapeError("generate_rayleigh: rows and cols must be >= 1");
  }
  ComplexMatrix out(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      out(i, j) = rng.complex_normal();
    }
  }
  return out;
}

ComplexMatrix select_rows(const ComplexMatrix& mat, const std::vector<int>& indices) {
  const int rows = static_cast<int>(mat.rows());
  std::vector<bool> seen(rows, false);
  for (int idx : indices) {
    if (idx < 0 || idx >= rows) {
      throw InvalidSelectionError("select_rows: index " + std::to_string(idx) +
                                  " out of range [0, " + std::to_string(rows) + ")");
    }
    if (seen[idx]) {
      throw InvalidSelectionError("select_rows: duplicate index " + std::to_string(idx));
    }
    seen[idx] = true;
  }
  ComplexMatrix out(static_cast<Eigen::Index>(indices.size()), mat.cols());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    out.row(static_cast<Eigen::Index>(i)) = mat.row(indices[i]);
  }
  return out;
}

std::string to_debug_string(const ComplexMatrix& mat) {
  std::ostringstream os;
  for (Eigen::Index i = 0; i < mat.rows(); ++i) {
    for (Eigen::Index j = 0; j < mat.cols(); ++j) {
      if (j > 0) os << ' ';
      const Complex z = mat(i, j);
      os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << 'i';
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace wiretap
