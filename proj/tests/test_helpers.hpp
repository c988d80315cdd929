#pragma once

#include <random>
#include <vector>

#include "realform/grouprep.hpp"

namespace realform::testing {

inline CMatrix random_complex_matrix(int n, std::uint64_t seed, double scale = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = scale * Complex(normal(rng), normal(rng));
  return m;
}

inline CMatrix random_hermitian(int n, std::uint64_t seed) {
  const CMatrix w = random_complex_matrix(n, seed);
  return (w + w.adjoint()) / 2.0;
}

inline CMatrix random_skew_symmetric(int n, std::uint64_t seed) {
  const CMatrix w = random_complex_matrix(n, seed);
  return (w - w.transpose()) / 2.0;
}

inline CMatrix random_invertible(int n, std::uint64_t seed) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    const CMatrix m = random_complex_matrix(n, seed + attempt);
    if (std::abs(m.determinant()) > 1e-3) return m;
  }
}

inline CMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  CMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

// The irreducible unipotent pair: upper and lower triangular with ones.
inline Representation unipotent_pair() {
  return Representation(GroupKind(GroupFamily::SL, 2),
                        {mat2(1, 1, 0, 1), mat2(1, 0, 1, 1)});
}

// i*sigma_x and i*sigma_z generate an irreducible subgroup of SU(2).
inline Representation su2_pair() {
  const Complex i(0, 1);
  return Representation(GroupKind(GroupFamily::SL, 2),
                        {mat2(0, i, i, 0), mat2(i, 0, 0, -i)});
}

inline Representation diagonal_rep(const std::vector<Complex>& entries,
                                   GroupFamily family = GroupFamily::GL) {
  const int n = static_cast<int>(entries.size());
  CMatrix m = CMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = entries[i];
  return Representation(GroupKind(family, n), {m});
}

}  // namespace realform::testing
