#pragma once

#include <vector>

#include "realform/types.hpp"

namespace realform {

/// The structured matrices that define the classical groups and their
/// real forms: the identity, the standard symplectic form J_{2n}, the
/// signature form I_{p,q}, the doubled signature form K_{p,q} and the
/// diagonal embedding matrix D_{p,q}.
enum class SpecialKind { Identity, J, Ipq, Kpq, Dpq };

/// Builds Identity (size n) or J (size n, n even).
CMatrix special_matrix(SpecialKind kind, int n);

/// Builds Ipq (size p+q), Kpq (size 2(p+q)) or Dpq (size p+q).
CMatrix special_matrix(SpecialKind kind, int p, int q);

struct HermitianEig {
  CMatrix vectors;  // unitary, columns are eigenvectors
  RVector values;   // real, descending; ties keep original order
};

/// Spectral decomposition H = U diag(d) U* of a Hermitian matrix.
HermitianEig hermitian_eig(const CMatrix& h, const Tolerance& tol = {});

/// Counts positive/negative eigenvalues of a nondegenerate Hermitian form.
Signature signature(const CMatrix& h, const Tolerance& tol = {});

/// Pfaffian of a skew-symmetric matrix of even size <= 8, by recursive
/// expansion along the first row. Satisfies Pf(A)^2 = det(A).
Complex pfaffian(const CMatrix& a, const Tolerance& tol = {});

struct SylvesterResult {
  RMatrix transform;  // R with C = R^T I_{p,q} R
  Signature signature;
};

/// Real congruence normalization of an invertible real symmetric matrix.
SylvesterResult sylvester_real(const CMatrix& c, const Tolerance& tol = {});

}  // namespace realform
