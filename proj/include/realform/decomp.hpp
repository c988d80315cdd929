#pragma once

#include "realform/grouprep.hpp"

namespace realform {

struct PolarPair {
  CMatrix unitary;
  CMatrix positive;  // positive definite Hermitian, M = unitary * positive
};

/// Polar decomposition of an element of a classical group; both factors stay
/// in the group and are checked against it at 10x the working tolerance.
PolarPair polar_in_group(const CMatrix& m, const GroupKind& kind, const Tolerance& tol = {});

struct SymplecticEig {
  CMatrix vectors;  // unitary and symplectic
  RVector diagonal; // diag(L, L^{-1}), real
};

/// Eigendecomposition H = V D V* of a Hermitian symplectic matrix with V
/// unitary symplectic and D = diag(L, L^{-1}). Eigenvalue pairs (l, 1/l) are
/// matched explicitly; a missing partner raises PairingError.
SymplecticEig symplectic_eig(const CMatrix& h, const Tolerance& tol = {});

struct KpqReduction {
  CMatrix transform;  // symplectic S with S* H S = K_{p,q}
  Signature signature;  // (2p, 2q)
};

/// Congruence of a Hermitian symplectic matrix to K_{p,q} by a symplectic S.
KpqReduction reduce_to_Kpq(const CMatrix& h, const Tolerance& tol = {});

/// For Hermitian H with H^T J H = -J: a symplectic S with S* H S = I_{n,n}.
/// Such H always has signature (n,n); eigenvector partners are synthesized as
/// J conj(v).
CMatrix antisymplectic_reduce(const CMatrix& h, const Tolerance& tol = {});

/// For Hermitian H with H^T H = -I: a complex orthogonal M with M* H M = iJ,
/// built as A B^{-1} from the congruences of H and iJ to I_{n,n}.
CMatrix antiorthogonal_reduce(const CMatrix& h, const Tolerance& tol = {});

struct Hilbert90 {
  CMatrix factor;  // Q with H = conj(Q)^{-1} Q
  double condition = 0;
};

/// Splits H with conj(H) H = I as H = conj(Q)^{-1} Q via Q = conj(c) H + c I,
/// trying a fixed scalar sequence until Q is well conditioned. The identity
/// needs only conj(H) H = I, so non-Hermitian inputs are accepted.
Hilbert90 hilbert90(const CMatrix& h, const Tolerance& tol = {});

}  // namespace realform
