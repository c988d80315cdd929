#include "realform/decomp.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include <Eigen/SVD>

namespace realform {

namespace {

struct Cluster {
  double value = 0;
  std::vector<int> indices;
};

// Groups a descending eigenvalue list into clusters of nearly equal values.
std::vector<Cluster> cluster_eigenvalues(const RVector& values, double gap) {
  std::vector<Cluster> clusters;
  for (int i = 0; i < values.size(); ++i) {
    if (!clusters.empty() &&
        std::abs(values(i) - clusters.back().value) <= gap * std::max(1.0, std::abs(values(i)))) {
      clusters.back().indices.push_back(i);
    } else {
      clusters.push_back({values(i), {i}});
    }
  }
  for (auto& c : clusters) {
    double mean = 0;
    for (int i : c.indices) mean += values(i);
    c.value = mean / static_cast<double>(c.indices.size());
  }
  return clusters;
}

constexpr double kClusterGap = 1e-7;

void check_hermitian(const CMatrix& h, const Tolerance& tol, const char* who) {
  if (h.rows() != h.cols()) throw ParameterError(std::string(who) + ": square matrix required");
  if (frobenius(h - h.adjoint()) > tol.threshold(frobenius(h)))
    throw ContractError(std::string(who) + ": input is not Hermitian");
}

}  // namespace

PolarPair polar_in_group(const CMatrix& m, const GroupKind& kind, const Tolerance& tol) {
  const ResidualReport membership = validate_membership(m, kind, tol);
  if (!membership.pass)
    throw ContractError("polar_in_group: input fails " + kind.name() + " membership");

  const HermitianEig eig = hermitian_eig(m.adjoint() * m, tol);
  const int n = kind.n;
  CVector sqrt_values(n), inv_sqrt_values(n);
  for (int i = 0; i < n; ++i) {
    if (eig.values(i) <= 0)
      throw ContractError("polar_in_group: input is singular");
    sqrt_values(i) = std::sqrt(eig.values(i));
    inv_sqrt_values(i) = 1.0 / sqrt_values(i);
  }
  PolarPair pair;
  pair.positive = eig.vectors * sqrt_values.asDiagonal() * eig.vectors.adjoint();
  pair.unitary = m * (eig.vectors * inv_sqrt_values.asDiagonal() * eig.vectors.adjoint());

  if (frobenius(m - pair.unitary * pair.positive) > tol.threshold(frobenius(m)))
    throw NumericalFailureError("polar_in_group: reconstruction residual too large");
  const Tolerance loose{10 * tol.rel, 10 * tol.abs};
  if (!validate_membership(pair.unitary, kind, loose).pass ||
      !validate_membership(pair.positive, kind, loose).pass)
    throw ContractError("polar_in_group: a polar factor left the group");
  return pair;
}

SymplecticEig symplectic_eig(const CMatrix& h, const Tolerance& tol) {
  check_hermitian(h, tol, "symplectic_eig");
  const int size = static_cast<int>(h.rows());
  if (size % 2 != 0) throw ParameterError("symplectic_eig: even size required");
  const int n = size / 2;
  const CMatrix j = special_matrix(SpecialKind::J, size);
  if (frobenius(h.transpose() * j * h - j) > tol.threshold(frobenius(j)))
    throw ContractError("symplectic_eig: input is not symplectic");

  const HermitianEig eig = hermitian_eig(h, tol);
  const std::vector<Cluster> clusters = cluster_eigenvalues(eig.values, kClusterGap);

  std::vector<CVector> first_cols;
  std::vector<double> first_vals;
  std::vector<bool> consumed(clusters.size(), false);

  const auto theta = [&](const CVector& v) { return CVector(j * v.conjugate()); };

  for (size_t c = 0; c < clusters.size(); ++c) {
    if (consumed[c]) continue;
    consumed[c] = true;
    const double lambda = clusters[c].value;
    if (std::abs(lambda) < kClusterGap)
      throw ContractError("symplectic_eig: zero eigenvalue on a symplectic matrix");

    const bool self_paired =
        std::abs(lambda - 1.0 / lambda) <= kClusterGap * std::max(1.0, std::abs(lambda));
    if (self_paired) {
      const int dim = static_cast<int>(clusters[c].indices.size());
      if (dim % 2 != 0)
        throw PairingError("symplectic_eig: self-paired eigenspace has odd dimension");
      // theta-adapted half basis: each chosen u brings its partner J conj(u)
      CMatrix span(size, 0);
      for (int picked = 0; picked < dim / 2; ++picked) {
        CVector best;
        double best_norm = -1;
        for (int idx : clusters[c].indices) {
          CVector cand = eig.vectors.col(idx);
          if (span.cols() > 0) cand -= span * (span.adjoint() * cand);
          if (cand.norm() > best_norm) {
            best_norm = cand.norm();
            best = cand;
          }
        }
        if (best_norm < 1e-8)
          throw PairingError("symplectic_eig: self-paired eigenspace is not conjugation-stable");
        best /= best.norm();
        span.conservativeResize(size, span.cols() + 2);
        span.col(span.cols() - 2) = best;
        span.col(span.cols() - 1) = theta(best);
        first_cols.push_back(best);
        first_vals.push_back(lambda);
      }
    } else {
      const double target = 1.0 / lambda;
      int partner = -1;
      for (size_t c2 = 0; c2 < clusters.size(); ++c2) {
        if (consumed[c2]) continue;
        if (std::abs(clusters[c2].value - target) <=
            kClusterGap * std::max(1.0, std::abs(target))) {
          partner = static_cast<int>(c2);
          break;
        }
      }
      if (partner < 0)
        throw PairingError("symplectic_eig: eigenvalue " + std::to_string(lambda) +
                           " has no reciprocal partner");
      if (clusters[partner].indices.size() != clusters[c].indices.size())
        throw PairingError("symplectic_eig: reciprocal eigenspaces have mismatched dimensions");
      consumed[partner] = true;
      const size_t outer = std::abs(lambda) >= 1.0 ? c : static_cast<size_t>(partner);
      for (int idx : clusters[outer].indices) {
        first_cols.push_back(eig.vectors.col(idx));
        first_vals.push_back(clusters[outer].value);
      }
    }
  }

  if (static_cast<int>(first_cols.size()) != n)
    throw PairingError("symplectic_eig: pairing did not fill half the space");

  // sort the first half by descending eigenvalue for a deterministic layout
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return first_vals[a] > first_vals[b]; });

  SymplecticEig out;
  out.vectors.resize(size, size);
  out.diagonal.resize(size);
  for (int k = 0; k < n; ++k) {
    const CVector& v = first_cols[order[k]];
    out.vectors.col(k) = v;
    out.vectors.col(n + k) = -theta(v);
    out.diagonal(k) = first_vals[order[k]];
    out.diagonal(n + k) = 1.0 / first_vals[order[k]];
  }

  const CMatrix v = out.vectors;
  const CMatrix d = out.diagonal.cast<Complex>().asDiagonal();
  if (frobenius(v.adjoint() * v - CMatrix::Identity(size, size)) >
          tol.threshold(std::sqrt(double(size))) ||
      frobenius(v.transpose() * j * v - j) > tol.threshold(frobenius(j)) ||
      frobenius(h - v * d * v.adjoint()) > tol.threshold(frobenius(h)))
    throw PairingError("symplectic_eig: assembled decomposition exceeds tolerance");
  return out;
}

KpqReduction reduce_to_Kpq(const CMatrix& h, const Tolerance& tol) {
  const SymplecticEig eig = symplectic_eig(h, tol);
  const int size = static_cast<int>(h.rows());
  const int n = size / 2;

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_partition(order.begin(), order.end(),
                        [&](int i) { return eig.diagonal(i) > 0; });
  int positives = 0;
  for (int i = 0; i < n; ++i)
    if (eig.diagonal(i) > 0) ++positives;

  // block transform diag(A, A^{-T}) with A = permuted |L|^{-1/2}
  CMatrix a = CMatrix::Zero(n, n);
  for (int col = 0; col < n; ++col)
    a(order[col], col) = 1.0 / std::sqrt(std::abs(eig.diagonal(order[col])));
  CMatrix block = CMatrix::Zero(size, size);
  block.topLeftCorner(n, n) = a;
  block.bottomRightCorner(n, n) = a.transpose().inverse();

  KpqReduction out;
  out.transform = eig.vectors * block;
  out.signature = Signature{2 * positives, 2 * (n - positives)};

  const CMatrix k =
      special_matrix(SpecialKind::Kpq, positives, n - positives);
  if (frobenius(out.transform.adjoint() * h * out.transform - k) >
      tol.threshold(frobenius(k)))
    throw NumericalFailureError("reduce_to_Kpq: congruence residual too large");
  return out;
}

CMatrix antisymplectic_reduce(const CMatrix& h, const Tolerance& tol) {
  check_hermitian(h, tol, "antisymplectic_reduce");
  const int size = static_cast<int>(h.rows());
  if (size % 2 != 0) throw ParameterError("antisymplectic_reduce: even size required");
  const int n = size / 2;
  const CMatrix j = special_matrix(SpecialKind::J, size);
  if (frobenius(h.transpose() * j * h + j) > tol.threshold(frobenius(j)))
    throw ContractError("antisymplectic_reduce: input does not satisfy H^T J H = -J");

  const HermitianEig eig = hermitian_eig(h, tol);
  int positives = 0;
  for (int i = 0; i < size; ++i)
    if (eig.values(i) > 0) ++positives;
  if (positives != n)
    throw ContractError("antisymplectic_reduce: signature must be (n,n)");

  // descending order puts the positive eigenvalues first; partners J conj(v)
  // carry the eigenvalues -1/lambda
  CMatrix v(size, size);
  RVector lambda(n);
  for (int k = 0; k < n; ++k) {
    lambda(k) = eig.values(k);
    v.col(k) = eig.vectors.col(k);
    v.col(n + k) = -j * eig.vectors.col(k).conjugate();
  }

  CMatrix d = CMatrix::Zero(size, size);
  for (int k = 0; k < n; ++k) {
    d(k, k) = lambda(k);
    d(n + k, n + k) = -1.0 / lambda(k);
  }
  if (frobenius(v.adjoint() * h * v - d) > tol.threshold(frobenius(h)) ||
      frobenius(v.transpose() * j * v - j) > tol.threshold(frobenius(j)))
    throw PairingError("antisymplectic_reduce: eigenvector pairing failed");

  CMatrix block = CMatrix::Zero(size, size);
  for (int k = 0; k < n; ++k) {
    block(k, k) = 1.0 / std::sqrt(lambda(k));
    block(n + k, n + k) = std::sqrt(lambda(k));
  }
  CMatrix s = v * block;

  const CMatrix inn = special_matrix(SpecialKind::Ipq, n, n);
  if (frobenius(s.adjoint() * h * s - inn) > tol.threshold(frobenius(inn)) ||
      frobenius(s.transpose() * j * s - j) > tol.threshold(frobenius(j)))
    throw NumericalFailureError("antisymplectic_reduce: congruence residual too large");
  return s;
}

namespace {

// Congruence M with M* H M = I_{n,n} and M^T M = [[0, I], [I, 0]] for
// Hermitian H with H^T H = -I; partners of eigenvectors are plain conjugates.
CMatrix antiorthogonal_stage1(const CMatrix& h, const Tolerance& tol) {
  const int size = static_cast<int>(h.rows());
  const int n = size / 2;
  const HermitianEig eig = hermitian_eig(h, tol);
  int positives = 0;
  for (int i = 0; i < size; ++i)
    if (eig.values(i) > 0) ++positives;
  if (positives != n)
    throw ContractError("antiorthogonal_reduce: signature must be (n,n)");

  CMatrix v(size, size);
  RVector lambda(n);
  for (int k = 0; k < n; ++k) {
    lambda(k) = eig.values(k);
    v.col(k) = eig.vectors.col(k);
    v.col(n + k) = eig.vectors.col(k).conjugate();
  }

  CMatrix d = CMatrix::Zero(size, size);
  CMatrix swap = CMatrix::Zero(size, size);
  swap.topRightCorner(n, n) = CMatrix::Identity(n, n);
  swap.bottomLeftCorner(n, n) = CMatrix::Identity(n, n);
  for (int k = 0; k < n; ++k) {
    d(k, k) = lambda(k);
    d(n + k, n + k) = -1.0 / lambda(k);
  }
  if (frobenius(v.adjoint() * h * v - d) > tol.threshold(frobenius(h)) ||
      frobenius(v.transpose() * v - swap) > tol.threshold(std::sqrt(double(size))))
    throw PairingError("antiorthogonal_reduce: conjugate pairing failed");

  CMatrix block = CMatrix::Zero(size, size);
  for (int k = 0; k < n; ++k) {
    block(k, k) = 1.0 / std::sqrt(lambda(k));
    block(n + k, n + k) = std::sqrt(lambda(k));
  }
  return v * block;
}

}  // namespace

CMatrix antiorthogonal_reduce(const CMatrix& h, const Tolerance& tol) {
  check_hermitian(h, tol, "antiorthogonal_reduce");
  const int size = static_cast<int>(h.rows());
  if (size % 2 != 0) throw ParameterError("antiorthogonal_reduce: even size required");
  const CMatrix id = CMatrix::Identity(size, size);
  if (frobenius(h.transpose() * h + id) > tol.threshold(frobenius(id)))
    throw ContractError("antiorthogonal_reduce: input does not satisfy H^T H = -I");

  const CMatrix ij = Complex(0, 1) * special_matrix(SpecialKind::J, size);
  const CMatrix a = antiorthogonal_stage1(h, tol);
  const CMatrix b = antiorthogonal_stage1(ij, tol);
  const CMatrix m = a * b.inverse();

  if (frobenius(m.transpose() * m - id) > tol.threshold(frobenius(id)) ||
      frobenius(m.adjoint() * h * m - ij) > tol.threshold(frobenius(ij)))
    throw NumericalFailureError("antiorthogonal_reduce: congruence residual too large");
  return m;
}

Hilbert90 hilbert90(const CMatrix& h, const Tolerance& tol) {
  if (h.rows() != h.cols()) throw ParameterError("hilbert90: square matrix required");
  const int n = static_cast<int>(h.rows());
  const CMatrix id = CMatrix::Identity(n, n);
  if (frobenius(h.conjugate() * h - id) > tol.threshold(frobenius(id)))
    throw ContractError("hilbert90: input does not satisfy conj(H) H = I");

  std::vector<Complex> scalars = {Complex(0.5, 0), Complex(0, 1), Complex(1, 1)};
  std::mt19937_64 rng(9001);
  std::uniform_real_distribution<double> angle(0.0, 2 * 3.14159265358979323846);
  for (int i = 0; i < 32; ++i) {
    const double a = angle(rng);
    scalars.emplace_back(std::cos(a), std::sin(a));
  }

  for (const Complex& c : scalars) {
    const CMatrix q = std::conj(c) * h + c * id;
    Eigen::JacobiSVD<CMatrix> svd(q);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) <= 0) continue;
    const double condition = sv(0) / sv(sv.size() - 1);
    if (condition >= 1e8) continue;
    if (frobenius(q.conjugate() * h - q) > tol.threshold(frobenius(q)))
      throw NumericalFailureError("hilbert90: splitting identity exceeds tolerance");
    return Hilbert90{q, condition};
  }
  throw ConditioningError("hilbert90: every scalar choice produced a near-singular factor");
}

}  // namespace realform
