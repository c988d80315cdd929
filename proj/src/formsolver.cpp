#include "realform/formsolver.hpp"

#include <random>

#include <Eigen/SVD>

namespace realform {

namespace {

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMatrix unvec(const CVector& v, int n) {
  CMatrix m(n, n);
  for (int j = 0; j < n; ++j) m.col(j) = v.segment(j * n, n);
  return m;
}

// Orthonormal real basis of the Hermitian matrices of size n under the real
// inner product Re tr(A* B).
std::vector<CMatrix> hermitian_basis(int n) {
  std::vector<CMatrix> basis;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int k = 0; k < n; ++k) {
    CMatrix e = CMatrix::Zero(n, n);
    e(k, k) = 1.0;
    basis.push_back(e);
  }
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      CMatrix e = CMatrix::Zero(n, n);
      e(j, k) = inv_sqrt2;
      e(k, j) = inv_sqrt2;
      basis.push_back(e);
      CMatrix f = CMatrix::Zero(n, n);
      f(j, k) = Complex(0, inv_sqrt2);
      f(k, j) = Complex(0, -inv_sqrt2);
      basis.push_back(f);
    }
  return basis;
}

RVector hermitian_coordinates(const CMatrix& m, int n) {
  RVector v(n * n);
  int idx = 0;
  const double sqrt2 = std::sqrt(2.0);
  for (int k = 0; k < n; ++k) v(idx++) = std::real(m(k, k));
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      v(idx++) = sqrt2 * std::real(m(j, k));
      v(idx++) = sqrt2 * std::imag(m(j, k));
    }
  return v;
}

bool nondegenerate(const CMatrix& h, const Tolerance& tol) {
  Eigen::JacobiSVD<CMatrix> svd(h);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return false;
  return sv(sv.size() - 1) > tol.threshold(sv(0));
}

}  // namespace

FormSpace invariant_bilinear_space(const Representation& rep, const Tolerance& tol) {
  const int n = rep.dimension();
  const int n2 = n * n;
  const int s = rep.num_generators();
  // vec(rho^T B rho) = (rho^T kron rho^T) vec(B)
  CMatrix op(s * n2, n2);
  const CMatrix id2 = CMatrix::Identity(n2, n2);
  for (int g = 0; g < s; ++g) {
    const CMatrix gt = rep.generator(g).transpose();
    op.middleRows(g * n2, n2) = kron(gt, gt) - id2;
  }
  Eigen::JacobiSVD<CMatrix> svd(op, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double gate = std::max(tol.rel * (sv.size() ? sv(0) : 0.0), tol.abs);
  FormSpace space{FormKind::Bilinear, {}};
  for (int i = 0; i < n2; ++i) {
    const double value = i < sv.size() ? sv(i) : 0.0;
    if (value <= gate) space.basis.push_back(unvec(svd.matrixV().col(i), n));
  }
  return space;
}

std::optional<CMatrix> invariant_hermitian(const Representation& rep,
                                           const Tolerance& tol) {
  const int n = rep.dimension();
  const int n2 = n * n;
  const int s = rep.num_generators();
  const std::vector<CMatrix> basis = hermitian_basis(n);

  RMatrix op(s * n2, n2);
  for (int col = 0; col < n2; ++col) {
    for (int g = 0; g < s; ++g) {
      const CMatrix image =
          rep.generator(g).adjoint() * basis[col] * rep.generator(g) - basis[col];
      op.block(g * n2, col, n2, 1) = hermitian_coordinates(image, n);
    }
  }

  Eigen::JacobiSVD<RMatrix> svd(op, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double gate = std::max(tol.rel * (sv.size() ? sv(0) : 0.0), tol.abs);
  std::vector<CMatrix> solutions;
  for (int i = 0; i < n2; ++i) {
    const double value = i < sv.size() ? sv(i) : 0.0;
    if (value > gate) continue;
    CMatrix h = CMatrix::Zero(n, n);
    for (int k = 0; k < n2; ++k) h += svd.matrixV()(k, i) * basis[k];
    solutions.push_back(h / h.norm());
  }
  if (solutions.empty()) return std::nullopt;

  for (const CMatrix& h : solutions)
    if (nondegenerate(h, tol)) return h;

  // Degenerate basis elements may still combine to a nondegenerate form.
  if (solutions.size() > 1) {
    std::mt19937_64 rng(777);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int attempt = 0; attempt < 25; ++attempt) {
      CMatrix h = CMatrix::Zero(n, n);
      for (const CMatrix& b : solutions) h += normal(rng) * b;
      h /= h.norm();
      if (nondegenerate(h, tol)) return h;
    }
  }
  throw DegenerateFormError("all invariant Hermitian forms are degenerate");
}

NormalizedForm normalize_lambda(const CMatrix& h, NormalizeRelation relation,
                                const Tolerance& tol) {
  if (h.rows() != h.cols()) throw ParameterError("normalize_lambda needs a square matrix");
  const int n = static_cast<int>(h.rows());

  CMatrix lhs, rhs;
  if (relation == NormalizeRelation::SymplecticJ) {
    rhs = special_matrix(SpecialKind::J, n);
    lhs = h.transpose() * rhs * h;
  } else {
    rhs = CMatrix::Identity(n, n);
    lhs = h.transpose() * h;
  }

  const Complex mu = fit_scalar(lhs, rhs);
  if (std::abs(mu) <= tol.abs)
    throw ContractError("normalize_lambda: fitted scalar vanishes, form is singular");
  if (frobenius(lhs - mu * rhs) > tol.threshold(frobenius(lhs)))
    throw ContractError("normalize_lambda: input does not satisfy the relation");
  if (std::abs(mu.imag()) > tol.threshold(std::abs(mu)))
    throw ContractError("normalize_lambda: scalar has a nonreal part, upstream failure");

  const int sign = mu.real() > 0 ? 1 : -1;
  const double t = 1.0 / std::sqrt(std::abs(mu.real()));
  NormalizedForm out{t * h, sign};

  const CMatrix check = relation == NormalizeRelation::SymplecticJ
                            ? CMatrix(out.form.transpose() * rhs * out.form)
                            : CMatrix(out.form.transpose() * out.form);
  if (frobenius(check - double(sign) * rhs) > tol.threshold(frobenius(rhs)))
    throw NumericalFailureError("normalize_lambda: scaled relation exceeds tolerance");
  return out;
}

}  // namespace realform
