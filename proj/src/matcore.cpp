#include "realform/matcore.hpp"

#include <algorithm>
#include <numeric>

namespace realform {

CMatrix special_matrix(SpecialKind kind, int n) {
  switch (kind) {
    case SpecialKind::Identity:
      if (n < 0) throw ParameterError("identity size must be nonnegative");
      return CMatrix::Identity(n, n);
    case SpecialKind::J: {
      if (n <= 0 || n % 2 != 0) throw ParameterError("J requires positive even size");
      const int half = n / 2;
      CMatrix j = CMatrix::Zero(n, n);
      j.topRightCorner(half, half) = CMatrix::Identity(half, half);
      j.bottomLeftCorner(half, half) = -CMatrix::Identity(half, half);
      return j;
    }
    default:
      throw ParameterError("this special matrix takes parameters (p, q)");
  }
}

CMatrix special_matrix(SpecialKind kind, int p, int q) {
  if (p < 0 || q < 0 || p + q == 0) throw ParameterError("need p, q >= 0 with p + q > 0");
  const int n = p + q;
  switch (kind) {
    case SpecialKind::Ipq: {
      CMatrix m = CMatrix::Identity(n, n);
      m.bottomRightCorner(q, q) = -CMatrix::Identity(q, q);
      return m;
    }
    case SpecialKind::Kpq: {
      const CMatrix ipq = special_matrix(SpecialKind::Ipq, p, q);
      CMatrix m = CMatrix::Zero(2 * n, 2 * n);
      m.topLeftCorner(n, n) = ipq;
      m.bottomRightCorner(n, n) = ipq;
      return m;
    }
    case SpecialKind::Dpq: {
      CMatrix m = CMatrix::Identity(n, n);
      m.bottomRightCorner(q, q) = Complex(0, 1) * CMatrix::Identity(q, q);
      return m;
    }
    default:
      throw ParameterError("this special matrix takes a single size");
  }
}

HermitianEig hermitian_eig(const CMatrix& h, const Tolerance& tol) {
  if (h.rows() != h.cols()) throw ParameterError("hermitian_eig needs a square matrix");
  const double scale = frobenius(h);
  if (frobenius(h - h.adjoint()) > tol.threshold(scale))
    throw ContractError("hermitian_eig: input is not Hermitian");

  Eigen::SelfAdjointEigenSolver<CMatrix> solver((h + h.adjoint()) / 2.0);
  if (solver.info() != Eigen::Success)
    throw NumericalFailureError("hermitian_eig: eigensolver did not converge");

  // Eigen returns ascending order; flip to descending. A stable flip keeps
  // the original relative order inside ties.
  const int n = static_cast<int>(h.rows());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return solver.eigenvalues()(a) > solver.eigenvalues()(b);
  });

  HermitianEig out;
  out.vectors.resize(n, n);
  out.values.resize(n);
  for (int i = 0; i < n; ++i) {
    out.vectors.col(i) = solver.eigenvectors().col(order[i]);
    out.values(i) = solver.eigenvalues()(order[i]);
  }
  return out;
}

Signature signature(const CMatrix& h, const Tolerance& tol) {
  const HermitianEig eig = hermitian_eig(h, tol);
  const double gate = tol.threshold(frobenius(h));
  Signature sig;
  for (int i = 0; i < eig.values.size(); ++i) {
    const double v = eig.values(i);
    if (std::abs(v) <= gate)
      throw DegenerateFormError("signature: near-zero eigenvalue, form is degenerate");
    (v > 0 ? sig.positive : sig.negative)++;
  }
  return sig;
}

namespace {

Complex pfaffian_expand(CMatrix a) {
  const int n = static_cast<int>(a.rows());
  if (n == 0) return Complex(1, 0);
  if (n == 2) return a(0, 1);
  Complex sum(0, 0);
  for (int j = 1; j < n; ++j) {
    if (a(0, j) == Complex(0, 0)) continue;
    // minor with rows/columns 0 and j removed
    CMatrix sub(n - 2, n - 2);
    int r = 0;
    for (int i = 1; i < n; ++i) {
      if (i == j) continue;
      int c = 0;
      for (int k = 1; k < n; ++k) {
        if (k == j) continue;
        sub(r, c++) = a(i, k);
      }
      ++r;
    }
    const double sign = (j % 2 == 1) ? 1.0 : -1.0;
    sum += sign * a(0, j) * pfaffian_expand(std::move(sub));
  }
  return sum;
}

}  // namespace

Complex pfaffian(const CMatrix& a, const Tolerance& tol) {
  if (a.rows() != a.cols()) throw ParameterError("pfaffian needs a square matrix");
  const int n = static_cast<int>(a.rows());
  if (n % 2 != 0) throw ContractError("pfaffian: odd size");
  if (n > 8) throw ParameterError("pfaffian: sizes above 8 are unsupported");
  const double scale = frobenius(a);
  if (frobenius(a + a.transpose()) > tol.threshold(scale))
    throw ContractError("pfaffian: input is not skew-symmetric");
  return pfaffian_expand((a - a.transpose()) / 2.0);
}

SylvesterResult sylvester_real(const CMatrix& c, const Tolerance& tol) {
  if (c.rows() != c.cols()) throw ParameterError("sylvester_real needs a square matrix");
  const double scale = frobenius(c);
  if (c.imag().norm() > tol.threshold(scale))
    throw ContractError("sylvester_real: input has complex entries");
  RMatrix cr = (c.real() + c.real().transpose()) / 2.0;
  if ((c.real() - cr).norm() > tol.threshold(scale))
    throw ContractError("sylvester_real: input is not symmetric");

  Eigen::SelfAdjointEigenSolver<RMatrix> solver(cr);
  if (solver.info() != Eigen::Success)
    throw NumericalFailureError("sylvester_real: eigensolver did not converge");

  const int n = static_cast<int>(cr.rows());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return solver.eigenvalues()(a) > solver.eigenvalues()(b);
  });

  const double gate = tol.threshold(scale);
  Signature sig;
  RMatrix r(n, n);
  for (int i = 0; i < n; ++i) {
    const double lambda = solver.eigenvalues()(order[i]);
    if (std::abs(lambda) <= gate)
      throw DegenerateFormError("sylvester_real: form is singular");
    (lambda > 0 ? sig.positive : sig.negative)++;
    // C = V diag(lambda) V^T = R^T I_{p,q} R with R = diag(sqrt|lambda|) V^T
    r.row(i) = std::sqrt(std::abs(lambda)) * solver.eigenvectors().col(order[i]).transpose();
  }
  return SylvesterResult{std::move(r), sig};
}

}  // namespace realform
