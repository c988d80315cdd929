#include "realform/classifier.hpp"

#include <random>

#include <Eigen/SVD>

#include "realform/commutant.hpp"
#include "realform/decomp.hpp"
#include "realform/formsolver.hpp"

namespace realform {

double ConjugationCertificate::max_residual() const {
  double m = 0;
  for (double r : residuals) m = std::max(m, r);
  return m;
}

namespace {

CMatrix det_normalized(const CMatrix& p) {
  const int n = static_cast<int>(p.rows());
  const Complex det = p.determinant();
  if (std::abs(det) == 0.0) throw NumericalFailureError("conjugator is singular");
  return std::pow(det, -1.0 / n) * p;
}

double condition_number(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) <= 0) return std::numeric_limits<double>::infinity();
  return sv(0) / sv(sv.size() - 1);
}

// Fits P conj(P) = s I. Schur guarantees scalarity for an irreducible
// representation; a significant off-scalar part or imaginary part signals an
// upstream failure.
double conjugation_scalar(const CMatrix& p, const Tolerance& tol) {
  const int n = static_cast<int>(p.rows());
  const CMatrix prod = p * p.conjugate();
  const Complex s = fit_scalar(prod, CMatrix::Identity(n, n));
  if (frobenius(prod - s * CMatrix::Identity(n, n)) > 100 * tol.threshold(frobenius(prod)))
    throw ContractError("P conj(P) is not scalar; representation not irreducible enough");
  if (std::abs(s.imag()) > tol.threshold(std::abs(s)))
    throw ContractError("P conj(P) fits a scalar with nonreal part");
  if (std::abs(s.real()) <= tol.abs)
    throw NumericalFailureError("P conj(P) fits a vanishing scalar");
  return s.real();
}

// For P with P conj(P) = -I: an invertible T whose columns pair v with
// -P conj(v), so that T^{-1} rho T commutes with the standard quaternionic
// structure J. Column choices are greedy against the current span.
CMatrix quaternionic_basis(const CMatrix& p, const Tolerance& tol) {
  const int n = static_cast<int>(p.rows());
  if (n % 2 != 0) throw ContractError("quaternionic structure needs even dimension");
  const int m = n / 2;
  std::vector<CVector> firsts, seconds;
  std::mt19937_64 rng(31337);
  std::normal_distribution<double> normal(0.0, 1.0);

  for (int k = 0; k < m; ++k) {
    CMatrix chosen(n, 2 * k);
    for (int i = 0; i < k; ++i) {
      chosen.col(2 * i) = firsts[i];
      chosen.col(2 * i + 1) = seconds[i];
    }
    CMatrix q(n, 2 * k);
    if (k > 0) {
      Eigen::HouseholderQR<CMatrix> qr(chosen);
      q = qr.householderQ() * CMatrix::Identity(n, 2 * k);
    }
    const auto residual_of = [&](const CVector& cand) {
      CVector r = cand;
      if (k > 0) r -= q * (q.adjoint() * cand);
      return r;
    };
    CVector best;
    double best_norm = -1;
    for (int c = 0; c < n; ++c) {
      const CVector r = residual_of(CVector::Unit(n, c));
      if (r.norm() > best_norm) {
        best_norm = r.norm();
        best = r;
      }
    }
    for (int extra = 0; extra < 8 && best_norm < 0.1; ++extra) {
      CVector cand(n);
      for (int i = 0; i < n; ++i) cand(i) = Complex(normal(rng), normal(rng));
      const CVector r = residual_of(cand / cand.norm());
      if (r.norm() > best_norm) {
        best_norm = r.norm();
        best = r;
      }
    }
    best /= best.norm();
    firsts.push_back(best);
    seconds.push_back(-p * best.conjugate());
  }

  CMatrix t(n, n);
  for (int k = 0; k < m; ++k) {
    t.col(k) = firsts[k];
    t.col(m + k) = seconds[k];
  }
  const CMatrix j = special_matrix(SpecialKind::J, n);
  if (frobenius(p * t.conjugate() - t * j) >
      100 * tol.threshold(frobenius(t) * std::max(1.0, frobenius(p))))
    throw NumericalFailureError("quaternionic basis does not intertwine the structures");
  if (condition_number(t) >= 1e8)
    throw ConditioningError("quaternionic basis is ill conditioned");
  return t;
}

struct BranchOutcome {
  RealFormTag tag;
  CMatrix conjugator;
  std::optional<int> lambda_sign;
  std::string branch;
};

BranchOutcome unitary_branch(const Representation& rep, const Tolerance& tol) {
  const bool special = rep.kind().family == GroupFamily::SL;
  const auto h = invariant_hermitian(rep, tol);
  if (!h)
    throw DegenerateFormError(
        "no invariant Hermitian form although the character is Phi2-fixed");

  CMatrix form = *h;
  HermitianEig eig = hermitian_eig(form, tol);
  int positives = 0;
  for (int i = 0; i < eig.values.size(); ++i)
    if (eig.values(i) > 0) ++positives;
  const int n = rep.dimension();
  if (2 * positives < n) {  // -H is invariant too; report p >= q
    form = -form;
    eig = hermitian_eig(form, tol);
    positives = n - positives;
  }

  // H = S* I_{p,q} S with S = diag(sqrt|d|) U*
  CVector scaling(n);
  for (int i = 0; i < n; ++i) scaling(i) = std::sqrt(std::abs(eig.values(i)));
  CMatrix s = scaling.asDiagonal() * eig.vectors.adjoint();
  if (special) s = det_normalized(s);

  BranchOutcome out;
  out.tag = RealFormTag::make(special ? RealFormKind::SU : RealFormKind::U, positives,
                              n - positives);
  out.conjugator = s;
  out.branch = "unitary";
  return out;
}

BranchOutcome real_or_quaternionic_branch(const Representation& rep,
                                          const CMatrix& intertwiner_p,
                                          const Tolerance& tol) {
  const bool special = rep.kind().family == GroupFamily::SL;
  const int n = rep.dimension();
  const double s = conjugation_scalar(intertwiner_p, tol);
  const CMatrix p1 = intertwiner_p / std::sqrt(std::abs(s));

  BranchOutcome out;
  if (s > 0) {
    // P conj(P) = I: split conj(P) = conj(Q)^{-1} Q, then Q rho Q^{-1} is real
    const Hilbert90 split = hilbert90(p1.conjugate(), tol);
    out.conjugator = special ? det_normalized(split.factor) : split.factor;
    out.tag = RealFormTag::make(special ? RealFormKind::SL_R : RealFormKind::GL_R, n);
    out.branch = "real";
  } else {
    if (n % 2 != 0)
      throw ContractError("negative conjugation scalar in odd dimension");
    const CMatrix t = quaternionic_basis(p1, tol);
    CMatrix p = t.inverse();
    if (special) p = det_normalized(p);
    out.conjugator = p;
    out.tag = RealFormTag::make(special ? RealFormKind::SL_H : RealFormKind::GL_H, n / 2);
    out.branch = "quaternionic";
  }
  return out;
}

BranchOutcome symplectic_branch(const Representation& rep, const Tolerance& tol) {
  const auto h = invariant_hermitian(rep, tol);
  if (!h)
    throw DegenerateFormError(
        "no invariant Hermitian form although the character is Phi-fixed");
  const NormalizedForm normalized = normalize_lambda(*h, NormalizeRelation::SymplecticJ, tol);

  BranchOutcome out;
  out.lambda_sign = normalized.sign;
  if (normalized.sign > 0) {
    CMatrix form = normalized.form;
    {
      const HermitianEig eig = hermitian_eig(form, tol);
      int positives = 0;
      for (int i = 0; i < eig.values.size(); ++i)
        if (eig.values(i) > 0) ++positives;
      if (2 * positives < rep.dimension()) form = -form;  // p >= q normalization
    }
    const KpqReduction reduction = reduce_to_Kpq(form, tol);
    out.conjugator = reduction.transform.inverse();
    out.tag = RealFormTag::make(RealFormKind::Sp_PQ, reduction.signature.positive / 2,
                                reduction.signature.negative / 2);
    out.branch = "symplectic split";
  } else {
    const CMatrix s = antisymplectic_reduce(normalized.form, tol);
    const CMatrix ij =
        Complex(0, 1) * special_matrix(SpecialKind::J, rep.dimension());
    const CMatrix s1 = antisymplectic_reduce(ij, tol);
    out.conjugator = s1 * s.inverse();
    out.tag = RealFormTag::make(RealFormKind::Sp_R, rep.dimension() / 2);
    out.branch = "symplectic real";
  }
  return out;
}

struct RealOrthogonalResult {
  CMatrix conjugator;  // lies in O(n, C)
  int p = 0;
  int q = 0;
};

// Given Q with Q rho Q^{-1} real, produce the full conjugation into the copy
// D_{p,q} O(p,q) D_{p,q}^{-1}: pick an invertible real form A + l0 B from the
// preserved complex bilinear form, normalize it by real congruence, embed by
// D_{p,q}, and rescale the conjugator back into O(n, C).
RealOrthogonalResult real_orthogonal_pipeline(const Representation& rep, const CMatrix& q,
                                              const Tolerance& tol) {
  const int n = rep.dimension();
  std::vector<CMatrix> sigma;
  const CMatrix qinv = q.inverse();
  for (const CMatrix& g : rep.generators()) {
    const CMatrix image = q * g * qinv;
    if (image.imag().norm() > 100 * tol.threshold(frobenius(image)))
      throw NumericalFailureError("realification left imaginary parts behind");
    sigma.push_back(image);
  }

  const CMatrix bilinear = qinv.transpose() * qinv;  // preserved by sigma
  RMatrix a = bilinear.real();
  a = (a + a.transpose()).eval() / 2.0;
  RMatrix b = bilinear.imag();
  b = (b + b.transpose()).eval() / 2.0;

  // deterministic search 0, 1, -1, 2, -2, ... for an invertible combination
  std::optional<RMatrix> real_form;
  for (int step = 0; step <= 2 * n + 2 && !real_form; ++step) {
    const double l0 = (step == 0) ? 0.0 : (step % 2 == 1 ? (step + 1) / 2 : -(step / 2));
    RMatrix c = a + l0 * b;
    Eigen::JacobiSVD<RMatrix> svd(c);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) > std::max(tol.rel * sv(0), tol.abs)) real_form = c;
  }
  if (!real_form)
    throw NumericalFailureError("no invertible real combination of the bilinear form");

  SylvesterResult syl = sylvester_real(real_form->cast<Complex>(), tol);
  if (syl.signature.positive < syl.signature.negative)
    syl = sylvester_real((-*real_form).cast<Complex>(), tol);

  const CMatrix d =
      special_matrix(SpecialKind::Dpq, syl.signature.positive, syl.signature.negative);
  CMatrix g = d * syl.transform.cast<Complex>() * q;

  // two irreducible orthogonal representations conjugate in GL are conjugate
  // in O(n, C): G G^T is scalar, and dividing by its square root lands there
  const CMatrix ggt = g * g.transpose();
  const Complex nu = fit_scalar(ggt, CMatrix::Identity(n, n));
  if (frobenius(ggt - nu * CMatrix::Identity(n, n)) > 100 * tol.threshold(frobenius(ggt)))
    throw NumericalFailureError("conjugator does not scale into O(n, C)");
  g /= std::sqrt(nu);

  return RealOrthogonalResult{g, syl.signature.positive, syl.signature.negative};
}

BranchOutcome orthogonal_odd_branch(const Representation& rep, const CMatrix& intertwiner_p,
                                    const Tolerance& tol) {
  const bool special = rep.kind().family == GroupFamily::SO;
  const double s = conjugation_scalar(intertwiner_p, tol);
  if (s <= 0)
    throw ContractError("conjugation scalar must be positive in odd dimension");
  const CMatrix p1 = intertwiner_p / std::sqrt(s);
  const Hilbert90 split = hilbert90(p1.conjugate(), tol);

  RealOrthogonalResult result = real_orthogonal_pipeline(rep, split.factor, tol);
  if (special && std::abs(result.conjugator.determinant() + 1.0) < 0.5)
    result.conjugator = -result.conjugator;  // -I recovers determinant one in odd size

  BranchOutcome out;
  out.conjugator = result.conjugator;
  out.tag = RealFormTag::make(special ? RealFormKind::SO_PQ : RealFormKind::O_PQ, result.p,
                              result.q);
  out.branch = special ? "special orthogonal odd" : "orthogonal odd";
  return out;
}

BranchOutcome orthogonal_even_branch(const Representation& rep, const Tolerance& tol) {
  const bool special = rep.kind().family == GroupFamily::SO;
  const int n = rep.dimension();
  const int m = n / 2;
  const auto h = invariant_hermitian(rep, tol);
  if (!h)
    throw DegenerateFormError(
        "no invariant Hermitian form although the character is Phi-fixed");
  const NormalizedForm normalized = normalize_lambda(*h, NormalizeRelation::OrthogonalI, tol);

  BranchOutcome out;
  out.lambda_sign = normalized.sign;
  if (normalized.sign > 0) {
    // H Hermitian with H^T H = I means conj(H) H = I; Hilbert 90 realifies
    const Hilbert90 split = hilbert90(normalized.form, tol);
    RealOrthogonalResult result = real_orthogonal_pipeline(rep, split.factor, tol);
    if (special && std::abs(result.conjugator.determinant() + 1.0) < 0.5) {
      // diag(1, ..., 1, -1) sits in every copy O_{p,q} with determinant -1
      result.conjugator =
          special_matrix(SpecialKind::Ipq, n - 1, 1) * result.conjugator;
    }
    out.conjugator = result.conjugator;
    out.tag = RealFormTag::make(special ? RealFormKind::SO_PQ : RealFormKind::O_PQ,
                                result.p, result.q);
    out.branch = special ? "special orthogonal even, real case" : "orthogonal even, real case";
  } else {
    const CMatrix mo = antiorthogonal_reduce(normalized.form, tol);
    CMatrix p = mo.inverse();
    if (!special) {
      out.tag = RealFormTag::make(RealFormKind::O_H, m);
      out.branch = "orthogonal even, quaternionic case";
    } else {
      const double det = p.determinant().real();
      if (det > 0) {
        out.tag = RealFormTag::make(RealFormKind::SO_H, m);
      } else if (m % 2 == 1) {
        // the block swap has determinant -1 and stabilizes SO(m, H)
        CMatrix swap = CMatrix::Zero(n, n);
        swap.topRightCorner(m, m) = CMatrix::Identity(m, m);
        swap.bottomLeftCorner(m, m) = CMatrix::Identity(m, m);
        p = swap * p;
        out.tag = RealFormTag::make(RealFormKind::SO_H, m);
      } else {
        // ambient dimension divisible by 4: a determinant -1 conjugator
        // switches to the second copy SO^-(m, H)
        p = so_minus_p0(n) * p;
        out.tag = RealFormTag::make(RealFormKind::SO_H_MINUS, m);
      }
      out.branch = "special orthogonal even, quaternionic case";
    }
    out.conjugator = p;
  }
  return out;
}

std::vector<double> conjugated_residuals(const Representation& rep, const CMatrix& p,
                                         const RealFormTag& tag, const Tolerance& tol,
                                         bool* all_pass) {
  const CMatrix pinv = p.inverse();
  std::vector<double> residuals;
  bool ok = true;
  for (const CMatrix& g : rep.generators()) {
    const ResidualReport report = validate_membership(p * g * pinv, tag, tol);
    residuals.push_back(report.max_value);
    ok = ok && report.pass;
  }
  if (all_pass) *all_pass = ok;
  return residuals;
}

}  // namespace

ConjugationCertificate classify_irreducible(const Representation& rep, Involution which,
                                            const Tolerance& tol) {
  if (!is_irreducible(rep, tol))
    throw NotApplicableError("classify_irreducible: representation is not irreducible");
  const PhiFixedness fixedness = is_phi_fixed(rep, which, tol);
  if (!fixedness.fixed)
    throw NotApplicableError("classify_irreducible: character is not fixed by the involution");

  BranchOutcome outcome;
  switch (rep.kind().family) {
    case GroupFamily::GL:
    case GroupFamily::SL:
      if (which == Involution::Phi2) {
        outcome = unitary_branch(rep, tol);
      } else {
        outcome = real_or_quaternionic_branch(rep, fixedness.intertwiner, tol);
      }
      break;
    case GroupFamily::Sp:
      outcome = symplectic_branch(rep, tol);
      break;
    case GroupFamily::O:
    case GroupFamily::SO:
      // Phi1 and Phi2 agree pointwise on orthogonal matrices, so the fixedness
      // intertwiner serves either involution.
      if (rep.dimension() % 2 == 1) {
        outcome = orthogonal_odd_branch(rep, fixedness.intertwiner, tol);
      } else {
        outcome = orthogonal_even_branch(rep, tol);
      }
      break;
  }

  // The symplectic and orthogonal cases conjugate inside the ambient group.
  const GroupFamily family = rep.kind().family;
  if (family == GroupFamily::Sp || family == GroupFamily::O || family == GroupFamily::SO) {
    const Tolerance loose{100 * tol.rel, 100 * tol.abs};
    if (!validate_membership(outcome.conjugator, rep.kind(), loose).pass)
      throw NumericalFailureError("branch '" + outcome.branch +
                                  "': conjugator left the ambient group");
  }

  ConjugationCertificate cert;
  cert.tag = outcome.tag;
  cert.conjugator = outcome.conjugator;
  cert.lambda_sign = outcome.lambda_sign;
  cert.branch = outcome.branch;
  bool ok = true;
  cert.residuals = conjugated_residuals(rep, cert.conjugator, cert.tag, tol, &ok);
  if (!ok)
    throw NumericalFailureError("branch '" + cert.branch + "': certificate residual " +
                                std::to_string(cert.max_residual()) + " exceeds tolerance");
  return cert;
}

ResidualReport verify_certificate(const Representation& rep,
                                  const ConjugationCertificate& cert,
                                  const Tolerance& tol) {
  if (cert.conjugator.rows() != rep.dimension() ||
      cert.conjugator.cols() != rep.dimension())
    throw ParameterError("verify_certificate: conjugator size mismatch");
  const CMatrix pinv = cert.conjugator.inverse();
  ResidualReport out;
  for (int g = 0; g < rep.num_generators(); ++g) {
    const CMatrix image = cert.conjugator * rep.generator(g) * pinv;
    const ResidualReport one = validate_membership(image, cert.tag, tol);
    for (const ResidualEntry& entry : one.entries) {
      out.entries.push_back({"generator " + std::to_string(g) + ": " + entry.equation,
                             entry.value, entry.threshold, entry.pass});
      out.pass = out.pass && entry.pass;
      out.max_value = std::max(out.max_value, entry.pass ? entry.value : std::max(entry.value, 1.0));
    }
  }
  return out;
}

RealFormTag compact_form_of(const GroupKind& kind) {
  switch (kind.family) {
    case GroupFamily::GL: return RealFormTag::make(RealFormKind::U, kind.n, 0);
    case GroupFamily::SL: return RealFormTag::make(RealFormKind::SU, kind.n, 0);
    case GroupFamily::O: return RealFormTag::make(RealFormKind::O_PQ, kind.n, 0);
    case GroupFamily::SO: return RealFormTag::make(RealFormKind::SO_PQ, kind.n, 0);
    case GroupFamily::Sp: return RealFormTag::make(RealFormKind::Sp_PQ, kind.n / 2, 0);
  }
  throw ParameterError("unknown group kind");
}

CMatrix compact_conjugator(const Representation& rep1, const Representation& rep2,
                           const CMatrix& p, const Tolerance& tol) {
  if (!(rep1.kind() == rep2.kind()))
    throw ParameterError("compact_conjugator: representations have different kinds");
  if (rep1.num_generators() != rep2.num_generators())
    throw ParameterError("compact_conjugator: generator counts differ");
  const RealFormTag compact = compact_form_of(rep1.kind());
  for (const CMatrix& g : rep1.generators())
    if (!validate_membership(g, compact, tol).pass)
      throw ContractError("compact_conjugator: rep1 is not in the compact form");
  for (const CMatrix& g : rep2.generators())
    if (!validate_membership(g, compact, tol).pass)
      throw ContractError("compact_conjugator: rep2 is not in the compact form");

  const CMatrix pinv = p.inverse();
  for (int g = 0; g < rep1.num_generators(); ++g) {
    const CMatrix lhs = p * rep1.generator(g) * pinv;
    if (frobenius(lhs - rep2.generator(g)) >
        100 * tol.threshold(frobenius(rep2.generator(g))))
      throw ContractError("compact_conjugator: P does not conjugate rep1 to rep2");
  }

  // unitary polar factor of P
  const HermitianEig eig = hermitian_eig(p.adjoint() * p, tol);
  CVector inv_sqrt(eig.values.size());
  for (int i = 0; i < eig.values.size(); ++i) {
    if (eig.values(i) <= 0) throw ContractError("compact_conjugator: P is singular");
    inv_sqrt(i) = 1.0 / std::sqrt(eig.values(i));
  }
  const CMatrix u =
      p * (eig.vectors * inv_sqrt.asDiagonal() * eig.vectors.adjoint());

  const CMatrix uinv = u.adjoint();
  for (int g = 0; g < rep1.num_generators(); ++g) {
    const CMatrix lhs = u * rep1.generator(g) * uinv;
    if (frobenius(lhs - rep2.generator(g)) >
        100 * tol.threshold(frobenius(rep2.generator(g))))
      throw NumericalFailureError("compact_conjugator: polar factor fails to conjugate");
  }
  if (!validate_membership(u, compact, Tolerance{100 * tol.rel, 100 * tol.abs}).pass)
    throw NumericalFailureError("compact_conjugator: polar factor left the compact form");
  return u;
}

}  // namespace realform
