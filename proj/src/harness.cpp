#include "realform/harness.hpp"

#include <chrono>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "realform/commutant.hpp"

namespace realform {

namespace {

constexpr double kLieScale = 0.5;

RMatrix random_real(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  RMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = normal(rng);
  return m;
}

CMatrix random_complex(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = Complex(normal(rng), normal(rng));
  return m;
}

CMatrix skew_hermitian(int n, std::mt19937_64& rng) {
  const CMatrix w = random_complex(n, n, rng);
  return (w - w.adjoint()) / 2.0;
}

CMatrix complex_symmetric(int n, std::mt19937_64& rng) {
  const CMatrix w = random_complex(n, n, rng);
  return (w + w.transpose()) / 2.0;
}

CMatrix complex_skew_symmetric(int n, std::mt19937_64& rng) {
  const CMatrix w = random_complex(n, n, rng);
  return (w - w.transpose()) / 2.0;
}

CMatrix quaternionic_block(const CMatrix& a, const CMatrix& b) {
  const int m = static_cast<int>(a.rows());
  CMatrix x = CMatrix::Zero(2 * m, 2 * m);
  x.topLeftCorner(m, m) = a;
  x.topRightCorner(m, m) = -b.conjugate();
  x.bottomLeftCorner(m, m) = b;
  x.bottomRightCorner(m, m) = a.conjugate();
  return x;
}

// One Lie-algebra element of the tag's group, Gaussian at scale kLieScale.
CMatrix lie_element(const RealFormTag& tag, std::mt19937_64& rng) {
  const int n = tag.ambient_dimension();
  switch (tag.kind) {
    case RealFormKind::GL_R:
      return (kLieScale * random_real(n, n, rng)).cast<Complex>();
    case RealFormKind::SL_R: {
      RMatrix x = kLieScale * random_real(n, n, rng);
      x -= (x.trace() / n) * RMatrix::Identity(n, n);
      return x.cast<Complex>();
    }
    case RealFormKind::GL_H: {
      const int m = tag.p;
      return kLieScale *
             quaternionic_block(random_complex(m, m, rng), random_complex(m, m, rng));
    }
    case RealFormKind::SL_H: {
      const int m = tag.p;
      CMatrix a = random_complex(m, m, rng);
      a -= (a.trace().real() / m) * CMatrix::Identity(m, m);
      return kLieScale * quaternionic_block(a, random_complex(m, m, rng));
    }
    case RealFormKind::U:
    case RealFormKind::SU: {
      const CMatrix ipq = special_matrix(SpecialKind::Ipq, tag.p, tag.q);
      CMatrix x = kLieScale * ipq * skew_hermitian(n, rng);
      if (tag.kind == RealFormKind::SU)
        x -= (x.trace() / double(n)) * CMatrix::Identity(n, n);
      return x;
    }
    case RealFormKind::Sp_R: {
      const RMatrix s = kLieScale * random_real(n, n, rng);
      const RMatrix sym = (s + s.transpose()) / 2.0;
      const CMatrix j = special_matrix(SpecialKind::J, n);
      return -j * sym.cast<Complex>();
    }
    case RealFormKind::Sp_PQ: {
      const int half = n / 2;
      const CMatrix ipq = special_matrix(SpecialKind::Ipq, tag.p, tag.q);
      const CMatrix a = ipq * skew_hermitian(half, rng);
      const CMatrix c = complex_symmetric(half, rng);
      const CMatrix b = -ipq * c.adjoint() * ipq;
      CMatrix x = CMatrix::Zero(n, n);
      x.topLeftCorner(half, half) = a;
      x.topRightCorner(half, half) = b;
      x.bottomLeftCorner(half, half) = c;
      x.bottomRightCorner(half, half) = -a.transpose();
      return kLieScale * x;
    }
    case RealFormKind::O_PQ:
    case RealFormKind::SO_PQ: {
      const RMatrix w = kLieScale * random_real(n, n, rng);
      const RMatrix skew = (w - w.transpose()) / 2.0;
      const CMatrix ipq = special_matrix(SpecialKind::Ipq, tag.p, tag.q);
      const CMatrix y = ipq * skew.cast<Complex>();  // o(p,q)
      const CMatrix d = special_matrix(SpecialKind::Dpq, tag.p, tag.q);
      return d * y * d.inverse();
    }
    case RealFormKind::O_H:
    case RealFormKind::SO_H: {
      const int m = tag.p;
      const CMatrix a = complex_skew_symmetric(m, rng);
      const CMatrix bh = skew_hermitian(m, rng);
      // A skew-symmetric, B Hermitian gives so(2m,C) meeting gl(m,H)
      return kLieScale * quaternionic_block(a, Complex(0, 1) * bh);
    }
    case RealFormKind::SO_H_MINUS: {
      const RealFormTag inner = RealFormTag::make(RealFormKind::SO_H, tag.p);
      const CMatrix x = lie_element(inner, rng);
      const CMatrix p0 = so_minus_p0(n);
      return p0 * x * p0.inverse();
    }
    case RealFormKind::GL_SUM:
      throw ParameterError("composite tags are certificates, not sampling targets");
  }
  throw ParameterError("unknown real form");
}

// Reflection used to reach the second component of the O-kind groups.
std::optional<CMatrix> component_reflection(const RealFormTag& tag) {
  const int n = tag.ambient_dimension();
  switch (tag.kind) {
    case RealFormKind::O_PQ:
      return special_matrix(SpecialKind::Ipq, n - 1, 1);
    case RealFormKind::SO_PQ:
      // determinant-one element outside the identity component when p,q >= 1
      if (tag.p >= 1 && tag.q >= 1) {
        CMatrix f = CMatrix::Identity(n, n);
        f(0, 0) = -1;
        f(n - 1, n - 1) = -1;
        return f;
      }
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

}  // namespace

Representation sample_real_form(const RealFormTag& tag, int num_generators,
                                std::uint64_t seed) {
  if (num_generators < 1) throw ParameterError("need at least one generator");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coin(0, 1);
  const std::optional<CMatrix> reflection = component_reflection(tag);

  std::vector<CMatrix> gens;
  gens.reserve(num_generators);
  for (int g = 0; g < num_generators; ++g) {
    CMatrix m = lie_element(tag, rng).exp();
    if (reflection && coin(rng) == 1) m = m * (*reflection);
    gens.push_back(std::move(m));
  }
  return Representation(tag.ambient_kind(), std::move(gens), Tolerance{1e-8, 1e-10});
}

CMatrix sample_ambient(const GroupKind& kind, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int n = kind.n;
  switch (kind.family) {
    case GroupFamily::GL:
      return (kLieScale * random_complex(n, n, rng)).exp();
    case GroupFamily::SL: {
      CMatrix z = kLieScale * random_complex(n, n, rng);
      z -= (z.trace() / double(n)) * CMatrix::Identity(n, n);
      return z.exp();
    }
    case GroupFamily::O:
    case GroupFamily::SO:
      return (kLieScale * complex_skew_symmetric(n, rng)).exp();
    case GroupFamily::Sp: {
      const CMatrix j = special_matrix(SpecialKind::J, n);
      const CMatrix z = -j * complex_symmetric(n, rng);
      return (kLieScale * z).exp();
    }
  }
  throw ParameterError("unknown group kind");
}

Involution involution_for(const RealFormTag& tag) {
  switch (tag.kind) {
    case RealFormKind::U:
    case RealFormKind::SU:
      return Involution::Phi2;
    default:
      return Involution::Phi1;
  }
}

bool tags_match(const RealFormTag& seeded, const RealFormTag& recovered) {
  if (seeded == recovered) return true;
  const auto quaternion_m = [](const RealFormTag& t) -> std::optional<int> {
    switch (t.kind) {
      case RealFormKind::O_H:
      case RealFormKind::SO_H:
      case RealFormKind::SO_H_MINUS:
        return t.p;
      default:
        return std::nullopt;
    }
  };
  const auto sm = quaternion_m(seeded);
  const auto rm = quaternion_m(recovered);
  if (sm && rm && *sm == *rm) {
    // O(m,H) = SO(m,H); SO vs SO^- is distinguished only by the determinant
    // of the scrambler, which the classifier alone cannot see.
    return true;
  }
  return false;
}

TrialReport roundtrip_trial(const RealFormTag& tag, int num_generators,
                            std::uint64_t seed, const Tolerance& tol) {
  const auto start = std::chrono::steady_clock::now();
  TrialReport report;
  report.seeded = tag;
  report.seed = seed;

  const auto finish = [&](TrialReport& r) {
    r.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
  };

  std::optional<Representation> sample;
  for (std::uint64_t attempt = 0; attempt < 10 && !sample; ++attempt) {
    Representation candidate =
        sample_real_form(tag, num_generators, seed + 0x9E3779B97F4A7C15ull * attempt);
    try {
      if (is_irreducible(candidate, tol)) sample = std::move(candidate);
    } catch (const IndeterminateError&) {
      // borderline rank decision: resample
    }
  }
  if (!sample) {
    report.skipped = true;
    report.detail = "no irreducible sample after 10 draws";
    return finish(report);
  }
  report.irreducible = true;

  try {
    const CMatrix w = sample_ambient(tag.ambient_kind(), seed ^ 0xD1B54A32D192ED03ull);
    const Representation scrambled = conjugate_representation(*sample, w, Tolerance{1e-7, 1e-9});

    // conjugation invariance of the trace coordinates
    const WordList words = word_list(num_generators, sample->dimension(), 3);
    const CVector before = trace_coordinates(*sample, words).traces;
    const CVector after = trace_coordinates(scrambled, words).traces;
    const double coord_drift = (before - after).cwiseAbs().maxCoeff();
    if (coord_drift > 1e-9 * (1.0 + before.cwiseAbs().maxCoeff())) {
      report.detail = "scramble broke coordinate invariance: " + std::to_string(coord_drift);
      return finish(report);
    }

    const ConjugationCertificate cert =
        classify_irreducible(scrambled, involution_for(tag), tol);
    const ResidualReport verification = verify_certificate(scrambled, cert, tol);

    report.recovered = cert.tag;
    report.max_residual = std::max(cert.max_residual(), verification.max_value);
    report.pass = verification.pass && tags_match(tag, cert.tag);
    if (!report.pass && verification.pass)
      report.detail = "tag mismatch: recovered " + cert.tag.name();
  } catch (const Error& err) {
    report.detail = err.what();
    report.pass = false;
  }
  return finish(report);
}

std::vector<RealFormTag> real_form_tags(int max_ambient) {
  std::vector<RealFormTag> tags;
  const auto signatures = [&](int n, RealFormKind kind) {
    for (int q = 0; 2 * q <= n; ++q)
      tags.push_back(RealFormTag::make(kind, n - q, q));
  };
  for (int n = 1; n <= max_ambient; ++n) {
    // GL(n, C) and SL(n, C)
    tags.push_back(RealFormTag::make(RealFormKind::GL_R, n));
    signatures(n, RealFormKind::U);
    if (n % 2 == 0) tags.push_back(RealFormTag::make(RealFormKind::GL_H, n / 2));
    if (n >= 2) {
      tags.push_back(RealFormTag::make(RealFormKind::SL_R, n));
      signatures(n, RealFormKind::SU);
      if (n % 2 == 0) tags.push_back(RealFormTag::make(RealFormKind::SL_H, n / 2));
    }
    // Sp(n, C) for even n
    if (n % 2 == 0) {
      tags.push_back(RealFormTag::make(RealFormKind::Sp_R, n / 2));
      for (int q = 0; 2 * q <= n / 2; ++q)
        tags.push_back(RealFormTag::make(RealFormKind::Sp_PQ, n / 2 - q, q));
    }
    // O(n, C) and SO(n, C)
    signatures(n, RealFormKind::O_PQ);
    signatures(n, RealFormKind::SO_PQ);
    if (n % 2 == 0) {
      tags.push_back(RealFormTag::make(RealFormKind::O_H, n / 2));
      tags.push_back(RealFormTag::make(RealFormKind::SO_H, n / 2));
      if (n % 4 == 0) tags.push_back(RealFormTag::make(RealFormKind::SO_H_MINUS, n / 2));
    }
  }
  return tags;
}

}  // namespace realform
