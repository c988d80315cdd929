#include "realform/commutant.hpp"

#include <algorithm>
#include <random>

#include <Eigen/Eigenvalues>
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

// Column-major vec: vec(A X B) = (B^T kron A) vec(X).
CMatrix sylvester_operator(const Representation& rep1, const Representation& rep2) {
  const int n = rep1.dimension();
  const int n2 = n * n;
  const int s = rep1.num_generators();
  const CMatrix id = CMatrix::Identity(n, n);
  CMatrix op(s * n2, n2);
  for (int g = 0; g < s; ++g) {
    op.middleRows(g * n2, n2) =
        kron(rep1.generator(g).transpose(), id) - kron(id, rep2.generator(g));
  }
  return op;
}

CMatrix unvec(const CVector& v, int n) {
  CMatrix m(n, n);
  for (int j = 0; j < n; ++j) m.col(j) = v.segment(j * n, n);
  return m;
}

struct NullSpace {
  std::vector<CMatrix> basis;
  double sigma_max = 0;
  RVector singular_values;
};

NullSpace null_space(const CMatrix& op, int n, const Tolerance& tol) {
  Eigen::JacobiSVD<CMatrix> svd(op, Eigen::ComputeFullV);
  NullSpace out;
  out.singular_values = svd.singularValues();
  out.sigma_max = out.singular_values.size() ? out.singular_values(0) : 0.0;
  const double gate = std::max(tol.rel * out.sigma_max, tol.abs);
  for (int i = 0; i < op.cols(); ++i) {
    const double sv = i < out.singular_values.size() ? out.singular_values(i) : 0.0;
    if (sv <= gate) out.basis.push_back(unvec(svd.matrixV().col(i), n));
  }
  return out;
}

// Counts singular values above tol.rel * sigma_max; values within a factor of
// 10 of the gate are an indeterminate rank decision.
int banded_rank(const RVector& svals, const Tolerance& tol) {
  if (svals.size() == 0) return 0;
  const double gate = std::max(tol.rel * svals(0), tol.abs);
  int rank = 0;
  for (int i = 0; i < svals.size(); ++i) {
    const double sv = svals(i);
    if (sv > gate * 0.1 && sv < gate * 10.0)
      throw IndeterminateError("rank decision is indeterminate: singular value " +
                               std::to_string(sv) + " near threshold " +
                               std::to_string(gate));
    if (sv > gate) ++rank;
  }
  return rank;
}

double condition_ratio(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0.0;
  return sv(sv.size() - 1) / sv(0);
}

// Singular values of the column space spanned by vec(rho(w)) over all words
// in the generators, extending the length until the rank stabilizes.
RVector word_span_singular_values(const Representation& rep, const Tolerance& tol) {
  const int n = rep.dimension();
  const int n2 = n * n;
  std::vector<CMatrix> frontier = {CMatrix::Identity(n, n)};
  std::vector<CVector> columns;
  const auto push = [&](const CMatrix& m) {
    CVector v(n2);
    for (int j = 0; j < n; ++j) v.segment(j * n, n) = m.col(j);
    const double norm = v.norm();
    if (norm > 0) v /= norm;
    columns.push_back(std::move(v));
  };
  push(frontier[0]);

  const auto rank_now = [&]() {
    CMatrix stack(n2, static_cast<Eigen::Index>(columns.size()));
    for (size_t j = 0; j < columns.size(); ++j) stack.col(static_cast<Eigen::Index>(j)) = columns[j];
    Eigen::JacobiSVD<CMatrix> svd(stack);
    const auto& sv = svd.singularValues();
    const double gate = std::max(tol.rel * (sv.size() ? sv(0) : 0.0), tol.abs);
    int r = 0;
    for (int i = 0; i < sv.size(); ++i)
      if (sv(i) > gate) ++r;
    return std::pair<int, RVector>(r, sv);
  };

  int previous_rank = 1;
  RVector svals;
  const size_t column_cap = 4096;
  while (true) {
    std::vector<CMatrix> next;
    for (const CMatrix& w : frontier)
      for (const CMatrix& g : rep.generators()) {
        CMatrix prod = w * g;
        const double norm = prod.norm();
        if (norm > 0) prod /= norm;
        push(prod);
        next.push_back(std::move(prod));
      }
    frontier = std::move(next);
    auto [rank, sv] = rank_now();
    svals = sv;
    if (rank == previous_rank || rank == n2 || columns.size() > column_cap) break;
    previous_rank = rank;
  }
  return svals;
}

}  // namespace

std::vector<CMatrix> commutant_basis(const Representation& rep, const Tolerance& tol) {
  const CMatrix op = sylvester_operator(rep, rep);
  return null_space(op, rep.dimension(), tol).basis;
}

int generated_algebra_dimension(const Representation& rep, const Tolerance& tol) {
  return banded_rank(word_span_singular_values(rep, tol), tol);
}

bool is_irreducible(const Representation& rep, const Tolerance& tol) {
  const int n = rep.dimension();
  const CMatrix op = sylvester_operator(rep, rep);
  Eigen::JacobiSVD<CMatrix> svd(op);
  const RVector svals = svd.singularValues();
  const int commutant_dim = n * n - banded_rank(svals, tol);
  if (commutant_dim != 1) return false;
  return generated_algebra_dimension(rep, tol) == n * n;
}

IntertwinerResult intertwiner(const Representation& rep1, const Representation& rep2,
                              const Tolerance& tol) {
  if (!(rep1.kind() == rep2.kind()))
    throw ParameterError("intertwiner requires the same kind and dimension");
  if (rep1.num_generators() != rep2.num_generators())
    throw ParameterError("intertwiner requires equal generator counts");

  const int n = rep1.dimension();
  const NullSpace space = null_space(sylvester_operator(rep1, rep2), n, tol);
  IntertwinerResult out;
  out.space_dimension = static_cast<int>(space.basis.size());
  if (space.basis.empty()) return out;

  double best_ratio = 0;
  CMatrix best;
  for (const CMatrix& candidate : space.basis) {
    const double ratio = condition_ratio(candidate);
    if (ratio > best_ratio) {
      best_ratio = ratio;
      best = candidate;
    }
  }
  if (space.basis.size() > 1) {
    // Random combinations of a fixed seed; singular basis elements may still
    // combine to an invertible intertwiner.
    std::mt19937_64 rng(12345);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int attempt = 0; attempt < 25; ++attempt) {
      CMatrix candidate = CMatrix::Zero(n, n);
      for (const CMatrix& b : space.basis)
        candidate += Complex(normal(rng), normal(rng)) * b;
      candidate /= candidate.norm();
      const double ratio = condition_ratio(candidate);
      if (ratio > best_ratio) {
        best_ratio = ratio;
        best = candidate;
      }
    }
  }
  if (best_ratio > std::max(tol.rel, 1e-12)) {
    best /= best.norm();
    out.matrix = best;
  }
  return out;
}

namespace {

struct DrawResult {
  std::vector<Representation> factors;          // one per irreducible copy
  std::vector<CMatrix> bases;                   // orthonormal basis per copy
  std::vector<int> class_of;                    // equivalence class per copy
  int num_classes = 0;
};

std::optional<DrawResult> decompose_by_draw(const Representation& rep,
                                            const std::vector<CMatrix>& comm_basis,
                                            const Tolerance& tol, std::uint64_t seed) {
  const int n = rep.dimension();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix element = CMatrix::Zero(n, n);
  for (const CMatrix& b : comm_basis)
    element += Complex(normal(rng), normal(rng)) * b;

  Eigen::ComplexEigenSolver<CMatrix> solver(element);
  if (solver.info() != Eigen::Success) return std::nullopt;
  const CVector values = solver.eigenvalues();

  // cluster eigenvalues by pairwise distance
  const double gap = 1e-6 * (1.0 + values.cwiseAbs().maxCoeff());
  std::vector<int> cluster(n, -1);
  int num_clusters = 0;
  for (int i = 0; i < n; ++i) {
    if (cluster[i] >= 0) continue;
    cluster[i] = num_clusters;
    for (int j = i + 1; j < n; ++j)
      if (cluster[j] < 0 && std::abs(values(i) - values(j)) <= gap) cluster[j] = num_clusters;
    ++num_clusters;
  }

  DrawResult result;
  for (int c = 0; c < num_clusters; ++c) {
    std::vector<int> cols;
    for (int i = 0; i < n; ++i)
      if (cluster[i] == c) cols.push_back(i);
    const int k = static_cast<int>(cols.size());
    CMatrix vecs(n, k);
    for (int j = 0; j < k; ++j) vecs.col(j) = solver.eigenvectors().col(cols[j]);
    Eigen::HouseholderQR<CMatrix> qr(vecs);
    const CMatrix q = qr.householderQ() * CMatrix::Identity(n, k);

    // the cluster span must be invariant under every generator
    std::vector<CMatrix> sub_gens;
    for (const CMatrix& g : rep.generators()) {
      const CMatrix restricted = q.adjoint() * g * q;
      const double leak = (g * q - q * restricted).norm();
      if (leak > 100 * tol.threshold(g.norm())) return std::nullopt;
      sub_gens.push_back(restricted);
    }
    Representation factor(GroupKind(GroupFamily::GL, k), std::move(sub_gens), tol);
    try {
      if (!is_irreducible(factor, tol)) return std::nullopt;
    } catch (const IndeterminateError&) {
      return std::nullopt;
    }
    result.factors.push_back(std::move(factor));
    result.bases.push_back(q);
  }

  // group equivalent copies
  std::vector<int> representatives;
  for (size_t i = 0; i < result.factors.size(); ++i) {
    int found = -1;
    for (size_t r = 0; r < representatives.size(); ++r) {
      const IntertwinerResult iw =
          intertwiner(result.factors[representatives[r]], result.factors[i], tol);
      if (iw.matrix) {
        found = static_cast<int>(r);
        break;
      }
    }
    if (found < 0) {
      representatives.push_back(static_cast<int>(i));
      found = static_cast<int>(representatives.size()) - 1;
    }
    result.class_of.push_back(found);
  }
  result.num_classes = static_cast<int>(representatives.size());
  return result;
}

std::vector<std::pair<int, int>> partition_shape(const DrawResult& draw) {
  std::vector<std::pair<int, int>> shape(draw.num_classes, {0, 0});
  for (size_t i = 0; i < draw.factors.size(); ++i) {
    shape[draw.class_of[i]].first = draw.factors[i].dimension();
    shape[draw.class_of[i]].second++;
  }
  std::sort(shape.begin(), shape.end());
  return shape;
}

void check_semisimple(const Representation& rep, const Tolerance& tol) {
  // Nondegeneracy of the trace form on the generated algebra characterizes
  // semi-simplicity for subalgebras of M_n(C).
  const int n = rep.dimension();
  std::vector<CMatrix> basis;
  std::vector<CMatrix> frontier = {CMatrix::Identity(n, n)};
  const auto try_add = [&](const CMatrix& m) {
    CMatrix r = m;
    for (const CMatrix& b : basis) r -= (b.adjoint() * r).trace() * b;
    const double norm = r.norm();
    if (norm > 1e-10 * std::max(1.0, m.norm())) {
      basis.push_back(r / norm);
      return true;
    }
    return false;
  };
  try_add(frontier[0]);
  while (!frontier.empty() && basis.size() < static_cast<size_t>(n * n)) {
    std::vector<CMatrix> next;
    for (const CMatrix& w : frontier)
      for (const CMatrix& g : rep.generators()) {
        CMatrix prod = w * g;
        prod /= std::max(prod.norm(), 1e-300);
        if (try_add(prod)) next.push_back(prod);
      }
    frontier = std::move(next);
  }

  const int d = static_cast<int>(basis.size());
  CMatrix gram(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) gram(i, j) = (basis[i] * basis[j]).trace();
  Eigen::JacobiSVD<CMatrix> svd(gram);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() ? sv(0) : 0.0;
  if (smax == 0.0 || sv(sv.size() - 1) <= std::max(tol.rel * smax, tol.abs) * 100)
    throw SemisimplicityError("trace form on the generated algebra is degenerate");
}

}  // namespace

IsotypicDecomposition isotypic_decomposition(const Representation& rep,
                                             const Tolerance& tol, std::uint64_t seed) {
  check_semisimple(rep, tol);
  const std::vector<CMatrix> comm = commutant_basis(rep, tol);

  for (int attempt = 0; attempt < 5; ++attempt) {
    const std::uint64_t base = seed + 1000003ull * static_cast<std::uint64_t>(attempt);
    const auto first = decompose_by_draw(rep, comm, tol, base);
    if (!first) continue;
    const auto second = decompose_by_draw(rep, comm, tol, base + 1);
    if (!second) continue;
    if (partition_shape(*first) != partition_shape(*second)) continue;

    IsotypicDecomposition out;
    for (int c = 0; c < first->num_classes; ++c) {
      std::vector<int> members;
      for (size_t i = 0; i < first->factors.size(); ++i)
        if (first->class_of[i] == c) members.push_back(static_cast<int>(i));
      const int d = first->factors[members[0]].dimension();
      CMatrix basis(rep.dimension(), d * static_cast<int>(members.size()));
      for (size_t k = 0; k < members.size(); ++k)
        basis.middleCols(static_cast<int>(k) * d, d) = first->bases[members[k]];
      out.blocks.push_back(IsotypicBlock{first->factors[members[0]],
                                         static_cast<int>(members.size()),
                                         std::move(basis)});
    }
    int total = 0;
    for (const auto& b : out.blocks) total += b.factor.dimension() * b.multiplicity;
    if (total != rep.dimension())
      throw NumericalFailureError("isotypic decomposition does not fill the space");
    return out;
  }
  throw NumericalFailureError(
      "isotypic decomposition unstable: independent draws keep disagreeing");
}

}  // namespace realform
