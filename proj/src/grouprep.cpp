#include "realform/grouprep.hpp"

#include <cctype>
#include <sstream>

#include <Eigen/SVD>

namespace realform {

GroupKind::GroupKind(GroupFamily f, int size) : family(f), n(size) {
  if (n <= 0) throw ParameterError("group dimension must be positive");
  if (family == GroupFamily::Sp && n % 2 != 0)
    throw ParameterError("Sp requires even dimension");
}

std::string GroupKind::name() const {
  switch (family) {
    case GroupFamily::GL: return "GL(" + std::to_string(n) + ",C)";
    case GroupFamily::SL: return "SL(" + std::to_string(n) + ",C)";
    case GroupFamily::O: return "O(" + std::to_string(n) + ",C)";
    case GroupFamily::SO: return "SO(" + std::to_string(n) + ",C)";
    case GroupFamily::Sp: return "Sp(" + std::to_string(n) + ",C)";
  }
  return {};
}

RealFormTag RealFormTag::make(RealFormKind kind, int p, int q) {
  RealFormTag tag{kind, p, q};
  switch (kind) {
    case RealFormKind::U:
    case RealFormKind::SU:
    case RealFormKind::Sp_PQ:
    case RealFormKind::O_PQ:
    case RealFormKind::SO_PQ:
      if (p < 0 || q < 0 || p + q == 0) throw ParameterError("invalid signature parameters");
      if (tag.p < tag.q) std::swap(tag.p, tag.q);
      break;
    case RealFormKind::GL_R:
    case RealFormKind::SL_R:
    case RealFormKind::Sp_R:
    case RealFormKind::GL_H:
    case RealFormKind::SL_H:
    case RealFormKind::O_H:
    case RealFormKind::SO_H:
      if (p <= 0 || q != 0) throw ParameterError("this real form takes one parameter");
      break;
    case RealFormKind::SO_H_MINUS:
      if (p <= 0 || q != 0) throw ParameterError("SO_H- takes one parameter");
      if (p % 2 != 0)
        throw ParameterError("SO_H- exists only in ambient dimension divisible by 4");
      break;
    case RealFormKind::GL_SUM:
      if (p < 0 || q < 0 || p + 2 * q == 0) throw ParameterError("invalid block parameters");
      break;
  }
  return tag;
}

int RealFormTag::ambient_dimension() const {
  switch (kind) {
    case RealFormKind::GL_R:
    case RealFormKind::SL_R: return p;
    case RealFormKind::GL_H:
    case RealFormKind::SL_H:
    case RealFormKind::O_H:
    case RealFormKind::SO_H:
    case RealFormKind::SO_H_MINUS: return 2 * p;
    case RealFormKind::U:
    case RealFormKind::SU:
    case RealFormKind::O_PQ:
    case RealFormKind::SO_PQ: return p + q;
    case RealFormKind::Sp_R: return 2 * p;
    case RealFormKind::Sp_PQ: return 2 * (p + q);
    case RealFormKind::GL_SUM: return p + 2 * q;
  }
  return 0;
}

GroupKind RealFormTag::ambient_kind() const {
  switch (kind) {
    case RealFormKind::GL_R:
    case RealFormKind::GL_H:
    case RealFormKind::U:
    case RealFormKind::GL_SUM: return {GroupFamily::GL, ambient_dimension()};
    case RealFormKind::SL_R:
    case RealFormKind::SL_H:
    case RealFormKind::SU: return {GroupFamily::SL, ambient_dimension()};
    case RealFormKind::Sp_R:
    case RealFormKind::Sp_PQ: return {GroupFamily::Sp, ambient_dimension()};
    case RealFormKind::O_PQ:
    case RealFormKind::O_H: return {GroupFamily::O, ambient_dimension()};
    case RealFormKind::SO_PQ:
    case RealFormKind::SO_H:
    case RealFormKind::SO_H_MINUS: return {GroupFamily::SO, ambient_dimension()};
  }
  throw ParameterError("unknown real form");
}

bool RealFormTag::is_compact() const {
  switch (kind) {
    case RealFormKind::U:
    case RealFormKind::SU:
    case RealFormKind::Sp_PQ:
    case RealFormKind::O_PQ:
    case RealFormKind::SO_PQ: return q == 0;
    default: return false;
  }
}

std::string RealFormTag::name() const {
  const auto sig = [&] { return "(" + std::to_string(p) + "," + std::to_string(q) + ")"; };
  switch (kind) {
    case RealFormKind::GL_R: return "GL_R(" + std::to_string(p) + ")";
    case RealFormKind::GL_H: return "GL_H(" + std::to_string(p) + ")";
    case RealFormKind::U: return "U" + sig();
    case RealFormKind::SL_R: return "SL_R(" + std::to_string(p) + ")";
    case RealFormKind::SL_H: return "SL_H(" + std::to_string(p) + ")";
    case RealFormKind::SU: return "SU" + sig();
    case RealFormKind::Sp_R: return "Sp_R(" + std::to_string(2 * p) + ")";
    case RealFormKind::Sp_PQ:
      return "Sp(" + std::to_string(2 * p) + "," + std::to_string(2 * q) + ")";
    case RealFormKind::O_PQ: return "O" + sig();
    case RealFormKind::SO_PQ: return "SO" + sig();
    case RealFormKind::O_H: return "O_H(" + std::to_string(p) + ")";
    case RealFormKind::SO_H: return "SO_H(" + std::to_string(p) + ")";
    case RealFormKind::SO_H_MINUS: return "SO_H-(" + std::to_string(p) + ")";
    case RealFormKind::GL_SUM:
      return "GL_R(" + std::to_string(p) + ")+GL_H(" + std::to_string(q) + ")";
  }
  return {};
}

std::optional<RealFormTag> parse_real_form(const std::string& text) {
  const auto open = text.find('(');
  const auto close = text.rfind(')');
  if (open == std::string::npos || close == std::string::npos || close < open) return std::nullopt;
  const std::string head = text.substr(0, open);
  const std::string args = text.substr(open + 1, close - open - 1);
  int a = 0, b = 0;
  bool two = false;
  {
    std::istringstream in(args);
    char comma = 0;
    if (!(in >> a)) return std::nullopt;
    if (in >> comma) {
      if (comma != ',' || !(in >> b)) return std::nullopt;
      two = true;
    }
  }
  try {
    if (head == "GL_R") return RealFormTag::make(RealFormKind::GL_R, a);
    if (head == "GL_H") return RealFormTag::make(RealFormKind::GL_H, a);
    if (head == "SL_R") return RealFormTag::make(RealFormKind::SL_R, a);
    if (head == "SL_H") return RealFormTag::make(RealFormKind::SL_H, a);
    if (head == "U" && two) return RealFormTag::make(RealFormKind::U, a, b);
    if (head == "SU" && two) return RealFormTag::make(RealFormKind::SU, a, b);
    if (head == "Sp_R") return RealFormTag::make(RealFormKind::Sp_R, a / 2);
    if (head == "Sp" && two) {
      if (a % 2 || b % 2) return std::nullopt;
      return RealFormTag::make(RealFormKind::Sp_PQ, a / 2, b / 2);
    }
    if (head == "O" && two) return RealFormTag::make(RealFormKind::O_PQ, a, b);
    if (head == "SO" && two) return RealFormTag::make(RealFormKind::SO_PQ, a, b);
    if (head == "O_H") return RealFormTag::make(RealFormKind::O_H, a);
    if (head == "SO_H") return RealFormTag::make(RealFormKind::SO_H, a);
    if (head == "SO_H-") return RealFormTag::make(RealFormKind::SO_H_MINUS, a);
  } catch (const ParameterError&) {
    return std::nullopt;
  }
  return std::nullopt;
}

CMatrix so_minus_p0(int ambient) {
  CMatrix p0 = CMatrix::Identity(ambient, ambient);
  p0(ambient - 1, ambient - 1) = Complex(-1, 0);
  return p0;
}

void ResidualReport::add(std::string equation, double value, double threshold) {
  const bool ok = value <= threshold;
  entries.push_back({std::move(equation), value, threshold, ok});
  pass = pass && ok;
  max_value = std::max(max_value, value);
}

namespace {

void add_invertibility(ResidualReport& report, const CMatrix& m, const Tolerance& tol) {
  Eigen::JacobiSVD<CMatrix> svd(m);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(svd.singularValues().size() - 1);
  const bool ok = smin > tol.rel * smax && smax > 0;
  report.entries.push_back({"invertible", ok ? 0.0 : 1.0, 0.5, ok});
  report.pass = report.pass && ok;
  if (!ok) report.max_value = std::max(report.max_value, 1.0);
}

void add_difference(ResidualReport& report, const std::string& name, const CMatrix& lhs,
                    const CMatrix& rhs, const Tolerance& tol) {
  const double scale = std::max(frobenius(lhs), frobenius(rhs));
  report.add(name, frobenius(lhs - rhs), tol.threshold(scale));
}

void add_unit_determinant(ResidualReport& report, const CMatrix& m, const Tolerance& tol) {
  const Complex det = m.determinant();
  report.add("det = 1", std::abs(det - Complex(1, 0)),
             tol.threshold(std::max(1.0, std::abs(det))));
}

void add_real_entries(ResidualReport& report, const std::string& name, const CMatrix& m,
                      const Tolerance& tol) {
  report.add(name, m.imag().norm(), tol.threshold(frobenius(m)));
}

void add_quaternionic(ResidualReport& report, const CMatrix& m, const Tolerance& tol) {
  const CMatrix j = special_matrix(SpecialKind::J, static_cast<int>(m.rows()));
  add_difference(report, "M J = J conj(M)", m * j, j * m.conjugate(), tol);
}

void check_size(const CMatrix& m, int expected) {
  if (m.rows() != m.cols() || m.rows() != expected)
    throw ParameterError("matrix size does not match the target group");
}

}  // namespace

ResidualReport validate_membership(const CMatrix& m, const GroupKind& kind,
                                   const Tolerance& tol) {
  check_size(m, kind.n);
  ResidualReport report;
  const CMatrix id = CMatrix::Identity(kind.n, kind.n);
  switch (kind.family) {
    case GroupFamily::GL:
      add_invertibility(report, m, tol);
      break;
    case GroupFamily::SL:
      add_invertibility(report, m, tol);
      add_unit_determinant(report, m, tol);
      break;
    case GroupFamily::O:
      add_difference(report, "M^T M = I", m.transpose() * m, id, tol);
      break;
    case GroupFamily::SO:
      add_difference(report, "M^T M = I", m.transpose() * m, id, tol);
      add_unit_determinant(report, m, tol);
      break;
    case GroupFamily::Sp: {
      const CMatrix j = special_matrix(SpecialKind::J, kind.n);
      add_difference(report, "M^T J M = J", m.transpose() * j * m, j, tol);
      break;
    }
  }
  return report;
}

ResidualReport validate_membership(const CMatrix& m, const RealFormTag& tag,
                                   const Tolerance& tol) {
  const int n = tag.ambient_dimension();
  check_size(m, n);
  ResidualReport report;
  const CMatrix id = CMatrix::Identity(n, n);
  switch (tag.kind) {
    case RealFormKind::GL_R:
      add_invertibility(report, m, tol);
      add_real_entries(report, "real entries", m, tol);
      break;
    case RealFormKind::SL_R:
      add_invertibility(report, m, tol);
      add_real_entries(report, "real entries", m, tol);
      add_unit_determinant(report, m, tol);
      break;
    case RealFormKind::GL_H:
      add_invertibility(report, m, tol);
      add_quaternionic(report, m, tol);
      break;
    case RealFormKind::SL_H:
      add_invertibility(report, m, tol);
      add_quaternionic(report, m, tol);
      add_unit_determinant(report, m, tol);
      break;
    case RealFormKind::U:
    case RealFormKind::SU: {
      const CMatrix ipq = special_matrix(SpecialKind::Ipq, tag.p, tag.q);
      add_difference(report, "M* I_pq M = I_pq", m.adjoint() * ipq * m, ipq, tol);
      if (tag.kind == RealFormKind::SU) add_unit_determinant(report, m, tol);
      break;
    }
    case RealFormKind::Sp_R: {
      const CMatrix j = special_matrix(SpecialKind::J, n);
      add_difference(report, "M^T J M = J", m.transpose() * j * m, j, tol);
      add_real_entries(report, "real entries", m, tol);
      break;
    }
    case RealFormKind::Sp_PQ: {
      const CMatrix j = special_matrix(SpecialKind::J, n);
      const CMatrix k = special_matrix(SpecialKind::Kpq, tag.p, tag.q);
      add_difference(report, "M^T J M = J", m.transpose() * j * m, j, tol);
      add_difference(report, "M* K_pq M = K_pq", m.adjoint() * k * m, k, tol);
      break;
    }
    case RealFormKind::O_PQ:
    case RealFormKind::SO_PQ: {
      const CMatrix d = special_matrix(SpecialKind::Dpq, tag.p, tag.q);
      const CMatrix w = d.inverse() * m * d;
      add_difference(report, "M^T M = I", m.transpose() * m, id, tol);
      add_real_entries(report, "D^-1 M D real", w, tol);
      if (tag.kind == RealFormKind::SO_PQ) add_unit_determinant(report, m, tol);
      break;
    }
    case RealFormKind::O_H:
    case RealFormKind::SO_H:
      add_difference(report, "M^T M = I", m.transpose() * m, id, tol);
      add_quaternionic(report, m, tol);
      if (tag.kind == RealFormKind::SO_H) add_unit_determinant(report, m, tol);
      break;
    case RealFormKind::SO_H_MINUS: {
      const CMatrix p0 = so_minus_p0(n);
      const CMatrix w = p0.inverse() * m * p0;
      add_difference(report, "M^T M = I", m.transpose() * m, id, tol);
      add_quaternionic(report, w, tol);
      add_unit_determinant(report, m, tol);
      break;
    }
    case RealFormKind::GL_SUM: {
      const int r1 = tag.p;
      const int r2 = tag.q;
      add_invertibility(report, m, tol);
      const double scale = frobenius(m);
      if (r1 > 0)
        add_real_entries(report, "real block", m.topLeftCorner(r1, r1), tol);
      if (r2 > 0) add_quaternionic(report, m.bottomRightCorner(2 * r2, 2 * r2), tol);
      if (r1 > 0 && r2 > 0) {
        report.add("off-diagonal blocks vanish",
                   std::max(m.topRightCorner(r1, 2 * r2).norm(),
                            m.bottomLeftCorner(2 * r2, r1).norm()),
                   tol.threshold(scale));
      }
      break;
    }
  }
  return report;
}

Representation::Representation(GroupKind kind, std::vector<CMatrix> generators,
                               const Tolerance& tol, std::vector<std::string> labels,
                               std::vector<std::vector<int>> relations)
    : kind_(kind),
      generators_(std::move(generators)),
      labels_(std::move(labels)),
      relations_(std::move(relations)) {
  if (generators_.empty()) throw ParameterError("a representation needs at least one generator");
  if (!labels_.empty() && labels_.size() != generators_.size())
    throw ParameterError("label count does not match generator count");
  for (size_t i = 0; i < generators_.size(); ++i) {
    const CMatrix& g = generators_[i];
    if (g.rows() != kind_.n || g.cols() != kind_.n)
      throw ParameterError("generator " + std::to_string(i) + " has the wrong size");
    if (!has_finite_entries(g))
      throw ParameterError("generator " + std::to_string(i) + " has non-finite entries");
    const ResidualReport report = validate_membership(g, kind_, tol);
    if (!report.pass)
      throw ValidationError("generator " + std::to_string(i) + " fails " + kind_.name() +
                            " membership (residual " + std::to_string(report.max_value) + ")");
  }
  const int s = num_generators();
  for (const auto& word : relations_)
    for (int letter : word)
      if (letter == 0 || std::abs(letter) > s)
        throw ParameterError("relation letter out of range");
}

CMatrix Representation::generator_inverse(int i) const {
  return generators_.at(i).fullPivLu().inverse();
}

std::vector<double> Representation::relation_residuals() const {
  std::vector<double> out;
  out.reserve(relations_.size());
  for (const auto& word : relations_) {
    CMatrix prod = CMatrix::Identity(kind_.n, kind_.n);
    for (int letter : word)
      prod = prod * (letter > 0 ? generator(letter - 1) : generator_inverse(-letter - 1));
    out.push_back(frobenius(prod - CMatrix::Identity(kind_.n, kind_.n)));
  }
  return out;
}

Representation conjugate_representation(const Representation& rep, const CMatrix& w,
                                        const Tolerance& tol) {
  if (w.rows() != rep.dimension() || w.cols() != rep.dimension())
    throw ParameterError("conjugator size mismatch");
  const CMatrix winv = w.fullPivLu().inverse();
  std::vector<CMatrix> gens;
  gens.reserve(rep.generators().size());
  for (const auto& g : rep.generators()) gens.push_back(w * g * winv);
  return Representation(rep.kind(), std::move(gens), tol, rep.labels(), rep.relations());
}

}  // namespace realform
