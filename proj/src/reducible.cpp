#include "realform/reducible.hpp"

#include <algorithm>

#include "realform/invariants.hpp"

namespace realform {

namespace {

// Rounded trace fingerprint for deterministic ordering of factors.
std::vector<std::pair<double, double>> trace_fingerprint(const Representation& rep) {
  const WordList words = word_list(rep.num_generators(), rep.dimension(), 3);
  const CharacterCoordinates coords = trace_coordinates(rep, words);
  std::vector<std::pair<double, double>> out;
  out.reserve(coords.traces.size());
  const auto round6 = [](double x) { return std::round(x * 1e6) / 1e6; };
  for (int i = 0; i < coords.traces.size(); ++i)
    out.emplace_back(round6(coords.traces(i).real()), round6(coords.traces(i).imag()));
  return out;
}

Representation copy_subrep(const Representation& rep, const CMatrix& basis) {
  const int d = static_cast<int>(basis.cols());
  std::vector<CMatrix> gens;
  gens.reserve(rep.generators().size());
  for (const CMatrix& g : rep.generators()) gens.push_back(basis.adjoint() * g * basis);
  return Representation(GroupKind(GroupFamily::GL, d), std::move(gens), Tolerance{});
}

CMatrix require_intertwiner(const Representation& from, const Representation& to,
                            const Tolerance& tol, const char* what) {
  const IntertwinerResult result = intertwiner(from, to, tol);
  if (!result.matrix)
    throw NumericalFailureError(std::string("missing intertwiner: ") + what);
  return *result.matrix;
}

}  // namespace

PhiPairing split_phi_stable(const Representation& rep, Involution which,
                            const Tolerance& tol) {
  if (rep.kind().family != GroupFamily::GL)
    throw NotApplicableError("split_phi_stable handles GL representations only");
  const PhiFixedness fixedness = is_phi_fixed(rep, which, tol);
  if (!fixedness.fixed)
    throw NotApplicableError("split_phi_stable: character is not fixed by the involution");

  PhiPairing pairing;
  pairing.decomposition = isotypic_decomposition(rep, tol);
  const auto& blocks = pairing.decomposition.blocks;

  std::vector<bool> matched(blocks.size(), false);
  for (size_t i = 0; i < blocks.size(); ++i) {
    if (matched[i]) continue;
    const Representation image = involution_image(blocks[i].factor, which);
    if (intertwiner(image, blocks[i].factor, tol).matrix) {
      matched[i] = true;
      pairing.self_paired.push_back(static_cast<int>(i));
      continue;
    }
    bool found = false;
    for (size_t j = 0; j < blocks.size(); ++j) {
      if (j == i || matched[j]) continue;
      if (blocks[j].factor.dimension() != blocks[i].factor.dimension()) continue;
      if (intertwiner(image, blocks[j].factor, tol).matrix) {
        if (blocks[j].multiplicity != blocks[i].multiplicity)
          throw ContractError("cross-paired factors have unequal multiplicities");
        matched[i] = matched[j] = true;
        // canonical order inside a pair: smaller trace fingerprint first
        if (trace_fingerprint(blocks[i].factor) <= trace_fingerprint(blocks[j].factor))
          pairing.cross_paired.emplace_back(static_cast<int>(i), static_cast<int>(j));
        else
          pairing.cross_paired.emplace_back(static_cast<int>(j), static_cast<int>(i));
        found = true;
        break;
      }
    }
    if (!found)
      throw ContractError(
          "an isotypic factor matches neither itself nor a partner under Phi; "
          "this contradicts Phi-fixedness of the character");
  }
  return pairing;
}

DoubleBlock double_block_conjugate(const Representation& subrep, Involution which) {
  const int r = subrep.dimension();
  const CMatrix id = CMatrix::Identity(r, r);
  DoubleBlock out;
  if (which == Involution::Phi1) {
    CMatrix e(2 * r, 2 * r);
    e.topLeftCorner(r, r) = id;
    e.topRightCorner(r, r) = id;
    e.bottomLeftCorner(r, r) = -id;
    e.bottomRightCorner(r, r) = id;
    out.conjugator = e / std::sqrt(2.0);
    out.tag = RealFormTag::make(RealFormKind::GL_H, r);
    out.form = CMatrix();
  } else {
    CMatrix split = CMatrix::Zero(2 * r, 2 * r);
    split.topRightCorner(r, r) = id;
    split.bottomLeftCorner(r, r) = id;
    out.form = split;
    // S0 is Hermitian with S0^2 = I and S0 split S0 = I_{r,r}
    CMatrix s0(2 * r, 2 * r);
    s0.topLeftCorner(r, r) = id;
    s0.topRightCorner(r, r) = id;
    s0.bottomLeftCorner(r, r) = id;
    s0.bottomRightCorner(r, r) = -id;
    out.conjugator = s0 / std::sqrt(2.0);
    out.tag = RealFormTag::make(RealFormKind::U, r, r);
  }
  return out;
}

namespace {

struct AssemblyUnit {
  CMatrix basis;        // columns of the ambient space for this unit
  CMatrix conjugator;   // local conjugator into the unit's real form
  RealFormTag tag;
  int block_index = -1; // for bookkeeping
};

// Per-copy representation and the intertwiner taking it to the class factor.
Representation copy_of(const Representation& rep, const IsotypicBlock& block, int copy) {
  const int d = block.factor.dimension();
  return copy_subrep(rep, block.basis.middleCols(copy * d, d));
}

}  // namespace

ConjugationCertificate classify_semisimple(const Representation& rep, Involution which,
                                           const Tolerance& tol) {
  if (rep.kind().family != GroupFamily::GL)
    throw NotApplicableError("classify_semisimple handles GL representations only");
  const int n = rep.dimension();
  PhiPairing pairing = split_phi_stable(rep, which, tol);
  const auto& blocks = pairing.decomposition.blocks;

  // canonical order: self-paired classes by fingerprint, then cross pairs by
  // the fingerprint of their first member
  std::sort(pairing.self_paired.begin(), pairing.self_paired.end(), [&](int a, int b) {
    return trace_fingerprint(blocks[a].factor) < trace_fingerprint(blocks[b].factor);
  });
  std::sort(pairing.cross_paired.begin(), pairing.cross_paired.end(),
            [&](const auto& a, const auto& b) {
              return trace_fingerprint(blocks[a.first].factor) <
                     trace_fingerprint(blocks[b.first].factor);
            });

  std::vector<AssemblyUnit> units;
  std::vector<BlockCertificateInfo> block_infos;

  for (int index : pairing.self_paired) {
    const IsotypicBlock& block = blocks[static_cast<size_t>(index)];
    const int d = block.factor.dimension();
    const ConjugationCertificate local = classify_irreducible(block.factor, which, tol);
    block_infos.push_back({local.tag, block.multiplicity});
    for (int copy = 0; copy < block.multiplicity; ++copy) {
      const Representation copy_rep = copy_of(rep, block, copy);
      const CMatrix r = require_intertwiner(copy_rep, block.factor, tol, "copy to factor");
      AssemblyUnit unit;
      unit.basis = block.basis.middleCols(copy * d, d);
      unit.conjugator = local.conjugator * r;
      unit.tag = local.tag;
      unit.block_index = index;
      units.push_back(std::move(unit));
    }
  }

  for (const auto& [first, second] : pairing.cross_paired) {
    const IsotypicBlock& fb = blocks[static_cast<size_t>(first)];
    const IsotypicBlock& sb = blocks[static_cast<size_t>(second)];
    const int d = fb.factor.dimension();
    const Representation image = involution_image(fb.factor, which);
    const CMatrix t = require_intertwiner(image, sb.factor, tol, "partner to Phi-image");
    const CMatrix tinv = t.inverse();
    const DoubleBlock doubled = double_block_conjugate(fb.factor, which);
    block_infos.push_back({doubled.tag, fb.multiplicity});
    for (int copy = 0; copy < fb.multiplicity; ++copy) {
      const Representation first_rep = copy_of(rep, fb, copy);
      const Representation second_rep = copy_of(rep, sb, copy);
      const CMatrix rf = require_intertwiner(first_rep, fb.factor, tol, "copy to factor");
      const CMatrix rs = require_intertwiner(second_rep, sb.factor, tol, "copy to factor");
      CMatrix align = CMatrix::Zero(2 * d, 2 * d);
      align.topLeftCorner(d, d) = rf;
      align.bottomRightCorner(d, d) = tinv * rs;
      AssemblyUnit unit;
      unit.basis = CMatrix(n, 2 * d);
      unit.basis.leftCols(d) = fb.basis.middleCols(copy * d, d);
      unit.basis.rightCols(d) = sb.basis.middleCols(copy * d, d);
      unit.conjugator = doubled.conjugator * align;
      unit.tag = doubled.tag;
      unit.block_index = first;
      units.push_back(std::move(unit));
    }
  }

  // global change of basis and block-diagonal local conjugators
  CMatrix big_basis(n, n);
  int col = 0;
  for (const AssemblyUnit& unit : units) {
    big_basis.middleCols(col, unit.basis.cols()) = unit.basis;
    col += static_cast<int>(unit.basis.cols());
  }
  if (col != n) throw NumericalFailureError("assembled bases do not fill the space");

  CMatrix local = CMatrix::Zero(n, n);
  col = 0;
  for (const AssemblyUnit& unit : units) {
    const int d = static_cast<int>(unit.conjugator.rows());
    local.block(col, col, d, d) = unit.conjugator;
    col += d;
  }

  ConjugationCertificate cert;
  cert.blocks = block_infos;

  if (which == Involution::Phi2) {
    // permutation sorting the +-1 axes of the assembled diagonal form
    std::vector<int> sign_of(n, 0);
    col = 0;
    for (const AssemblyUnit& unit : units) {
      for (int i = 0; i < unit.tag.p; ++i) sign_of[col + i] = +1;
      for (int i = 0; i < unit.tag.q; ++i) sign_of[col + unit.tag.p + i] = -1;
      col += unit.tag.p + unit.tag.q;
    }
    int total_p = 0;
    for (int sgn : sign_of)
      if (sgn > 0) ++total_p;
    const bool keep = 2 * total_p >= n;  // p >= q up to sign flip of the form
    std::vector<int> order;
    for (int i = 0; i < n; ++i)
      if ((sign_of[i] > 0) == keep) order.push_back(i);
    for (int i = 0; i < n; ++i)
      if ((sign_of[i] > 0) != keep) order.push_back(i);
    CMatrix perm = CMatrix::Zero(n, n);
    for (int row = 0; row < n; ++row) perm(row, order[row]) = 1.0;

    cert.tag = RealFormTag::make(RealFormKind::U, keep ? total_p : n - total_p,
                                 keep ? n - total_p : total_p);
    cert.conjugator = perm * local * big_basis.inverse();
  } else {
    // group the real units first, then shuffle quaternionic halves together
    std::vector<const AssemblyUnit*> real_units, quat_units;
    for (const AssemblyUnit& unit : units)
      (unit.tag.kind == RealFormKind::GL_R ? real_units : quat_units).push_back(&unit);

    int r1 = 0, r2 = 0;
    for (const auto* u : real_units) r1 += u->tag.ambient_dimension();
    for (const auto* u : quat_units) r2 += u->tag.p;
    if (r1 + 2 * r2 != n) throw NumericalFailureError("block dimensions do not add up");

    // positions of each unit inside the blockdiag(local) coordinate order
    std::vector<int> offsets;
    col = 0;
    for (const AssemblyUnit& unit : units) {
      offsets.push_back(col);
      col += static_cast<int>(unit.conjugator.rows());
    }
    std::vector<int> order;
    for (const AssemblyUnit& unit : units)
      if (unit.tag.kind == RealFormKind::GL_R) {
        const int off = offsets[static_cast<size_t>(&unit - units.data())];
        for (int i = 0; i < unit.tag.ambient_dimension(); ++i) order.push_back(off + i);
      }
    // first halves of every quaternionic unit, then all second halves
    for (int half = 0; half < 2; ++half)
      for (const AssemblyUnit& unit : units)
        if (unit.tag.kind != RealFormKind::GL_R) {
          const int off = offsets[static_cast<size_t>(&unit - units.data())];
          const int m = unit.tag.p;
          for (int i = 0; i < m; ++i) order.push_back(off + half * m + i);
        }
    CMatrix perm = CMatrix::Zero(n, n);
    for (int row = 0; row < n; ++row) perm(row, order[row]) = 1.0;

    if (r2 == 0)
      cert.tag = RealFormTag::make(RealFormKind::GL_R, n);
    else if (r1 == 0)
      cert.tag = RealFormTag::make(RealFormKind::GL_H, r2);
    else
      cert.tag = RealFormTag::make(RealFormKind::GL_SUM, r1, r2);
    cert.conjugator = perm * local * big_basis.inverse();
  }

  cert.branch = which == Involution::Phi2 ? "semi-simple unitary" : "semi-simple real/quaternionic";
  const CMatrix pinv = cert.conjugator.inverse();
  bool ok = true;
  for (const CMatrix& g : rep.generators()) {
    const ResidualReport report = validate_membership(cert.conjugator * g * pinv, cert.tag, tol);
    cert.residuals.push_back(report.max_value);
    ok = ok && report.pass;
  }
  if (!ok)
    throw NumericalFailureError("semi-simple certificate residual " +
                                std::to_string(cert.max_residual()) + " exceeds tolerance");
  return cert;
}

}  // namespace realform
