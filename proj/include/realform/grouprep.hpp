#pragma once

#include <optional>
#include <string>
#include <vector>

#include "realform/matcore.hpp"
#include "realform/types.hpp"

namespace realform {

enum class GroupFamily { GL, SL, O, SO, Sp };

/// Ambient classical complex group: a family plus its matrix size.
struct GroupKind {
  GroupFamily family;
  int n;  // matrix size; even for Sp

  GroupKind(GroupFamily f, int size);
  bool operator==(const GroupKind&) const = default;
  std::string name() const;
};

enum class RealFormKind {
  GL_R,        // GL(n, R)
  GL_H,        // GL(m, H) inside GL(2m, C)
  U,           // U(p, q)
  SL_R,        // SL(n, R)
  SL_H,        // SL(m, H)
  SU,          // SU(p, q)
  Sp_R,        // Sp(2n, R)
  Sp_PQ,       // Sp(2p, 2q)
  O_PQ,        // the copy D O(p,q) D^{-1} inside O(n, C)
  SO_PQ,       // the copy D SO(p,q) D^{-1} inside SO(n, C)
  O_H,         // O(m, H) inside O(2m, C)
  SO_H,        // SO(m, H) inside SO(2m, C)
  SO_H_MINUS,  // P0 SO(m, H) P0^{-1}, ambient dimension 2m divisible by 4
  GL_SUM,      // composite GL(r1, R) (+) GL(r2, H) block certificate
};

/// A row of the real-forms table, with parameters. Signature kinds store
/// (p, q) with p >= q; quaternionic kinds store m in p; Sp_R stores the
/// half-dimension n in p; GL_SUM stores (r1, r2) in (p, q).
struct RealFormTag {
  RealFormKind kind;
  int p = 0;
  int q = 0;

  static RealFormTag make(RealFormKind kind, int p, int q = 0);

  bool operator==(const RealFormTag&) const = default;
  int ambient_dimension() const;
  GroupKind ambient_kind() const;
  bool is_compact() const;
  std::string name() const;
};

/// Parses names like "U(2,1)", "GL_H(2)", "Sp(4,2)", "SO_H-(2)", "SO(3,1)".
std::optional<RealFormTag> parse_real_form(const std::string& text);

/// The convention for the orientation-reversing matrix P0 defining
/// SO^-(m, H): diag(1, ..., 1, -1) of the ambient size.
CMatrix so_minus_p0(int ambient);

struct ResidualEntry {
  std::string equation;
  double value = 0;
  double threshold = 0;
  bool pass = false;
};

struct ResidualReport {
  std::vector<ResidualEntry> entries;
  bool pass = true;
  double max_value = 0;

  void add(std::string equation, double value, double threshold);
};

/// Residuals of the defining equations of an ambient classical group.
ResidualReport validate_membership(const CMatrix& m, const GroupKind& kind,
                                   const Tolerance& tol = {});

/// Residuals of the defining equations of a real form (as a subgroup of its
/// ambient complex group).
ResidualReport validate_membership(const CMatrix& m, const RealFormTag& tag,
                                   const Tolerance& tol = {});

/// A point of Hom(F_s, G_C): the ambient kind plus ordered generator images.
/// Generators are validated against the kind at construction. Relations of a
/// non-free group may be attached; they are checked on demand, not enforced.
class Representation {
 public:
  Representation(GroupKind kind, std::vector<CMatrix> generators,
                 const Tolerance& tol = {},
                 std::vector<std::string> labels = {},
                 std::vector<std::vector<int>> relations = {});

  const GroupKind& kind() const { return kind_; }
  int dimension() const { return kind_.n; }
  int num_generators() const { return static_cast<int>(generators_.size()); }
  const std::vector<CMatrix>& generators() const { return generators_; }
  const CMatrix& generator(int i) const { return generators_.at(i); }
  CMatrix generator_inverse(int i) const;
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<std::vector<int>>& relations() const { return relations_; }

  /// || rho(w) - I || for each attached relation word.
  std::vector<double> relation_residuals() const;

 private:
  GroupKind kind_;
  std::vector<CMatrix> generators_;
  std::vector<std::string> labels_;
  std::vector<std::vector<int>> relations_;
};

/// The representation g -> W rho(g) W^{-1}.
Representation conjugate_representation(const Representation& rep, const CMatrix& w,
                                        const Tolerance& tol = {});

}  // namespace realform
