#pragma once

#include <memory>
#include <string>
#include <vector>

#include "cuspcal/matrix.hpp"

namespace cuspcal::variety {

enum class TorusVersion { Split, Elliptic };

/// Finite-point model of the Deligne–Lusztig variety X = {h : h^-1 Fr(h) in U}
/// for GL_2 over F_Q, with points taken in F_{Q^m} inside F_{Q^2}.
/// For the elliptic torus T_w = g0 T0 g0^-1 with g0^-1 Fr(g0) = w, and the
/// Borel through T_w has unipotent radical g0 U g0^-1.
class VarietySetup {
 public:
  VarietySetup(Int Q, TorusVersion version);

  Int q() const { return Q_; }
  TorusVersion version() const { return version_; }
  const gf::Field& field() const { return *field_; }
  const gf::Matrix& g0() const { return g0_; }

  gf::Matrix frobenius(const gf::Matrix& h) const { return h.frobenius(k_); }
  bool in_unipotent_radical(const gf::Matrix& h) const;
  /// T(F_Q), in a fixed order.
  const std::vector<gf::Matrix>& torus_points() const { return torus_; }
  /// Split: diag(gamma^a, gamma^b). Elliptic: g0 diag(L, L^Q) g0^-1, L = Gamma^a.
  gf::Matrix torus_element(Int a, Int b = 0) const;
  /// GL_2(F_{Q^m}).
  const std::vector<gf::Matrix>& group_points(int m) const;
  const std::vector<gf::Matrix>& x_points(int m) const;

 private:
  Int Q_;
  int k_;
  TorusVersion version_;
  std::shared_ptr<const gf::Field> field_;
  gf::Matrix g0_, g0_inv_;
  std::vector<gf::Matrix> torus_;
  mutable std::vector<std::vector<gf::Matrix>> groups_, xs_;  // lazily filled, index m
};

struct VarietyReport {
  Int Q = 0;
  int m = 0;
  TorusVersion version = TorusVersion::Split;
  gf::Matrix s, t;
  size_t x_size = 0, xst_size = 0, w_size = 0, z_size = 0, y_size = 0;
  int component_index = 1;  // [Z(F_Q) : Z°(F_Q)]
  bool steps[7] = {false, false, false, false, false, false, false};
  bool count_identity = false;  // |X^(s,t)| = [Z:Z°] |Y| (or both empty)
  bool torsor = false;          // W = k0 Z when W is nonempty
  bool int_t_stabilizes_x = false;
  bool ok() const;
};

VarietyReport variety_decomposition_check(const VarietySetup& setup, int m, const gf::Matrix& s,
                                          const gf::Matrix& t);

/// Every (s, t) in T(F_Q) x T(F_Q).
std::vector<VarietyReport> check_all(const VarietySetup& setup, int m);

std::string to_string(TorusVersion v);

}  // namespace cuspcal::variety
