#pragma once

#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "cuspcal/cyclotomic.hpp"
#include "cuspcal/matrix.hpp"

namespace cuspcal::lietype {

enum class ClassType { Central, CentralUnipotent, SplitRegular, EllipticRegular };
std::string to_string(ClassType t);

struct ConjugacyClass {
  ClassType type;
  // Eigenvalue data as elements of the quadratic extension: {z, z},
  // {a, b} with a < b, or {lambda, lambda^Q}.
  int a = 0, b = 0;
  gf::Matrix rep;
  Int size = 0;
  std::string label;
};

/// GL_2 over F_Q, realised inside the quadratic extension F_{Q^2}. Characters
/// of F_Q^x are indexed by j with theta_j(gamma) = exp(2 pi i j / (Q-1)),
/// gamma = Gamma^(Q+1); characters of F_{Q^2}^x by k with
/// theta_k(Gamma) = exp(2 pi i k / (Q^2-1)), Gamma the primitive element.
class FiniteLieContext {
 public:
  explicit FiniteLieContext(std::shared_ptr<const gf::Field> big);
  /// GL_2(F_Q) with F_{Q^2} built from the smallest irreducible polynomial.
  static std::shared_ptr<const FiniteLieContext> make(Int Q);

  Int q() const { return Q_; }
  const gf::Field& big() const { return *big_; }
  std::shared_ptr<const gf::Field> big_ptr() const { return big_; }
  int sub_degree() const { return k_; }
  Int group_order() const { return static_cast<Int>(elements_.size()); }
  const std::vector<gf::Matrix>& elements() const { return elements_; }
  const std::vector<ConjugacyClass>& classes() const { return classes_; }
  int class_of(const gf::Matrix& g) const;

  /// Exponent e with x = gamma^e for x in F_Q^x.
  Int log_small(int x) const;
  /// Exponent e with x = Gamma^e for x in F_{Q^2}^x.
  Int log_big(int x) const { return big_->log(x); }
  int frob_q(int x) const { return big_->frob(x, k_); }

 private:
  std::shared_ptr<const gf::Field> big_;
  int k_;
  Int Q_;
  std::vector<gf::Matrix> elements_;
  std::vector<ConjugacyClass> classes_;
  std::map<std::tuple<int, int, bool>, int> index_;  // (trace, det, scalar)
};

struct ClassFunction {
  const FiniteLieContext* ctx = nullptr;
  std::vector<CyclotomicValue> values;  // per class
  std::string kind;   // "split", "elliptic", "linear", "steinberg", ...
  std::vector<Int> params;
  int sign = 1;  // (-1)^{l(w)} applied to the Deligne–Lusztig character

  CyclotomicValue at(const gf::Matrix& g) const { return values[ctx->class_of(g)]; }
  CyclotomicValue degree() const;
};

CyclotomicValue inner_product(const ClassFunction& f1, const ClassFunction& f2);

/// Ind_B^G(theta_j1 x theta_j2) by summation over the group.
ClassFunction induced_from_borel(const FiniteLieContext& ctx, Int j1, Int j2);
/// Closed-form split Deligne–Lusztig character.
ClassFunction split_character(const FiniteLieContext& ctx, Int j1, Int j2);
/// Sign-adjusted elliptic Deligne–Lusztig character -R_{T_w}^theta_k.
ClassFunction elliptic_character(const FiniteLieContext& ctx, Int k);
ClassFunction linear_character(const FiniteLieContext& ctx, Int j);
/// St twisted by theta_j o det, as Ind(theta_j, theta_j) - theta_j o det.
ClassFunction steinberg_character(const FiniteLieContext& ctx, Int j);

enum class TorusKind { Split, Elliptic };

ClassFunction dl_character(const FiniteLieContext& ctx, TorusKind kind, Int a, Int b = 0);

bool in_general_position_elliptic(const FiniteLieContext& ctx, Int k);

/// Green function of GL_2 for a split or elliptic torus at 1 or a regular unipotent.
Int green_function(TorusKind kind, bool regular_unipotent, Int Q);

/// All irreducible characters: linear, Steinberg twists, principal series, cuspidal.
std::vector<ClassFunction> character_table(const FiniteLieContext& ctx);

struct TableCertificate {
  bool rows_orthonormal = false;
  bool columns_orthogonal = false;
  bool cyclic_multiplicities = false;
  bool complete = false;  // number of rows equals number of classes
  bool ok() const { return rows_orthonormal && columns_orthogonal && cyclic_multiplicities && complete; }
};

/// Accepts the closed-form cuspidal rows only if, together with the
/// brute-force principal-series rows, they form an orthonormal table whose
/// restrictions to cyclic subgroups have non-negative integer multiplicities.
TableCertificate certify_table(const FiniteLieContext& ctx, const std::vector<ClassFunction>& table);

/// Multiplicative Jordan decomposition in GL_n(F_q) by exponent arithmetic.
std::pair<gf::Matrix, gf::Matrix> finite_jordan(const gf::Matrix& g);

}  // namespace cuspcal::lietype
