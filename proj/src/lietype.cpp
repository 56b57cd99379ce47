#include "cuspcal/lietype.hpp"

#include <algorithm>

#include "cuspcal/error.hpp"

namespace cuspcal::lietype {

std::string to_string(ClassType t) {
  switch (t) {
    case ClassType::Central:
      return "central";
    case ClassType::CentralUnipotent:
      return "central_unipotent";
    case ClassType::SplitRegular:
      return "split_regular";
    case ClassType::EllipticRegular:
      return "elliptic_regular";
  }
  return "unknown";
}

FiniteLieContext::FiniteLieContext(std::shared_ptr<const gf::Field> big) : big_(std::move(big)) {
  require(big_->degree() % 2 == 0, "the ambient field must be a quadratic extension");
  k_ = big_->degree() / 2;
  Q_ = ipow(big_->characteristic(), k_);
  elements_ = gf::general_linear_group(*big_, 2, k_);

  const gf::Field& K = *big_;
  std::map<std::tuple<int, int, bool>, ConjugacyClass> found;
  for (const auto& g : elements_) {
    const bool scalar = g.is_scalar();
    auto key = std::make_tuple(g.trace(), g.det(), scalar);
    auto it = found.find(key);
    if (it != found.end()) {
      ++it->second.size;
      continue;
    }
    ConjugacyClass c{ClassType::Central, 0, 0, g, 1, ""};
    if (scalar) {
      c.a = c.b = g(0, 0);
    } else {
      std::vector<int> roots;
      for (int x = 0; x < K.size(); ++x) {
        int v = K.add(K.sub(K.mul(x, x), K.mul(std::get<0>(key), x)), std::get<1>(key));
        if (v == 0) roots.push_back(x);
      }
      require(!roots.empty(), "characteristic polynomial has no root in the quadratic extension");
      if (roots.size() == 1) {
        c.type = ClassType::CentralUnipotent;
        c.a = c.b = roots[0];
      } else {
        c.a = roots[0];
        c.b = roots[1];
        c.type = K.in_subfield(c.a, k_) ? ClassType::SplitRegular : ClassType::EllipticRegular;
      }
    }
    found.emplace(key, c);
  }
  for (auto& [key, c] : found) classes_.push_back(c);
  std::sort(classes_.begin(), classes_.end(), [](const ConjugacyClass& x, const ConjugacyClass& y) {
    return std::tie(x.type, x.a, x.b) < std::tie(y.type, y.a, y.b);
  });
  for (size_t i = 0; i < classes_.size(); ++i) {
    auto& c = classes_[i];
    index_[std::make_tuple(c.rep.trace(), c.rep.det(), c.rep.is_scalar())] = static_cast<int>(i);
    switch (c.type) {
      case ClassType::Central:
        c.label = "z=" + std::to_string(c.a);
        break;
      case ClassType::CentralUnipotent:
        c.label = "z=" + std::to_string(c.a) + ",u";
        break;
      default:
        c.label = "{" + std::to_string(c.a) + "," + std::to_string(c.b) + "}";
    }
  }
}

std::shared_ptr<const FiniteLieContext> FiniteLieContext::make(Int Q) {
  require(Q >= 2, "Q must be a prime power at least 2");
  auto f = factorize(Q);
  require(f.size() == 1, "Q must be a prime power");
  if (Q > 25) fail_budget("Q too large for brute-force enumeration");
  auto big = gf::Field::make(static_cast<int>(f[0].first), 2 * f[0].second);
  return std::make_shared<const FiniteLieContext>(big);
}

int FiniteLieContext::class_of(const gf::Matrix& g) const {
  auto it = index_.find(std::make_tuple(g.trace(), g.det(), g.is_scalar()));
  require(it != index_.end(), "matrix is not in GL_2(F_Q)");
  return it->second;
}

Int FiniteLieContext::log_small(int x) const {
  Int L = big_->log(x);
  require(L % (Q_ + 1) == 0, "element is not in F_Q");
  return L / (Q_ + 1);
}

CyclotomicValue ClassFunction::degree() const { return at(gf::Matrix::identity(ctx->big(), 2)); }

CyclotomicValue inner_product(const ClassFunction& f1, const ClassFunction& f2) {
  require(f1.ctx == f2.ctx, "class functions live on different groups");
  CyclotomicValue s;
  const auto& cls = f1.ctx->classes();
  for (size_t i = 0; i < cls.size(); ++i) s += CyclotomicValue(cls[i].size) * f1.values[i] * f2.values[i].conj();
  return s * CyclotomicValue(Rational(1, f1.ctx->group_order()));
}

namespace {

Phase theta_small(const FiniteLieContext& ctx, Int j, int x) {
  return normalize_phase(Phase(j * ctx.log_small(x), ctx.q() - 1));
}

Phase theta_big(const FiniteLieContext& ctx, Int k, int x) {
  const Int Q = ctx.q();
  return normalize_phase(Phase(mod(k, Q * Q - 1) * ctx.log_big(x), Q * Q - 1));
}

ClassFunction make_function(const FiniteLieContext& ctx, std::string kind, std::vector<Int> params, int sign = 1) {
  ClassFunction f;
  f.ctx = &ctx;
  f.kind = std::move(kind);
  f.params = std::move(params);
  f.sign = sign;
  f.values.resize(ctx.classes().size());
  return f;
}

}  // namespace

ClassFunction induced_from_borel(const FiniteLieContext& ctx, Int j1, Int j2) {
  ClassFunction f = make_function(ctx, "split", {j1, j2});
  const auto& G = ctx.elements();
  std::vector<gf::Matrix> inv;
  inv.reserve(G.size());
  for (const auto& x : G) inv.push_back(x.inverse());
  const Int Q = ctx.q();
  const Int borel = (Q - 1) * (Q - 1) * Q;
  for (size_t c = 0; c < ctx.classes().size(); ++c) {
    const gf::Matrix& g = ctx.classes()[c].rep;
    PhaseSum sum;
    for (size_t i = 0; i < G.size(); ++i) {
      gf::Matrix y = G[i] * g * inv[i];
      if (y(1, 0) != 0) continue;
      sum.add(theta_small(ctx, j1, y(0, 0)) + theta_small(ctx, j2, y(1, 1)));
    }
    f.values[c] = sum.value() * CyclotomicValue(Rational(1, borel));
  }
  return f;
}

ClassFunction split_character(const FiniteLieContext& ctx, Int j1, Int j2) {
  ClassFunction f = make_function(ctx, "split", {j1, j2});
  const Int Q = ctx.q();
  for (size_t c = 0; c < ctx.classes().size(); ++c) {
    const auto& cl = ctx.classes()[c];
    PhaseSum s;
    switch (cl.type) {
      case ClassType::Central:
        s.add(theta_small(ctx, j1 + j2, cl.a), Rational(Q + 1));
        break;
      case ClassType::CentralUnipotent:
        s.add(theta_small(ctx, j1 + j2, cl.a));
        break;
      case ClassType::SplitRegular:
        s.add(theta_small(ctx, j1, cl.a) + theta_small(ctx, j2, cl.b));
        s.add(theta_small(ctx, j1, cl.b) + theta_small(ctx, j2, cl.a));
        break;
      case ClassType::EllipticRegular:
        break;
    }
    f.values[c] = s.value();
  }
  return f;
}

ClassFunction elliptic_character(const FiniteLieContext& ctx, Int k) {
  ClassFunction f = make_function(ctx, "elliptic", {k}, -1);
  const Int Q = ctx.q();
  for (size_t c = 0; c < ctx.classes().size(); ++c) {
    const auto& cl = ctx.classes()[c];
    PhaseSum s;
    switch (cl.type) {
      case ClassType::Central:
        s.add(theta_big(ctx, k, cl.a), Rational(Q - 1));
        break;
      case ClassType::CentralUnipotent:
        s.add(theta_big(ctx, k, cl.a), Rational(-1));
        break;
      case ClassType::SplitRegular:
        break;
      case ClassType::EllipticRegular:
        s.add(theta_big(ctx, k, cl.a), Rational(-1));
        s.add(theta_big(ctx, k, cl.b), Rational(-1));
        break;
    }
    f.values[c] = s.value();
  }
  return f;
}

ClassFunction linear_character(const FiniteLieContext& ctx, Int j) {
  ClassFunction f = make_function(ctx, "linear", {j});
  for (size_t c = 0; c < ctx.classes().size(); ++c)
    f.values[c] = CyclotomicValue::root(theta_small(ctx, j, ctx.classes()[c].rep.det()));
  return f;
}

ClassFunction steinberg_character(const FiniteLieContext& ctx, Int j) {
  ClassFunction ind = induced_from_borel(ctx, j, j);
  ClassFunction lin = linear_character(ctx, j);
  ClassFunction f = make_function(ctx, "steinberg", {j});
  for (size_t c = 0; c < f.values.size(); ++c) f.values[c] = ind.values[c] - lin.values[c];
  return f;
}

ClassFunction dl_character(const FiniteLieContext& ctx, TorusKind kind, Int a, Int b) {
  return kind == TorusKind::Split ? induced_from_borel(ctx, a, b) : elliptic_character(ctx, a);
}

bool in_general_position_elliptic(const FiniteLieContext& ctx, Int k) {
  const Int Q = ctx.q(), M = Q * Q - 1;
  return mod(k * Q - k, M) != 0;
}

Int green_function(TorusKind kind, bool regular_unipotent, Int Q) {
  if (regular_unipotent) return 1;
  return kind == TorusKind::Split ? Q + 1 : 1 - Q;
}

std::vector<ClassFunction> character_table(const FiniteLieContext& ctx) {
  const Int Q = ctx.q();
  std::vector<ClassFunction> rows;
  for (Int j = 0; j < Q - 1; ++j) rows.push_back(linear_character(ctx, j));
  for (Int j = 0; j < Q - 1; ++j) rows.push_back(steinberg_character(ctx, j));
  for (Int j1 = 0; j1 < Q - 1; ++j1)
    for (Int j2 = j1 + 1; j2 < Q - 1; ++j2) rows.push_back(induced_from_borel(ctx, j1, j2));
  const Int M = Q * Q - 1;
  for (Int k = 0; k < M; ++k) {
    if (!in_general_position_elliptic(ctx, k)) continue;
    if (mod(k * Q, M) < k) continue;  // one representative per Frobenius orbit
    rows.push_back(elliptic_character(ctx, k));
  }
  return rows;
}

TableCertificate certify_table(const FiniteLieContext& ctx, const std::vector<ClassFunction>& table) {
  TableCertificate cert;
  const auto& cls = ctx.classes();
  cert.complete = table.size() == cls.size();

  cert.rows_orthonormal = true;
  for (size_t i = 0; i < table.size() && cert.rows_orthonormal; ++i)
    for (size_t j = i; j < table.size(); ++j) {
      CyclotomicValue ip = inner_product(table[i], table[j]);
      if (!(ip == CyclotomicValue(i == j ? 1 : 0))) {
        cert.rows_orthonormal = false;
        break;
      }
    }

  cert.columns_orthogonal = true;
  for (size_t a = 0; a < cls.size() && cert.columns_orthogonal; ++a)
    for (size_t b = a; b < cls.size(); ++b) {
      CyclotomicValue s;
      for (const auto& row : table) s += row.values[a] * row.values[b].conj();
      CyclotomicValue expect(a == b ? ctx.group_order() / cls[a].size : 0);
      if (!(s == expect)) {
        cert.columns_orthogonal = false;
        break;
      }
    }

  // Restrict the closed-form rows to each cyclic subgroup <g>.
  cert.cyclic_multiplicities = true;
  for (const auto& row : table) {
    if (row.kind != "elliptic") continue;
    for (const auto& cl : cls) {
      const Int o = cl.rep.order();
      std::vector<CyclotomicValue> vals;
      gf::Matrix x = gf::Matrix::identity(ctx.big(), 2);
      for (Int i = 0; i < o; ++i, x = x * cl.rep) vals.push_back(row.values[ctx.class_of(x)]);
      for (Int j = 0; j < o; ++j) {
        CyclotomicValue s;
        for (Int i = 0; i < o; ++i) s += vals[i] * CyclotomicValue::root(Phase(-i * j, o));
        s = s * CyclotomicValue(Rational(1, o));
        if (!s.is_rational() || s.to_rational().denominator() != 1 || s.to_rational().numerator() < 0) {
          cert.cyclic_multiplicities = false;
        }
      }
    }
  }
  return cert;
}

std::pair<gf::Matrix, gf::Matrix> finite_jordan(const gf::Matrix& g) {
  const Int p = g.field().characteristic();
  Int m = g.order();
  Int pb = 1;
  while (m % p == 0) {
    m /= p;
    pb *= p;
  }
  const Int alpha = m == 1 ? 0 : invmod(mod(pb, m), m);
  const Int beta = pb == 1 ? 0 : invmod(mod(m, pb), pb);
  gf::Matrix s = m == 1 ? gf::Matrix::identity(g.field(), g.size()) : g.pow(pb * alpha);
  gf::Matrix u = pb == 1 ? gf::Matrix::identity(g.field(), g.size()) : g.pow(m * beta);
  return {s, u};
}

}  // namespace cuspcal::lietype
