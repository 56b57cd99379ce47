#pragma once
// Independent oracles shared by the unit tests and the acceptance runner.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>

#include "cuspcal/lietype.hpp"
#include "cuspcal/torus_char.hpp"

namespace cuspcal::oracle {

using padic::Elem;
using padic::FieldContext;
using torus::TorusCharacter;

inline Elem random_unit(const FieldContext& ctx, std::mt19937_64& rng) {
  std::uniform_int_distribution<Int> c(0, ctx.modulus() - 1);
  for (;;) {
    std::vector<Int> v(ctx.degree());
    for (auto& x : v) x = c(rng);
    Elem e = Elem::from_coords(ctx, v);
    if (e.is_unit()) return e;
  }
}

inline padic::Matrix random_gl(const FieldContext& ctx, int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<Int> c(0, ctx.modulus() - 1);
  for (;;) {
    padic::Matrix m(ctx, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        std::vector<Int> v(ctx.degree());
        for (auto& x : v) x = c(rng);
        m(i, j) = Elem::from_coords(ctx, v);
      }
    if (m.residue_invertible()) return m;
  }
}

// mu = prod_d chi_d o N_{E/E_d} with chi_d generic of depth r_d, times a
// faithful residue character.
inline TorusCharacter build(std::shared_ptr<const FieldContext> ctx, const std::map<int, int>& parts) {
  int m = 1;
  for (auto [d, r] : parts) m = std::max(m, r);
  TorusCharacter mu(ctx, ctx->degree(), m, Phase(0), 1, std::vector<Int>(ctx->degree(), 0));
  for (auto [d, r] : parts) mu = mu * TorusCharacter::generic_of_depth(ctx, d, r, m).compose_norm(ctx->degree());
  return mu;
}

struct Prediction {
  std::map<int, std::optional<int>> orbit_depth;  // by delta
  std::vector<int> chain;                         // subfield degrees, bottom first
  std::vector<int> depths;
};

struct TowerCase {
  int p, n, N;
  std::map<int, int> parts;  // subfield degree d -> depth of chi_d
};

inline std::vector<TowerCase> tower_cases() {
  return {
      {3, 2, 4, {{2, 1}}},         {3, 2, 4, {{1, 1}}},         {3, 2, 4, {{1, 2}, {2, 1}}},
      {3, 2, 4, {{2, 2}}},         {5, 2, 3, {{2, 1}}},         {5, 2, 3, {{1, 2}, {2, 1}}},
      {3, 3, 3, {{3, 1}}},         {3, 3, 3, {{1, 2}, {3, 1}}}, {3, 3, 3, {{3, 2}, {1, 1}}},
      {3, 4, 3, {{2, 1}, {1, 2}}}, {3, 4, 3, {{4, 1}, {2, 2}}}, {3, 4, 3, {{4, 2}, {2, 1}}},
      {3, 4, 3, {{2, 2}, {1, 1}}}, {5, 2, 3, {{1, 1}}},
  };
}

// The kernel of N_{E/E_g} is killed by chi_d o N_{E/E_d} exactly when d | g.
inline Prediction predict(int n, const std::map<int, int>& parts) {
  Prediction p;
  std::set<int> levels;
  for (int delta = 1; delta < n; ++delta) {
    const int g = std::gcd(delta, n);
    std::optional<int> depth;
    for (auto [d, r] : parts)
      if (g % d != 0) depth = std::max(depth.value_or(0), r);
    p.orbit_depth[delta] = depth;
    if (depth) levels.insert(*depth);
  }
  auto divisor_at = [&](int r) {
    int L = 1;
    for (auto [d, rd] : parts)
      if (rd > r && (n % d == 0) && d != n) L = std::lcm(L, d);
    // Components through E itself separate every orbit.
    for (auto [d, rd] : parts)
      if (rd > r && d == n) L = n;
    return L;
  };
  p.chain.push_back(divisor_at(0));
  for (int r : levels) {
    p.chain.push_back(divisor_at(r));
    p.depths.push_back(r);
  }
  int total = 0;
  for (auto [d, r] : parts) total = std::max(total, r);
  if (total > 0 && (levels.empty() || total > *levels.rbegin())) p.depths.push_back(total);
  return p;
}

// Induced class function, by summing a function on H over conjugates.
template <class InH, class F>
inline std::vector<CyclotomicValue> induce(const lietype::FiniteLieContext& ctx, Int h_order, InH in_h, F f) {
  std::vector<CyclotomicValue> out;
  for (const auto& c : ctx.classes()) {
    PhaseSum sum;
    for (const auto& x : ctx.elements()) {
      const gf::Matrix y = x * c.rep * x.inverse();
      if (in_h(y)) sum.add(f(y));
    }
    out.push_back(sum.value() * CyclotomicValue(Rational(1, h_order)));
  }
  return out;
}

// Cuspidal character as Ind_{ZU}(theta psi) - Ind_{T}(theta), with T the
// image of F_{Q^2}^x acting on the basis 1, Gamma.
inline std::vector<CyclotomicValue> cuspidal_oracle(const lietype::FiniteLieContext& ctx, Int k) {
  const gf::Field& K = ctx.big();
  const Int Q = ctx.q();
  const int p = K.characteristic();
  const int gamma = K.primitive();
  auto coords = [&](int v) {  // v = a + b Gamma with a, b in F_Q
    const int b = K.mul(K.sub(v, ctx.frob_q(v)), K.inv(K.sub(gamma, ctx.frob_q(gamma))));
    return std::pair<int, int>{K.sub(v, K.mul(b, gamma)), b};
  };
  auto mult_matrix = [&](int lambda) {
    gf::Matrix m(K, 2);
    auto [a0, b0] = coords(lambda);
    auto [a1, b1] = coords(K.mul(lambda, gamma));
    m(0, 0) = a0;
    m(1, 0) = b0;
    m(0, 1) = a1;
    m(1, 1) = b1;
    return m;
  };
  const gf::Matrix M = mult_matrix(gamma);
  auto theta = [&](int x) { return Phase(mod(k, Q * Q - 1) * K.log(x), Q * Q - 1); };
  auto trace_to_prime = [&](int x) {
    int t = 0;
    for (int j = 0; j < K.degree() / 2; ++j) t = K.add(t, K.frob(x, j));
    return t;  // an element of F_p, encoded as 0..p-1
  };

  const auto zu = induce(
      ctx, (Q - 1) * Q,
      [&](const gf::Matrix& y) { return y(1, 0) == 0 && y(0, 0) == y(1, 1); },
      [&](const gf::Matrix& y) {
        const int x = K.mul(y(0, 1), K.inv(y(0, 0)));
        return theta(y(0, 0)) + Phase(trace_to_prime(x), p);
      });
  const auto torus = induce(
      ctx, Q * Q - 1, [&](const gf::Matrix& y) { return y.invertible() && y.commutes_with(M); },
      [&](const gf::Matrix& y) {
        // y is multiplication by y(0,0) + y(1,0) Gamma.
        return theta(K.add(y(0, 0), K.mul(y(1, 0), gamma)));
      });
  std::vector<CyclotomicValue> out;
  for (size_t i = 0; i < zu.size(); ++i) out.push_back(zu[i] - torus[i]);
  return out;
}

// Ind_B^G(theta_a x theta_b) summed over conjugates into the upper Borel;
// theta_j(x) = x^(j (Q+1)) read through the discrete log of F_{Q^2}.
inline std::vector<CyclotomicValue> split_oracle(const lietype::FiniteLieContext& ctx, Int a, Int b) {
  const gf::Field& K = ctx.big();
  const Int Q = ctx.q(), M = Q * Q - 1;
  auto theta = [&](Int j, int x) { return Phase(mod(j * K.log(x), M), M); };
  return induce(
      ctx, (Q - 1) * (Q - 1) * Q, [](const gf::Matrix& y) { return y(1, 0) == 0; },
      [&](const gf::Matrix& y) { return theta(a, y(0, 0)) + theta(b, y(1, 1)); });
}

}  // namespace cuspcal::oracle
