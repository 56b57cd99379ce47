#include <random>
#include <set>

#include "cuspcal/error.hpp"
#include "cuspcal/padic.hpp"
#include "doctest.h"

using namespace cuspcal;
using namespace cuspcal::padic;

namespace {

// Teichmüller representative in Z/p^N by iterating x -> x^p on plain integers.
Int teich_oracle(Int x, Int p, int N) {
  const Int pN = ipow(p, N);
  for (int i = 0; i < 64; ++i) {
    const Int next = powmod(x, p, pN);
    if (next == x) return x;
    x = next;
  }
  return -1;
}

Elem random_elem(const FieldContext& ctx, std::mt19937_64& rng) {
  std::uniform_int_distribution<Int> c(0, ctx.modulus() - 1);
  std::vector<Int> v(ctx.degree());
  for (auto& x : v) x = c(rng);
  return Elem::from_coords(ctx, v);
}

Elem random_unit(const FieldContext& ctx, std::mt19937_64& rng) {
  for (;;) {
    Elem x = random_elem(ctx, rng);
    if (x.is_unit()) return x;
  }
}

}  // namespace

TEST_CASE("Teichmüller lifts over Q_p") {
  auto ctx = FieldContext::make(5, 1, 2);
  CHECK(teich_oracle(2, 5, 2) == 7);
  CHECK(teichmuller(Elem::from_int(*ctx, 2)) == Elem::from_int(*ctx, 7));
  CHECK(teichmuller(Elem::from_int(*ctx, 6)) == Elem::one(*ctx));
  for (Int a = 1; a < 25; ++a) {
    if (a % 5 == 0) continue;
    CHECK(teichmuller(Elem::from_int(*ctx, a)) == Elem::from_int(*ctx, teich_oracle(a, 5, 2)));
  }
}

TEST_CASE("field axioms and inverses") {
  std::mt19937_64 rng(3);
  for (auto [p, f, N] : std::vector<std::tuple<int, int, int>>{{3, 2, 4}, {5, 2, 3}, {3, 4, 3}, {7, 1, 3}}) {
    auto ctx = FieldContext::make(p, f, N);
    for (int i = 0; i < 40; ++i) {
      const Elem a = random_elem(*ctx, rng), b = random_elem(*ctx, rng), c = random_elem(*ctx, rng);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      const Elem u = random_unit(*ctx, rng);
      CHECK(u * u.inverse() == Elem::one(*ctx));
      CHECK((a * b).frobenius() == a.frobenius() * b.frobenius());
      CHECK(a.frobenius(f) == a);
    }
  }
}

TEST_CASE("Teichmüller generator and norms") {
  auto ctx = FieldContext::make(3, 2, 4);
  const Elem& z = ctx->zeta();
  CHECK(z.pow(8) == Elem::one(*ctx));
  CHECK_FALSE(z.pow(4) == Elem::one(*ctx));
  // N(zeta) = zeta^(1 + 3) has order 2.
  CHECK(norm_to_subfield(z, 1) == Elem::from_int(*ctx, -1));

  std::mt19937_64 rng(5);
  auto big = FieldContext::make(3, 4, 3);
  for (int i = 0; i < 20; ++i) {
    const Elem x = random_unit(*big, rng), y = random_unit(*big, rng);
    CHECK(norm_to_subfield(x * y, 2) == norm_to_subfield(x, 2) * norm_to_subfield(y, 2));
    CHECK(relative_norm(norm_to_subfield(x, 2), 2, 1) == norm_to_subfield(x, 1));
    CHECK(big->subfield(2).contains(norm_to_subfield(x, 2)));
  }
}

TEST_CASE("subfields") {
  auto ctx = FieldContext::make(3, 4, 3);
  const Subfield& e2 = ctx->subfield(2);
  CHECK(e2.residue_size() == 9);
  CHECK(e2.zeta().pow(8) == Elem::one(*ctx));
  CHECK(e2.zeta() == ctx->zeta().pow(10));
  std::mt19937_64 rng(8);
  for (int i = 0; i < 20; ++i) {
    std::vector<Int> c{static_cast<Int>(rng() % 27), static_cast<Int>(rng() % 27)};
    const Elem x = e2.from_coordinates(c);
    CHECK(e2.contains(x));
    CHECK(e2.coordinates(x) == c);
  }
  CHECK_FALSE(e2.contains(ctx->zeta()));
  CHECK_THROWS_AS(e2.coordinates(ctx->zeta()), Error);
}

TEST_CASE("principal unit quotients") {
  auto ctx = FieldContext::make(3, 2, 4);
  const auto q1 = unit_group_quotient(*ctx, 1);
  const auto q2 = unit_group_quotient(*ctx, 2);
  CHECK(q1->order() == 9);
  CHECK(q2->order() == 81);

  // log and element are inverse bijections.
  q2->for_each([&](std::span<const Int> e) {
    const Elem w = q2->element(e);
    CHECK(q2->log(w) == std::vector<Int>(e.begin(), e.end()));
  });

  // log is a homomorphism and the filtration level is read off the exponents.
  std::mt19937_64 rng(9);
  for (int i = 0; i < 30; ++i) {
    std::vector<Int> a{static_cast<Int>(rng() % 9), static_cast<Int>(rng() % 9)};
    std::vector<Int> b{static_cast<Int>(rng() % 9), static_cast<Int>(rng() % 9)};
    const auto prod = q2->log(q2->element(a) * q2->element(b));
    CHECK(prod == std::vector<Int>{(a[0] + b[0]) % 9, (a[1] + b[1]) % 9});
    const Elem w = q2->element(a);
    const int level = q2->filtration_level(a);
    CHECK(w.congruent(Elem::one(*ctx), level));
    if (level <= 2) CHECK_FALSE(w.congruent(Elem::one(*ctx), level + 1));
  }

  // The norm to Q_p is onto (1 + 3Z_3) / (1 + 27 Z_3).
  std::set<std::vector<Int>> image;
  q2->for_each([&](std::span<const Int> e) { image.insert(q2->apply_norm(1, e)); });
  CHECK(image.size() == 9);

  // Norm matrices agree with field norms.
  q2->for_each([&](std::span<const Int> e) {
    const Elem n = norm_to_subfield(q2->element(e), 1);
    CHECK(q2->sub_quotient(1).log(n) == q2->apply_norm(1, e));
  });
}

TEST_CASE("only odd primes are accepted") {
  CHECK_THROWS_AS(FieldContext::make(2, 1, 4), Error);
  CHECK_THROWS_AS(FieldContext::make(2, 2, 4), Error);
  CHECK_THROWS_AS(FieldContext::make(9, 1, 4), Error);
}
