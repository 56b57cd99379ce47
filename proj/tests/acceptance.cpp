// End-to-end acceptance runner: one PASS/FAIL line per criterion.
// Every comparison is exact; the constants below pin sample sizes.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <string>

#include "cuspcal/charformula.hpp"
#include "cuspcal/jordan.hpp"
#include "cuspcal/lietype.hpp"
#include "cuspcal/torus_char.hpp"
#include "cuspcal/variety.hpp"
#include "cuspcal/weakfact.hpp"
#include "oracles.hpp"

using namespace cuspcal;
using jordan::CompactModCenterElement;
using padic::Elem;
using padic::FieldContext;
using torus::TorusCharacter;

namespace {

constexpr int kRandomMatrices = 200;      // per prime, criteria 1 and 3
constexpr int kTjdPrecision = 6;
constexpr int kTorsorPrecision = 3;
constexpr size_t kMinTraceSamples = 500;  // criterion 9
constexpr size_t kMinTieBreaks = 3;       // criterion 10
constexpr int kPerturbations = 3;
constexpr std::uint64_t kSeed = 20240601;

struct Tally {
  size_t checks = 0, failures = 0;
  std::string first;

  void check(bool ok, const std::function<std::string()>& what) {
    ++checks;
    if (!ok && failures++ == 0) first = what();
  }
  void require(bool ok, const std::string& what) {
    check(ok, [&] { return what; });
  }
};

int report(int id, const std::string& name, const std::function<std::string(Tally&)>& body) {
  Tally t;
  const auto t0 = std::chrono::steady_clock::now();
  std::string detail;
  try {
    detail = body(t);
  } catch (const std::exception& e) {
    t.require(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%s [%2d] %s: %zu checks, %zu failures%s%s (%.1fs)\n", t.failures == 0 ? "PASS" : "FAIL", id,
              name.c_str(), t.checks, t.failures, detail.empty() ? "" : "; ", detail.c_str(), secs);
  if (t.failures) std::printf("       first failure: %s\n", t.first.c_str());
  std::fflush(stdout);
  return t.failures == 0 ? 0 : 1;
}

CyclotomicValue root(Phase p) { return CyclotomicValue::root(normalize_phase(p)); }

std::string str(const gf::Matrix& m) {
  std::ostringstream o;
  o << "[";
  for (int v : m.entries()) o << v << " ";
  o << "]";
  return o.str();
}

// ---- criteria 1-3 -------------------------------------------------------

std::string tjd_reconstruction(Tally& t) {
  std::mt19937_64 rng(kSeed);
  for (int p : {3, 5}) {
    auto ctx = FieldContext::make(p, 1, kTjdPrecision);
    for (int i = 0; i < kRandomMatrices; ++i) {
      const auto g = oracle::random_gl(*ctx, 2, rng);
      const auto d = jordan::tjd_compact(g);
      const auto& s = d.s.unit;
      const auto& u = d.u.unit;
      const Int m = d.order_prime_to_p;
      t.require(d.s.scalar_exp == 0 && d.u.scalar_exp == 0, "nonzero scalar exponent");
      t.require(s * u == g, "s u != g");
      t.require(s * u == u * s, "s and u do not commute");
      t.require(m > 0 && std::gcd(m, static_cast<Int>(p)) == 1 && s.pow(m).is_identity(), "s^m != 1");
      t.require(u.residue().is_unipotent(), "u bar not unipotent");
    }
  }
  return std::to_string(2 * kRandomMatrices) + " matrices at N = " + std::to_string(kTjdPrecision);
}

std::string tjd_torsor(Tally& t) {
  const int p = 3;
  auto ctx = FieldContext::make(p, 1, kTorsorPrecision);
  const Int mod_n = ctx->modulus();
  std::vector<Elem> scalars;
  for (Int a = 1; a < mod_n; ++a)
    if (a % p) scalars.push_back(Elem::from_int(*ctx, a));
  size_t elements = 0;
  auto test = [&](const padic::Matrix& g) {
    ++elements;
    const CompactModCenterElement G{0, g};
    const auto d = jordan::tjd_mod_center(G);
    t.require(jordan::is_valid_decomposition(G, d.s, d.u), "base decomposition invalid");
    for (const auto& a : scalars) {
      const bool principal = a.residue() == 1;
      const auto [as, au] = jordan::scalar_action(a, 0, d.s, d.u);
      t.check(jordan::is_valid_decomposition(G, as, au) == principal, [&] {
        return "scalar " + std::to_string(a.coord(0)) + (principal ? " rejected" : " accepted");
      });
    }
  };
  // n = 1: every unit mod p^N.
  for (const auto& a : scalars) test(padic::Matrix::scalar(a, 1));
  // n = 2: every matrix mod p^2 with invertible residue, lifted with entries < p^2.
  const Int p2 = p * p;
  for (Int code = 0; code < p2 * p2 * p2 * p2; ++code) {
    padic::Matrix g(*ctx, 2);
    Int c = code;
    for (int k = 0; k < 4; ++k, c /= p2) g(k / 2, k % 2) = Elem::from_int(*ctx, c % p2);
    if (g.residue_invertible()) test(g);
  }
  return std::to_string(elements) + " elements x " + std::to_string(scalars.size()) + " scalars";
}

std::string reduction(Tally& t) {
  std::mt19937_64 rng(kSeed + 1);
  for (int Q : {3, 5}) {
    auto ctx = FieldContext::make(Q, 1, kTjdPrecision);
    for (int i = 0; i < kRandomMatrices; ++i) {
      const auto g = oracle::random_gl(*ctx, 2, rng);
      const auto d = jordan::tjd_compact(g);
      const auto [fs, fu] = lietype::finite_jordan(g.residue());
      t.check(fs == d.s.unit.residue() && fu == d.u.unit.residue(), [&] { return "g bar = " + str(g.residue()); });
    }
  }
  return std::to_string(2 * kRandomMatrices) + " matrices";
}

// ---- criterion 4 ----------------------------------------------------------

std::string towers(Tally& t) {
  size_t orbits = 0;
  const auto cases = oracle::tower_cases();
  for (const auto& c : cases) {
    auto ctx = FieldContext::make(c.p, c.n, c.N);
    const auto mu = oracle::build(ctx, c.parts);
    const auto pred = oracle::predict(c.n, c.parts);
    const auto analysis = torus::orbit_restriction_depths(mu);
    const std::string tag = "p=" + std::to_string(c.p) + " n=" + std::to_string(c.n);
    for (const auto& o : analysis.orbits) {
      ++orbits;
      const std::string at = tag + " delta=" + std::to_string(o.delta);
      t.require(o.depth == pred.orbit_depth.at(o.delta), at + ": depth differs from prediction");
      t.require(o.lattice_certificate, at + ": lattice certificate failed");
      t.require(torus::kernel_restriction_depth_enumerated(mu, o.divisor) == o.depth, at + ": enumeration differs");
      t.require(torus::certify_orbit_elementwise(mu.quotient(), o), at + ": elementwise certificate failed");
    }
    const auto tower = torus::levi_tower(mu, analysis);
    std::vector<int> chain;
    for (const auto& l : tower.tower) chain.push_back(l.subfield_degree);
    t.require(chain == pred.chain, tag + ": subfield chain differs");
    t.require(tower.depths == pred.depths, tag + ": depth vector differs");
  }
  return std::to_string(cases.size()) + " characters, " + std::to_string(orbits) + " orbits";
}

// ---- criteria 5-7 -------------------------------------------------------

std::string dl_oracles(Tally& t) {
  size_t params = 0;
  for (Int Q : {2, 3, 4, 5}) {
    const auto ctx = lietype::FiniteLieContext::make(Q);
    for (Int a = 0; a < Q - 1; ++a)
      for (Int b = 0; b < Q - 1; ++b) {
        ++params;
        const auto closed = lietype::split_character(*ctx, a, b);
        t.require(oracle::split_oracle(*ctx, a, b) == closed.values,
                  "split Q=" + std::to_string(Q) + " (" + std::to_string(a) + "," + std::to_string(b) + ")");
        t.require(lietype::induced_from_borel(*ctx, a, b).values == closed.values, "induced path differs");
      }
    for (Int k = 0; k < Q * Q - 1; ++k) {
      if (!lietype::in_general_position_elliptic(*ctx, k)) continue;
      ++params;
      t.require(oracle::cuspidal_oracle(*ctx, k) == lietype::elliptic_character(*ctx, k).values,
                "elliptic Q=" + std::to_string(Q) + " k=" + std::to_string(k));
    }
  }
  return std::to_string(params) + " parameters, Q in {2,3,4,5}";
}

std::string orthogonality(Tally& t) {
  for (Int Q : {2, 3, 5}) {
    const auto ctx = lietype::FiniteLieContext::make(Q);
    const Int M = Q * Q - 1;
    const std::string tag = "Q=" + std::to_string(Q);
    std::vector<Int> gp;
    for (Int k = 0; k < M; ++k)
      if (lietype::in_general_position_elliptic(*ctx, k)) gp.push_back(k);
    std::vector<std::pair<Int, Int>> sp;
    for (Int a = 0; a < Q - 1; ++a)
      for (Int b = 0; b < Q - 1; ++b)
        if (a != b) sp.push_back({a, b});

    for (Int k : gp) {
      const auto rk = lietype::elliptic_character(*ctx, k);
      for (Int l : gp) {
        const bool same_orbit = l == k || l == mod(k * Q, M);
        const auto ip = lietype::inner_product(rk, lietype::elliptic_character(*ctx, l));
        t.require(ip == CyclotomicValue(same_orbit ? 1 : 0), tag + " elliptic " + std::to_string(k) + "," + std::to_string(l));
      }
      for (auto [a, b] : sp)
        t.require(lietype::inner_product(rk, lietype::split_character(*ctx, a, b)).is_zero(), tag + " elliptic/split");
    }
    for (auto [a, b] : sp) {
      const auto r = lietype::split_character(*ctx, a, b);
      for (auto [c, d] : sp) {
        const bool same_orbit = (c == a && d == b) || (c == b && d == a);
        t.require(lietype::inner_product(r, lietype::split_character(*ctx, c, d)) == CyclotomicValue(same_orbit ? 1 : 0),
                  tag + " split");
      }
    }
  }
  return "Q in {2,3,5}";
}

std::string degrees(Tally& t) {
  for (Int Q : {2, 3, 4, 5}) {
    const auto ctx = lietype::FiniteLieContext::make(Q);
    for (Int k = 0; k < Q * Q - 1; ++k)
      if (lietype::in_general_position_elliptic(*ctx, k))
        t.require(lietype::elliptic_character(*ctx, k).degree() == CyclotomicValue(Q - 1), "elliptic degree");
    for (Int a = 0; a < Q - 1; ++a)
      for (Int b = 0; b < Q - 1; ++b) {
        t.require(lietype::split_character(*ctx, a, b).degree() == CyclotomicValue(Q + 1), "split degree");
        t.require(lietype::induced_from_borel(*ctx, a, b).degree() == CyclotomicValue(Q + 1), "induced degree");
      }
  }
  return "Q in {2,3,4,5}";
}

// ---- criterion 8 ----------------------------------------------------------

std::string varieties(Tally& t) {
  size_t instances = 0;
  for (Int Q : {2, 3})
    for (auto v : {variety::TorusVersion::Split, variety::TorusVersion::Elliptic}) {
      const variety::VarietySetup setup(Q, v);
      for (int m : {1, 2})
        for (const auto& r : variety::check_all(setup, m)) {
          ++instances;
          const std::string tag = "Q=" + std::to_string(Q) + " m=" + std::to_string(m) + " " + variety::to_string(v) +
                                  " s=" + str(r.s) + " t=" + str(r.t);
          for (int i = 0; i < 7; ++i) t.require(r.steps[i], tag + ": step " + std::to_string(i + 1));
          t.require(r.count_identity, tag + ": count identity");
          t.require(r.torsor, tag + ": torsor");
          t.require(r.int_t_stabilizes_x, tag + ": int(t) does not stabilise X");
          t.require(r.component_index == 1, tag + ": [Z:Z°] != 1");
        }
    }
  return std::to_string(instances) + " instances";
}

// ---- criteria 9-11 ------------------------------------------------------

// A character together with evaluators for several weak factorizations and
// the sample of k in T H_{x,0}.
struct TraceBench {
  std::string name;
  TorusCharacter mu;
  std::vector<std::shared_ptr<const weakfact::ExtendedCharacter>> exts;
  std::vector<std::unique_ptr<charformula::TraceEvaluator>> evs;
  std::vector<std::unique_ptr<charformula::TraceEvaluator>> minus;  // mu_minus at the same level
  std::vector<CompactModCenterElement> sample;
  std::vector<CyclotomicValue> base;  // trace under the first factorization

  TraceBench(std::string n, TorusCharacter m) : name(std::move(n)), mu(std::move(m)) {
    for (const auto& tb : charformula::default_tiebreaks()) {
      auto ext = std::make_shared<const weakfact::ExtendedCharacter>(weakfact::weak_factorize(mu, tb));
      const auto& wf = ext->factorization();
      exts.push_back(ext);
      evs.push_back(std::make_unique<charformula::TraceEvaluator>(ext));
      minus.push_back(std::make_unique<charformula::TraceEvaluator>(std::make_shared<const weakfact::ExtendedCharacter>(
          charformula::depth_zero_factorization(wf.mu_minus, wf.bottom_degree))));
    }
    charformula::SampleSpec spec;
    spec.perturbations = kPerturbations;
    spec.seed = kSeed;
    sample = charformula::construct_sample(*evs.front(), spec);
    for (const auto& k : sample) base.push_back(evs.front()->trace(k));
  }
  int bottom() const { return exts.front()->factorization().bottom_degree; }
  const FieldContext& ctx() const { return mu.context(); }
};

std::vector<std::unique_ptr<TraceBench>>& benches() {
  static std::vector<std::unique_ptr<TraceBench>> b;
  if (b.empty()) {
    // p = 3, E = Q_9, H = GL_2(Q_3): residue group GL_2(F_3).
    auto E = FieldContext::make(3, 2, 4);
    b.push_back(std::make_unique<TraceBench>("depth 0", TorusCharacter(E, 2, 1, Phase(1, 3), 1, {0, 0})));
    b.push_back(std::make_unique<TraceBench>(
        "depth 1", TorusCharacter::generic_of_depth(E, 1, 1, 1).compose_norm(2) *
                       TorusCharacter(E, 2, 1, Phase(1, 2), 1, {0, 0})));
  }
  return b;
}

std::string formula_vs_oracle(Tally& t) {
  std::string detail;
  for (const auto& bp : benches()) {
    const auto& b = *bp;
    t.require(b.sample.size() >= kMinTraceSamples, b.name + ": sample too small");
    t.require(ipow(b.ctx().p(), b.bottom()) == 3, b.name + ": not at Q = 3");
    const bool depth_zero = b.mu.depth() == 0;
    for (size_t i = 0; i < b.sample.size(); ++i) {
      const auto& k = b.sample[i];
      if (depth_zero)
        t.check(b.base[i] == charformula::depth_zero_oracle(b.mu, b.bottom(), k),
                [&] { return b.name + ": sample " + std::to_string(i) + " differs from the table"; });
      for (size_t f = 0; f < b.exts.size(); ++f) {
        const auto& wf = b.exts[f]->factorization();
        const auto minus = b.minus[f]->trace(k);
        t.check(minus == charformula::depth_zero_oracle(wf.mu_minus, wf.bottom_degree, k),
                [&] { return b.name + ": mu_minus trace differs from the table"; });
        t.check(b.base[i] == root(b.exts[f]->mu_plus(k)) * minus,
                [&] { return b.name + ": tensor identity fails at sample " + std::to_string(i); });
      }
    }
    detail += b.name + ": " + std::to_string(b.sample.size()) + " samples; ";
  }
  detail.resize(detail.size() - 2);
  return detail;
}

std::string independence(Tally& t) {
  std::mt19937_64 rng(kSeed + 2);
  for (const auto& bp : benches()) {
    const auto& b = *bp;
    t.require(b.exts.size() >= kMinTieBreaks, "too few factorizations");
    // Distinct tie-breaks give distinct mu_minus or chi.
    for (size_t f = 1; f < b.exts.size(); ++f) {
      const auto& a = b.exts[0]->factorization();
      const auto& c = b.exts[f]->factorization();
      t.require(!(a.chi == c.chi), b.name + ": tie-breaks did not change chi");
    }
    const auto gens = weakfact::torus_generators(b.mu);
    // Elements of H_{x,0+} = 1 + p M_2(O_F).
    std::vector<CompactModCenterElement> principal;
    std::uniform_int_distribution<Int> c(0, b.ctx().modulus() - 1);
    for (int i = 0; i < 50; ++i) {
      padic::Matrix y = padic::Matrix::identity(b.ctx(), 2);
      for (int e = 0; e < 4; ++e) y(e / 2, e % 2) = y(e / 2, e % 2) + Elem::from_int(b.ctx(), 3 * c(rng));
      principal.push_back({0, y});
    }
    for (size_t f = 1; f < b.exts.size(); ++f) {
      const auto& e0 = *b.exts[0];
      const auto& ef = *b.exts[f];
      for (size_t i = 0; i < b.sample.size(); ++i) {
        const auto& k = b.sample[i];
        t.check(e0.sharp(k) == ef.sharp(k), [&] { return b.name + ": sharp differs"; });
        t.check(b.evs[f]->trace(k) == b.base[i], [&] { return b.name + ": trace differs"; });
        const auto u = jordan::tjd_mod_center(k).u;
        for (const auto& g : gens) t.check(e0.hat(g, u) == ef.hat(g, u), [&] { return b.name + ": hat differs"; });
      }
      for (const auto& y : principal)
        t.check(e0.mu_plus(y) == ef.mu_plus(y), [&] { return b.name + ": mu_plus differs on H_{x,0+}"; });
    }
  }
  return std::to_string(benches().front()->exts.size()) + " factorizations per character";
}

std::string symmetries(Tally& t) {
  size_t conj = 0;
  for (const auto& bp : benches()) {
    const auto& b = *bp;
    const auto& ev = *b.evs.front();
    const auto& E = b.ctx();
    // Central elements p, zeta_F and 1 + p.
    std::vector<padic::FieldElement> centre{{1, Elem::one(E)}, {0, E.subfield(1).zeta()}, {0, Elem::from_int(E, 4)}};
    for (size_t i = 0; i < b.sample.size(); ++i) {
      const auto& k = b.sample[i];
      for (const auto& z : centre) {
        const CompactModCenterElement zk{k.scalar_exp + z.val, k.unit.scaled(z.coeff)};
        t.check(ev.trace(zk) == root(b.mu.eval(z)) * b.base[i], [&] { return b.name + ": central twist fails"; });
      }
      for (size_t h = 0; h < ev.residue_group().size(); ++h) {
        ++conj;
        const auto& H = ev.lift(h);
        const CompactModCenterElement c{k.scalar_exp, H.inverse() * k.unit * H};
        t.check(ev.trace(c) == b.base[i], [&] { return b.name + ": conjugation changes the trace"; });
      }
    }
  }
  return std::to_string(conj) + " conjugates over all residue classes";
}

}  // namespace

int main() {
  int failed = 0;
  failed += report(1, "TJD reconstruction", tjd_reconstruction);
  failed += report(2, "TJD torsor uniqueness", tjd_torsor);
  failed += report(3, "reduction vs finite Jordan", reduction);
  failed += report(4, "Levi towers", towers);
  failed += report(5, "DL oracles", dl_oracles);
  failed += report(6, "orthogonality", orthogonality);
  failed += report(7, "degrees", degrees);
  failed += report(8, "variety decomposition", varieties);
  failed += report(9, "trace formula vs table", formula_vs_oracle);
  failed += report(10, "factorization independence", independence);
  failed += report(11, "central twist and conjugation", symmetries);
  std::printf("%d of 11 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
