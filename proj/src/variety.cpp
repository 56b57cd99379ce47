#include "cuspcal/variety.hpp"

#include <optional>
#include <set>
#include <unordered_set>

#include "cuspcal/error.hpp"

namespace cuspcal::variety {

namespace {

using Key = std::uint64_t;

Key key_of(const gf::Matrix& h) {
  Key k = 0;
  for (int x : h.entries()) k = k * static_cast<Key>(h.field().size()) + static_cast<Key>(x);
  return k;
}

using PointSet = std::unordered_set<Key>;

PointSet to_set(const std::vector<gf::Matrix>& v) {
  PointSet s;
  for (const auto& h : v) s.insert(key_of(h));
  return s;
}

}  // namespace

std::string to_string(TorusVersion v) { return v == TorusVersion::Split ? "split" : "elliptic"; }

VarietySetup::VarietySetup(Int Q, TorusVersion version) : Q_(Q), version_(version) {
  auto f = factorize(Q);
  require(Q >= 2 && f.size() == 1, "Q must be a prime power");
  k_ = f[0].second;
  field_ = gf::Field::make(static_cast<int>(f[0].first), 2 * k_);
  const gf::Field& K = *field_;
  groups_.resize(3);
  xs_.resize(3);

  g0_ = gf::Matrix::identity(K, 2);
  if (version_ == TorusVersion::Elliptic) {
    const gf::Matrix w(K, 2, {0, 1, 1, 0});
    bool found = false;
    for (const auto& g : group_points(2)) {
      if (g.inverse() * frobenius(g) == w) {
        g0_ = g;
        found = true;
        break;
      }
    }
    if (!found) fail_assert("Lang map: no g0 with g0^-1 Fr(g0) = w");
  }
  g0_inv_ = g0_.inverse();

  const Int Qm1 = Q_ - 1, Q2m1 = Q_ * Q_ - 1;
  if (version_ == TorusVersion::Split) {
    for (Int a = 0; a < Qm1; ++a)
      for (Int b = 0; b < Qm1; ++b) torus_.push_back(torus_element(a, b));
  } else {
    for (Int a = 0; a < Q2m1; ++a) torus_.push_back(torus_element(a));
  }
  for (const auto& t : torus_)
    if (!(frobenius(t) == t)) fail_assert("torus point is not rational");
}

gf::Matrix VarietySetup::torus_element(Int a, Int b) const {
  const gf::Field& K = *field_;
  if (version_ == TorusVersion::Split) {
    const Int step = Q_ + 1;  // gamma = Gamma^(Q+1)
    return gf::Matrix(K, 2, {K.exp(a * step), 0, 0, K.exp(b * step)});
  }
  gf::Matrix d(K, 2, {K.exp(a), 0, 0, K.exp(a * Q_)});
  return g0_ * d * g0_inv_;
}

bool VarietySetup::in_unipotent_radical(const gf::Matrix& h) const {
  const gf::Matrix x = version_ == TorusVersion::Split ? h : g0_inv_ * h * g0_;
  return x(0, 0) == 1 && x(1, 1) == 1 && x(1, 0) == 0;
}

const std::vector<gf::Matrix>& VarietySetup::group_points(int m) const {
  require(m == 1 || m == 2, "m must be 1 or 2");
  if (groups_[m].empty()) groups_[m] = gf::general_linear_group(*field_, 2, m * k_);
  return groups_[m];
}

const std::vector<gf::Matrix>& VarietySetup::x_points(int m) const {
  const auto& G = group_points(m);
  if (xs_[m].empty())
    for (const auto& h : G)
      if (in_unipotent_radical(h.inverse() * frobenius(h))) xs_[m].push_back(h);
  return xs_[m];
}

bool VarietyReport::ok() const {
  for (bool b : steps)
    if (!b) return false;
  return count_identity && torsor && int_t_stabilizes_x;
}

VarietyReport variety_decomposition_check(const VarietySetup& setup, int m, const gf::Matrix& s,
                                          const gf::Matrix& t) {
  VarietyReport rep;
  rep.Q = setup.q();
  rep.m = m;
  rep.version = setup.version();
  rep.s = s;
  rep.t = t;

  const gf::Matrix s_inv = s.inverse(), t_inv = t.inverse();
  auto in_w = [&](const gf::Matrix& h) { return s * h * s_inv * t == h; };
  auto in_z = [&](const gf::Matrix& h) { return s * h * s_inv == t * h * t_inv; };

  const auto& X = setup.x_points(m);
  const auto& G1 = setup.group_points(1);
  std::vector<gf::Matrix> Xst, W, Z, Y;
  for (const auto& h : X) {
    if (in_w(h)) Xst.push_back(h);
    if (in_z(h)) Y.push_back(h);  // Z is connected, so Z° = Z
  }
  for (const auto& h : G1) {
    if (in_w(h)) W.push_back(h);
    if (in_z(h)) Z.push_back(h);
  }
  rep.x_size = X.size();
  rep.xst_size = Xst.size();
  rep.w_size = W.size();
  rep.z_size = Z.size();
  rep.y_size = Y.size();
  rep.component_index = 1;

  const PointSet xst_set = to_set(Xst), w_set = to_set(W), z_set = to_set(Z), y_set = to_set(Y),
                 x_set = to_set(X);
  std::vector<gf::Matrix> W_inv;
  for (const auto& k : W) W_inv.push_back(k.inverse());

  // (1) W Y inside X^(s,t).
  bool ok = true;
  for (const auto& k : W)
    for (const auto& y : Y)
      if (!xst_set.count(key_of(k * y))) ok = false;
  rep.steps[0] = ok;

  // (2) m.(k, y) = (k m^-1, m y) preserves W x Y.
  ok = true;
  for (const auto& z : Z) {
    const gf::Matrix z_inv = z.inverse();
    for (const auto& k : W)
      if (!w_set.count(key_of(k * z_inv))) ok = false;
    for (const auto& y : Y)
      if (!y_set.count(key_of(z * y))) ok = false;
  }
  rep.steps[1] = ok;

  // (3) Fibres of the multiplication map are exactly the orbits.
  ok = true;
  for (const auto& x : Xst) {
    std::set<std::pair<Key, Key>> fibre, orbit;
    std::optional<std::pair<size_t, gf::Matrix>> base;
    for (size_t i = 0; i < W.size(); ++i) {
      gf::Matrix y = W_inv[i] * x;
      if (!y_set.count(key_of(y))) continue;
      fibre.insert({key_of(W[i]), key_of(y)});
      if (!base) base = std::make_pair(i, y);
    }
    if (!base) continue;
    for (const auto& z : Z) orbit.insert({key_of(W[base->first] * z.inverse()), key_of(z * base->second)});
    if (fibre != orbit || orbit.size() != Z.size()) ok = false;
  }
  rep.steps[2] = ok;

  // (4) k2^-1 k1 in Z.
  ok = true;
  for (size_t i = 0; i < W.size(); ++i)
    for (size_t j = 0; j < W.size(); ++j)
      if (!z_set.count(key_of(W_inv[j] * W[i]))) ok = false;
  rep.steps[3] = ok;

  // (5) k z in W.
  ok = true;
  for (const auto& k : W)
    for (const auto& z : Z)
      if (!w_set.count(key_of(k * z))) ok = false;
  rep.steps[4] = ok;

  // (6) h = k z y for every h in X^(s,t), k in W.
  ok = true;
  for (const auto& h : Xst)
    for (const auto& k : W) {
      bool found = false;
      for (const auto& z : Z)
        if (y_set.count(key_of((k * z).inverse() * h))) {
          found = true;
          break;
        }
      if (!found) ok = false;
    }
  rep.steps[5] = ok;

  // (7) W Y = X^(s,t).
  PointSet wy;
  for (const auto& k : W)
    for (const auto& y : Y) wy.insert(key_of(k * y));
  rep.steps[6] = wy == xst_set;

  if (W.empty()) {
    rep.count_identity = Xst.empty();
    rep.torsor = true;
  } else {
    rep.count_identity = Xst.size() == static_cast<size_t>(rep.component_index) * Y.size();
    PointSet coset;
    for (const auto& z : Z) coset.insert(key_of(W[0] * z));
    rep.torsor = coset == w_set;
  }

  bool stable = true;
  for (const auto& h : X)
    if (!x_set.count(key_of(t * h * t_inv))) stable = false;
  rep.int_t_stabilizes_x = stable;
  return rep;
}

std::vector<VarietyReport> check_all(const VarietySetup& setup, int m) {
  std::vector<VarietyReport> out;
  for (const auto& s : setup.torus_points())
    for (const auto& t : setup.torus_points()) out.push_back(variety_decomposition_check(setup, m, s, t));
  return out;
}

}  // namespace cuspcal::variety
