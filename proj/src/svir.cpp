#include "svir.hpp"

#include <bit>
#include <cmath>
#include <functional>

#include "errors.hpp"

namespace skms::svir {

GaussRational& GaussRational::operator+=(const GaussRational& o) {
  re += o.re;
  im += o.im;
  return *this;
}

GaussRational& GaussRational::operator-=(const GaussRational& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

GaussRational operator*(const GaussRational& a, const GaussRational& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

std::string GaussRational::str() const {
  if (im == 0) return to_string(re);
  if (re == 0) return to_string(im) + "i";
  return to_string(re) + (im > 0 ? "+" : "") + to_string(im) + "i";
}

double GaussRational::abs() const { return std::hypot(re.convert_to<double>(), im.convert_to<double>()); }

std::string to_string(const Rational& q) {
  const auto num = boost::multiprecision::numerator(q), den = boost::multiprecision::denominator(q);
  return den == 1 ? num.str() : num.str() + "/" + den.str();
}

Rational parse_rational(const std::string& text) {
  using boost::multiprecision::cpp_int;
  try {
    const auto slash = text.find('/');
    if (slash != std::string::npos)
      return Rational(cpp_int(text.substr(0, slash))) / Rational(cpp_int(text.substr(slash + 1)));
    const auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(cpp_int(text));
    const std::string frac = text.substr(dot + 1);
    std::string whole = text.substr(0, dot);
    const bool negative = !whole.empty() && whole[0] == '-';
    if (negative || (!whole.empty() && whole[0] == '+')) whole.erase(0, 1);
    Rational out = Rational(cpp_int(whole.empty() ? "0" : whole));
    if (!frac.empty()) out += Rational(cpp_int(frac)) / Rational(boost::multiprecision::pow(cpp_int(10), unsigned(frac.size())));
    return negative ? -out : out;
  } catch (const std::exception&) {
    throw InvalidArgument("not a rational number: " + text);
  }
}

namespace {

void axpy(Vec& out, const GaussRational& c, const Vec& v) {
  if (c.is_zero()) return;
  for (const auto& [k, x] : v) {
    auto& slot = out[k];
    slot += c * x;
    if (slot.is_zero()) out.erase(k);
  }
}

inline bool odd_parity(std::uint64_t bits) { return std::popcount(bits) % 2; }

// i * q
GaussRational times_i(const Rational& q) { return {0, q}; }

}  // namespace

FockTruncation::FockTruncation(int cutoff2) : cutoff2_(cutoff2), cache_(std::make_shared<ColumnCache>()) {
  if (cutoff2 < 0) throw InvalidArgument("FockTruncation: cutoff must be nonnegative");
  if (cutoff2 > 28) throw InvalidArgument("FockTruncation: cutoff above the cap N = 14");
  const int nmax = cutoff2 / 2;
  const int fmax = (cutoff2 + 1) / 2;  // fermion modes r = j + 1/2 <= N
  FockState s;
  s.bosons.assign(std::size_t(nmax), 0);
  std::vector<FockState> found;
  std::function<void(int, int)> fermions = [&](int j, int e2) {
    if (j == fmax) {
      s.energy2 = e2;
      found.push_back(s);
      return;
    }
    fermions(j + 1, e2);
    if (e2 + 2 * j + 1 <= cutoff2) {
      s.fermions |= 1ULL << j;
      fermions(j + 1, e2 + 2 * j + 1);
      s.fermions &= ~(1ULL << j);
    }
  };
  std::function<void(int, int)> bosons = [&](int n, int e2) {
    if (n > nmax) {
      fermions(0, e2);
      return;
    }
    for (int k = 0; e2 + 2 * n * k <= cutoff2; ++k) {
      s.bosons[std::size_t(n - 1)] = k;
      bosons(n + 1, e2 + 2 * n * k);
    }
    s.bosons[std::size_t(n - 1)] = 0;
  };
  bosons(1, 0);
  std::sort(found.begin(), found.end());
  states_ = std::move(found);
  for (std::size_t i = 0; i < states_.size(); ++i) index_.emplace(states_[i], int(i));
}

FockTruncation build_truncation(int cutoff) { return FockTruncation(2 * cutoff); }

int FockTruncation::index_of(const FockState& s) const {
  const auto it = index_.find(s);
  return it == index_.end() ? -1 : it->second;
}

Rational FockTruncation::norm2(int i) const {
  boost::multiprecision::cpp_int out = 1;
  const auto& b = state(i).bosons;
  for (std::size_t n = 0; n < b.size(); ++n)
    for (int k = 1; k <= b[n]; ++k) out *= boost::multiprecision::cpp_int(int(n) + 1) * k;
  return Rational(out);
}

void FockTruncation::add(Vec& out, FockState s, const GaussRational& c) const {
  if (s.energy2 > cutoff2_ || c.is_zero()) return;
  const int idx = index_of(s);
  if (idx < 0) return;
  auto& slot = out[idx];
  slot += c;
  if (slot.is_zero()) out.erase(idx);
}

Vec FockTruncation::apply_a(int n, const Vec& v) const {
  Vec out;
  if (n == 0) return out;
  const int mode = std::abs(n);
  if (mode > cutoff2_ / 2) return out;  // no such oscillator below the cutoff
  for (const auto& [i, c] : v) {
    FockState s = state(i);
    int& k = s.bosons[std::size_t(mode - 1)];
    if (n < 0) {
      ++k;
      s.energy2 += 2 * mode;
      add(out, std::move(s), c);
    } else if (k > 0) {
      const int factor = n * k;
      --k;
      s.energy2 -= 2 * mode;
      add(out, std::move(s), c * GaussRational(factor));
    }
  }
  return out;
}

Vec FockTruncation::apply_b(int r2, const Vec& v) const {
  Vec out;
  if (r2 % 2 == 0) throw InvalidArgument("apply_b: fermion modes are half-integers");
  const int j = (std::abs(r2) - 1) / 2;
  if (std::abs(r2) > cutoff2_) return out;
  const std::uint64_t bit = 1ULL << j;
  for (const auto& [i, c] : v) {
    FockState s = state(i);
    const bool occupied = s.fermions & bit;
    if ((r2 < 0) == occupied) continue;
    const GaussRational sign = odd_parity(s.fermions & (bit - 1)) ? -1 : 1;
    s.fermions ^= bit;
    s.energy2 += r2 < 0 ? std::abs(r2) : -std::abs(r2);
    add(out, std::move(s), c * sign);
  }
  return out;
}

const Vec& FockTruncation::column(Kind kind, int index2, int i) const {
  const std::lock_guard<std::mutex> lock(cache_->mutex);
  const auto key = std::make_tuple(int(kind), index2, i);
  auto it = cache_->columns.find(key);
  if (it == cache_->columns.end()) {
    const Vec e = basis_vector(i);
    it = cache_->columns.emplace(key, kind == Kind::L ? sugawara_L(index2 / 2, e) : sugawara_G(index2, e)).first;
  }
  return it->second;
}

Vec FockTruncation::apply_L(int n, const Vec& v, const Deformation& d) const {
  Vec out;
  for (const auto& [i, c] : v) axpy(out, c, column(Kind::L, 2 * n, i));
  if (d.s != 0 && n != 0) {
    const int k = d.convention == Convention::Circle ? n + 1 : n;
    axpy(out, times_i(d.s * k), apply_a(n, v));
  }
  return out;
}

Vec FockTruncation::apply_G(int r2, const Vec& v, const Deformation& d) const {
  if (r2 % 2 == 0) throw InvalidArgument("apply_G: G modes are half-integers");
  Vec out;
  for (const auto& [i, c] : v) axpy(out, c, column(Kind::G, r2, i));
  if (d.s != 0) {
    const int k = d.convention == Convention::Circle ? r2 + 1 : r2;  // 2(r + 1/2) or 2r
    axpy(out, times_i(d.s * k), apply_b(r2, v));
  }
  return out;
}

Vec FockTruncation::sugawara_L(int n, const Vec& v) const {
  Vec out;
  const int nmax = cutoff2_ / 2;
  const GaussRational half(Rational(1, 2));
  // (1/2) sum_m :a_{-m} a_{m+n}:, annihilators to the right
  for (int p = -nmax; p <= nmax; ++p) {
    const int q = n - p;
    if (p == 0 || q == 0 || std::abs(q) > nmax) continue;
    const Vec term = (p > 0 && q < 0) ? apply_a(q, apply_a(p, v)) : apply_a(p, apply_a(q, v));
    axpy(out, half, term);
  }
  // (1/2) sum_r (r + n/2) :b_{-r} b_{r+n}:
  for (int p2 = -cutoff2_; p2 <= cutoff2_; ++p2) {
    if (p2 % 2 == 0) continue;
    const int q2 = 2 * n - p2;
    if (std::abs(q2) > cutoff2_) continue;
    const int r2 = -p2;
    const Rational coeff(r2 + n, 4);
    if (p2 > 0 && q2 < 0)
      axpy(out, GaussRational(-coeff), apply_b(q2, apply_b(p2, v)));
    else
      axpy(out, GaussRational(coeff), apply_b(p2, apply_b(q2, v)));
  }
  return out;
}

Vec FockTruncation::sugawara_G(int r2, const Vec& v) const {
  Vec out;
  const int nmax = cutoff2_ / 2;
  // sum_m a_{-m} b_{m+r}; the two kinds commute, so apply the annihilator
  // first and never pass through states above the cutoff
  for (int m = -nmax; m <= nmax; ++m) {
    if (m == 0) continue;
    const int q2 = 2 * m + r2;
    if (std::abs(q2) > cutoff2_) continue;
    axpy(out, GaussRational(1), m < 0 ? apply_b(q2, apply_a(-m, v)) : apply_a(-m, apply_b(q2, v)));
  }
  return out;
}

Vec FockTruncation::apply(const ModeOperator& op, const Vec& v, const Deformation& d) const {
  switch (op.kind) {
    case Kind::A:
      if (op.index2 % 2) throw InvalidArgument("apply: a modes are integers");
      return apply_a(op.index2 / 2, v);
    case Kind::B: return apply_b(op.index2, v);
    case Kind::L:
      if (op.index2 % 2) throw InvalidArgument("apply: L modes are integers");
      return apply_L(op.index2 / 2, v, d);
    default: return apply_G(op.index2, v, d);
  }
}

std::vector<int> FockTruncation::safe_states(int budget2) const {
  std::vector<int> out;
  for (int i = 0; i < dim(); ++i)
    if (states_[std::size_t(i)].energy2 <= cutoff2_ - budget2) out.push_back(i);
  return out;
}

std::vector<long> partition_counts(int cutoff2) {
  std::vector<long> c(std::size_t(cutoff2) + 1, 0);
  c[0] = 1;
  // bosons: 1 / (1 - q^n), step 2n in doubled units
  for (int n = 1; 2 * n <= cutoff2; ++n)
    for (int e = 2 * n; e <= cutoff2; ++e) c[std::size_t(e)] += c[std::size_t(e - 2 * n)];
  // fermions: (1 + q^r), step 2r = 2j + 1
  for (int step = 1; step <= cutoff2; step += 2)
    for (int e = cutoff2; e >= step; --e) c[std::size_t(e)] += c[std::size_t(e - step)];
  return c;
}

std::vector<long> character(const FockTruncation& t) {
  std::vector<long> c(std::size_t(t.cutoff2()) + 1, 0);
  for (int i = 0; i < t.dim(); ++i) ++c[std::size_t(t.state(i).energy2)];
  return c;
}

std::string to_string(Relation r) {
  switch (r) {
    case Relation::LL: return "[L,L]";
    case Relation::GG: return "{G,G}";
    case Relation::LG: return "[L,G]";
    case Relation::aa: return "[a,a]";
    case Relation::bb: return "{b,b}";
    case Relation::La: return "[L,a]";
    case Relation::Lb: return "[L,b]";
    case Relation::aG: return "[a,G]";
    default: return "{b,G}";
  }
}

namespace {

struct RelationSpec {
  ModeOperator x, y;
  bool anti = false;
  std::vector<std::pair<GaussRational, ModeOperator>> linear;
  GaussRational scalar;
};

Rational half2(int i2) { return Rational(i2, 2); }

RelationSpec relation_spec(Relation rel, int i2, int j2, const Rational& c, const Deformation& d) {
  const Rational u = half2(i2), v = half2(j2);  // actual indices
  const bool circle = d.convention == Convention::Circle;
  RelationSpec sp;
  switch (rel) {
    case Relation::LL:
      sp.x = {Kind::L, i2};
      sp.y = {Kind::L, j2};
      sp.linear.push_back({GaussRational(u - v), {Kind::L, i2 + j2}});
      if (i2 + j2 == 0) sp.scalar = GaussRational(c / 12 * (u * u * u - u));
      break;
    case Relation::GG:
      sp.x = {Kind::G, i2};
      sp.y = {Kind::G, j2};
      sp.anti = true;
      sp.linear.push_back({GaussRational(2), {Kind::L, i2 + j2}});
      if (i2 + j2 == 0) sp.scalar = GaussRational(c / 3 * (u * u - Rational(1, 4)));
      break;
    case Relation::LG:
      sp.x = {Kind::L, i2};
      sp.y = {Kind::G, j2};
      sp.linear.push_back({GaussRational(u / 2 - v), {Kind::G, i2 + j2}});
      break;
    case Relation::aa:
      sp.x = {Kind::A, i2};
      sp.y = {Kind::A, j2};
      if (i2 + j2 == 0) sp.scalar = GaussRational(u);
      break;
    case Relation::bb:
      sp.x = {Kind::B, i2};
      sp.y = {Kind::B, j2};
      sp.anti = true;
      if (i2 + j2 == 0) sp.scalar = GaussRational(1);
      break;
    case Relation::La:
      sp.x = {Kind::L, i2};
      sp.y = {Kind::A, j2};
      sp.linear.push_back({GaussRational(-v), {Kind::A, i2 + j2}});
      // i s k_m [a_m, a_n] with k_m = m + 1 or m
      if (i2 + j2 == 0 && i2 != 0) sp.scalar = times_i(d.s * (circle ? u + 1 : u) * u);
      break;
    case Relation::Lb:
      sp.x = {Kind::L, i2};
      sp.y = {Kind::B, j2};
      sp.linear.push_back({GaussRational(-(u / 2 + v)), {Kind::B, i2 + j2}});
      break;
    case Relation::aG:
      sp.x = {Kind::A, i2};
      sp.y = {Kind::G, j2};
      sp.linear.push_back({GaussRational(u), {Kind::B, i2 + j2}});
      break;
    case Relation::bG:
      sp.x = {Kind::B, i2};
      sp.y = {Kind::G, j2};
      sp.anti = true;
      sp.linear.push_back({GaussRational(1), {Kind::A, i2 + j2}});
      if (i2 + j2 == 0) sp.scalar = times_i(d.s * (circle ? j2 + 1 : j2));
      break;
  }
  return sp;
}

bool valid_index(Kind k, int i2) { return (k == Kind::A || k == Kind::L) ? i2 % 2 == 0 : i2 % 2 != 0; }

// (X Y -+ Y X) e for a basis vector e.
Vec bracket(const FockTruncation& t, const RelationSpec& sp, const Vec& e, const Deformation& d) {
  Vec out = t.apply(sp.x, t.apply(sp.y, e, d), d);
  axpy(out, GaussRational(sp.anti ? 1 : -1), t.apply(sp.y, t.apply(sp.x, e, d), d));
  return out;
}

}  // namespace

RelationResult commutator_check(const FockTruncation& t, Relation rel, int i2, int j2, const Rational& c,
                                const Deformation& d) {
  const RelationSpec sp = relation_spec(rel, i2, j2, c, d);
  if (!valid_index(sp.x.kind, i2) || !valid_index(sp.y.kind, j2))
    throw InvalidArgument("commutator_check: index parity does not match the mode kind");
  RelationResult res;
  res.relation = rel;
  res.i2 = i2;
  res.j2 = j2;
  const auto safe = t.safe_states(std::abs(i2) + std::abs(j2));
  res.subspace_dim = int(safe.size());
  for (int s : safe) {
    const Vec e = t.basis_vector(s);
    Vec diff = bracket(t, sp, e, d);
    for (const auto& [coef, op] : sp.linear) axpy(diff, GaussRational(-1) * coef, t.apply(op, e, d));
    axpy(diff, GaussRational(-1) * sp.scalar, e);
    res.nonzero += long(diff.size());
    for (const auto& [k, x] : diff) res.max_abs = std::max(res.max_abs, x.abs());
  }
  return res;
}

std::vector<RelationResult> relation_table(const FockTruncation& t, const Rational& c, int max_m, int max_r2,
                                           const Deformation& d) {
  std::vector<int> ints, halves;
  for (int m = -max_m; m <= max_m; ++m) ints.push_back(2 * m);
  for (int r2 = -max_r2; r2 <= max_r2; ++r2)
    if (r2 % 2) halves.push_back(r2);
  const std::pair<Relation, std::pair<bool, bool>> shapes[] = {
      {Relation::LL, {false, false}}, {Relation::GG, {true, true}},  {Relation::LG, {false, true}},
      {Relation::aa, {false, false}}, {Relation::bb, {true, true}},  {Relation::La, {false, false}},
      {Relation::Lb, {false, true}},  {Relation::aG, {false, true}}, {Relation::bG, {true, true}}};
  std::vector<RelationResult> out;
  for (const auto& [rel, halfness] : shapes) {
    const auto& xs = halfness.first ? halves : ints;
    const auto& ys = halfness.second ? halves : ints;
    for (int i2 : xs)
      for (int j2 : ys) out.push_back(commutator_check(t, rel, i2, j2, c, d));
  }
  return out;
}

long hermiticity_check(const FockTruncation& t, int max_m, int max_r2) {
  long bad = 0;
  auto check = [&](Kind kind, int i2) {
    const ModeOperator op{kind, i2}, adj{kind, -i2};
    for (int j : t.safe_states(std::abs(i2))) {
      const Vec col = t.apply(op, t.basis_vector(j));
      for (const auto& [i, x] : col) {
        const Vec back = t.apply(adj, t.basis_vector(i));
        const auto it = back.find(j);
        const GaussRational y = it == back.end() ? GaussRational() : it->second;
        // <e_i, op e_j> = <adj e_i, e_j>
        if (!(x * GaussRational(t.norm2(i)) == y.conj() * GaussRational(t.norm2(j)))) ++bad;
      }
    }
  };
  for (int m = -max_m; m <= max_m; ++m) check(Kind::L, 2 * m);
  for (int r2 = -max_r2; r2 <= max_r2; ++r2)
    if (r2 % 2) check(Kind::G, r2);
  return bad;
}

namespace {

// The scalar k with D e = k e for every safe basis vector e, where D is the
// bracket minus its linear part; throws ConventionError otherwise.
GaussRational central_scalar(const FockTruncation& t, Relation rel, int i2, const Deformation& d) {
  const RelationSpec sp = relation_spec(rel, i2, -i2, 0, d);
  std::optional<GaussRational> k;
  for (int s : t.safe_states(2 * std::abs(i2))) {
    const Vec e = t.basis_vector(s);
    Vec diff = bracket(t, sp, e, d);
    for (const auto& [coef, op] : sp.linear) axpy(diff, GaussRational(-1) * coef, t.apply(op, e, d));
    const auto it = diff.find(s);
    const GaussRational here = it == diff.end() ? GaussRational() : it->second;
    if (diff.size() > (it == diff.end() ? 0u : 1u))
      throw ConventionError("deformed " + to_string(rel) + " at index " + to_string(half2(i2)) +
                            ": central term is not a multiple of the identity");
    if (k && !(*k == here))
      throw ConventionError("deformed " + to_string(rel) + ": central term differs between states");
    k = here;
  }
  if (!k) throw InvalidArgument("deformed_central_charge: cutoff too small for the safe subspace");
  return *k;
}

}  // namespace

DeformedCharge deformed_central_charge(const FockTruncation& t, const Rational& s, Convention convention) {
  if (t.cutoff2() < 12) throw InvalidArgument("deformed_central_charge: need cutoff N >= 6");
  const Deformation d{s, convention};
  // closure away from the diagonal; c does not enter these
  for (int m = -3; m <= 3; ++m) {
    for (int n = -3; n <= 3; ++n)
      if (m + n != 0 && !commutator_check(t, Relation::LL, 2 * m, 2 * n, 0, d).exact())
        throw ConventionError("deformed [L,L] does not close");
    for (int r2 = -5; r2 <= 5; r2 += 2)
      if (!commutator_check(t, Relation::LG, 2 * m, r2, 0, d).exact())
        throw ConventionError("deformed [L,G] does not close");
  }
  for (int r2 = -5; r2 <= 5; r2 += 2)
    for (int q2 = -5; q2 <= 5; q2 += 2)
      if (r2 + q2 != 0 && !commutator_check(t, Relation::GG, r2, q2, 0, d).exact())
        throw ConventionError("deformed {G,G} does not close");

  // central terms must follow (c/12)(m^3 - m) and (c/3)(r^2 - 1/4) with one c
  const GaussRational k1 = central_scalar(t, Relation::LL, 2, d);
  const GaussRational k2 = central_scalar(t, Relation::LL, 4, d);
  const GaussRational k3 = central_scalar(t, Relation::LL, 6, d);
  const GaussRational g1 = central_scalar(t, Relation::GG, 1, d);
  const GaussRational g3 = central_scalar(t, Relation::GG, 3, d);
  const GaussRational g5 = central_scalar(t, Relation::GG, 5, d);
  for (const auto* k : {&k1, &k2, &k3, &g1, &g3, &g5})
    if (k->im != 0) throw ConventionError("deformed central term is not real");
  if (k1.re != 0 || g1.re != 0)
    throw ConventionError("deformed central term at m = 1 or r = 1/2 is nonzero: not the (m^3 - m) cocycle");
  DeformedCharge out;
  out.s = s;
  out.c_m2 = k2.re * 12 / 6;
  out.c_m3 = k3.re * 12 / 24;
  out.c_g = g3.re * 3 / 2;
  if (g5.re * 3 / 6 != out.c_g || !out.agree())
    throw ConventionError("deformed central charges from [L,L] and {G,G} disagree");

  // the measurement proper: vacuum expectation values
  const Vec vac = t.basis_vector(t.vacuum());
  auto vev = [&](Relation rel, int i2) {
    const RelationSpec sp = relation_spec(rel, i2, -i2, 0, d);
    const Vec v = bracket(t, sp, vac, d);
    const auto it = v.find(t.vacuum());
    return it == v.end() ? GaussRational() : it->second;
  };
  const GaussRational v2 = vev(Relation::LL, 4), v3 = vev(Relation::LL, 6), vg = vev(Relation::GG, 3);
  if (v2.im != 0 || v3.im != 0 || vg.im != 0) throw ConventionError("vacuum expectation is not real");
  out.c_m2 = v2.re * 2;
  out.c_m3 = v3.re / 2;
  out.c_g = vg.re * 3 / 2;
  if (!out.agree()) throw ConventionError("m = 2 and m = 3 vacuum extractions disagree");
  return out;
}

nlohmann::json to_json(const RelationResult& r) {
  return {{"relation", to_string(r.relation)},
          {"i", to_string(half2(r.i2))},
          {"j", to_string(half2(r.j2))},
          {"subspace_dim", r.subspace_dim},
          {"nonzero", r.nonzero},
          {"residual", r.max_abs}};
}

}  // namespace skms::svir
