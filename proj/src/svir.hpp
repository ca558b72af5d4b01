#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

namespace skms::svir {

using Rational = boost::multiprecision::cpp_rational;

// Exact a + ib.
struct GaussRational {
  Rational re{0}, im{0};

  GaussRational() = default;
  GaussRational(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}
  GaussRational(int r) : re(r) {}

  bool is_zero() const { return re == 0 && im == 0; }
  GaussRational conj() const { return {re, -im}; }
  GaussRational& operator+=(const GaussRational& o);
  GaussRational& operator-=(const GaussRational& o);
  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(const GaussRational& a, const GaussRational& b);
  friend bool operator==(const GaussRational& a, const GaussRational& b) { return a.re == b.re && a.im == b.im; }
  std::string str() const;
  double abs() const;
};

// Sparse vector over the truncated basis, keyed by state index.
using Vec = std::map<int, GaussRational>;

// Occupation state: k_n bosons a_{-n} (n = 1..N) and a bitmask of fermions
// b_{-r}, bit j for r = j + 1/2.  The basis vector is the unnormalized
// monomial a_{-1}^{k_1} a_{-2}^{k_2} ... b_{-r_1} b_{-r_2} ... |0>, r_1 < r_2.
struct FockState {
  std::vector<int> bosons;
  std::uint64_t fermions = 0;
  int energy2 = 0;  // twice the L0 eigenvalue

  friend bool operator<(const FockState& a, const FockState& b) {
    return std::tie(a.energy2, a.bosons, a.fermions) < std::tie(b.energy2, b.bosons, b.fermions);
  }
};

enum class Kind { A, B, L, G };

// Modes carry doubled indices so integers and half-integers share a type:
// a_n and L_n have index2 = 2n, b_r and G_r have index2 = 2r (odd).
struct ModeOperator {
  Kind kind = Kind::L;
  int index2 = 0;
};

// Deformation L^s_n = L_n + i s (n + 1) a_n, G^s_r = G_r + 2 i s (r + 1/2) b_r
// (Circle).  Line uses i s n a_n and 2 i s r b_r, the naive Fourier modes of
// s J(f') and 2 s F(f'); it differs from Circle by the coboundary
// L0 -> L0 + s^2/2 and fails the cocycle gate.
enum class Convention { Circle, Line };
struct Deformation {
  Rational s{0};
  Convention convention = Convention::Circle;
};

class FockTruncation {
 public:
  // Energies up to cutoff2 / 2; cutoff2 <= 28.
  explicit FockTruncation(int cutoff2);

  int cutoff2() const { return cutoff2_; }
  int dim() const { return int(states_.size()); }
  const FockState& state(int i) const { return states_[std::size_t(i)]; }
  int index_of(const FockState& s) const;  // -1 when outside the truncation
  int vacuum() const { return 0; }
  // Squared norm of the monomial: prod n^{k_n} k_n!.
  Rational norm2(int i) const;

  Vec apply(const ModeOperator& op, const Vec& v, const Deformation& d = {}) const;
  Vec apply_a(int n, const Vec& v) const;
  Vec apply_b(int r2, const Vec& v) const;
  Vec apply_L(int n, const Vec& v, const Deformation& d = {}) const;
  Vec apply_G(int r2, const Vec& v, const Deformation& d = {}) const;

  // Basis states with 2E <= cutoff2 - budget2.
  std::vector<int> safe_states(int budget2) const;
  Vec basis_vector(int i) const { return Vec{{i, GaussRational(1)}}; }

 private:
  void add(Vec& out, FockState s, const GaussRational& c) const;
  // Undeformed L_n and G_r, normal ordered.
  Vec sugawara_L(int n, const Vec& v) const;
  Vec sugawara_G(int r2, const Vec& v) const;
  // L or G applied to basis vector i, memoized.
  const Vec& column(Kind kind, int index2, int i) const;

  struct ColumnCache {
    std::mutex mutex;
    std::map<std::tuple<int, int, int>, Vec> columns;
  };

  int cutoff2_;
  std::vector<FockState> states_;
  std::map<FockState, int> index_;
  std::shared_ptr<ColumnCache> cache_;
};

FockTruncation build_truncation(int cutoff);

// Number of states per doubled energy 0..cutoff2 from
// prod (1 - q^n)^{-1} prod (1 + q^r).
std::vector<long> partition_counts(int cutoff2);
// The same count read off the enumerated basis.
std::vector<long> character(const FockTruncation& t);

enum class Relation {
  LL,  // [L_m, L_n] = (m - n) L_{m+n} + (c/12)(m^3 - m) delta
  GG,  // {G_r, G_s} = 2 L_{r+s} + (c/3)(r^2 - 1/4) delta
  LG,  // [L_m, G_r] = (m/2 - r) G_{m+r}
  aa,  // [a_m, a_n] = m delta
  bb,  // {b_r, b_s} = delta
  La,  // [L_m, a_n] = -n a_{m+n} (+ deformation term)
  Lb,  // [L_m, b_r] = -(m/2 + r) b_{m+r}
  aG,  // [a_n, G_r] = n b_{n+r}
  bG,  // {b_r, G_s} = a_{r+s} (+ deformation term)
};
std::string to_string(Relation r);

struct RelationResult {
  Relation relation = Relation::LL;
  int i2 = 0, j2 = 0;
  int subspace_dim = 0;
  long nonzero = 0;        // entries of the residual that are not exactly 0
  double max_abs = 0.0;    // for reporting only
  bool exact() const { return nonzero == 0; }
};

// Checks the relation on safe states (2E <= cutoff2 - |i2| - |j2|) with
// central charge c.
RelationResult commutator_check(const FockTruncation& t, Relation rel, int i2, int j2, const Rational& c,
                                const Deformation& d = {});

// Every relation with |m| <= max_m and |r| <= max_r2 / 2.
std::vector<RelationResult> relation_table(const FockTruncation& t, const Rational& c, int max_m, int max_r2,
                                           const Deformation& d = {});

// L_n^* = L_{-n} and G_r^* = G_{-r} in the monomial inner product, on safe
// states; returns the number of mismatching entries.
long hermiticity_check(const FockTruncation& t, int max_m, int max_r2);

struct DeformedCharge {
  Rational s;
  Rational c_m2, c_m3;  // from <0|[L^s_m, L^s_{-m}]|0> = (c/12)(m^3 - m)
  Rational c_g;         // from {G^s_{3/2}, G^s_{-3/2}} on the vacuum
  bool agree() const { return c_m2 == c_m3 && c_m2 == c_g; }
};

// Runs the closure gate (deformed generators close on the safe subspace
// with central terms proportional to the identity, all giving one c) and
// then measures c_s.  Throws ConventionError when the gate fails.
DeformedCharge deformed_central_charge(const FockTruncation& t, const Rational& s,
                                       Convention convention = Convention::Circle);

Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);
nlohmann::json to_json(const RelationResult& r);

}  // namespace skms::svir
