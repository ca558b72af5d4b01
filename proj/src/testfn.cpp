#include "testfn.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

#include <Eigen/Eigenvalues>

#include "errors.hpp"

namespace skms {

namespace {

constexpr double kPi = std::numbers::pi;

auto term_key(const HermiteTerm& t) {
  return std::make_tuple(t.component, t.order, t.scale, t.shift, t.freq);
}

cplx ipow(int n) {
  switch (((n % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

// Polynomial part of h_n: h_n(y) = poly_n(y) exp(-y^2/2), evaluated at a
// complex argument (needed after the contour shift in l2_inner).
void hermite_polys(int nmax, cplx y, std::vector<cplx>& out) {
  out.assign(nmax + 1, cplx{});
  out[0] = std::pow(kPi, -0.25);
  if (nmax >= 1) out[1] = std::sqrt(2.0) * y * out[0];
  for (int k = 1; k < nmax; ++k) {
    out[k + 1] = std::sqrt(2.0 / (k + 1)) * y * out[k] - std::sqrt(double(k) / (k + 1)) * out[k - 1];
  }
}

// int conj(s(x)) t(x) dx for two single terms with unit coefficients.
cplx term_overlap(const HermiteTerm& s, const HermiteTerm& t) {
  const double s1 = s.scale, s2 = t.scale;
  const double inv1 = 1.0 / (s1 * s1), inv2 = 1.0 / (s2 * s2);
  const double alpha = 0.5 * (inv1 + inv2);
  const double mu = (s.shift * inv1 + t.shift * inv2) / (inv1 + inv2);
  const double kappa = t.freq - s.freq;
  const double d = s.shift - t.shift;
  const double c0 = -d * d / (2.0 * (s1 * s1 + s2 * s2));
  // exponent -alpha (x - z0)^2 + c0 + i kappa mu - kappa^2 / (4 alpha)
  const cplx z0(mu, kappa / (2.0 * alpha));
  const cplx prefactor =
      std::exp(cplx(c0 - kappa * kappa / (4.0 * alpha), kappa * mu)) / std::sqrt(alpha * s1 * s2);

  const int nodes = (s.order + t.order) / 2 + 1;
  const auto& rule = gauss_hermite(nodes);
  const double root_alpha = std::sqrt(alpha);
  std::vector<cplx> ps, pt;
  cplx sum{};
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const cplx x = z0 + rule.nodes[i] / root_alpha;
    hermite_polys(s.order, (x - s.shift) / s1, ps);
    hermite_polys(t.order, (x - t.shift) / s2, pt);
    sum += rule.weights[i] * ps[s.order] * pt[t.order];
  }
  return prefactor * sum;
}

}  // namespace

TestFunction::TestFunction(int components) : components_(components) {
  if (components < 1) throw InvalidArgument("TestFunction: component count must be positive");
}

TestFunction::TestFunction(int components, std::vector<HermiteTerm> terms)
    : components_(components), terms_(std::move(terms)) {
  if (components < 1) throw InvalidArgument("TestFunction: component count must be positive");
  for (const auto& t : terms_) {
    if (!(t.scale > 0.0) || !std::isfinite(t.scale))
      throw InvalidArgument("TestFunction: scale must be positive");
    if (t.order < 0) throw InvalidArgument("TestFunction: Hermite order must be nonnegative");
    if (t.component < 0 || t.component >= components)
      throw InvalidArgument("TestFunction: component index out of range");
  }
  canonicalize();
}

void TestFunction::canonicalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const HermiteTerm& a, const HermiteTerm& b) { return term_key(a) < term_key(b); });
  std::vector<HermiteTerm> merged;
  merged.reserve(terms_.size());
  for (const auto& t : terms_) {
    if (!merged.empty() && term_key(merged.back()) == term_key(t)) {
      merged.back().coeff += t.coeff;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const HermiteTerm& t) { return t.coeff == cplx{}; });
  terms_ = std::move(merged);
}

cplx TestFunction::operator()(double x, int component) const {
  cplx v{};
  for (const auto& t : terms_) {
    if (t.component != component) continue;
    const double y = (x - t.shift) / t.scale;
    v += t.coeff * hermite_function(t.order, y) / std::sqrt(t.scale) * std::exp(cplx(0.0, t.freq * x));
  }
  return v;
}

double TestFunction::term_norm() const {
  double s = 0.0;
  for (const auto& t : terms_) s += std::abs(t.coeff);
  return s;
}

bool TestFunction::real_valued(double tol) const {
  return conjugate(*this).approx_equal(*this, tol * std::max(1.0, term_norm()));
}

TestFunction& TestFunction::operator+=(const TestFunction& other) {
  if (other.components_ != components_) throw InvalidArgument("TestFunction: component count mismatch");
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  canonicalize();
  return *this;
}

TestFunction& TestFunction::operator*=(cplx s) {
  for (auto& t : terms_) t.coeff *= s;
  canonicalize();
  return *this;
}

bool operator==(const TestFunction& a, const TestFunction& b) {
  if (a.components_ != b.components_ || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (term_key(a.terms_[i]) != term_key(b.terms_[i]) || a.terms_[i].coeff != b.terms_[i].coeff)
      return false;
  }
  return true;
}

bool TestFunction::approx_equal(const TestFunction& other, double tol) const {
  if (components_ != other.components_) return false;
  // Terms whose coefficients are below tol may be missing on either side.
  auto significant = [tol](std::span<const HermiteTerm> ts) {
    std::vector<HermiteTerm> out;
    for (const auto& t : ts)
      if (std::abs(t.coeff) > tol) out.push_back(t);
    return out;
  };
  const auto a = significant(terms_);
  const auto b = significant(other.terms_);
  if (a.size() != b.size()) return false;
  auto close = [tol](double x, double y) { return std::abs(x - y) <= tol * std::max(1.0, std::abs(x)); };
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].component != b[i].component || a[i].order != b[i].order) return false;
    if (!close(a[i].scale, b[i].scale) || !close(a[i].shift, b[i].shift) || !close(a[i].freq, b[i].freq))
      return false;
    if (std::abs(a[i].coeff - b[i].coeff) > tol * std::max(1.0, std::abs(a[i].coeff))) return false;
  }
  return true;
}

int TestFunction::compare(const TestFunction& a, const TestFunction& b) {
  if (a.components_ != b.components_) return a.components_ < b.components_ ? -1 : 1;
  const std::size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto ka = term_key(a.terms_[i]), kb = term_key(b.terms_[i]);
    if (ka != kb) return ka < kb ? -1 : 1;
    const auto ca = a.terms_[i].coeff, cb = b.terms_[i].coeff;
    if (ca.real() != cb.real()) return ca.real() < cb.real() ? -1 : 1;
    if (ca.imag() != cb.imag()) return ca.imag() < cb.imag() ? -1 : 1;
  }
  if (a.terms_.size() != b.terms_.size()) return a.terms_.size() < b.terms_.size() ? -1 : 1;
  return 0;
}

TestFunction hermite(int n, double sigma, double shift, int component, int components) {
  if (!(sigma > 0.0)) throw InvalidArgument("hermite: scale must be positive");
  if (n < 0) throw InvalidArgument("hermite: order must be nonnegative");
  return TestFunction(components, {HermiteTerm{component, n, sigma, shift, 0.0, {1.0, 0.0}}});
}

TestFunction fourier(const TestFunction& f) {
  std::vector<HermiteTerm> out;
  out.reserve(f.terms().size());
  for (const auto& t : f.terms()) {
    HermiteTerm u = t;
    u.scale = 1.0 / t.scale;
    u.shift = -t.freq;
    u.freq = t.shift;
    u.coeff = t.coeff * ipow(t.order) * std::exp(cplx(0.0, t.freq * t.shift));
    out.push_back(u);
  }
  return TestFunction(f.components(), std::move(out));
}

TestFunction derivative(const TestFunction& f) {
  std::vector<HermiteTerm> out;
  for (const auto& t : f.terms()) {
    const int n = t.order;
    if (n > 0) {
      HermiteTerm lo = t;
      lo.order = n - 1;
      lo.coeff = t.coeff * std::sqrt(n / 2.0) / t.scale;
      out.push_back(lo);
    }
    HermiteTerm hi = t;
    hi.order = n + 1;
    hi.coeff = -t.coeff * std::sqrt((n + 1) / 2.0) / t.scale;
    out.push_back(hi);
    if (t.freq != 0.0) {
      HermiteTerm same = t;
      same.coeff = t.coeff * cplx(0.0, t.freq);
      out.push_back(same);
    }
  }
  return TestFunction(f.components(), std::move(out));
}

TestFunction translate(const TestFunction& f, double t) {
  if (t == 0.0) return f;
  std::vector<HermiteTerm> out(f.terms().begin(), f.terms().end());
  for (auto& u : out) {
    u.shift += t;
    if (u.freq != 0.0) u.coeff *= std::exp(cplx(0.0, -u.freq * t));
  }
  return TestFunction(f.components(), std::move(out));
}

TestFunction conjugate(const TestFunction& f) {
  std::vector<HermiteTerm> out(f.terms().begin(), f.terms().end());
  for (auto& u : out) {
    u.coeff = std::conj(u.coeff);
    u.freq = -u.freq;
  }
  return TestFunction(f.components(), std::move(out));
}

cplx l2_inner(const TestFunction& f, const TestFunction& g) {
  if (f.components() != g.components()) throw InvalidArgument("l2_inner: component count mismatch");
  cplx sum{};
  for (const auto& s : f.terms()) {
    for (const auto& t : g.terms()) {
      if (s.component != t.component) continue;
      sum += std::conj(s.coeff) * t.coeff * term_overlap(s, t);
    }
  }
  return sum;
}

double l2_norm(const TestFunction& f) { return std::sqrt(std::max(0.0, l2_inner(f, f).real())); }

double hermite_function(int n, double x) {
  double prev = 0.0;
  double cur = std::pow(kPi, -0.25) * std::exp(-0.5 * x * x);
  for (int k = 0; k < n; ++k) {
    const double next = std::sqrt(2.0 / (k + 1)) * x * cur - std::sqrt(double(k) / (k + 1)) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

const GaussHermiteRule& gauss_hermite(int count) {
  if (count < 1) throw InvalidArgument("gauss_hermite: node count must be positive");
  static std::mutex mutex;
  static std::map<int, GaussHermiteRule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(count);
  if (it != cache.end()) return it->second;

  // Golub-Welsch on the Jacobi matrix of the physicists' Hermite weight.
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(count, count);
  for (int k = 1; k < count; ++k) jac(k, k - 1) = jac(k - 1, k) = std::sqrt(k / 2.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
  GaussHermiteRule rule;
  for (int i = 0; i < count; ++i) {
    rule.nodes.push_back(es.eigenvalues()(i));
    const double v0 = es.eigenvectors()(0, i);
    rule.weights.push_back(std::sqrt(kPi) * v0 * v0);
  }
  return cache.emplace(count, std::move(rule)).first->second;
}

double effective_radius(const TestFunction& f, double tol) {
  const double tail = std::sqrt(2.0 * std::log(1.0 / tol));
  double r = 0.0;
  for (const auto& t : f.terms()) {
    r = std::max(r, std::abs(t.shift) + t.scale * (tail + std::sqrt(2.0 * t.order + 1.0)));
  }
  return r;
}

TestFunction random_test_function(std::mt19937_64& rng, const RandomTestFunctionOptions& opts) {
  std::uniform_int_distribution<int> nterms(1, opts.max_terms);
  std::uniform_int_distribution<int> order(0, opts.max_order);
  std::uniform_real_distribution<double> scale(opts.min_scale, opts.max_scale);
  std::uniform_real_distribution<double> shift(-opts.max_shift, opts.max_shift);
  std::uniform_real_distribution<double> freq(-opts.max_freq, opts.max_freq);
  std::normal_distribution<double> gauss;

  std::vector<HermiteTerm> terms;
  const int n = nterms(rng);
  for (int i = 0; i < n; ++i) {
    HermiteTerm t;
    t.order = order(rng);
    t.scale = scale(rng);
    t.shift = shift(rng);
    if (!opts.real && opts.max_freq > 0.0) t.freq = freq(rng);
    const double re = gauss(rng);
    const double im = opts.real ? 0.0 : gauss(rng);
    t.coeff = {re, im};
    terms.push_back(t);
  }
  TestFunction f(1, std::move(terms));
  if (opts.unit_norm) {
    const double norm = l2_norm(f);
    if (norm > 0.0) f *= cplx(1.0 / norm);
  }
  return f;
}

nlohmann::json to_json(const TestFunction& f) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : f.terms()) {
    nlohmann::json rec{{"component", t.component}, {"n", t.order},          {"sigma", t.scale},
                       {"shift", t.shift},         {"re", t.coeff.real()},   {"im", t.coeff.imag()}};
    if (t.freq != 0.0) rec["freq"] = t.freq;
    terms.push_back(std::move(rec));
  }
  return {{"components", f.components()}, {"terms", std::move(terms)}};
}

TestFunction test_function_from_json(const nlohmann::json& j) {
  const nlohmann::json* list = &j;
  int components = 0;
  if (j.is_object()) {
    list = &j.at("terms");
    components = j.value("components", 0);
  }
  if (!list->is_array()) throw InvalidArgument("TestFunction JSON: expected a list of term records");
  std::vector<HermiteTerm> terms;
  for (const auto& rec : *list) {
    HermiteTerm t;
    t.component = rec.value("component", 0);
    t.order = rec.at("n").get<int>();
    t.scale = rec.at("sigma").get<double>();
    t.shift = rec.value("shift", 0.0);
    t.freq = rec.value("freq", 0.0);
    t.coeff = {rec.value("re", 0.0), rec.value("im", 0.0)};
    components = std::max(components, t.component + 1);
    terms.push_back(t);
  }
  return TestFunction(std::max(components, 1), std::move(terms));
}

}  // namespace skms
