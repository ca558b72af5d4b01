#include "car.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace skms {

int Word::fermion_count() const {
  return int(std::count_if(factors.begin(), factors.end(),
                           [](const Generator& g) { return g.kind == FieldKind::Fermion; }));
}

Word fermion(const TestFunction& f, cplx coeff) { return Word{coeff, {Generator{FieldKind::Fermion, f, false}}}; }
Word boson(const TestFunction& f, cplx coeff) { return Word{coeff, {Generator{FieldKind::Boson, f, false}}}; }
Word unit_word(cplx coeff) { return Word{coeff, {}}; }

Word operator*(const Word& a, const Word& b) {
  Word out{a.coeff * b.coeff, a.factors};
  out.factors.insert(out.factors.end(), b.factors.begin(), b.factors.end());
  return out;
}

Word normalize(const Word& w) {
  Word out = w;
  for (auto& g : out.factors) {
    if (g.starred) {
      g.arg = conjugate(g.arg);
      g.starred = false;
    }
  }
  return out;
}

Word adjoint(const Word& w) {
  Word out{std::conj(w.coeff), {w.factors.rbegin(), w.factors.rend()}};
  for (auto& g : out.factors) g.starred = !g.starred;
  return out;
}

Word grade(const Word& w) {
  Word out = w;
  if (w.fermion_count() % 2) out.coeff = -out.coeff;
  return out;
}

Word translate_all(const Word& w, double t) {
  Word out = w;
  for (auto& g : out.factors) g.arg = translate(g.arg, t);
  return out;
}

QuasiFreeFunctional QuasiFreeFunctional::canonical(const KernelConfig& cfg) {
  QuasiFreeFunctional q;
  q.fermi_2pt = [cfg](const TestFunction& f, const TestFunction& g) {
    const auto e = theta(f, g, cfg);
    return PairValue{e.value, e.error};
  };
  q.bose_2pt = [cfg](const TestFunction& f, const TestFunction& g) {
    const auto e = bosonic_2pt(f, g, cfg);
    return PairValue{e.value, e.error};
  };
  return q;
}

namespace {

// Argument as it enters a product X(f) X(g): a starred factor carries
// Gamma f already.
TestFunction effective_arg(const Generator& g) { return g.starred ? conjugate(g.arg) : g.arg; }

PairValue pair_value(const QuasiFreeFunctional& phi, const Generator& a, const Generator& b) {
  if (a.kind != b.kind) return {};
  const TestFunction left = conjugate(effective_arg(a));
  const TestFunction right = effective_arg(b);
  return a.kind == FieldKind::Fermion ? phi.fermi_2pt(left, right) : phi.bose_2pt(left, right);
}

double double_factorial(int n) {
  double r = 1.0;
  for (int k = n; k > 1; k -= 2) r *= k;
  return r;
}

cplx recurse(const MatrixXc& a, const std::vector<int>& idx) {
  // phi(F_1 ... F_2n) = sum_{j=2}^{2n} (-1)^j phi(F_1 F_j) phi(F_2 ..^j.. F_2n)
  if (idx.empty()) return 1.0;
  if (idx.size() % 2) return 0.0;
  cplx sum = 0.0;
  for (std::size_t j = 2; j <= idx.size(); ++j) {
    std::vector<int> rest;
    for (std::size_t k = 2; k <= idx.size(); ++k)
      if (k != j) rest.push_back(idx[k - 1]);
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    sum += sign * a(idx[0], idx[j - 1]) * recurse(a, rest);
  }
  return sum;
}

void require_fermionic(const Word& w, const char* what) {
  for (const auto& g : w.factors)
    if (g.kind != FieldKind::Fermion) throw InvalidArgument(std::string(what) + ": word has a bosonic factor");
}

std::vector<Generator> sector(const Word& w, FieldKind kind) {
  std::vector<Generator> out;
  for (const auto& g : w.factors)
    if (g.kind == kind) out.push_back(g);
  return out;
}

}  // namespace

MatrixXc pair_matrix(const QuasiFreeFunctional& phi, const std::vector<Generator>& factors, Eigen::MatrixXd* err) {
  const auto n = Eigen::Index(factors.size());
  MatrixXc a = MatrixXc::Zero(n, n);
  if (err) *err = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const auto v = pair_value(phi, factors[i], factors[j]);
      a(i, j) = v.value;
      if (err) (*err)(i, j) = v.error;
    }
  }
  return a;
}

double pairing_error_bound(const MatrixXc& a, const Eigen::MatrixXd& err) {
  const int n = int(a.rows());
  if (n < 2 || n % 2) return 0.0;
  const double m = std::max(a.cwiseAbs().maxCoeff(), 1.0);
  return err.sum() * double_factorial(n - 3) * std::pow(m, n / 2 - 1);
}

cplx quasifree_eval_recursive(const QuasiFreeFunctional& phi, const Word& w) {
  require_fermionic(w, "quasifree_eval_recursive");
  if (w.factors.size() % 2) return 0.0;
  const MatrixXc a = pair_matrix(phi, w.factors);
  std::vector<int> idx(w.factors.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = int(i);
  return w.coeff * recurse(a, idx);
}

WordValue quasifree_eval_pfaffian(const QuasiFreeFunctional& phi, const Word& w) {
  require_fermionic(w, "quasifree_eval_pfaffian");
  if (w.factors.size() % 2) return {};
  Eigen::MatrixXd err;
  const MatrixXc a = pair_matrix(phi, w.factors, &err);
  return {w.coeff * pfaffian(a), std::abs(w.coeff) * pairing_error_bound(a, err)};
}

WordValue mixed_eval(const QuasiFreeFunctional& psi, const Word& w) {
  const auto fermions = sector(w, FieldKind::Fermion);
  const auto bosons = sector(w, FieldKind::Boson);
  if (fermions.size() % 2 || bosons.size() % 2) return {};
  Eigen::MatrixXd ef, eb;
  const MatrixXc af = pair_matrix(psi, fermions, &ef);
  const MatrixXc ab = pair_matrix(psi, bosons, &eb);
  const cplx pf = pfaffian(af), hf = hafnian(ab);
  const double err = pairing_error_bound(af, ef) * std::max(1.0, std::abs(hf)) +
                     pairing_error_bound(ab, eb) * std::max(1.0, std::abs(pf));
  return {w.coeff * pf * hf, std::abs(w.coeff) * err};
}

Word random_word(std::mt19937_64& rng, int fermions, int bosons, const RandomTestFunctionOptions& opts) {
  std::vector<FieldKind> kinds(fermions, FieldKind::Fermion);
  kinds.insert(kinds.end(), bosons, FieldKind::Boson);
  std::shuffle(kinds.begin(), kinds.end(), rng);
  Word w;
  for (auto k : kinds) w.factors.push_back(Generator{k, random_test_function(rng, opts), false});
  return w;
}

nlohmann::json to_json(const Word& w) {
  nlohmann::json factors = nlohmann::json::array();
  for (const auto& g : w.factors) {
    factors.push_back({{"kind", g.kind == FieldKind::Fermion ? "F" : "J"}, {"star", g.starred}, {"arg", to_json(g.arg)}});
  }
  return {{"re", w.coeff.real()}, {"im", w.coeff.imag()}, {"factors", std::move(factors)}};
}

Word word_from_json(const nlohmann::json& j) {
  Word w;
  w.coeff = {j.value("re", 1.0), j.value("im", 0.0)};
  for (const auto& rec : j.at("factors")) {
    Generator g;
    const auto kind = rec.at("kind").get<std::string>();
    if (kind == "F") g.kind = FieldKind::Fermion;
    else if (kind == "J") g.kind = FieldKind::Boson;
    else throw InvalidArgument("Word JSON: kind must be \"F\" or \"J\"");
    g.starred = rec.value("star", false);
    g.arg = test_function_from_json(rec.at("arg"));
    w.factors.push_back(std::move(g));
  }
  return w;
}

}  // namespace skms
