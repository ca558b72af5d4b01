#include "superderivation.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace skms {

namespace {

std::optional<Word> canonical_word(const Word& w) {
  Word out = normalize(w);
  if (out.coeff == cplx{}) return std::nullopt;
  for (auto& g : out.factors) {
    if (g.arg.is_zero()) return std::nullopt;
    const cplx lead = g.arg.terms()[0].coeff;
    g.arg *= 1.0 / lead;
    out.coeff *= lead;
  }
  return out;
}

int compare_factors(const Word& a, const Word& b) {
  if (a.factors.size() != b.factors.size()) return a.factors.size() < b.factors.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.factors.size(); ++i) {
    const auto &x = a.factors[i], &y = b.factors[i];
    if (x.kind != y.kind) return x.kind < y.kind ? -1 : 1;
    if (int c = TestFunction::compare(x.arg, y.arg)) return c;
  }
  return 0;
}

bool factors_close(const Word& a, const Word& b, double tol) {
  if (a.factors.size() != b.factors.size()) return false;
  for (std::size_t i = 0; i < a.factors.size(); ++i) {
    if (a.factors[i].kind != b.factors[i].kind) return false;
    if (!a.factors[i].arg.approx_equal(b.factors[i].arg, tol)) return false;
  }
  return true;
}

// Replace factor k of w by the factors of `image`, multiplying in its
// coefficient and an extra scalar.
WordSum substitute(const Word& w, std::size_t k, const Word& image, cplx scalar) {
  Word out{w.coeff * image.coeff * scalar, {}};
  out.factors.insert(out.factors.end(), w.factors.begin(), w.factors.begin() + long(k));
  out.factors.insert(out.factors.end(), image.factors.begin(), image.factors.end());
  out.factors.insert(out.factors.end(), w.factors.begin() + long(k) + 1, w.factors.end());
  return WordSum(out);
}

}  // namespace

WordSum::WordSum(Word w) : words_{std::move(w)} { canonicalize(); }

WordSum::WordSum(std::vector<Word> words) : words_(std::move(words)) { canonicalize(); }

void WordSum::canonicalize() {
  std::vector<Word> canon;
  canon.reserve(words_.size());
  for (const auto& w : words_)
    if (auto c = canonical_word(w)) canon.push_back(std::move(*c));
  std::stable_sort(canon.begin(), canon.end(),
                   [](const Word& a, const Word& b) { return compare_factors(a, b) < 0; });
  std::vector<Word> merged;
  for (auto& w : canon) {
    if (!merged.empty() && compare_factors(merged.back(), w) == 0) {
      merged.back().coeff += w.coeff;
    } else {
      merged.push_back(std::move(w));
    }
  }
  std::erase_if(merged, [](const Word& w) { return w.coeff == cplx{}; });
  words_ = std::move(merged);
}

WordSum& WordSum::operator+=(const WordSum& other) {
  words_.insert(words_.end(), other.words_.begin(), other.words_.end());
  canonicalize();
  return *this;
}

WordSum& WordSum::operator*=(cplx s) {
  for (auto& w : words_) w.coeff *= s;
  canonicalize();
  return *this;
}

WordSum operator*(const WordSum& a, const WordSum& b) {
  std::vector<Word> out;
  for (const auto& x : a.words_)
    for (const auto& y : b.words_) out.push_back(x * y);
  return WordSum(std::move(out));
}

bool WordSum::approx_equal(const WordSum& other, double tol) const {
  std::vector<Word> diff = words_;
  for (auto w : other.words_) {
    w.coeff = -w.coeff;
    diff.push_back(std::move(w));
  }
  std::vector<bool> used(diff.size(), false);
  for (std::size_t i = 0; i < diff.size(); ++i) {
    if (used[i]) continue;
    cplx total = diff[i].coeff;
    for (std::size_t j = i + 1; j < diff.size(); ++j) {
      if (!used[j] && factors_close(diff[i], diff[j], tol)) {
        total += diff[j].coeff;
        used[j] = true;
      }
    }
    if (std::abs(total) > tol) return false;
  }
  return true;
}

WordSum grade(const WordSum& s) {
  std::vector<Word> out;
  for (const auto& w : s.words()) out.push_back(grade(w));
  return WordSum(std::move(out));
}

WordSum adjoint(const WordSum& s) {
  std::vector<Word> out;
  for (const auto& w : s.words()) out.push_back(normalize(adjoint(w)));
  return WordSum(std::move(out));
}

WordSum translate_all(const WordSum& s, double t) {
  std::vector<Word> out;
  for (const auto& w : s.words()) out.push_back(translate_all(w, t));
  return WordSum(std::move(out));
}

WordSum delta(const Word& w) {
  const Word n = normalize(w);
  WordSum out;
  int fermions_before = 0;
  for (std::size_t k = 0; k < n.factors.size(); ++k) {
    const auto& g = n.factors[k];
    const cplx sign = (fermions_before % 2) ? -1.0 : 1.0;
    if (g.kind == FieldKind::Fermion) {
      out += substitute(n, k, boson(g.arg), sign);
      ++fermions_before;
    } else {
      out += substitute(n, k, fermion(derivative(g.arg), cplx(0.0, 1.0)), sign);
    }
  }
  return out;
}

WordSum delta(const WordSum& s) {
  WordSum out;
  for (const auto& w : s.words()) out += delta(w);
  return out;
}

WordSum delta_squared(const Word& w) { return delta(delta(w)); }

WordSum translation_generator(const Word& w) {
  const Word n = normalize(w);
  WordSum out;
  for (std::size_t k = 0; k < n.factors.size(); ++k) {
    Word image{1.0, {Generator{n.factors[k].kind, derivative(n.factors[k].arg), false}}};
    out += substitute(n, k, image, cplx(0.0, 1.0));
  }
  return out;
}

WordValue evaluate(const QuasiFreeFunctional& psi, const WordSum& s) {
  WordValue total;
  for (const auto& w : s.words()) {
    const auto v = mixed_eval(psi, w);
    total.value += v.value;
    total.error += v.error;
  }
  return total;
}

Residual s4_check(const QuasiFreeFunctional& psi, const Word& w) {
  Residual r;
  double largest = 0.0;
  const WordSum image = delta(w);
  for (const auto& term : image.words()) {
    const auto v = mixed_eval(psi, term);
    r.lhs += v.value;
    r.error += v.error;
    largest = std::max(largest, std::abs(v.value));
  }
  r.residual = largest > 0.0 ? std::abs(r.lhs) / largest : std::abs(r.lhs);
  return r;
}

Residual s5_check(const QuasiFreeFunctional& psi, const Word& x, const Word& y, const Word& z, double h) {
  Residual r;
  const auto lhs = evaluate(psi, WordSum(x) * delta_squared(y) * WordSum(z));
  const auto plus = mixed_eval(psi, x * translate_all(y, h) * z);
  const auto minus = mixed_eval(psi, x * translate_all(y, -h) * z);
  r.lhs = lhs.value;
  r.rhs = cplx(0.0, -1.0) * (plus.value - minus.value) / (2.0 * h);
  r.error = lhs.error + (plus.error + minus.error) / (2.0 * h);
  r.residual = std::abs(r.lhs - r.rhs) / std::max({std::abs(r.lhs), std::abs(r.rhs), 1.0});
  return r;
}

}  // namespace skms
