#include "pfrad/liealg.hpp"

#include <nlohmann/json.hpp>

#include <stdexcept>

namespace pfrad {

using nlohmann::json;

LieElement LieElement::generator(int N, int i, int j) {
  LieElement x(N);
  x.add_term(i, j, GaussianRational(1));
  return x;
}

void LieElement::add_term(int i, int j, const GaussianRational& c) {
  if (i < 1 || j < 1 || i > N_ || j > N_) throw std::domain_error("generator index out of range");
  if (i == j || c.is_zero()) return;
  GaussianRational v = c;
  if (i > j) {
    std::swap(i, j);
    v = -v;
  }
  GeneratorIndex key{i, j};
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(key, std::move(v));
  } else {
    it->second += v;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

LieElement& LieElement::operator+=(const LieElement& o) {
  if (N_ != o.N_) throw std::invalid_argument("LieElement: dimension mismatch");
  for (const auto& [k, v] : o.terms_) add_term(k.i, k.j, v);
  return *this;
}

LieElement& LieElement::operator-=(const LieElement& o) {
  if (N_ != o.N_) throw std::invalid_argument("LieElement: dimension mismatch");
  for (const auto& [k, v] : o.terms_) add_term(k.i, k.j, -v);
  return *this;
}

LieElement& LieElement::operator*=(const GaussianRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, v] : terms_) v *= c;
  return *this;
}

LieElement LieElement::operator-() const {
  LieElement x(N_);
  for (const auto& [k, v] : terms_) x.terms_.emplace(k, -v);
  return x;
}

Mat LieElement::to_matrix() const {
  Mat m(N_, std::vector<GaussianRational>(N_));
  for (const auto& [k, v] : terms_) {
    m[k.j - 1][k.i - 1] += v;  // X(i,j) = E(j,i) - E(i,j)
    m[k.i - 1][k.j - 1] -= v;
  }
  return m;
}

std::string LieElement::to_json() const {
  json terms = json::array();
  for (const auto& [k, v] : terms_) {
    terms.push_back({{"i", k.i}, {"j", k.j}, {"re", rational_str(v.re())}, {"im", rational_str(v.im())}});
  }
  return json{{"N", N_}, {"terms", terms}}.dump();
}

LieElement LieElement::from_json(const std::string& text) {
  json j = json::parse(text);
  LieElement x(j.at("N").get<int>());
  for (const auto& t : j.at("terms")) {
    x.add_term(t.at("i").get<int>(), t.at("j").get<int>(),
               GaussianRational(parse_rational(t.at("re").get<std::string>()),
                                parse_rational(t.at("im").get<std::string>())));
  }
  return x;
}

namespace {

// [X(i,j), X(k,l)] = d(i,l) X(k,j) - d(j,l) X(k,i) - d(i,k) X(l,j) + d(j,k) X(l,i)
void add_bracket_terms(LieElement& out, int i, int j, int k, int l, const GaussianRational& c) {
  if (i == l) out.add_term(k, j, c);
  if (j == l) out.add_term(k, i, -c);
  if (i == k) out.add_term(l, j, -c);
  if (j == k) out.add_term(l, i, c);
}

}  // namespace

LieElement bracket(const LieElement& a, const LieElement& b) {
  if (a.N() != b.N()) throw std::invalid_argument("bracket: dimension mismatch");
  LieElement out(a.N());
  for (const auto& [ka, va] : a.terms())
    for (const auto& [kb, vb] : b.terms())
      add_bracket_terms(out, ka.i, ka.j, kb.i, kb.j, va * vb);
  return out;
}

LieElement nilpotent_generator(int N, int q, int l) {
  if (N % 2 == 0 && q == N / 2)
    throw std::domain_error("nilpotent_generator: q = N/2 excluded for even N");
  if (q < 1 || q > N / 2 || l <= q || l >= N + 1 - q)
    throw std::domain_error("nilpotent_generator: (q,l) out of range");
  LieElement x = LieElement::generator(N, l, N + 1 - q);
  x.add_term(q, l, GaussianRational::i());
  return x;
}

LieElement opposite_generator(int N, int q, int l) {
  if (N % 2 == 0 && q == N / 2)
    throw std::domain_error("opposite_generator: q = N/2 excluded for even N");
  if (q < 1 || q > N / 2 || l <= q || l >= N + 1 - q)
    throw std::domain_error("opposite_generator: (q,l) out of range");
  LieElement x = LieElement::generator(N, l, N + 1 - q);
  x.add_term(q, l, -GaussianRational::i());
  return x;
}

LieElement cartan_generator(int N, int l) {
  if (l < 1 || l > N / 2) throw std::domain_error("cartan_generator: l out of range");
  LieElement x(N);
  x.add_term(l, N + 1 - l, GaussianRational::i());
  return x;
}

int pair_index(int N, int i, int j) {
  // zero-based lexicographic rank of (i,j), 1 <= i < j <= N
  return (i - 1) * N - (i - 1) * i / 2 + (j - i - 1);
}

AdaptedBasis AdaptedBasis::build(int N, int s) {
  if (N < 3) throw std::domain_error("adapted_basis: N >= 3 required");
  if (s < 0 || s > N / 2) throw std::domain_error("adapted_basis: s out of range");
  AdaptedBasis b;
  b.N_ = N;
  b.s_ = s;
  for (int q = 1; q <= s; ++q)
    for (int l = q + 1; l <= N - q; ++l) {
      b.elements_.push_back(nilpotent_generator(N, q, l));
      b.info_.push_back({SlotKind::Nilpotent, q, l});
    }
  b.nil_count_ = static_cast<int>(b.elements_.size());
  for (int l = 1; l <= N / 2; ++l) {
    b.elements_.push_back(cartan_generator(N, l));
    b.info_.push_back({SlotKind::Cartan, l, 0});
  }
  for (int q = 1; q <= s; ++q)
    for (int l = q + 1; l <= N - q; ++l) {
      b.elements_.push_back(opposite_generator(N, q, l));
      b.info_.push_back({SlotKind::Opposite, q, l});
    }
  for (int i = s + 1; i < N - s; ++i)
    for (int j = i + 1; j <= N - s; ++j) {
      if (j == N + 1 - i) continue;  // anti-diagonal pairs live in the Cartan segment
      b.elements_.push_back(LieElement::generator(N, i, j));
      b.info_.push_back({SlotKind::Block, i, j});
    }
  int dim = N * (N - 1) / 2;
  if (static_cast<int>(b.elements_.size()) != dim)
    throw std::logic_error("adapted_basis: element count != dim so(N)");
  b.cob_ = Mat(dim, std::vector<GaussianRational>(dim));
  for (int c = 0; c < dim; ++c)
    for (const auto& [k, v] : b.elements_[c].terms()) b.cob_[pair_index(N, k.i, k.j)][c] = v;
  auto inv = mat_inverse(b.cob_);
  if (!inv) throw std::logic_error("adapted_basis: change-of-basis matrix is singular");
  b.cob_inv_ = std::move(*inv);
  return b;
}

std::vector<GaussianRational> AdaptedBasis::to_slots(const LieElement& x) const {
  if (x.N() != N_) throw std::invalid_argument("to_slots: dimension mismatch");
  int dim = this->dim();
  std::vector<GaussianRational> out(dim);
  for (const auto& [k, v] : x.terms()) {
    int r = pair_index(N_, k.i, k.j);
    for (int c = 0; c < dim; ++c) {
      if (cob_inv_[c][r].is_zero()) continue;
      out[c] += cob_inv_[c][r] * v;
    }
  }
  return out;
}

AdaptedBasis adapted_basis(int N, int s) { return AdaptedBasis::build(N, s); }

}  // namespace pfrad
