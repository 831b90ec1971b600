#include "pfrad/enveloping.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace pfrad {

using nlohmann::json;

PBWContext::PBWContext(AdaptedBasis basis) : basis_(std::move(basis)) {
  int dim = basis_.dim();
  struct_.resize(static_cast<std::size_t>(dim) * dim);
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < a; ++b) {
      LieElement br = bracket(basis_.element(a), basis_.element(b));
      auto slots = basis_.to_slots(br);
      auto& entry = struct_[static_cast<std::size_t>(a) * dim + b];
      for (int c = 0; c < dim; ++c)
        if (!slots[c].is_zero()) entry.emplace_back(static_cast<unsigned char>(c), slots[c]);
    }
}

int PBWContext::find_slot(SlotKind kind, int a, int b) const {
  for (int s = 0; s < basis_.dim(); ++s) {
    const SlotInfo& info = basis_.slot_info(s);
    if (info.kind == kind && info.a == a && info.b == b) return s;
  }
  throw std::invalid_argument("find_slot: no such basis element");
}

namespace {

void accumulate(TermMap& into, const Monomial& m, const GaussianRational& c) {
  if (c.is_zero()) return;
  auto it = into.find(m);
  if (it == into.end()) {
    into.emplace(m, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) into.erase(it);
  }
}

void accumulate_scaled(TermMap& into, const TermMap& from, const GaussianRational& c) {
  for (const auto& [m, v] : from) accumulate(into, m, c * v);
}

}  // namespace

TermMap PBWContext::mono_times_gen(const Monomial& m, unsigned char g) const {
  if (m.empty() || m.back() <= g) {
    Monomial out = m;
    out.push_back(g);
    return {{out, GaussianRational(1)}};
  }
  std::string key(reinterpret_cast<const char*>(m.data()), m.size());
  key.push_back(static_cast<char>(g));
  {
    std::lock_guard<std::mutex> lock(memo_mutex_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }
  unsigned char x = m.back();
  Monomial rest = m.substr(0, m.size() - 1);
  // m*g = rest*(g*x + [x,g]) = (rest*g)*x + rest*[x,g]
  TermMap result;
  for (const auto& [ma, ca] : mono_times_gen(rest, g))
    accumulate_scaled(result, mono_times_gen(ma, x), ca);
  const auto& br = struct_[static_cast<std::size_t>(x) * basis_.dim() + g];
  for (const auto& [slot, coeff] : br)
    accumulate_scaled(result, mono_times_gen(rest, slot), coeff);
  {
    std::lock_guard<std::mutex> lock(memo_mutex_);
    memo_.emplace(std::move(key), result);
  }
  return result;
}

std::shared_ptr<const PBWContext> make_context(int N, int s) {
  return std::make_shared<const PBWContext>(AdaptedBasis::build(N, s));
}

std::shared_ptr<const PBWContext> get_context(int N, int s) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const PBWContext>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& entry = cache[{N, s}];
  if (!entry) entry = make_context(N, s);
  return entry;
}

UElement UElement::unit(std::shared_ptr<const PBWContext> ctx) {
  UElement u(std::move(ctx));
  u.terms_.emplace(Monomial{}, GaussianRational(1));
  return u;
}

UElement UElement::from_lie(const LieElement& x, const std::shared_ptr<const PBWContext>& ctx) {
  if (x.N() != ctx->N()) throw std::invalid_argument("from_lie: dimension mismatch");
  UElement u(ctx);
  auto slots = ctx->basis().to_slots(x);
  for (int c = 0; c < ctx->dim(); ++c) {
    if (slots[c].is_zero()) continue;
    Monomial m;
    m.push_back(static_cast<unsigned char>(c));
    u.terms_.emplace(std::move(m), slots[c]);
  }
  return u;
}

UElement UElement::from_slot(const std::shared_ptr<const PBWContext>& ctx, int slot) {
  UElement u(ctx);
  Monomial m;
  m.push_back(static_cast<unsigned char>(slot));
  u.terms_.emplace(std::move(m), GaussianRational(1));
  return u;
}

int UElement::degree() const {
  int d = 0;
  for (const auto& [m, v] : terms_) d = std::max(d, static_cast<int>(m.size()));
  return d;
}

void UElement::add_term(const Monomial& m, const GaussianRational& c) {
  accumulate(terms_, m, c);
}

namespace {

void require_same_ctx(const UElement& a, const UElement& b, const char* op) {
  if (!a.ctx() || !b.ctx() || a.ctx()->N() != b.ctx()->N() || a.ctx()->s() != b.ctx()->s())
    throw std::invalid_argument(std::string(op) + ": basis mismatch");
}

}  // namespace

UElement& UElement::operator+=(const UElement& o) {
  require_same_ctx(*this, o, "add");
  for (const auto& [m, v] : o.terms_) accumulate(terms_, m, v);
  return *this;
}

UElement& UElement::operator-=(const UElement& o) {
  require_same_ctx(*this, o, "sub");
  for (const auto& [m, v] : o.terms_) accumulate(terms_, m, -v);
  return *this;
}

UElement& UElement::operator*=(const GaussianRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

bool operator==(const UElement& a, const UElement& b) {
  if (!a.ctx_ || !b.ctx_) return a.terms_.empty() && b.terms_.empty();
  return a.ctx_->N() == b.ctx_->N() && a.ctx_->s() == b.ctx_->s() && a.terms_ == b.terms_;
}

std::string UElement::to_json() const {
  json terms = json::array();
  for (const auto& [m, v] : terms_) {
    json mono = json::array();
    for (unsigned char s : m) mono.push_back(static_cast<int>(s));
    terms.push_back(
        {{"mono", mono}, {"re", rational_str(v.re())}, {"im", rational_str(v.im())}});
  }
  return json{{"N", ctx_ ? ctx_->N() : 0}, {"s", ctx_ ? ctx_->s() : 0}, {"terms", terms}}.dump();
}

UElement UElement::from_json(const std::string& text) {
  json j = json::parse(text);
  auto ctx = get_context(j.at("N").get<int>(), j.at("s").get<int>());
  UElement u(ctx);
  for (const auto& t : j.at("terms")) {
    Monomial m;
    for (const auto& s : t.at("mono")) m.push_back(static_cast<unsigned char>(s.get<int>()));
    u.add_term(m, GaussianRational(parse_rational(t.at("re").get<std::string>()),
                                   parse_rational(t.at("im").get<std::string>())));
  }
  return u;
}

UElement multiply(const UElement& a, const UElement& b) {
  require_same_ctx(a, b, "multiply");
  if (a.degree() + b.degree() > kMaxTotalDegree)
    throw resource_error("multiply: total degree exceeds cap");
  const auto& ctx = a.ctx();
  UElement out(ctx);
  for (const auto& [mb, cb] : b.terms()) {
    // straighten a * mb generator by generator, sharing work across a's terms
    TermMap cur = a.terms();
    for (unsigned char g : mb) {
      TermMap next;
      for (const auto& [m, c] : cur) accumulate_scaled(next, ctx->mono_times_gen(m, g), c);
      cur = std::move(next);
    }
    for (const auto& [m, c] : cur) out.add_term(m, c * cb);
  }
  return out;
}

UElement commutator(const UElement& a, const UElement& b) {
  return multiply(a, b) - multiply(b, a);
}

UElement normal_form(const std::vector<LieElement>& word,
                     const std::shared_ptr<const PBWContext>& ctx) {
  if (static_cast<int>(word.size()) > kMaxTotalDegree)
    throw resource_error("normal_form: word length exceeds cap");
  UElement out = UElement::unit(ctx);
  for (const auto& x : word) out = multiply(out, UElement::from_lie(x, ctx));
  return out;
}

std::vector<std::vector<int>> increasing_sequences(int s, int lo, int hi) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int next) -> void {
    if (static_cast<int>(cur.size()) == s) {
      out.push_back(cur);
      return;
    }
    for (int v = next; v <= hi - (s - 1 - static_cast<int>(cur.size())); ++v) {
      cur.push_back(v);
      self(self, v + 1);
      cur.pop_back();
    }
  };
  rec(rec, lo);
  return out;
}

namespace {

int inversion_parity(const std::vector<int>& seq) {
  int inv = 0;
  for (std::size_t a = 0; a < seq.size(); ++a)
    for (std::size_t b = a + 1; b < seq.size(); ++b)
      if (seq[a] > seq[b]) ++inv;
  return inv % 2;
}

// Enumerates the canonical matchings of I (pairs ordered by first element,
// each pair increasing) together with the permutation sign.
void enumerate_matchings(std::vector<int> remaining, std::vector<int>& flat,
                         const std::function<void(const std::vector<int>&, int)>& emit) {
  if (remaining.empty()) {
    emit(flat, inversion_parity(flat));
    return;
  }
  int a = remaining.front();
  for (std::size_t k = 1; k < remaining.size(); ++k) {
    int b = remaining[k];
    std::vector<int> rest;
    for (std::size_t t = 1; t < remaining.size(); ++t)
      if (t != k) rest.push_back(remaining[t]);
    flat.push_back(a);
    flat.push_back(b);
    enumerate_matchings(std::move(rest), flat, emit);
    flat.pop_back();
    flat.pop_back();
  }
}

void validate_index_set(const std::vector<int>& I, int N) {
  for (std::size_t k = 0; k < I.size(); ++k) {
    if (I[k] < 1 || I[k] > N) throw std::domain_error("index out of range");
    if (k > 0 && I[k] <= I[k - 1]) throw std::domain_error("index set not increasing");
  }
}

}  // namespace

UElement pfaffian_element(const std::vector<int>& I, int N,
                          const std::shared_ptr<const PBWContext>& ctx) {
  validate_index_set(I, N);
  if (I.size() % 2 != 0) throw std::domain_error("pfaffian_element: |I| must be even");
  if (static_cast<int>(I.size()) > kMaxPfaffianSize)
    throw resource_error("pfaffian_element: |I| exceeds cap");
  if (I.empty()) return UElement::unit(ctx);
  UElement out(ctx);
  std::vector<int> flat;
  std::function<void(const std::vector<int>&, int)> emit = [&](const std::vector<int>& pairs,
                                                               int parity) {
    std::vector<LieElement> word;
    for (std::size_t k = 0; k + 1 < pairs.size(); k += 2)
      word.push_back(LieElement::generator(N, pairs[k], pairs[k + 1]));
    UElement term = normal_form(word, ctx);
    term *= GaussianRational(parity ? -1 : 1);
    out += term;
  };
  enumerate_matchings(I, flat, emit);
  return out;
}

UElement pfaffian_casimir(int p, int N, const std::shared_ptr<const PBWContext>& ctx) {
  if (p < 1 || 2 * p > N) throw std::domain_error("pfaffian_casimir: need 1 <= p, 2p <= N");
  UElement out(ctx);
  for (const auto& J : increasing_sequences(2 * p, 1, N)) {
    UElement w = pfaffian_element(J, N, ctx);
    out += multiply(w, w);
  }
  return out;
}

UElement block_casimir(int p, int N, int lo, int hi,
                       const std::shared_ptr<const PBWContext>& ctx) {
  if (p < 1) throw std::domain_error("block_casimir: p >= 1 required");
  if (lo < 1 || hi > N || lo > hi) throw std::domain_error("block_casimir: bad window");
  if (2 * p > hi - lo + 1) return UElement::zero(ctx);
  UElement out(ctx);
  for (const auto& I : increasing_sequences(2 * p, lo, hi)) {
    UElement w = pfaffian_element(I, N, ctx);
    out += multiply(w, w);
  }
  return out;
}

namespace {

void validate_special_orthogonal(const Mat& u) {
  int n = static_cast<int>(u.size());
  Mat prod = mat_mul(mat_transpose(u), u);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      GaussianRational want(i == j ? 1 : 0);
      if (prod[i][j] != want) throw std::invalid_argument("adjoint: matrix is not orthogonal");
    }
  if (mat_det(u) != GaussianRational(1)) throw std::invalid_argument("adjoint: det != 1");
}

LieElement ad_matrix(const Mat& u, const LieElement& x) {
  int N = x.N();
  LieElement out(N);
  for (const auto& [k, v] : x.terms()) {
    int i = k.i, j = k.j;
    for (int a = 1; a <= N; ++a)
      for (int b = a + 1; b <= N; ++b) {
        GaussianRational c =
            u[a - 1][i - 1] * u[b - 1][j - 1] - u[b - 1][i - 1] * u[a - 1][j - 1];
        if (!c.is_zero()) out.add_term(a, b, v * c);
      }
  }
  return out;
}

}  // namespace

UElement adjoint(const Mat& u, const UElement& x) {
  if (static_cast<int>(u.size()) != x.ctx()->N())
    throw std::invalid_argument("adjoint: dimension mismatch");
  validate_special_orthogonal(u);
  const auto& ctx = x.ctx();
  const auto& basis = ctx->basis();
  // image of each basis slot under Ad(u), as a degree-1 element
  std::vector<UElement> images;
  images.reserve(ctx->dim());
  for (int s = 0; s < ctx->dim(); ++s)
    images.push_back(UElement::from_lie(ad_matrix(u, basis.element(s)), ctx));
  UElement out(ctx);
  for (const auto& [m, c] : x.terms()) {
    UElement term = UElement::unit(ctx);
    for (unsigned char g : m) term = multiply(term, images[g]);
    term *= c;
    out += term;
  }
  return out;
}

UElement laplace_expand(const std::vector<int>& I, int q, int N,
                        const std::shared_ptr<const PBWContext>& ctx) {
  validate_index_set(I, N);
  int n = static_cast<int>(I.size());
  if (n % 2 != 0 || n < 2) throw std::domain_error("laplace_expand: |I| must be even, >= 2");
  if (q < 1 || q > n) throw std::domain_error("laplace_expand: q out of range");
  UElement out(ctx);
  for (int l = 1; l <= n; ++l) {
    if (l == q) continue;
    int sign = (q - l > 0 ? 1 : -1) * (((l + q - 1) % 2 == 0) ? 1 : -1);
    std::vector<int> rest;
    for (int t = 1; t <= n; ++t)
      if (t != l && t != q) rest.push_back(I[t - 1]);
    UElement term = multiply(
        UElement::from_lie(LieElement::generator(N, I[l - 1], I[q - 1]), ctx),
        pfaffian_element(rest, N, ctx));
    term *= GaussianRational(sign);
    out += term;
  }
  return out;
}

UElement convert(const UElement& x, const std::shared_ptr<const PBWContext>& target) {
  if (x.ctx()->N() != target->N()) throw std::invalid_argument("convert: dimension mismatch");
  if (x.ctx()->s() == target->s()) {
    UElement out(target);
    for (const auto& [m, c] : x.terms()) out.add_term(m, c);
    return out;
  }
  const auto& src = x.ctx()->basis();
  UElement out(target);
  for (const auto& [m, c] : x.terms()) {
    std::vector<LieElement> word;
    for (unsigned char g : m) word.push_back(src.element(g));
    UElement term = normal_form(word, target);
    term *= c;
    out += term;
  }
  return out;
}

UElement hc_project(const UElement& x, int s) {
  UElement y = x;
  if (x.ctx()->s() != s) y = convert(x, get_context(x.ctx()->N(), s));
  int nil = y.ctx()->basis().nilpotent_count();
  UElement out(y.ctx());
  for (const auto& [m, c] : y.terms())
    if (m.empty() || static_cast<int>(m.front()) >= nil) out.add_term(m, c);
  return out;
}

UElement antipode(const UElement& x) {
  const auto& ctx = x.ctx();
  UElement out(ctx);
  for (const auto& [m, c] : x.terms()) {
    UElement term = UElement::unit(ctx);
    for (auto it = m.rbegin(); it != m.rend(); ++it) {
      TermMap next;
      for (const auto& [tm, tc] : term.terms())
        accumulate_scaled(next, ctx->mono_times_gen(tm, *it), tc);
      UElement stepped(ctx);
      for (auto& [tm, tc] : next) stepped.add_term(tm, tc);
      term = std::move(stepped);
    }
    term *= (m.size() % 2 == 0) ? c : -c;
    out += term;
  }
  return out;
}

}  // namespace pfrad
