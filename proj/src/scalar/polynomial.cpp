#include "gcx/scalar/polynomial.hpp"

#include <algorithm>

#include "gcx/error.hpp"

namespace gcx {

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::vector<Factor> f) : factors_(std::move(f)) {
  for (const auto& [v, e] : factors_) degree_ += e;
}

Monomial Monomial::of(Var v, std::uint32_t e) {
  if (e == 0) return {};
  return Monomial({{v.id(), e}});
}

std::uint32_t Monomial::exponent(std::uint32_t var_id) const {
  for (const auto& [v, e] : factors_)
    if (v == var_id) return e;
  return 0;
}

Monomial Monomial::operator*(const Monomial& o) const {
  std::vector<Factor> out;
  out.reserve(factors_.size() + o.factors_.size());
  auto a = factors_.begin();
  auto b = o.factors_.begin();
  while (a != factors_.end() || b != o.factors_.end()) {
    if (b == o.factors_.end() || (a != factors_.end() && a->first < b->first)) {
      out.push_back(*a++);
    } else if (a == factors_.end() || b->first < a->first) {
      out.push_back(*b++);
    } else {
      out.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  return Monomial(std::move(out));
}

std::optional<Monomial> Monomial::divide(const Monomial& o) const {
  std::vector<Factor> out;
  auto a = factors_.begin();
  for (const auto& [v, e] : o.factors_) {
    while (a != factors_.end() && a->first < v) out.push_back(*a++);
    if (a == factors_.end() || a->first != v || a->second < e) return std::nullopt;
    if (a->second > e) out.emplace_back(v, a->second - e);
    ++a;
  }
  while (a != factors_.end()) out.push_back(*a++);
  return Monomial(std::move(out));
}

Monomial Monomial::without(std::uint32_t var_id) const {
  std::vector<Factor> out;
  for (const auto& f : factors_)
    if (f.first != var_id) out.push_back(f);
  return Monomial(std::move(out));
}

Monomial Monomial::gcd(const Monomial& o) const {
  std::vector<Factor> out;
  auto b = o.factors_.begin();
  for (const auto& [v, e] : factors_) {
    while (b != o.factors_.end() && b->first < v) ++b;
    if (b != o.factors_.end() && b->first == v) out.emplace_back(v, std::min(e, b->second));
  }
  return Monomial(std::move(out));
}

Monomial Monomial::conj() const {
  std::vector<Factor> out;
  out.reserve(factors_.size());
  for (const auto& [v, e] : factors_) out.emplace_back(Var::from_id(v).conj().id(), e);
  std::sort(out.begin(), out.end());
  return Monomial(std::move(out));
}

std::strong_ordering grlex(const Monomial& a, const Monomial& b) {
  if (a.degree_ != b.degree_) return a.degree_ <=> b.degree_;
  auto x = a.factors_.begin();
  auto y = b.factors_.begin();
  while (x != a.factors_.end() && y != b.factors_.end()) {
    if (x->first != y->first) {
      // the monomial holding the earlier variable has the larger exponent there
      return x->first < y->first ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    if (x->second != y->second) return x->second <=> y->second;
    ++x;
    ++y;
  }
  if (x != a.factors_.end()) return std::strong_ordering::greater;
  if (y != b.factors_.end()) return std::strong_ordering::less;
  return std::strong_ordering::equal;
}

std::string Monomial::str() const {
  std::string out;
  for (const auto& [v, e] : factors_) {
    if (!out.empty()) out += "*";
    out += Var::from_id(v).name();
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out.empty() ? "1" : out;
}

// -------------------------------------------------------------- Polynomial

namespace {

bool term_greater(const Term& a, const Term& b) { return grlex(a.mono, b.mono) == std::strong_ordering::greater; }

}  // namespace

Polynomial::Polynomial(const GQ& c) {
  if (!c.is_zero()) terms_.push_back({Monomial{}, c});
}

Polynomial Polynomial::variable(Var v) { return term(Monomial::of(v), GQ(1)); }

Polynomial Polynomial::term(const Monomial& m, const GQ& c) {
  Polynomial p;
  if (!c.is_zero()) p.terms_.push_back({m, c});
  return p;
}

void Polynomial::normalize() {
  std::sort(terms_.begin(), terms_.end(), term_greater);
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().mono == t.mono)
      out.back().coeff += t.coeff;
    else
      out.push_back(std::move(t));
    if (out.back().coeff.is_zero()) out.pop_back();
  }
  terms_ = std::move(out);
}

GQ Polynomial::constant_value() const {
  require(is_constant(), ErrorCode::DegreeError, "polynomial is not constant");
  return terms_.empty() ? GQ(0) : terms_[0].coeff;
}

std::uint32_t Polynomial::total_degree() const { return terms_.empty() ? 0 : terms_.front().mono.degree(); }

std::vector<std::uint32_t> Polynomial::variable_ids() const {
  std::vector<std::uint32_t> out;
  for (const auto& t : terms_)
    for (const auto& f : t.mono.factors()) out.push_back(f.first);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::uint32_t Polynomial::degree_in(std::uint32_t var_id) const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.exponent(var_id));
  return d;
}

std::vector<Polynomial> Polynomial::coefficients_in(std::uint32_t var_id) const {
  std::vector<Polynomial> out(degree_in(var_id) + 1);
  for (const auto& t : terms_) {
    // terms stay sorted: removing one variable from a grlex-sorted list is
    // not order preserving in general, so re-normalize below
    out[t.mono.exponent(var_id)].terms_.push_back({t.mono.without(var_id), t.coeff});
  }
  for (auto& c : out) c.normalize();
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) return *this = o;
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  while (a != terms_.end() || b != o.terms_.end()) {
    if (b == o.terms_.end()) {
      out.push_back(std::move(*a++));
      continue;
    }
    if (a == terms_.end()) {
      out.push_back(*b++);
      continue;
    }
    auto c = grlex(a->mono, b->mono);
    if (c == std::strong_ordering::greater) {
      out.push_back(std::move(*a++));
    } else if (c == std::strong_ordering::less) {
      out.push_back(*b++);
    } else {
      GQ s = a->coeff + b->coeff;
      if (!s.is_zero()) out.push_back({std::move(a->mono), std::move(s)});
      ++a;
      ++b;
    }
  }
  terms_ = std::move(out);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) { return *this += -o; }

Polynomial operator-(const Polynomial& a) {
  Polynomial r = a;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial r;
  if (a.is_zero() || b.is_zero()) return r;
  if (a.is_constant()) return b.scaled(a.terms_[0].coeff);
  if (b.is_constant()) return a.scaled(b.terms_[0].coeff);
  r.terms_.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) r.terms_.push_back({x.mono * y.mono, x.coeff * y.coeff});
  r.normalize();
  return r;
}

Polynomial Polynomial::scaled(const GQ& c) const {
  Polynomial r;
  if (c.is_zero()) return r;
  r.terms_ = terms_;
  if (!c.is_one())
    for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

Polynomial Polynomial::times(const Monomial& m) const {
  Polynomial r = *this;
  if (!m.is_one())
    for (auto& t : r.terms_) t.mono = t.mono * m;
  return r;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result(1);
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e > 0) base *= base;
  }
  return result;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (!(a.terms_[i].mono == b.terms_[i].mono) || !(a.terms_[i].coeff == b.terms_[i].coeff)) return false;
  return true;
}

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& b) const {
  if (b.is_zero()) fail(ErrorCode::DivisionByZero, "polynomial division by zero");
  if (b.is_constant()) return scaled(b.terms_[0].coeff.inverse());
  Polynomial q;
  Polynomial r = *this;
  const Term& lb = b.leading();
  GQ inv = lb.coeff.inverse();
  while (!r.is_zero()) {
    auto m = r.leading().mono.divide(lb.mono);
    if (!m) return std::nullopt;
    Polynomial t = term(*m, r.leading().coeff * inv);
    r -= t * b;
    q.terms_.push_back(t.terms_[0]);
  }
  q.normalize();
  return q;
}

Polynomial Polynomial::divide_monomial(const Monomial& m) const {
  if (m.is_one()) return *this;
  Polynomial r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    auto d = t.mono.divide(m);
    require(d.has_value(), ErrorCode::DivisionByZero, "monomial does not divide polynomial");
    r.terms_.push_back({*d, t.coeff});
  }
  return r;  // dividing every term by one monomial preserves grlex order
}

Monomial Polynomial::monomial_content() const {
  if (terms_.empty()) return {};
  Monomial g = terms_[0].mono;
  for (std::size_t i = 1; i < terms_.size() && !g.is_one(); ++i) g = g.gcd(terms_[i].mono);
  return g;
}

Polynomial Polynomial::monic() const {
  if (terms_.empty() || terms_[0].coeff.is_one()) return *this;
  return scaled(terms_[0].coeff.inverse());
}

Polynomial Polynomial::derivative(Var v) const {
  Polynomial r;
  const std::uint32_t id = v.id();
  for (const auto& t : terms_) {
    std::uint32_t e = t.mono.exponent(id);
    if (e == 0) continue;
    auto m = t.mono.divide(Monomial::of(v));
    r.terms_.push_back({*m, t.coeff * GQ(static_cast<long>(e))});
  }
  r.normalize();
  return r;
}

Polynomial Polynomial::conj() const {
  Polynomial r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.mono.conj(), t.coeff.conj()});
  r.normalize();
  return r;
}

GQ Polynomial::eval(const std::function<GQ(Var)>& value) const {
  GQ acc;
  for (const auto& t : terms_) {
    GQ x = t.coeff;
    for (const auto& [v, e] : t.mono.factors()) x *= value(Var::from_id(v)).pow(static_cast<long>(e));
    acc += x;
  }
  return acc;
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& t : terms_) {
    std::string s;
    if (t.mono.is_one())
      s = t.coeff.str();
    else if (t.coeff.is_one())
      s = t.mono.str();
    else if (t.coeff == GQ(-1))
      s = "-" + t.mono.str();
    else
      s = t.coeff.str() + "*" + t.mono.str();
    if (out.empty())
      out = s;
    else if (s[0] == '-')
      out += " - " + s.substr(1);
    else
      out += " + " + s;
  }
  return out;
}

std::size_t Polynomial::complexity() const {
  std::size_t c = 0;
  for (const auto& t : terms_) c += 64 + t.coeff.complexity() + 8 * t.mono.degree();
  return c;
}

// --------------------------------------------------------------------- gcd

Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, std::uint32_t x) {
  const auto bc = b.coefficients_in(x);
  const std::uint32_t db = static_cast<std::uint32_t>(bc.size() - 1);
  const Polynomial& lc = bc.back();
  const Var xv = Var::from_id(x);
  Polynomial r = a;
  while (!r.is_zero()) {
    std::uint32_t dr = r.degree_in(x);
    if (dr < db) break;
    Polynomial lr = r.coefficients_in(x).back();
    r = lc * r - (lr * b).times(Monomial::of(xv, dr - db));
  }
  return r;
}

namespace {

Polynomial content_in(const Polynomial& p, std::uint32_t x);

Polynomial gcd_core(Polynomial a, Polynomial b) {
  for (;;) {
    if (a.is_constant() || b.is_constant()) return Polynomial(1);
    const auto va = a.variable_ids();
    const auto vb = b.variable_ids();
    bool changed = false;
    for (auto v : va) {
      if (!std::binary_search(vb.begin(), vb.end(), v)) {
        a = content_in(a, v);
        changed = true;
        break;
      }
    }
    if (changed) continue;
    for (auto v : vb) {
      if (!std::binary_search(va.begin(), va.end(), v)) {
        b = content_in(b, v);
        changed = true;
        break;
      }
    }
    if (!changed) break;
  }

  // same variable set from here on; eliminate the variable of lowest degree
  const auto vars = a.variable_ids();
  std::uint32_t x = vars.front();
  std::uint32_t best = ~0u;
  for (auto v : vars) {
    std::uint32_t d = std::max(a.degree_in(v), b.degree_in(v));
    if (d < best) {
      best = d;
      x = v;
    }
  }

  Polynomial ca = content_in(a, x);
  Polynomial cb = content_in(b, x);
  Polynomial pa = *a.divide_exact(ca);
  Polynomial pb = *b.divide_exact(cb);
  Polynomial c = gcd(ca, cb);

  if (pa.degree_in(x) < pb.degree_in(x)) std::swap(pa, pb);
  while (!pb.is_zero()) {
    Polynomial r = pseudo_remainder(pa, pb, x);
    pa = std::move(pb);
    if (r.is_zero()) {
      pb = Polynomial();
    } else if (r.degree_in(x) == 0) {
      pa = Polynomial(1);
      pb = Polynomial();
    } else {
      pb = r.divide_exact(content_in(r, x))->monic();
    }
  }
  return (c * pa).monic();
}

Polynomial content_in(const Polynomial& p, std::uint32_t x) {
  Polynomial g;
  for (const auto& c : p.coefficients_in(x)) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? c.monic() : gcd(g, c);
    if (g.is_constant()) return Polynomial(1);
  }
  return g;
}

}  // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Polynomial(1);
  if (a == b) return a.monic();
  const Monomial ma = a.monomial_content();
  const Monomial mb = b.monomial_content();
  const Monomial mg = ma.gcd(mb);
  Polynomial g = gcd_core(a.divide_monomial(ma), b.divide_monomial(mb));
  return g.times(mg).monic();
}

}  // namespace gcx
