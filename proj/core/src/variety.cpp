#include "fsetkit/variety.hpp"

#include <algorithm>

#include "fsetkit/expr.hpp"

namespace fsetkit {

// ---------------------------------------------------------------- LaurentPoly

void LaurentPoly::add_term(const Exponent& e, const FpElem& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

LaurentPoly LaurentPoly::constant(std::uint32_t p, std::size_t vars, std::int64_t c) {
  LaurentPoly f(p, vars);
  f.add_term(Exponent(vars, 0), FpElem(p, c));
  return f;
}

LaurentPoly LaurentPoly::monomial(std::uint32_t p, const Exponent& e, std::int64_t c) {
  LaurentPoly f(p, e.size());
  f.add_term(e, FpElem(p, c));
  return f;
}

Exponent LaurentPoly::min_exponent() const {
  Exponent m(vars_, 0);
  bool first = true;
  for (const auto& [e, c] : terms_) {
    for (std::size_t i = 0; i < vars_; ++i) m[i] = first ? e[i] : std::min(m[i], e[i]);
    first = false;
  }
  return m;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  LaurentPoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r(p_, vars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const { return *this + (-o); }

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  if (vars_ != o.vars_ || p_ != o.p_) throw Mismatch("Laurent polynomials over different rings");
  LaurentPoly r(p_, vars_);
  for (const auto& [e1, c1] : terms_) {
    for (const auto& [e2, c2] : o.terms_) {
      Exponent e(vars_);
      for (std::size_t i = 0; i < vars_; ++i) e[i] = e1[i] + e2[i];
      r.add_term(e, c1 * c2);
    }
  }
  return r;
}

LaurentPoly LaurentPoly::monomial_inverse() const {
  if (!is_monomial()) throw InvalidArgument("only monomials are invertible: " + to_string(*this));
  const auto& [e, c] = *terms_.begin();
  Exponent ne(vars_);
  for (std::size_t i = 0; i < vars_; ++i) ne[i] = -e[i];
  LaurentPoly r(p_, vars_);
  r.add_term(ne, fp_inv(c));
  return r;
}

LaurentPoly LaurentPoly::pow(std::int64_t k) const {
  if (k < 0) return monomial_inverse().pow(-k);
  LaurentPoly r = constant(p_, vars_, 1), b = *this;
  for (auto u = static_cast<std::uint64_t>(k); u; u >>= 1) {
    if (u & 1) r = r * b;
    if (u > 1) b = b * b;
  }
  return r;
}

TowerElem LaurentPoly::evaluate_cleared(const std::vector<TowerElem>& x) const {
  if (x.size() != vars_) throw Mismatch("torus point of the wrong dimension");
  if (x.empty()) throw InvalidArgument("Laurent polynomial in zero variables");
  const Exponent m = min_exponent();
  TowerElem acc = x[0].constant(0);
  // Powers are shared across terms.
  std::vector<std::map<std::int64_t, TowerElem>> cache(vars_);
  for (const auto& [e, c] : terms_) {
    TowerElem term = x[0].constant(static_cast<std::int64_t>(c.value()));
    for (std::size_t i = 0; i < vars_; ++i) {
      const std::int64_t k = e[i] - m[i];
      if (k == 0) continue;
      auto it = cache[i].find(k);
      if (it == cache[i].end()) it = cache[i].emplace(k, x[i].pow(BigInt(k))).first;
      term = term * it->second;
    }
    acc = acc + term;
  }
  return acc;
}

std::string to_string(const LaurentPoly& f) {
  if (f.is_zero()) return "0";
  const std::uint32_t p = f.characteristic();
  // Total degree descending, then later variables first: "x2 - x1 - 1".
  std::vector<std::pair<Exponent, FpElem>> terms(f.terms().begin(), f.terms().end());
  auto key = [](const Exponent& e) {
    std::int64_t d = 0;
    for (auto x : e) d += x;
    return std::make_pair(d, Exponent(e.rbegin(), e.rend()));
  };
  std::stable_sort(terms.begin(), terms.end(), [&](const auto& x, const auto& y) { return key(x.first) > key(y.first); });
  std::string out;
  for (const auto& [e, c] : terms) {
    std::int64_t v = c.value();
    if (v > static_cast<std::int64_t>(p / 2)) v -= p;
    const bool negative = v < 0;
    const std::int64_t mag = negative ? -v : v;
    if (out.empty()) out += negative ? "-" : "";
    else out += negative ? " - " : " + ";
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(i + 1);
      if (e[i] != 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) out += std::to_string(mag);
    else if (mag == 1) out += mono;
    else out += std::to_string(mag) + "*" + mono;
  }
  return out;
}

namespace {

struct LaurentAlgebra {
  using Value = LaurentPoly;
  std::uint32_t p;
  std::size_t vars;

  Value constant(const BigInt& n) { return LaurentPoly::constant(p, vars, static_cast<std::int64_t>(n % p)); }
  Value variable(std::string_view name) {
    if (name.size() >= 2 && name[0] == 'x') {
      std::size_t i = 0;
      try {
        i = std::stoul(std::string(name.substr(1)));
      } catch (const std::exception&) {
        i = 0;
      }
      if (i >= 1 && i <= vars) {
        Exponent e(vars, 0);
        e[i - 1] = 1;
        return LaurentPoly::monomial(p, e);
      }
    }
    throw ParseError("unknown torus variable '" + std::string(name) + "' (expected x1..x" + std::to_string(vars) + ")");
  }
  Value add(const Value& a, const Value& b) { return a + b; }
  Value sub(const Value& a, const Value& b) { return a - b; }
  Value mul(const Value& a, const Value& b) { return a * b; }
  Value div(const Value& a, const Value& b) {
    if (b.is_zero()) throw ParseError("division by zero");
    if (!b.is_monomial()) throw ParseError("division by the non-monomial " + to_string(b));
    return a * b.monomial_inverse();
  }
  Value neg(const Value& a) { return -a; }
  Value power(const Value& a, std::int64_t k) {
    if (k < 0 && !a.is_monomial()) throw ParseError("negative power of the non-monomial " + to_string(a));
    return a.pow(k);
  }
};

}  // namespace

LaurentPoly LaurentPoly::parse(std::uint32_t p, std::size_t vars, std::string_view text) {
  LaurentAlgebra alg{p, vars};
  return parse_expression(text, alg);
}

// ---------------------------------------------------------------- CurvePoly

void CurvePoly::add_term(std::uint32_t i, std::uint32_t j, const TowerElem& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace({i, j}, c);
  if (!inserted) {
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

CurvePoly CurvePoly::operator+(const CurvePoly& o) const {
  CurvePoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e.first, e.second, c);
  return r;
}

CurvePoly CurvePoly::operator-() const {
  CurvePoly r(tower_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

CurvePoly CurvePoly::operator-(const CurvePoly& o) const { return *this + (-o); }

CurvePoly CurvePoly::operator*(const CurvePoly& o) const {
  CurvePoly r(tower_);
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) r.add_term(e1.first + e2.first, e1.second + e2.second, c1 * c2);
  return r;
}

CurvePoly CurvePoly::operator/(const CurvePoly& o) const {
  if (o.terms_.size() != 1 || o.terms_.begin()->first != std::make_pair(0u, 0u)) {
    throw InvalidArgument("curve polynomials divide only by nonzero constants");
  }
  const TowerElem inv = o.terms_.begin()->second.inverse();
  CurvePoly r(tower_);
  for (const auto& [e, c] : terms_) r.add_term(e.first, e.second, c * inv);
  return r;
}

TowerElem CurvePoly::evaluate(const TowerElem& x, const TowerElem& y) const {
  TowerElem acc = tower_constant(tower_, 0);
  std::map<std::uint32_t, TowerElem> xp, yp;
  auto power = [](std::map<std::uint32_t, TowerElem>& cache, const TowerElem& b, std::uint32_t k) {
    auto it = cache.find(k);
    if (it == cache.end()) it = cache.emplace(k, b.pow(BigInt(k))).first;
    return it->second;
  };
  for (const auto& [e, c] : terms_) acc = acc + c * power(xp, x, e.first) * power(yp, y, e.second);
  return acc;
}

namespace {

struct CurveAlgebra {
  using Value = CurvePoly;
  TowerPtr tower;
  std::string xname, yname;

  Value lift(const TowerElem& c) {
    CurvePoly r(tower);
    r.add_term(0, 0, c);
    return r;
  }
  Value constant(const BigInt& n) {
    return lift(tower_constant(tower, static_cast<std::int64_t>(n % tower->d.characteristic())));
  }
  Value variable(std::string_view name) {
    if (name == xname || name == yname) {
      CurvePoly r(tower);
      r.add_term(name == xname ? 1 : 0, name == yname ? 1 : 0, tower_constant(tower, 1));
      return r;
    }
    if (name == "t") return lift(tower_t(tower));
    if (name == "s") return lift(tower_s(tower));
    throw ParseError("unknown curve variable '" + std::string(name) + "' (expected " + xname + ", " + yname +
                     ", t or s)");
  }
  Value add(const Value& a, const Value& b) { return a + b; }
  Value sub(const Value& a, const Value& b) { return a - b; }
  Value mul(const Value& a, const Value& b) { return a * b; }
  Value div(const Value& a, const Value& b) {
    try {
      return a / b;
    } catch (const Error& e) {
      throw ParseError(e.what());
    }
  }
  Value neg(const Value& a) { return -a; }
  Value power(const Value& a, std::int64_t k) {
    if (k < 0) throw ParseError("negative power in a curve equation");
    Value r = constant(1);
    for (std::int64_t i = 0; i < k; ++i) r = r * a;
    return r;
  }
};

}  // namespace

CurvePoly CurvePoly::parse(const TowerPtr& tower, std::size_t index, std::string_view text) {
  CurveAlgebra alg{tower, "X" + std::to_string(index), "Y" + std::to_string(index)};
  return parse_expression(text, alg);
}

// ---------------------------------------------------------------- Subvariety

Subvariety Subvariety::make(GroupPtr group, std::vector<LaurentPoly> torus,
                            std::vector<std::optional<CurveSystem>> elliptic) {
  if (elliptic.size() != group->curves.size()) throw ValidationError("one elliptic constraint slot per factor");
  for (const auto& f : torus) {
    if (f.var_count() != group->torus_dim) throw ValidationError("torus equation in the wrong number of variables");
    if (f.characteristic() != group->p) throw ValidationError("torus equation over the wrong prime");
  }
  bool constrained = !torus.empty();
  for (const auto& e : elliptic) constrained = constrained || e.has_value();
  if (!constrained) throw ValidationError("subvariety without equations; use the full group explicitly");
  return Subvariety(std::move(group), std::move(torus), std::move(elliptic));
}

Subvariety Subvariety::full(GroupPtr group) {
  const std::size_t e = group->curves.size();
  return Subvariety(std::move(group), {}, std::vector<std::optional<CurveSystem>>(e));
}

bool Subvariety::is_full() const { return torus_.empty() && split(); }

bool Subvariety::split() const {
  for (const auto& e : elliptic_)
    if (e) return false;
  return true;
}

bool contains_torus(const Subvariety& X, const TorusPoint& t) {
  for (const auto& f : X.torus_equations())
    if (!f.evaluate_cleared(t.coords).is_zero()) return false;
  return true;
}

bool contains_elliptic(const Subvariety& X, std::size_t factor, const ECPoint& P) {
  const auto& sys = X.elliptic_constraints().at(factor);
  if (!sys) return true;
  if (P.is_infinity()) return sys->contains_infinity;
  for (const auto& f : sys->equations)
    if (!f.evaluate(P.x(), P.y()).is_zero()) return false;
  return true;
}

bool contains(const Subvariety& X, const ProductPoint& P) {
  if (!same_group(X.group(), P.group())) throw Mismatch("point outside the subvariety's group");
  if (!contains_torus(X, P.torus())) return false;
  for (std::size_t i = 0; i < P.elliptic().size(); ++i)
    if (!contains_elliptic(X, i, P.elliptic()[i])) return false;
  return true;
}

bool contains(const SpanContext& ctx, const Subvariety& X, const SpanPoint& P, const MaterializeBudget& budget) {
  if (!same_group(X.group(), P.group)) throw Mismatch("point outside the subvariety's group");
  if (!X.torus_equations().empty()) {
    TorusPoint t;
    for (const auto& c : P.torus) t.coords.push_back(ctx.materialize_torus(c, budget));
    if (!contains_torus(X, t)) return false;
  }
  for (std::size_t i = 0; i < P.elliptic.size(); ++i) {
    if (!X.elliptic_constraints()[i]) continue;
    if (!contains_elliptic(X, i, ctx.materialize_elliptic(P.elliptic[i], X.group()->curves[i], budget))) return false;
  }
  return true;
}

// ---------------------------------------------------------------- stabilizers

namespace {

StabilizerInfo stabilizer_from_differences(std::size_t N, const IntMatrix& diffs) {
  StabilizerInfo info;
  if (!diffs.empty()) {
    IntMatrix At(N, std::vector<BigInt>(diffs.size()));
    for (std::size_t r = 0; r < diffs.size(); ++r)
      for (std::size_t i = 0; i < N; ++i) At[i][r] = diffs[r][i];
    const ColumnEchelon ce = column_echelon(At, diffs.size());
    for (std::size_t k = 0; k < ce.rank; ++k) {
      IntVector row(N);
      for (std::size_t i = 0; i < N; ++i) row[i] = ce.H[i][k];
      info.torus_characters.push_back(std::move(row));
    }
    info.subtorus_cocharacters = integer_kernel(diffs, N);
  } else {
    for (std::size_t i = 0; i < N; ++i) {
      IntVector e(N, 0);
      e[i] = 1;
      info.subtorus_cocharacters.push_back(std::move(e));
    }
  }
  info.dimension = N - info.torus_characters.size();
  return info;
}

void append_differences(const LaurentPoly& f, IntMatrix& diffs) {
  if (f.is_zero()) throw InvalidArgument("stabilizer of the zero polynomial");
  const Exponent& m0 = f.terms().begin()->first;
  for (auto it = std::next(f.terms().begin()); it != f.terms().end(); ++it) {
    std::vector<BigInt> d;
    for (std::size_t i = 0; i < m0.size(); ++i) d.emplace_back(it->first[i] - m0[i]);
    diffs.push_back(std::move(d));
  }
}

}  // namespace

StabilizerInfo torus_stabilizer(const LaurentPoly& f) {
  IntMatrix diffs;
  append_differences(f, diffs);
  return stabilizer_from_differences(f.var_count(), diffs);
}

StabilizerInfo product_stabilizer(const Subvariety& X) {
  if (!X.split()) throw Unsupported("stabilizer of a variety with a constrained elliptic factor");
  IntMatrix diffs;
  for (const auto& f : X.torus_equations()) append_differences(f, diffs);
  StabilizerInfo info = stabilizer_from_differences(X.group()->torus_dim, diffs);
  for (std::size_t i = 0; i < X.group()->curves.size(); ++i) info.full_elliptic_factors.push_back(i);
  info.dimension += info.full_elliptic_factors.size();
  return info;
}

}  // namespace fsetkit
