#include "fsetkit/galois.hpp"

#include <algorithm>
#include <limits>

namespace fsetkit {

namespace {

// base^e mod g.
Poly powmod(const Poly& base, const BigInt& e, const Poly& g) {
  const std::uint32_t p = g.characteristic();
  Poly result = Poly::constant(p, 1) % g;
  Poly b = base % g;
  BigInt k = e;
  while (k != 0) {
    if ((k & 1) != 0) result = (result * b) % g;
    k >>= 1;
    if (k != 0) b = (b * b) % g;
  }
  return result;
}

// t^{p^i} mod g by repeated p-th powering.
Poly frobenius_power_of_t(const Poly& g, std::size_t i) {
  const std::uint32_t p = g.characteristic();
  Poly x = Poly::t(p) % g;
  for (std::size_t j = 0; j < i; ++j) x = x.frobenius() % g;
  return x;
}

std::vector<std::size_t> prime_divisors(std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Enumerates monic polynomials of the given degree in Poly order.
template <class Visit>
void for_each_monic(std::uint32_t p, std::size_t degree, Visit&& visit) {
  std::vector<std::uint32_t> c(degree + 1, 0);
  c[degree] = 1;
  while (true) {
    if (!visit(Poly(p, c))) return;
    // Increment the coefficients below the leading one, top digit most significant.
    std::size_t i = 0;
    while (i < degree && c[i] == p - 1) c[i++] = 0;
    if (i == degree) return;
    ++c[i];
  }
}

}  // namespace

bool is_irreducible(const Poly& g) {
  if (g.degree() < 1) return false;
  if (g.degree() == 1) return true;
  const Poly f = g.monic();
  const auto k = static_cast<std::size_t>(f.degree());
  const Poly t = Poly::t(f.characteristic());
  if (!((frobenius_power_of_t(f, k) - t) % f).is_zero()) return false;
  for (std::size_t r : prime_divisors(k)) {
    const Poly h = frobenius_power_of_t(f, k / r) - t;
    if (!poly_gcd(h, f).is_one()) return false;
  }
  return true;
}

void visit_monic_irreducibles(std::uint32_t p, std::size_t degree, const std::function<bool(const Poly&)>& visit) {
  for_each_monic(p, degree, [&](const Poly& f) { return !is_irreducible(f) || visit(f); });
}

std::vector<Poly> monic_irreducibles(std::uint32_t p, std::size_t degree) {
  std::vector<Poly> out;
  for_each_monic(p, degree, [&](const Poly& f) {
    if (is_irreducible(f)) out.push_back(f);
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

Poly first_irreducible(std::uint32_t p, std::size_t degree) {
  if (degree == 0) throw InvalidArgument("irreducible of degree 0 requested");
  std::optional<Poly> found;
  for_each_monic(p, degree, [&](const Poly& f) {
    if (is_irreducible(f)) {
      found = f;
      return false;
    }
    return true;
  });
  if (!found) throw InternalError("no irreducible polynomial found");
  return *found;
}

GaloisField::GaloisField(Poly g) : g_(std::move(g)) {
  if (!g_.is_monic() || !is_irreducible(g_)) {
    throw InvalidArgument("residue field modulus must be monic irreducible: " + g_.to_string());
  }
  order_ = boost::multiprecision::pow(BigInt(g_.characteristic()), static_cast<unsigned>(g_.degree()));
}

GaloisElem::GaloisElem(FieldPtr field, const Poly& value) : field_(std::move(field)), v_(value % field_->modulus()) {}

void GaloisElem::check(const GaloisElem& o) const {
  if (field_ != o.field_ && !(*field_ == *o.field_)) throw Mismatch("elements of different finite fields");
}

GaloisElem GaloisElem::operator+(const GaloisElem& o) const {
  check(o);
  return GaloisElem(field_, v_ + o.v_);
}
GaloisElem GaloisElem::operator-(const GaloisElem& o) const {
  check(o);
  return GaloisElem(field_, v_ - o.v_);
}
GaloisElem GaloisElem::operator*(const GaloisElem& o) const {
  check(o);
  return GaloisElem(field_, v_ * o.v_);
}
GaloisElem GaloisElem::operator-() const { return GaloisElem(field_, -v_); }

GaloisElem GaloisElem::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero in F_{p^k}");
  const PolyXgcd x = poly_xgcd(v_, field_->modulus());
  if (!x.gcd.is_one()) throw InternalError("non-invertible element in a field");
  return GaloisElem(field_, x.u);
}

GaloisElem GaloisElem::pow(const BigInt& e) const {
  if (e < 0) return inverse().pow(-e);
  return GaloisElem(field_, powmod(v_, e, field_->modulus()));
}

GaloisElem GaloisElem::frobenius() const { return GaloisElem(field_, v_.frobenius()); }

bool GaloisElem::is_square() const {
  if (is_zero()) return true;
  return pow((field_->order() - 1) / 2) == constant(1);
}

std::uint64_t GaloisElem::index() const {
  std::uint64_t idx = 0;
  const auto c = v_.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) idx = idx * characteristic() + c[i];
  return idx;
}

bool GaloisElem::operator==(const GaloisElem& o) const {
  return (field_ == o.field_ || *field_ == *o.field_) && v_ == o.v_;
}

}  // namespace fsetkit
