#include <algorithm>
#include <limits>
#include <sstream>

#include "fsetkit/exactfield.hpp"

namespace fsetkit {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d : {2u, 3u, 5u}) {
    if (n % d == 0) return n == d;
  }
  for (std::uint64_t d = 7; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

void require_supported_prime(std::uint64_t p) {
  if (p < 5 || p >= (1ULL << 31) || !is_prime(p)) {
    throw InvalidArgument("characteristic must be a prime 5 <= p < 2^31, got " + std::to_string(p));
  }
}

bool is_power_of(const BigInt& q, std::uint32_t p, unsigned* exponent) {
  if (q < p || p < 2) return false;
  BigInt r = q;
  unsigned k = 0;
  while (r > 1) {
    if (r % p != 0) return false;
    r /= p;
    ++k;
  }
  if (exponent != nullptr) *exponent = k;
  return true;
}

Modulus::Modulus(std::uint32_t p) : p_(p) {
  if (p < 2) throw InvalidArgument("modulus must be at least 2");
  magic_ = std::numeric_limits<std::uint64_t>::max() / p + 1;
}

std::uint32_t Modulus::pow(std::uint32_t a, std::uint64_t e) const {
  std::uint32_t result = 1 % p_;
  std::uint32_t base = a % p_;
  while (e != 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

std::uint32_t Modulus::inv(std::uint32_t a) const {
  a %= p_;
  if (a == 0) throw DivisionByZero();
  // Extended Euclid on signed 64-bit values.
  std::int64_t r0 = p_, r1 = a, s0 = 0, s1 = 1;
  while (r1 != 0) {
    const std::int64_t qt = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - qt * r1);
    std::tie(s0, s1) = std::make_pair(s1, s0 - qt * s1);
  }
  if (r0 != 1) throw DivisionByZero("element not invertible");
  std::int64_t r = s0 % static_cast<std::int64_t>(p_);
  return static_cast<std::uint32_t>(r < 0 ? r + p_ : r);
}

// ---------------------------------------------------------------- FpElem

FpElem::FpElem(std::uint32_t p, std::int64_t v) : p_(p) {
  if (p == 0) throw InvalidArgument("FpElem with zero modulus");
  std::int64_t r = v % static_cast<std::int64_t>(p);
  v_ = static_cast<std::uint32_t>(r < 0 ? r + p : r);
}

namespace {
void check_same(const FpElem& a, const FpElem& b) {
  if (a.modulus() != b.modulus()) throw Mismatch("prime field elements of different characteristic");
}
}  // namespace

FpElem FpElem::operator+(const FpElem& o) const {
  check_same(*this, o);
  return FpElem(p_, static_cast<std::int64_t>(v_) + o.v_);
}
FpElem FpElem::operator-(const FpElem& o) const {
  check_same(*this, o);
  return FpElem(p_, static_cast<std::int64_t>(v_) - o.v_);
}
FpElem FpElem::operator*(const FpElem& o) const {
  check_same(*this, o);
  return FpElem(p_, static_cast<std::int64_t>(static_cast<std::uint64_t>(v_) * o.v_ % p_));
}
FpElem FpElem::operator/(const FpElem& o) const { return *this * fp_inv(o); }
FpElem FpElem::operator-() const { return FpElem(p_, -static_cast<std::int64_t>(v_)); }
FpElem FpElem::pow(std::uint64_t e) const { return FpElem(p_, Modulus(p_).pow(v_, e)); }

FpElem fp_inv(const FpElem& x) {
  if (x.is_zero()) throw DivisionByZero("inverse of zero in F_" + std::to_string(x.modulus()));
  return FpElem(x.modulus(), Modulus(x.modulus()).inv(x.value()));
}

// ---------------------------------------------------------------- Poly

namespace {

constexpr std::size_t kKaratsubaThreshold = 48;

using Coeffs = std::vector<std::uint32_t>;

void check_same(const Poly& a, const Poly& b) {
  if (a.characteristic() != b.characteristic()) {
    throw Mismatch("polynomials over different prime fields");
  }
}

// out[0 .. a.size()+b.size()-1) = a*b, schoolbook with delayed reduction.
void mul_schoolbook(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                    std::uint32_t* out, const Modulus& m) {
  const std::size_t n = a.size() + b.size() - 1;
  const std::uint64_t pm1 = m.value() - 1;
  const std::uint64_t square = std::max<std::uint64_t>(pm1 * pm1, 1);
  const std::size_t batch =
      static_cast<std::size_t>(std::min<std::uint64_t>((std::numeric_limits<std::uint64_t>::max() / square) - 1,
                                                       1u << 20));
  std::vector<std::uint64_t> acc(n, 0);
  std::size_t pending = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::uint64_t ai = a[i];
    if (ai != 0) {
      std::uint64_t* row = acc.data() + i;
      for (std::size_t j = 0; j < b.size(); ++j) row[j] += ai * b[j];
    }
    if (++pending >= batch) {
      for (auto& v : acc) v %= m.value();
      pending = 0;
    }
  }
  for (std::size_t k = 0; k < n; ++k) out[k] = static_cast<std::uint32_t>(acc[k] % m.value());
}

// Karatsuba on equal-length operands; out has 2n-1 entries.
void mul_karatsuba(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b, std::uint32_t* out,
                   const Modulus& m) {
  const std::size_t n = a.size();
  if (n <= kKaratsubaThreshold) {
    mul_schoolbook(a, b, out, m);
    return;
  }
  const std::size_t h = n / 2;
  const std::size_t hi = n - h;
  auto a0 = a.subspan(0, h), a1 = a.subspan(h);
  auto b0 = b.subspan(0, h), b1 = b.subspan(h);

  Coeffs sa(hi), sb(hi);
  for (std::size_t i = 0; i < hi; ++i) {
    sa[i] = m.add(a1[i], i < h ? a0[i] : 0);
    sb[i] = m.add(b1[i], i < h ? b0[i] : 0);
  }
  Coeffs z0(2 * h - 1), z2(2 * hi - 1), z1(2 * hi - 1);
  mul_karatsuba(a0, b0, z0.data(), m);
  mul_karatsuba(a1, b1, z2.data(), m);
  mul_karatsuba(sa, sb, z1.data(), m);
  for (std::size_t i = 0; i < z1.size(); ++i) {
    std::uint32_t v = m.sub(z1[i], z2[i]);
    if (i < z0.size()) v = m.sub(v, z0[i]);
    z1[i] = v;
  }
  std::fill(out, out + 2 * n - 1, 0u);
  for (std::size_t i = 0; i < z0.size(); ++i) out[i] = z0[i];
  for (std::size_t i = 0; i < z2.size(); ++i) out[i + 2 * h] = m.add(out[i + 2 * h], z2[i]);
  for (std::size_t i = 0; i < z1.size(); ++i) out[i + h] = m.add(out[i + h], z1[i]);
}

// General product, splitting the longer operand into blocks of the shorter length.
Coeffs multiply(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b, const Modulus& m) {
  if (a.empty() || b.empty()) return {};
  if (a.size() < b.size()) std::swap(a, b);
  Coeffs out(a.size() + b.size() - 1, 0);
  if (b.size() <= kKaratsubaThreshold) {
    mul_schoolbook(a, b, out.data(), m);
    return out;
  }
  const std::size_t n = b.size();
  Coeffs block(2 * n - 1);
  Coeffs padded(n);
  for (std::size_t start = 0; start < a.size(); start += n) {
    const std::size_t len = std::min(n, a.size() - start);
    std::fill(padded.begin(), padded.end(), 0u);
    std::copy_n(a.begin() + static_cast<std::ptrdiff_t>(start), len, padded.begin());
    mul_karatsuba(padded, b, block.data(), m);
    const std::size_t limit = std::min(block.size(), out.size() - start);
    for (std::size_t i = 0; i < limit; ++i) out[start + i] = m.add(out[start + i], block[i]);
  }
  return out;
}

// In-place remainder of r by monic-normalised divisor d; optionally records the quotient.
void reduce_in_place(Coeffs& r, const Coeffs& d, const Modulus& m, Coeffs* quotient) {
  const std::size_t dd = d.size() - 1;
  const std::uint32_t lead_inv = m.inv(d.back());
  if (quotient != nullptr) quotient->assign(r.size() >= d.size() ? r.size() - dd : 0, 0);
  while (!r.empty() && r.back() == 0) r.pop_back();
  while (r.size() >= d.size()) {
    const std::size_t shift = r.size() - d.size();
    const std::uint32_t c = m.mul(r.back(), lead_inv);
    if (quotient != nullptr) (*quotient)[shift] = c;
    const std::uint32_t neg_c = m.neg(c);
    std::uint32_t* row = r.data() + shift;
    for (std::size_t j = 0; j < dd; ++j) {
      row[j] = m.reduce(row[j] + static_cast<std::uint64_t>(neg_c) * d[j]);
    }
    r.pop_back();
    while (!r.empty() && r.back() == 0) r.pop_back();
  }
}

}  // namespace

Poly::Poly(std::uint32_t p) : p_(p) {}

Poly::Poly(std::uint32_t p, std::vector<std::uint32_t> coeffs) : p_(p), c_(std::move(coeffs)) {
  for (auto& c : c_) c %= p_;
  trim();
}

Poly Poly::constant(std::uint32_t p, std::int64_t c) {
  return Poly(p, {FpElem(p, c).value()});
}

Poly Poly::monomial(std::uint32_t p, std::int64_t c, std::size_t degree) {
  std::vector<std::uint32_t> v(degree + 1, 0);
  v[degree] = FpElem(p, c).value();
  return Poly(p, std::move(v));
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::operator+(const Poly& o) const {
  check_same(*this, o);
  const Modulus m(p_);
  Poly r(p_);
  r.c_.resize(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = m.add(coeff(i), o.coeff(i));
  r.trim();
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  check_same(*this, o);
  const Modulus m(p_);
  Poly r(p_);
  r.c_.resize(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = m.sub(coeff(i), o.coeff(i));
  r.trim();
  return r;
}

Poly Poly::operator-() const {
  const Modulus m(p_);
  Poly r = *this;
  for (auto& c : r.c_) c = m.neg(c);
  return r;
}

Poly Poly::scaled(std::uint32_t c) const {
  const Modulus m(p_);
  c %= p_;
  if (c == 0) return Poly(p_);
  Poly r = *this;
  for (auto& x : r.c_) x = m.mul(x, c);
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  check_same(*this, o);
  Poly r(p_);
  if (is_zero() || o.is_zero()) return r;
  r.c_ = multiply(c_, o.c_, Modulus(p_));
  r.trim();
  return r;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& divisor) const {
  check_same(*this, divisor);
  if (divisor.is_zero()) throw DivisionByZero("polynomial division by zero");
  const Modulus m(p_);
  Coeffs r = c_;
  Coeffs q;
  reduce_in_place(r, divisor.c_, m, &q);
  return {Poly(p_, std::move(q)), Poly(p_, std::move(r))};
}

Poly Poly::operator%(const Poly& divisor) const {
  check_same(*this, divisor);
  if (divisor.is_zero()) throw DivisionByZero("polynomial division by zero");
  Coeffs r = c_;
  reduce_in_place(r, divisor.c_, Modulus(p_), nullptr);
  return Poly(p_, std::move(r));
}

Poly Poly::exact_div(const Poly& divisor) const {
  auto [q, r] = divmod(divisor);
  if (!r.is_zero()) throw InternalError("inexact polynomial division");
  return q;
}

Poly Poly::monic() const {
  if (is_zero() || is_monic()) return *this;
  return scaled(Modulus(p_).inv(leading()));
}

Poly Poly::derivative() const {
  Poly r(p_);
  if (c_.size() <= 1) return r;
  const Modulus m(p_);
  r.c_.resize(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) r.c_[i - 1] = m.mul(c_[i], static_cast<std::uint32_t>(i % p_));
  r.trim();
  return r;
}

FpElem Poly::eval(const FpElem& x) const {
  if (x.modulus() != p_) throw Mismatch("evaluation point in a different prime field");
  const Modulus m(p_);
  std::uint32_t acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = m.add(m.mul(acc, x.value()), *it);
  return FpElem(p_, acc);
}

Poly Poly::pow(std::uint64_t e) const {
  // Split e into base-p digits: f^e = prod_j (f^{d_j})(t^{p^j}).
  Poly result = Poly::constant(p_, 1);
  Poly frob = *this;
  while (e != 0) {
    const std::uint64_t digit = e % p_;
    e /= p_;
    if (digit != 0) {
      Poly part = Poly::constant(p_, 1);
      Poly base = frob;
      std::uint64_t d = digit;
      while (d != 0) {
        if (d & 1) part *= base;
        d >>= 1;
        if (d != 0) base *= base;
      }
      result *= part;
    }
    if (e != 0) frob = frob.frobenius();
  }
  return result;
}

Poly Poly::inflate(std::size_t k) const {
  if (k == 0) throw InvalidArgument("inflate by zero");
  if (c_.size() <= 1 || k == 1) return *this;
  Poly r(p_);
  r.c_.assign((c_.size() - 1) * k + 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i * k] = c_[i];
  return r;
}

std::string Poly::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    const std::uint32_t c = c_[i];
    if (c == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0) {
      os << c;
      continue;
    }
    if (c != 1) os << c << "*";
    os << "t";
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

std::strong_ordering Poly::operator<=>(const Poly& o) const {
  if (p_ != o.p_) return p_ <=> o.p_;
  if (c_.size() != o.c_.size()) return c_.size() <=> o.c_.size();
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i] != o.c_[i]) return c_[i] <=> o.c_[i];
  }
  return std::strong_ordering::equal;
}

Poly poly_gcd(const Poly& f, const Poly& g) {
  check_same(f, g);
  const std::uint32_t p = f.characteristic();
  const Modulus m(p);
  Coeffs a(f.coeffs().begin(), f.coeffs().end());
  Coeffs b(g.coeffs().begin(), g.coeffs().end());
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    reduce_in_place(a, b, m, nullptr);
    std::swap(a, b);
  }
  return Poly(p, std::move(a)).monic();
}

PolyXgcd poly_xgcd(const Poly& f, const Poly& g) {
  check_same(f, g);
  const std::uint32_t p = f.characteristic();
  Poly r0 = f, r1 = g;
  Poly s0 = Poly::constant(p, 1), s1(p);
  Poly t0(p), t1 = Poly::constant(p, 1);
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    Poly t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  const std::uint32_t li = Modulus(p).inv(r0.leading());
  return {r0.scaled(li), s0.scaled(li), t0.scaled(li)};
}

bool is_squarefree(const Poly& f) {
  if (f.is_zero()) return false;
  if (f.is_constant()) return true;
  const Poly d = f.derivative();
  if (d.is_zero()) return false;  // f is a p-th power
  return poly_gcd(f, d).is_one();
}

}  // namespace fsetkit
