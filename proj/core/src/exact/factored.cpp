#include "locaut/exact/factored.hpp"

#include <cmath>
#include <sstream>

#include "locaut/error.hpp"

namespace locaut {

namespace {

constexpr unsigned long kTrialLimit = 100000;

mpz_class pollard_brent(const mpz_class& n, unsigned long c) {
  if (n % 2 == 0) return 2;
  mpz_class y = 2, x, q = 1, g = 1, ys;
  const unsigned long m = 64;
  unsigned long r = 1;
  auto step = [&](const mpz_class& v) { return mpz_class((v * v + c) % n); };
  do {
    x = y;
    for (unsigned long i = 0; i < r; ++i) y = step(y);
    unsigned long k = 0;
    while (k < r && g == 1) {
      ys = y;
      for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
        y = step(y);
        mpz_class diff = abs(x - y);
        q = (q * diff) % n;
      }
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      k += m;
    }
    r *= 2;
  } while (g == 1);
  if (g == n) {
    do {
      ys = step(ys);
      mpz_class diff = abs(x - ys);
      mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    } while (g == 1);
  }
  return g;
}

void split_composite(const mpz_class& n, std::map<mpz_class, unsigned long, MpzLess>& out) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30) > 0) {
    out[n] += 1;
    return;
  }
  for (unsigned long c = 1;; ++c) {
    mpz_class d = pollard_brent(n, c);
    if (d != n && d != 1) {
      split_composite(d, out);
      split_composite(mpz_class(n / d), out);
      return;
    }
  }
}

}  // namespace

SignedFactored::SignedFactored(int sign, PrimeExponents exponents) : sign_(sign < 0 ? -1 : 1) {
  for (auto& [p, e] : exponents) {
    if (!e.is_zero()) exps_.emplace(p, e);
  }
}

Rational SignedFactored::exponent(const mpz_class& p) const {
  auto it = exps_.find(p);
  return it == exps_.end() ? Rational(0) : it->second;
}

bool SignedFactored::is_rational() const {
  for (const auto& [p, e] : exps_) {
    if (!e.is_integer()) return false;
  }
  return true;
}

Rational SignedFactored::to_rational() const {
  if (!is_rational()) throw Error(ErrorCode::NotRepresentable, "value " + str() + " is not rational");
  mpz_class num = 1, den = 1;
  for (const auto& [p, e] : exps_) {
    mpz_class pk;
    long k = e.num().get_si();
    mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(k < 0 ? -k : k));
    if (k > 0) num *= pk; else den *= pk;
  }
  return Rational(mpz_class(sign_ * num), den);
}

double SignedFactored::log_abs() const {
  double acc = 0.0;
  for (const auto& [p, e] : exps_) acc += e.to_double() * std::log(p.get_d());
  return acc;
}

double SignedFactored::to_double() const { return sign_ * std::exp(log_abs()); }

SignedFactored SignedFactored::inverse() const {
  PrimeExponents inv;
  for (const auto& [p, e] : exps_) inv.emplace(p, -e);
  return SignedFactored(sign_, std::move(inv));
}

SignedFactored SignedFactored::pow(const Rational& q) const {
  int s = 1;
  if (sign_ < 0) {
    if (!q.is_integer()) {
      throw Error(ErrorCode::NotRepresentable, "non-integral power of negative value " + str());
    }
    s = (q.num() % 2 == 0) ? 1 : -1;
  }
  PrimeExponents out;
  for (const auto& [p, e] : exps_) out.emplace(p, e * q);
  return SignedFactored(s, std::move(out));
}

SignedFactored& SignedFactored::operator*=(const SignedFactored& o) {
  sign_ *= o.sign_;
  for (const auto& [p, e] : o.exps_) {
    auto it = exps_.find(p);
    if (it == exps_.end()) {
      exps_.emplace(p, e);
    } else {
      it->second += e;
      if (it->second.is_zero()) exps_.erase(it);
    }
  }
  return *this;
}

bool operator==(const SignedFactored& a, const SignedFactored& b) {
  return a.sign_ == b.sign_ && a.exps_ == b.exps_;
}

std::string SignedFactored::str() const {
  std::ostringstream os;
  if (sign_ < 0) os << "-";
  if (exps_.empty()) {
    os << "1";
    return os.str();
  }
  bool first = true;
  for (const auto& [p, e] : exps_) {
    if (!first) os << "*";
    first = false;
    os << p.get_str();
    if (!e.is_one()) {
      if (e.is_integer() && e.sign() > 0) os << "^" << e.str();
      else os << "^(" << e.str() << ")";
    }
  }
  return os.str();
}

std::map<mpz_class, unsigned long, MpzLess> factor_integer(const mpz_class& n) {
  if (n <= 0) throw Error(ErrorCode::ZeroInput, "factor_integer needs a positive integer");
  std::map<mpz_class, unsigned long, MpzLess> out;
  mpz_class m = n;
  for (unsigned long p = 2; p <= kTrialLimit && m > 1; ++p) {
    if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      unsigned long k = 0;
      while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
        mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
        ++k;
      }
      out[mpz_class(p)] = k;
    }
    if (mpz_class(p) * p > m) break;
  }
  if (m > 1) split_composite(m, out);
  return out;
}

SignedFactored factor(const Rational& q) {
  if (q.is_zero()) throw Error(ErrorCode::ZeroInput, "cannot factor zero");
  PrimeExponents exps;
  mpz_class num = abs(q.num());
  if (num > 1) {
    for (const auto& [p, k] : factor_integer(num)) exps[p] += Rational(static_cast<long>(k));
  }
  if (q.den() > 1) {
    for (const auto& [p, k] : factor_integer(q.den())) exps[p] -= Rational(static_cast<long>(k));
  }
  return SignedFactored(q.sign(), std::move(exps));
}

std::optional<Rational> class_exponent(const SignedFactored& x, const SignedFactored& base) {
  const auto& bx = x.exponents();
  const auto& bb = base.exponents();
  if (bb.empty()) {
    if (bx.empty()) return Rational(1);
    return std::nullopt;
  }
  if (bx.size() != bb.size()) return std::nullopt;
  const auto& [p0, e0] = *bb.begin();
  Rational q = x.exponent(p0) / e0;
  for (const auto& [p, e] : bb) {
    if (x.exponent(p) != e * q) return std::nullopt;
  }
  return q;
}

bool same_class(const SignedFactored& x, const SignedFactored& y) {
  auto q = class_exponent(x, y);
  return q.has_value() && !q->is_zero();
}

}  // namespace locaut
