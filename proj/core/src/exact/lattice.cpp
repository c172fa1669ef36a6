#include "locaut/exact/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <set>

#include "locaut/error.hpp"
#include "locaut/matrix/linalg.hpp"

namespace locaut {

namespace {

// Rows are primes, columns generators.
MatQ exponent_matrix(const std::vector<SignedFactored>& gens, const std::vector<mpz_class>& primes) {
  MatQ m(primes.size(), gens.size());
  for (std::size_t j = 0; j < gens.size(); ++j)
    for (std::size_t i = 0; i < primes.size(); ++i) m(i, j) = gens[j].exponent(primes[i]);
  return m;
}

Rational frac_part(const Rational& q) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q.num().get_mpz_t(), q.den().get_mpz_t());
  return q - Rational(f);
}

Rational torsion_turns(const CircleLattice& l, const CircleElem& e) {
  Rational t(0);
  for (std::size_t k = 0; k < l.generators.size(); ++k)
    if (l.generators[k].is_torsion()) t += e.v[k] * *l.generators[k].turns;
  return frac_part(t);
}

void check_circle_size(const CircleLattice& l, const CircleElem& e) {
  if (e.v.size() != l.generators.size())
    throw Error(ErrorCode::DimensionMismatch, "circle element has wrong number of coordinates");
}

}  // namespace

RealLattice RealLattice::make(std::vector<SignedFactored> generators, bool with_sign) {
  RealLattice l;
  for (const auto& g : generators) {
    if (!g.is_positive()) throw Error(ErrorCode::BadParameters, "lattice generator " + g.str() + " is not positive");
    if (g.is_one()) throw Error(ErrorCode::DependentGenerators, "generator 1 is trivial");
  }
  l.generators = std::move(generators);
  l.with_sign = with_sign;
  auto primes = l.support();
  if (locaut::rank(exponent_matrix(l.generators, primes)) != l.generators.size())
    throw Error(ErrorCode::DependentGenerators, "generator logarithms are Q-dependent");
  return l;
}

RealLattice RealLattice::make(const std::vector<Rational>& generators, bool with_sign) {
  std::vector<SignedFactored> f;
  f.reserve(generators.size());
  for (const auto& q : generators) f.push_back(factor(q));
  return make(std::move(f), with_sign);
}

std::vector<mpz_class> RealLattice::support() const {
  std::set<mpz_class, MpzLess> s;
  for (const auto& g : generators)
    for (const auto& [p, e] : g.exponents()) s.insert(p);
  return {s.begin(), s.end()};
}

bool operator==(const RealLattice& a, const RealLattice& b) {
  return a.with_sign == b.with_sign && a.generators == b.generators;
}

std::optional<RealCoords> lattice_decompose(const SignedFactored& x, const RealLattice& lattice) {
  if (!x.is_positive() && !lattice.with_sign) return std::nullopt;
  auto primes = lattice.support();
  for (const auto& [p, e] : x.exponents()) {
    if (!std::binary_search(primes.begin(), primes.end(), p, MpzLess{})) return std::nullopt;
  }
  std::vector<Rational> rhs(primes.size());
  for (std::size_t i = 0; i < primes.size(); ++i) rhs[i] = x.exponent(primes[i]);
  auto sol = solve(exponent_matrix(lattice.generators, primes), rhs);
  if (!sol) return std::nullopt;
  return RealCoords{!x.is_positive(), std::move(*sol)};
}

SignedFactored lattice_element(const RealLattice& lattice, const RealCoords& coords) {
  if (coords.v.size() != lattice.generators.size())
    throw Error(ErrorCode::DimensionMismatch, "coordinate vector length");
  if (coords.negative && !lattice.with_sign) throw Error(ErrorCode::BadParameters, "lattice has no sign generator");
  SignedFactored out = coords.negative ? SignedFactored::minus_one() : SignedFactored();
  for (std::size_t k = 0; k < coords.v.size(); ++k) out *= lattice.generators[k].pow(coords.v[k]);
  return out;
}

AngleGen AngleGen::rational(std::string label, Rational turns) {
  AngleGen g;
  g.label = std::move(label);
  Rational t = frac_part(turns);
  g.turns = t;
  g.angle = 2.0 * std::numbers::pi * t.to_double();
  return g;
}

AngleGen AngleGen::symbolic(std::string label, double angle) {
  AngleGen g;
  g.label = std::move(label);
  g.angle = angle;
  return g;
}

long AngleGen::order() const {
  if (!turns) return 0;
  return turns->den().get_si();
}

Complex AngleGen::witness() const { return std::polar(1.0, angle); }

CircleLattice CircleLattice::make(std::vector<AngleGen> generators) {
  std::set<std::string> labels;
  for (const auto& g : generators) {
    if (g.label.empty()) throw Error(ErrorCode::BadParameters, "angle generator needs a label");
    if (!labels.insert(g.label).second) throw Error(ErrorCode::BadParameters, "duplicate label " + g.label);
    if (!std::isfinite(g.angle)) throw Error(ErrorCode::BadParameters, "non-finite angle for " + g.label);
    if (!g.is_torsion() && std::abs(std::remainder(g.angle, 2.0 * std::numbers::pi)) < 1e-12)
      throw Error(ErrorCode::BadParameters, "symbolic generator " + g.label + " has trivial angle");
  }
  CircleLattice l;
  l.generators = std::move(generators);
  return l;
}

bool operator==(const CircleLattice& a, const CircleLattice& b) {
  if (a.generators.size() != b.generators.size()) return false;
  for (std::size_t k = 0; k < a.generators.size(); ++k) {
    const auto& x = a.generators[k];
    const auto& y = b.generators[k];
    if (x.label != y.label || x.turns != y.turns || x.angle != y.angle) return false;
  }
  return true;
}

Complex circle_value(const CircleLattice& lattice, const CircleElem& e) {
  check_circle_size(lattice, e);
  double theta = 2.0 * std::numbers::pi * torsion_turns(lattice, e).to_double();
  for (std::size_t k = 0; k < e.v.size(); ++k)
    if (!lattice.generators[k].is_torsion()) theta += e.v[k].to_double() * lattice.generators[k].angle;
  return std::polar(1.0, theta);
}

bool circle_equal(const CircleLattice& lattice, const CircleElem& a, const CircleElem& b) {
  check_circle_size(lattice, a);
  check_circle_size(lattice, b);
  for (std::size_t k = 0; k < a.v.size(); ++k)
    if (!lattice.generators[k].is_torsion() && a.v[k] != b.v[k]) return false;
  return torsion_turns(lattice, a) == torsion_turns(lattice, b);
}

CircleElem circle_add(const CircleElem& a, const CircleElem& b) {
  if (a.v.size() != b.v.size()) throw Error(ErrorCode::DimensionMismatch, "circle_add");
  CircleElem c = a;
  for (std::size_t k = 0; k < c.v.size(); ++k) c.v[k] += b.v[k];
  return c;
}

CircleElem circle_scale(const CircleElem& a, const Rational& q) {
  CircleElem c = a;
  for (auto& x : c.v) x *= q;
  return c;
}

namespace {

// Rationals with denominator <= max_denominator and |q| <= max_abs, simplest
// first. Built once per bound pair.
const std::vector<Rational>& free_candidates(const CircleSearch& search) {
  static std::mutex mu;
  static std::map<std::pair<long, long>, std::vector<Rational>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(search.max_denominator, search.max_abs);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<Rational> uniq;
  std::set<Rational> seen;
  for (long d = 1; d <= search.max_denominator; ++d)
    for (long a = -search.max_abs * d; a <= search.max_abs * d; ++a) {
      Rational q{mpz_class(a), mpz_class(d)};
      if (seen.insert(q).second) uniq.push_back(q);
    }
  std::stable_sort(uniq.begin(), uniq.end(), [](const Rational& x, const Rational& y) {
    if (x.den() != y.den()) return x.den() < y.den();
    return abs(x.num()) < abs(y.num());
  });
  return cache.emplace(key, std::move(uniq)).first->second;
}

}  // namespace

std::optional<CircleElem> decompose_circle(Complex z, const CircleLattice& lattice, double tol,
                                           const CircleSearch& search) {
  // Candidate coordinates per generator, simplest first.
  std::vector<std::vector<Rational>> cands(lattice.rank());
  for (std::size_t k = 0; k < lattice.rank(); ++k) {
    const auto& g = lattice.generators[k];
    if (g.is_torsion()) {
      for (long e = 0; e < g.order(); ++e) cands[k].emplace_back(e);
      continue;
    }
    cands[k] = free_candidates(search);
  }
  CircleElem e;
  e.v.assign(lattice.rank(), Rational(0));
  std::vector<std::size_t> idx(lattice.rank(), 0);
  if (lattice.rank() == 0) {
    if (std::abs(z - Complex(1.0, 0.0)) <= tol) return e;
    return std::nullopt;
  }
  // Value of each single-generator candidate, so the loop only multiplies.
  std::vector<std::vector<Complex>> vals(lattice.rank());
  for (std::size_t k = 0; k < lattice.rank(); ++k) {
    CircleElem u;
    u.v.assign(lattice.rank(), Rational(0));
    for (const auto& c : cands[k]) {
      u.v[k] = c;
      vals[k].push_back(circle_value(lattice, u));
    }
  }
  while (true) {
    Complex w(1.0, 0.0);
    for (std::size_t k = 0; k < idx.size(); ++k) w *= vals[k][idx[k]];
    if (std::abs(w - z) <= tol) {
      for (std::size_t k = 0; k < idx.size(); ++k) e.v[k] = cands[k][idx[k]];
      // Confirm with the direct evaluation.
      if (std::abs(circle_value(lattice, e) - z) <= tol) return e;
    }
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == cands[k].size()) {
      idx[k] = 0;
      ++k;
    }
    if (k == idx.size()) return std::nullopt;
  }
}

std::optional<SignedFactored> RealLatticeHom::try_eval(const SignedFactored& x) const {
  auto c = lattice_decompose(x, lattice);
  if (!c) return std::nullopt;
  SignedFactored out = (c->negative && sign_image < 0) ? SignedFactored::minus_one() : SignedFactored();
  for (std::size_t k = 0; k < c->v.size(); ++k) out *= images[k].pow(c->v[k]);
  return out;
}

SignedFactored RealLatticeHom::eval(const SignedFactored& x) const {
  auto r = try_eval(x);
  if (!r) throw Error(ErrorCode::DetOutsideLattice, x.str() + " is not in the lattice");
  return *r;
}

bool operator==(const RealLatticeHom& a, const RealLatticeHom& b) {
  return a.lattice == b.lattice && a.images == b.images && a.sign_image == b.sign_image;
}

RealLatticeHom hom_on_lattice(const RealLattice& lattice, const std::vector<Rational>& images, int sign_image) {
  std::vector<SignedFactored> f;
  for (const auto& q : images) {
    if (q.is_zero()) throw Error(ErrorCode::ImageNotInvertibleDomain, "generator image is zero");
    f.push_back(factor(q));
  }
  return hom_on_lattice(lattice, std::move(f), sign_image);
}

RealLatticeHom hom_on_lattice(const RealLattice& lattice, std::vector<SignedFactored> images, int sign_image) {
  if (images.size() != lattice.generators.size())
    throw Error(ErrorCode::BadParameters, "need one image per generator");
  for (const auto& im : images) {
    if (!im.is_positive())
      throw Error(ErrorCode::BadParameters, "positive generator mapped to negative " + im.str());
  }
  if (sign_image != 1 && sign_image != -1) throw Error(ErrorCode::BadParameters, "sign image must be +1 or -1");
  if (!lattice.with_sign && sign_image != 1)
    throw Error(ErrorCode::BadParameters, "sign image given but lattice has no sign generator");
  return RealLatticeHom{lattice, std::move(images), sign_image};
}

CircleElem CircleLatticeHom::eval(const CircleElem& e) const {
  check_circle_size(lattice, e);
  CircleElem out;
  out.v.assign(lattice.rank(), Rational(0));
  for (std::size_t k = 0; k < e.v.size(); ++k) out = circle_add(out, circle_scale(images[k], e.v[k]));
  return out;
}

std::vector<std::vector<Rational>> CircleLatticeHom::matrix() const {
  std::size_t r = lattice.rank();
  std::vector<std::vector<Rational>> g(r, std::vector<Rational>(r));
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t i = 0; i < r; ++i) g[i][j] = images[j].v[i];
  return g;
}

CircleLatticeHom circle_hom(const CircleLattice& lattice, std::vector<CircleElem> images) {
  if (images.size() != lattice.rank()) throw Error(ErrorCode::BadParameters, "need one image per generator");
  for (const auto& im : images) check_circle_size(lattice, im);
  CircleElem zero;
  zero.v.assign(lattice.rank(), Rational(0));
  for (std::size_t k = 0; k < lattice.rank(); ++k) {
    const auto& g = lattice.generators[k];
    if (!g.is_torsion()) continue;
    // An element of order m must map to an element whose order divides m.
    if (!circle_equal(lattice, circle_scale(images[k], Rational(g.order())), zero))
      throw Error(ErrorCode::BadParameters, "image of torsion generator " + g.label + " has incompatible order");
  }
  return CircleLatticeHom{lattice, std::move(images)};
}

}  // namespace locaut
