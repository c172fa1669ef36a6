#include "locaut/scalar/classes.hpp"

#include <set>
#include <sstream>

#include "locaut/matrix/linalg.hpp"

namespace locaut {

namespace {

std::vector<mpz_class> primes_of(const std::vector<SignedFactored>& xs) {
  std::set<mpz_class, MpzLess> s;
  for (const auto& x : xs)
    for (const auto& [p, e] : x.exponents()) s.insert(p);
  return {s.begin(), s.end()};
}

std::vector<Rational> exps_over(const SignedFactored& x, const std::vector<mpz_class>& primes) {
  std::vector<Rational> v(primes.size());
  for (std::size_t i = 0; i < primes.size(); ++i) v[i] = x.exponent(primes[i]);
  return v;
}

// Rows are the given vectors.
MatQ rows_matrix(const std::vector<std::vector<Rational>>& rows, std::size_t width) {
  MatQ m(rows.size(), width);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < width; ++j) m(i, j) = rows[i][j];
  return m;
}

std::size_t rank_of_rows(const std::vector<std::vector<Rational>>& rows, std::size_t width) {
  if (rows.empty() || width == 0) return 0;
  return rank(rows_matrix(rows, width));
}

// Exponent matrix (rows = generators) of x -> g(x)^n x^eps on a real lattice.
std::vector<SignedFactored> induced_images(const RealLatticeHom& h, std::size_t n, int epsilon) {
  std::vector<SignedFactored> out;
  for (std::size_t k = 0; k < h.images.size(); ++k)
    out.push_back(h.images[k].pow(Rational(static_cast<long>(n))) * h.lattice.generators[k].pow(Rational(epsilon)));
  return out;
}

bool independent(const std::vector<SignedFactored>& xs) {
  auto primes = primes_of(xs);
  std::vector<std::vector<Rational>> rows;
  for (const auto& x : xs) rows.push_back(exps_over(x, primes));
  return rank_of_rows(rows, primes.size()) == xs.size();
}

std::string str_n(std::size_t n) { return std::to_string(n); }

}  // namespace

ClassVerdict check_Mr(const MulFunc& g, std::size_t n, int epsilon) {
  if (g.ambient() != Ambient::RStar) throw Error(ErrorCode::AmbientMismatch, "class M needs a function on R*");
  ClassVerdict v;
  std::ostringstream os;
  const bool even = n % 2 == 0;
  const char* f_desc = epsilon > 0 ? "g(x)^n x" : "g(x)^n / x";
  if (auto* p = g.as_power()) {
    Rational e = Rational(static_cast<long>(n)) * p->c + Rational(epsilon);
    os << "f(x) = " << f_desc << " = |x|^" << e.str() << " on positives";
    if (e.is_zero()) {
      os << "; exponent n c " << (epsilon > 0 ? "+" : "-") << " 1 vanishes, f is constant on positives";
      v.certificate = os.str();
      return v;
    }
    if (p->neg == NegSign::Flip && !even) {
      os << "; g(-x) = -g(x) with n = " << n << " odd gives f(-1) = 1, not injective";
      v.certificate = os.str();
      return v;
    }
    os << "; f(-1) = -1";
    v.yes = true;
    v.certificate = os.str();
    return v;
  }
  const auto& h = *g.as_real_hom();
  // Sign rule: f(-1) = g(-1)^n (-1) must be -1.
  if (h.sign_image < 0 && !even) {
    v.certificate = "g(-1) = -1 with n = " + str_n(n) + " odd gives f(-1) = 1, not injective";
    return v;
  }
  auto fi = induced_images(h, n, epsilon);
  if (!independent(fi)) {
    os << "f(x) = " << f_desc << " is not injective on the lattice: images";
    for (const auto& x : fi) os << " " << x.str();
    os << " are multiplicatively dependent";
    v.certificate = os.str();
    return v;
  }
  os << "f(x) = " << f_desc << " is injective on the lattice (generator images";
  for (const auto& x : fi) os << " " << x.str();
  os << " independent), sign rule holds; yes on this lattice, global extension assumed";
  v.yes = true;
  v.assumes_extension = true;
  v.certificate = os.str();
  return v;
}

ClassVerdict check_M1r(const MulFunc& g, std::size_t n) { return check_Mr(g, n, 1); }
ClassVerdict check_M2r(const MulFunc& g, std::size_t n) { return check_Mr(g, n, -1); }

ClassVerdict check_Mu(const MulFunc& g, std::size_t n) {
  if (g.ambient() != Ambient::Circle) throw Error(ErrorCode::AmbientMismatch, "class Mu needs a circle function");
  ClassVerdict v;
  std::ostringstream os;
  const long nn = static_cast<long>(n);
  if (auto* p = g.as_power()) {
    long k = p->c.num().get_si();
    long e = nn * k + 1;
    os << "f(z) = z^" << e;
    if (e == 1 || e == -1) {
      v.yes = true;
      os << " is an automorphism of the circle";
    } else {
      os << (e == 0 ? " is constant" : " has a nontrivial kernel (roots of unity of order " + std::to_string(std::labs(e)) + ")");
    }
    v.certificate = os.str();
    return v;
  }
  const auto& h = *g.as_circle_hom();
  const auto& gens = h.lattice.generators;
  const std::size_t r = gens.size();
  std::vector<std::size_t> free_idx;
  for (std::size_t k = 0; k < r; ++k) {
    if (gens[k].is_torsion()) {
      // The image must stay on the generator's own cyclic group and f must
      // act there as z -> z^{+-1}.
      const auto& im = h.images[k].v;
      for (std::size_t i = 0; i < r; ++i) {
        if (i != k && !im[i].is_zero()) {
          v.certificate = "torsion generator " + gens[k].label + " does not map into its own cyclic group; refused";
          return v;
        }
      }
      if (!im[k].is_integer()) {
        v.certificate = "torsion generator " + gens[k].label + " has a non-integral image exponent; refused";
        return v;
      }
      long m = gens[k].order();
      long e = ((nn * im[k].num().get_si() + 1) % m + m) % m;
      if (m > 2 && e != 1 && e != m - 1) {
        v.certificate = "torsion generator " + gens[k].label + ": f acts as exponent " + std::to_string(e) + " mod " +
                        std::to_string(m) + ", not +-1; refused";
        return v;
      }
      if (m <= 2 && e % m != 1 % m) {
        v.certificate = "torsion generator " + gens[k].label + " is killed by f";
        return v;
      }
    } else {
      free_idx.push_back(k);
      for (std::size_t i = 0; i < r; ++i) {
        if (gens[i].is_torsion() && !h.images[k].v[i].is_zero()) {
          v.certificate = "free generator " + gens[k].label + " has a torsion component in its image; refused";
          return v;
        }
      }
    }
  }
  MatQ f(free_idx.size(), free_idx.size());
  for (std::size_t a = 0; a < free_idx.size(); ++a)
    for (std::size_t b = 0; b < free_idx.size(); ++b)
      f(a, b) = Rational(nn) * h.images[free_idx[b]].v[free_idx[a]] + Rational(a == b ? 1 : 0);
  Rational d = free_idx.empty() ? Rational(1) : det(f);
  if (d.is_zero()) {
    v.certificate = "n G + I is singular on the free part: f is not injective on the lattice";
    return v;
  }
  v.yes = true;
  v.assumes_extension = true;
  v.certificate = "det(n G + I) = " + d.str() + " on the free part; injective on this lattice, extension assumed";
  return v;
}

ClassVerdict check_P(const ClassMap& k) {
  ClassVerdict v;
  std::vector<ClassEntry> entries = k.entries;
  entries.push_back({SignedFactored(), SignedFactored()});  // k(1) = 1 is part of (P)
  for (const auto& e : entries) {
    if (!e.rep.is_positive() || !e.image.is_positive()) {
      v.certificate = "entry " + e.rep.str() + " -> " + e.image.str() + " leaves the positive reals";
      return v;
    }
  }
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (std::size_t j = i; j < entries.size(); ++j) {
      const auto& a = entries[i];
      const auto& b = entries[j];
      bool dom_related = same_class(a.rep, b.rep);
      bool img_related = same_class(a.image, b.image);
      if (dom_related != img_related) {
        v.certificate = a.rep.str() + " and " + b.rep.str() + (dom_related ? " are" : " are not") +
                        " in one class but their images " + a.image.str() + ", " + b.image.str() +
                        (img_related ? " are" : " are not");
        return v;
      }
      if (dom_related) {
        Rational q = *class_exponent(a.rep, b.rep);
        if (!(a.image == b.image.pow(q))) {
          v.certificate = a.rep.str() + " = (" + b.rep.str() + ")^" + q.str() + " but " + a.image.str() +
                          " != (" + b.image.str() + ")^" + q.str();
          return v;
        }
      }
    }
  }
  v.yes = true;
  v.certificate = "class map fixes 1, is injective on classes and transports exponents";
  return v;
}

ClassVerdict check_LAR(const MulFunc& h) {
  if (h.ambient() != Ambient::RStar) throw Error(ErrorCode::AmbientMismatch, "(LAR) needs a function on R*");
  ClassVerdict v;
  if (auto* p = h.as_power()) {
    if (p->c.is_zero()) {
      v.certificate = "h is constant on positives";
      return v;
    }
    if (p->neg != NegSign::Flip) {
      v.certificate = "h(-x) = h(x), odd symmetry fails";
      return v;
    }
    v.yes = true;
    v.certificate = "h(x) = sign(x)|x|^" + p->c.str() + " with nonzero exponent";
    return v;
  }
  const auto& k = *h.as_real_hom();
  if (k.lattice.with_sign && k.sign_image != -1) {
    v.certificate = "h(-1) = 1, odd symmetry fails";
    return v;
  }
  if (!independent(k.images)) {
    v.certificate = "generator images are multiplicatively dependent: two classes collapse";
    return v;
  }
  v.yes = true;
  v.assumes_extension = true;
  v.certificate = "injective on the lattice and odd; yes on this lattice";
  return v;
}

ClassVerdict check_LAR(const ScalarTable& h) {
  ClassVerdict v;
  ClassMap k;
  for (const auto& p : h) {
    if (p.x.sign() != p.value.sign()) {
      v.certificate = "h(" + p.x.str() + ") = " + p.value.str() + " has the wrong sign";
      return v;
    }
    k.entries.push_back({p.x.abs(), p.value.abs()});
  }
  auto pv = check_P(k);
  v.yes = pv.yes;
  v.certificate = pv.yes ? "signs preserved and positive part has (P)" : pv.certificate;
  return v;
}

ClassVerdict lar_by_interpolation(const ScalarTable& h) {
  ClassVerdict v;
  std::vector<SignedFactored> dom, img;
  for (const auto& p : h) {
    dom.push_back(p.x.abs());
    img.push_back(p.value.abs());
  }
  auto dp = primes_of(dom);
  auto ip = primes_of(img);
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (h[i].x.sign() != h[i].value.sign()) {
      v.certificate = "sign rule fails at " + h[i].x.str();
      return v;
    }
    for (std::size_t j = i; j < h.size(); ++j) {
      auto u = exps_over(dom[i], dp), w = exps_over(dom[j], dp);
      auto U = exps_over(img[i], ip), W = exps_over(img[j], ip);
      std::vector<Rational> uU = u, wW = w;
      uU.insert(uU.end(), U.begin(), U.end());
      wW.insert(wW.end(), W.begin(), W.end());
      std::size_t r_dom = rank_of_rows({u, w}, dp.size());
      std::size_t r_img = rank_of_rows({U, W}, ip.size());
      std::size_t r_graph = rank_of_rows({uU, wW}, dp.size() + ip.size());
      if (r_graph != r_dom || r_img != r_dom) {
        std::ostringstream os;
        os << "points " << h[i].x.str() << ", " << h[j].x.str() << ": rank(domain) = " << r_dom
           << ", rank(graph) = " << r_graph << ", rank(image) = " << r_img;
        v.certificate = os.str();
        return v;
      }
    }
  }
  v.yes = true;
  v.certificate = "every pair is interpolated by an injective Q-linear map";
  return v;
}

DomainReport check_LMr_on_domain(const ScalarTable& f, std::size_t n, int epsilon) {
  DomainReport rep;
  const bool even = n % 2 == 0;
  Rational nq(static_cast<long>(n));
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = i + 1; j < f.size(); ++j) {
      PairCertificate pc{i, j, false, ""};
      const TablePoint* pts[2] = {&f[i], &f[j]};
      std::string bad;
      int neg_sign = 0;
      for (const auto* p : pts) {
        if (p->x.is_positive() && !p->value.is_positive()) bad = "f(" + p->x.str() + ") is negative";
        if (!p->x.is_positive()) {
          if (!even && !p->value.is_positive()) bad = "f(" + p->x.str() + ") < 0 needs n even";
          if (neg_sign != 0 && neg_sign != p->value.sign()) bad = "negative points map to both signs";
          neg_sign = p->value.sign();
        }
      }
      if (bad.empty()) {
        ScalarTable hpair;
        for (const auto* p : pts) hpair.push_back({p->x, p->value.pow(nq) * p->x.pow(Rational(epsilon))});
        auto lar = check_LAR(hpair);
        if (lar.yes) {
          pc.ok = true;
          pc.reason = "induced values " + hpair[0].value.str() + ", " + hpair[1].value.str() + " interpolable";
        } else {
          pc.reason = "induced map fails (LAR): " + lar.certificate;
        }
      } else {
        pc.reason = bad;
      }
      rep.all_ok = rep.all_ok && pc.ok;
      rep.pairs.push_back(std::move(pc));
    }
  }
  return rep;
}

DomainReport check_LM1r_on_domain(const ScalarTable& f, std::size_t n) { return check_LMr_on_domain(f, n, 1); }

DomainReport check_LM1r_on_domain(const MulFunc& f, std::size_t n, const std::vector<Rational>& domain) {
  std::vector<Rational> skipped;
  auto table = tabulate(f, domain, &skipped);
  if (!skipped.empty()) throw Error(ErrorCode::DomainNotFactorable, "f is undefined at " + skipped[0].str());
  return check_LM1r_on_domain(table, n);
}

ExtensionResult interpolating_character(const ScalarTable& f, std::size_t n, int epsilon) {
  ExtensionResult out;
  const bool even = n % 2 == 0;
  int neg_sign = 0;
  bool any_negative = false;
  for (const auto& p : f) {
    if (p.x.is_positive()) {
      if (!p.value.is_positive()) {
        out.reason = "f(" + p.x.str() + ") is negative";
        return out;
      }
    } else {
      any_negative = true;
      if (neg_sign != 0 && neg_sign != p.value.sign()) {
        out.reason = "negative points map to both signs";
        return out;
      }
      neg_sign = p.value.sign();
    }
  }
  if (neg_sign < 0 && !even) {
    out.reason = "negative values on negatives need n even";
    return out;
  }
  // Greedy basis of the domain span among the table points.
  std::vector<SignedFactored> dom, img;
  for (const auto& p : f) {
    dom.push_back(p.x.abs());
    img.push_back(p.value.abs());
  }
  auto dp = primes_of(dom);
  std::vector<std::size_t> basis;
  std::vector<std::vector<Rational>> rows;
  for (std::size_t k = 0; k < f.size(); ++k) {
    auto u = exps_over(dom[k], dp);
    auto trial = rows;
    trial.push_back(u);
    if (rank_of_rows(trial, dp.size()) > rows.size()) {
      rows = std::move(trial);
      basis.push_back(k);
    }
  }
  // Express every point in the basis and check the values transport.
  MatQ bm(dp.size(), basis.size());
  for (std::size_t b = 0; b < basis.size(); ++b)
    for (std::size_t i = 0; i < dp.size(); ++i) bm(i, b) = rows[b][i];
  for (std::size_t k = 0; k < f.size(); ++k) {
    std::vector<Rational> coords;
    if (!basis.empty()) coords = *solve(bm, exps_over(dom[k], dp));
    SignedFactored predicted;
    for (std::size_t b = 0; b < basis.size(); ++b) predicted *= img[basis[b]].pow(coords[b]);
    if (!(predicted == img[k])) {
      std::ostringstream os;
      os << "|f(" << f[k].x.str() << ")| = " << img[k].str() << " but multiplicativity forces " << predicted.str();
      out.reason = os.str();
      return out;
    }
  }
  std::vector<SignedFactored> gens, images;
  for (auto b : basis) {
    gens.push_back(dom[b]);
    images.push_back(img[b]);
  }
  RealLattice lat = RealLattice::make(gens, any_negative || neg_sign != 0);
  RealLatticeHom h = hom_on_lattice(lat, images, neg_sign < 0 ? -1 : 1);
  auto verdict = check_Mr(MulFunc::real_hom(h), n, epsilon);
  if (!verdict.yes) {
    out.reason = "the unique multiplicative extension is not of the required class: " + verdict.certificate;
    return out;
  }
  out.witness = std::move(h);
  return out;
}

}  // namespace locaut
