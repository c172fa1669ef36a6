#include "locaut/gallery/gallery.hpp"

#include <sstream>

#include "locaut/matrix/linalg.hpp"
#include "locaut/random.hpp"
#include "locaut/scalar/classes.hpp"

namespace locaut {

std::string_view claim_name(Claim c) {
  switch (c) {
    case Claim::IsAutomorphism: return "IsAutomorphism";
    case Claim::IsLocalNotGlobal: return "IsLocalNotGlobal";
    case Claim::PairwiseOnlyEvidence: return "PairwiseOnlyEvidence";
  }
  return "?";
}

const Evidence* Certificate::find(std::string_view identity) const {
  for (const auto& e : evidence)
    if (e.identity == identity) return &e;
  return nullptr;
}

// ---- GL_n(R) -------------------------------------------------------------

namespace {

RealLattice gallery_lattice(const GlGalleryOptions& opts) {
  return RealLattice::make(std::vector<Rational>{opts.p, opts.q}, true);
}

std::optional<Rational> ratio(const MatQ& y, const MatQ& m) {
  for (std::size_t k = 0; k < m.data().size(); ++k) {
    if (m.data()[k].is_zero()) continue;
    Rational l = y.data()[k] / m.data()[k];
    if (l.is_zero() || !(y == m * l)) return std::nullopt;
    return l;
  }
  return std::nullopt;
}

const MatQ* as_q(const AnyMatrix& a) { return std::get_if<MatQ>(&a); }

}  // namespace

SignedFactored gallery_f(const SignedFactored& det, std::size_t n, const GlGalleryOptions& opts) {
  auto c = lattice_decompose(det, gallery_lattice(opts));
  if (!c) throw Error(ErrorCode::DetOutsideLattice, det.str() + " is not of the form +-p^a q^b");
  SignedFactored f;
  if (c->v[0].is_zero() && !c->v[1].is_zero())
    f = factor(opts.q).pow(c->v[1] / Rational(static_cast<long>(n)));
  if (c->negative && opts.odd_sign) f = SignedFactored::minus_one() * f;
  return f;
}

GlGalleryItem gallery_gl_local_not_global(std::size_t n, const GlGalleryOptions& opts) {
  if (n < 3) throw Error(ErrorCode::BadParameters, "the GL gallery needs n >= 3");
  if (opts.odd_sign && n % 2 == 1)
    throw Error(ErrorCode::OddN, "f(-x) = -f(x) gives an odd h only for even n");
  gallery_lattice(opts);  // validates p, q

  const GroupTag g = GroupTag::make(Family::GL, Field::R, n);
  Rng rng(derive_seed(opts.seed, 1));
  std::vector<MatQ> ins;
  if (opts.det_one) {
    for (int i = 0; i < 4; ++i) ins.push_back(random_sl_q(n, rng));
    ins.push_back(ins[0] * ins[1]);
    ins.push_back(ins[2] * ins[3]);
  } else {
    const Rational& p = opts.p;
    const Rational& q = opts.q;
    MatQ bp = random_gl_q_with_det(n, p, rng);
    MatQ bq = random_gl_q_with_det(n, q, rng);
    MatQ bm = random_gl_q_with_det(n, Rational(-1), rng);
    ins = {bp, bq, bp * bq, bm * bp, bm * bq, bm * bp * bq};
    for (const Rational& d : {Rational(1) / p, q * q, p * p * q, Rational(1)})
      ins.push_back(random_gl_q_with_det(n, d, rng));
  }

  GlGalleryItem item;
  item.samples.group = g;
  for (const auto& b : ins) {
    SignedFactored f = gallery_f(factor(det(b)), n, opts);
    item.samples.pairs.push_back({AnyMatrix(b), ScaledMatrix::make(f, AnyMatrix(b))});
  }
  item.certificate = certify_gl_samples(item.samples, opts);
  return item;
}

Certificate certify_gl_samples(const SampleMap& m, const GlGalleryOptions& opts) {
  Certificate cert;
  const std::size_t n = m.group.n;

  LocalCheckOptions lo;
  lo.threads = opts.threads;
  MapReport mr = check_map(m, opts.seed, lo);
  std::size_t interp = 0;
  for (const auto& pv : mr.pairs)
    if (pv.status == PairStatus::Interpolable) ++interp;
  const bool pairwise = mr.status == MapStatus::LocalAutomorphismEvidence && interp == mr.pairs.size();
  cert.evidence.push_back({"all pairs interpolable", pairwise,
                           std::to_string(interp) + " of " + std::to_string(mr.pairs.size()) + " pairs Interpolable (" +
                               std::string(map_status_name(mr.status)) + ")"});
  cert.pairs = mr.pairs;

  // f-table read off the samples: phi(B) = f(det B) B.
  ScalarTable table;
  std::vector<SignedFactored> fs;
  bool readable = true;
  std::string unreadable;
  for (std::size_t i = 0; i < m.pairs.size(); ++i) {
    const MatQ* b = as_q(m.pairs[i].in);
    const MatQ* y = as_q(m.pairs[i].out.m);
    std::optional<Rational> l;
    if (b && y) l = ratio(*y, *b);
    if (!l) {
      readable = false;
      if (unreadable.empty()) unreadable = "sample " + std::to_string(i) + " is not a scalar multiple of its input";
      fs.emplace_back();
      continue;
    }
    SignedFactored f = m.pairs[i].out.scale * factor(*l);
    SignedFactored d = factor(det(*b));
    fs.push_back(f);
    bool seen = false;
    for (const auto& tp : table)
      if (tp.x == d) {
        seen = true;
        if (!(tp.value == f) && unreadable.empty()) {
          readable = false;
          unreadable = "two samples of determinant " + d.str() + " disagree";
        }
      }
    if (!seen) table.push_back({d, f});
  }
  cert.evidence.push_back({"phi(B) = f(det B) B", readable, readable ? std::to_string(table.size()) + " determinants" : unreadable});

  // h(x) = f(x)^n x at p, q and pq.
  auto h_at = [&](const Rational& x) -> std::optional<SignedFactored> {
    SignedFactored fx = factor(x);
    for (const auto& tp : table)
      if (tp.x == fx) return tp.value.pow(Rational(static_cast<long>(n))) * fx;
    return std::nullopt;
  };
  auto hp = h_at(opts.p), hq = h_at(opts.q), hpq = h_at(opts.p * opts.q);
  if (hp && hq && hpq) {
    SignedFactored prod = *hp * *hq;
    std::ostringstream os;
    os << "h(" << opts.p.str() << ") = " << hp->str() << ", h(" << opts.q.str() << ") = " << hq->str() << ", h("
       << (opts.p * opts.q).str() << ") = " << hpq->str() << "; h(" << opts.p.str() << ") h(" << opts.q.str()
       << ") = " << prod.str() << (prod == *hpq ? " = " : " != ") << hpq->str();
    cert.evidence.push_back({"h(" + opts.p.str() + ") h(" + opts.q.str() + ") = h(" + (opts.p * opts.q).str() + ")",
                             prod == *hpq, os.str()});
  }

  // One character for the whole table, checked on every sample.
  bool global = false;
  if (readable) {
    auto ext = interpolating_character(table, n, 1);
    if (ext.witness) {
      auto phi = Automorphism::build(m.group, Kind::Standard, MatQ::identity(n), Sigma::Id, MulFunc::real_hom(*ext.witness));
      std::size_t bad = 0;
      for (const auto& sp : m.pairs)
        if (!scaled_equal(phi.apply_scaled(sp.in), sp.out)) ++bad;
      global = bad == 0;
      cert.evidence.push_back({"single automorphism matches all samples", global,
                               global ? phi.describe() : std::to_string(bad) + " samples differ from " + phi.describe()});
    } else {
      cert.evidence.push_back({"single automorphism matches all samples", false, ext.reason});
    }
  }

  // Product triples inside the sample set.
  std::size_t triples = 0, violated = 0;
  std::string first;
  for (std::size_t i = 0; i < m.pairs.size(); ++i)
    for (std::size_t j = 0; j < m.pairs.size(); ++j) {
      if (i == j) continue;
      AnyMatrix prod = any_mul(m.pairs[i].in, m.pairs[j].in);
      for (std::size_t k = 0; k < m.pairs.size(); ++k) {
        if (!(m.pairs[k].in == prod)) continue;
        ++triples;
        const auto& a = m.pairs[i].out;
        const auto& b = m.pairs[j].out;
        ScaledMatrix ab = ScaledMatrix::make(a.scale * b.scale, any_mul(a.m, b.m));
        if (!scaled_equal(ab, m.pairs[k].out)) {
          if (++violated == 1)
            first = "samples " + std::to_string(i) + ", " + std::to_string(j) + " -> " + std::to_string(k) +
                    ": phi(A) phi(B) = " + (a.scale * b.scale).str() + " AB, phi(AB) = " + m.pairs[k].out.scale.str() + " AB";
        }
      }
    }
  if (triples > 0)
    cert.evidence.push_back({"phi(AB) = phi(A) phi(B)", violated == 0,
                             violated == 0 ? std::to_string(triples) + " product triples"
                                           : std::to_string(violated) + " of " + std::to_string(triples) +
                                                 " product triples violate; " + first});

  if (pairwise && global && violated == 0)
    cert.claim = Claim::IsAutomorphism;
  else if (pairwise && (!global || violated > 0))
    cert.claim = Claim::IsLocalNotGlobal;
  else
    cert.claim = Claim::PairwiseOnlyEvidence;
  return cert;
}

// ---- additive group ----------------------------------------------------------

namespace {

bool is_zero_vec(const QVec& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

// lambda with x = lambda r, or nullopt.
std::optional<Rational> multiple_of(const QVec& x, const QVec& r) {
  std::optional<Rational> l;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i].is_zero()) {
      if (!x[i].is_zero()) return std::nullopt;
      continue;
    }
    Rational li = x[i] / r[i];
    if (l && !(*l == li)) return std::nullopt;
    l = li;
  }
  return l;
}

QVec scaled(const QVec& v, const Rational& l) {
  QVec out = v;
  for (auto& x : out) x = x * l;
  return out;
}

QVec added(const QVec& a, const QVec& b) {
  QVec out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = out[i] + b[i];
  return out;
}

std::string vec_str(const QVec& v, const std::vector<std::string>& labels) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    const bool neg = v[i].sign() < 0;
    Rational a = neg ? -v[i] : v[i];
    if (s.empty())
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    if (!(a == Rational(1))) s += a.str() + " ";
    s += labels[i];
  }
  return s.empty() ? "0" : s;
}

// Columns vs, then standard basis vectors, keeping a basis of Q^k.
MatQ extend_to_basis(const std::vector<QVec>& vs, std::size_t k) {
  std::vector<QVec> cols = vs;
  for (std::size_t e = 0; e < k && cols.size() < k; ++e) {
    QVec u(k, Rational(0));
    u[e] = Rational(1);
    cols.push_back(u);
    MatQ m(k, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
      for (std::size_t r = 0; r < k; ++r) m(r, c) = cols[c][r];
    if (rank(m) < cols.size()) cols.pop_back();
  }
  MatQ m(k, k);
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t r = 0; r < k; ++r) m(r, c) = cols[c][r];
  return m;
}

QVec mat_vec(const MatQ& m, const QVec& v) { return (m * MatQ::column(v)).column_vector(0); }

bool independent(const QVec& a, const QVec& b) {
  MatQ m(a.size(), 2);
  for (std::size_t r = 0; r < a.size(); ++r) {
    m(r, 0) = a[r];
    m(r, 1) = b[r];
  }
  return rank(m) == 2;
}

std::vector<std::string> labels_of(const AdditiveMap& m) {
  if (!m.labels.empty()) return m.labels;
  std::vector<std::string> l;
  for (std::size_t i = 0; i < m.k; ++i) l.push_back("g" + std::to_string(i + 1));
  return l;
}

}  // namespace

void AdditiveMap::validate() const {
  if (k < 2) throw Error(ErrorCode::TooFewGenerators, "the additive example needs at least 2 generators");
  if (!labels.empty() && labels.size() != k) throw Error(ErrorCode::BadParameters, "one label per generator");
  if (lines.empty()) throw Error(ErrorCode::BadParameters, "no lines assigned");
  for (std::size_t a = 0; a < lines.size(); ++a) {
    const auto& la = lines[a];
    if (la.rep.size() != k || la.image.size() != k) throw Error(ErrorCode::DimensionMismatch, "vector length is not k");
    if (is_zero_vec(la.rep) || is_zero_vec(la.image)) throw Error(ErrorCode::BadParameters, "zero vector on a line");
    for (std::size_t b = 0; b < a; ++b) {
      if (!independent(la.rep, lines[b].rep))
        throw Error(ErrorCode::BadParameters, "lines " + std::to_string(b) + " and " + std::to_string(a) + " coincide");
      if (!independent(la.image, lines[b].image))
        throw Error(ErrorCode::BadParameters,
                    "lines " + std::to_string(b) + " and " + std::to_string(a) + " have the same image line");
    }
  }
}

std::optional<QVec> AdditiveMap::eval(const QVec& x) const {
  if (x.size() != k) throw Error(ErrorCode::DimensionMismatch, "vector length is not k");
  for (const auto& l : lines)
    if (auto lam = multiple_of(x, l.rep)) return scaled(l.image, *lam);
  return std::nullopt;
}

AdditiveMap default_additive_map(std::size_t k) {
  if (k < 2) throw Error(ErrorCode::TooFewGenerators, "the additive example needs at least 2 generators");
  AdditiveMap m;
  m.k = k;
  for (std::size_t i = 0; i < k; ++i) {
    QVec e(k, Rational(0));
    e[i] = Rational(1);
    m.lines.push_back({e, scaled(e, Rational(static_cast<long>(i + 1)))});
  }
  QVec s(k, Rational(0));
  s[0] = s[1] = Rational(1);
  m.lines.push_back({s, s});
  return m;
}

AdditiveMap identity_additive_map(std::size_t k) {
  AdditiveMap m = default_additive_map(k);
  for (auto& l : m.lines) l.image = l.rep;
  return m;
}

AdditiveItem gallery_additive_R(std::size_t k) { return gallery_additive_R(default_additive_map(k)); }

AdditiveItem gallery_additive_R(const AdditiveMap& map) {
  map.validate();
  AdditiveItem item;
  item.map = map;
  for (const auto& l : map.lines)
    for (const Rational& lam : {Rational(1), Rational(2), Rational(-1, 2)}) item.samples.push_back(scaled(l.rep, lam));
  item.certificate = certify_additive(map, item.samples);
  return item;
}

Certificate certify_additive(const AdditiveMap& map, const std::vector<QVec>& samples) {
  map.validate();
  const std::size_t k = map.k;
  const auto labels = labels_of(map);
  Certificate cert;

  std::vector<QVec> images;
  for (const auto& x : samples) {
    auto y = map.eval(x);
    if (!y) throw Error(ErrorCode::BadParameters, vec_str(x, labels) + " is not on an assigned line");
    images.push_back(*y);
  }

  // Pairs: free extension on independent pairs, transport on dependent ones.
  std::size_t ok = 0, total = 0;
  std::string first_bad;
  for (std::size_t i = 0; i < samples.size(); ++i)
    for (std::size_t j = i + 1; j < samples.size(); ++j) {
      ++total;
      const QVec &x = samples[i], &y = samples[j];
      const QVec &fx = images[i], &fy = images[j];
      bool good = false;
      MatQ mm;
      if (independent(x, y)) {
        if (independent(fx, fy)) mm = extend_to_basis({fx, fy}, k) * inverse(extend_to_basis({x, y}, k));
      } else if (auto lam = multiple_of(y, x); lam && scaled(fx, *lam) == fy) {
        mm = extend_to_basis({fx}, k) * inverse(extend_to_basis({x}, k));
      }
      if (mm.rows() == k)
        good = !det(mm).is_zero() && mat_vec(mm, x) == fx && mat_vec(mm, y) == fy;
      if (good)
        ++ok;
      else if (first_bad.empty())
        first_bad = "no Q-linear bijection sends " + vec_str(x, labels) + ", " + vec_str(y, labels) + " to " +
                    vec_str(fx, labels) + ", " + vec_str(fy, labels);
    }
  const bool pairwise = ok == total;
  cert.evidence.push_back({"pairwise Q-linear bijections", pairwise,
                           pairwise ? std::to_string(total) + " of " + std::to_string(total) + " pairs" : first_bad});

  // An additivity triple x, y, x + y, all on assigned lines.
  std::string violation;
  std::size_t triples = 0;
  for (std::size_t i = 0; i < samples.size() && violation.empty(); ++i)
    for (std::size_t j = i + 1; j < samples.size() && violation.empty(); ++j) {
      if (!independent(samples[i], samples[j])) continue;
      QVec s = added(samples[i], samples[j]);
      auto fs = map.eval(s);
      if (!fs) continue;
      ++triples;
      QVec sum = added(images[i], images[j]);
      if (!(sum == *fs))
        violation = "phi(" + vec_str(samples[i], labels) + ") + phi(" + vec_str(samples[j], labels) +
                    ") = " + vec_str(sum, labels) + " != " + vec_str(*fs, labels) + " = phi(" + vec_str(s, labels) + ")";
    }
  cert.evidence.push_back({"phi(x + y) = phi(x) + phi(y)", violation.empty(),
                           violation.empty() ? std::to_string(triples) + " triples" : violation});

  // A single Q-linear map M with M rep = image on every line: k^2 unknowns.
  const std::size_t L = map.lines.size();
  MatQ sys(k * L, k * k);
  std::vector<Rational> rhs(k * L, Rational(0));
  for (std::size_t a = 0; a < L; ++a)
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t c = 0; c < k; ++c) sys(a * k + r, r * k + c) = map.lines[a].rep[c];
      rhs[a * k + r] = map.lines[a].image[r];
    }
  bool global = false;
  std::string gdetail = "the line assignments admit no common Q-linear map";
  if (auto sol = solve(sys, rhs)) {
    MatQ mm(k, k);
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c) mm(r, c) = (*sol)[r * k + c];
    bool fits = !det(mm).is_zero();
    for (std::size_t i = 0; i < samples.size() && fits; ++i) fits = mat_vec(mm, samples[i]) == images[i];
    global = fits;
    std::ostringstream os;
    os << "M = [";
    for (std::size_t r = 0; r < k; ++r) {
      os << (r ? "; " : "");
      for (std::size_t c = 0; c < k; ++c) os << (c ? " " : "") << mm(r, c).str();
    }
    os << "]";
    gdetail = fits ? os.str() : os.str() + " is singular";
  }
  cert.evidence.push_back({"single Q-linear bijection", global, gdetail});

  if (pairwise && global)
    cert.claim = Claim::IsAutomorphism;
  else if (pairwise && !violation.empty())
    cert.claim = Claim::IsLocalNotGlobal;
  else
    cert.claim = Claim::PairwiseOnlyEvidence;
  return cert;
}

// ---- sign twist -------------------------------------------------------------

SignTwistItem gallery_sign_twist(std::size_t n, std::uint64_t seed) {
  if (n % 2 == 1)
    throw Error(ErrorCode::OddN, "sign(det A) A is not an automorphism for odd n: x -> sign(x)^n x = |x|");
  const GroupTag g = GroupTag::make(Family::GL, Field::R, n);
  const MulFunc sign = MulFunc::power(Rational(0), NegSign::Flip);
  SignTwistItem item{Automorphism::build(g, Kind::Standard, MatQ::identity(n), Sigma::Id, sign), {}};

  auto cv = check_M1r(sign, n);
  item.certificate.evidence.push_back({"sign character in M1r", cv.yes, cv.certificate});

  Rng rng(derive_seed(seed, 2));
  MatQ flip = MatQ::identity(n);
  flip(0, 0) = Rational(-1);
  auto img = [&](const MatQ& a) { return std::get<MatQ>(item.phi.apply(a)); };
  std::size_t bad = 0, tested = 0;
  for (int t = 0; t < 24; ++t) {
    MatQ a = random_gl_q(n, rng), b = random_gl_q(n, rng);
    // Cover all four sign combinations.
    if (det(a).sign() != ((t & 1) ? -1 : 1)) a = flip * a;
    if (det(b).sign() != ((t & 2) ? -1 : 1)) b = flip * b;
    ++tested;
    if (!(img(a * b) == img(a) * img(b))) ++bad;
  }
  item.certificate.evidence.push_back({"phi(AB) = phi(A) phi(B)", bad == 0,
                                       std::to_string(tested - bad) + " of " + std::to_string(tested) + " pairs"});
  std::size_t fixed = 0;
  for (int t = 0; t < 8; ++t) {
    MatQ a = random_sl_q(n, rng);
    if (img(a) == a) ++fixed;
  }
  item.certificate.evidence.push_back({"phi(A) = A for det A = 1", fixed == 8, std::to_string(fixed) + " of 8"});
  const bool all = cv.yes && bad == 0 && fixed == 8;
  item.certificate.claim = all ? Claim::IsAutomorphism : Claim::PairwiseOnlyEvidence;
  return item;
}

}  // namespace locaut
