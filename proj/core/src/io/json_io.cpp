#include "locaut/io/json_io.hpp"

#include <cctype>

namespace locaut::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::FileFormat, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object()) bad(std::string("expected an object with field '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing field '") + key + "'");
  return *it;
}

std::string str_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_string()) bad(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

// Re-raises library errors on parsed values as FileFormat.
template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::FileFormat) throw;
    bad(std::string(what) + ": " + e.what());
  } catch (const json::exception& e) {
    bad(std::string(what) + ": " + e.what());
  }
}

json complex_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

Complex complex_from(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  const json& re = field(j, "re");
  const json& im = field(j, "im");
  if (!re.is_number() || !im.is_number()) bad("C64 entries need numeric re and im");
  return {re.get<double>(), im.get<double>()};
}

GaussRational gauss_from(const json& j) {
  if (j.is_string() || j.is_number_integer()) return GaussRational(rational_from_json(j));
  return GaussRational(rational_from_json(field(j, "re")), rational_from_json(field(j, "im")));
}

template <class S, class F>
Matrix<S> rows_from(const json& j, F&& entry) {
  const json& rows = field(j, "rows");
  if (!rows.is_array() || rows.empty()) bad("'rows' must be a nonempty array");
  std::size_t n = rows.size();
  if (j.contains("n") && (!j["n"].is_number_unsigned() || j["n"].get<std::size_t>() != n))
    bad("'n' does not match the number of rows");
  Matrix<S> m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    if (!rows[r].is_array() || rows[r].size() != n) bad("matrix rows must have length n");
    for (std::size_t c = 0; c < n; ++c) m(r, c) = entry(rows[r][c]);
  }
  return m;
}

json vec_json(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

std::vector<Rational> vec_from(const json& j) {
  if (!j.is_array()) bad("expected an array of rationals");
  std::vector<Rational> v;
  for (const auto& x : j) v.push_back(rational_from_json(x));
  return v;
}

json opt_json(const std::optional<SignedFactored>& x) { return x ? to_json(*x) : json(nullptr); }

}  // namespace

json to_json(const Rational& q) { return q.str(); }

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) bad("rationals are \"p/q\" strings");
  return guarded("bad rational", [&] { return Rational::parse(j.get<std::string>()); });
}

SignedFactored parse_factored(std::string_view text) {
  std::size_t i = 0;
  auto fail = [&]() -> void { bad("bad factored value '" + std::string(text) + "'"); };
  int sign = 1;
  if (i < text.size() && text[i] == '-') {
    sign = -1;
    ++i;
  }
  if (text.substr(i) == "1") return SignedFactored(sign, {});
  PrimeExponents exps;
  while (i < text.size()) {
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == start) fail();
    mpz_class p(std::string(text.substr(start, i - start)));
    if (mpz_probab_prime_p(p.get_mpz_t(), 30) == 0) fail();
    Rational e(1);
    if (i < text.size() && text[i] == '^') {
      ++i;
      std::size_t es;
      std::size_t ee;
      if (i < text.size() && text[i] == '(') {
        es = ++i;
        while (i < text.size() && text[i] != ')') ++i;
        if (i == text.size()) fail();
        ee = i++;
      } else {
        es = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        ee = i;
      }
      e = guarded("bad exponent", [&] { return Rational::parse(text.substr(es, ee - es)); });
    }
    if (exps.count(p)) fail();
    exps.emplace(p, e);
    if (i < text.size()) {
      if (text[i] != '*') fail();
      ++i;
      if (i == text.size()) fail();
    }
  }
  if (exps.empty()) fail();
  return SignedFactored(sign, std::move(exps));
}

json to_json(const SignedFactored& x) { return x.str(); }

SignedFactored factored_from_json(const json& j) {
  if (j.is_number_integer()) {
    long v = j.get<long>();
    if (v == 0) bad("factored values are nonzero");
    return factor(Rational(v));
  }
  if (!j.is_string()) bad("factored values are strings such as \"3^(1/3)\"");
  const std::string s = j.get<std::string>();
  // Plain rationals are accepted as well.
  if (s.find('^') == std::string::npos && s.find('*') == std::string::npos) {
    Rational q = rational_from_json(j);
    if (q.is_zero()) bad("factored values are nonzero");
    return factor(q);
  }
  return parse_factored(s);
}

json to_json(const AnyMatrix& m) {
  json rows = json::array();
  std::visit(
      [&](const auto& a) {
        using S = typename std::decay_t<decltype(a)>::Scalar;
        for (std::size_t r = 0; r < a.rows(); ++r) {
          json row = json::array();
          for (std::size_t c = 0; c < a.cols(); ++c) {
            if constexpr (std::is_same_v<S, Rational>)
              row.push_back(a(r, c).str());
            else if constexpr (std::is_same_v<S, GaussRational>)
              row.push_back({{"re", a(r, c).re().str()}, {"im", a(r, c).im().str()}});
            else
              row.push_back(complex_json(a(r, c)));
          }
          rows.push_back(row);
        }
      },
      m);
  return {{"n", dim_of(m)}, {"regime", std::string(regime_name(regime_of(m)))}, {"rows", rows}};
}

AnyMatrix matrix_from_json(const json& j) {
  Regime reg = guarded("bad regime", [&] { return parse_regime(str_field(j, "regime")); });
  switch (reg) {
    case Regime::QR: return rows_from<Rational>(j, [](const json& e) { return rational_from_json(e); });
    case Regime::QC: return rows_from<GaussRational>(j, [](const json& e) { return gauss_from(e); });
    case Regime::C64: return rows_from<Complex>(j, [](const json& e) { return complex_from(e); });
  }
  bad("unknown regime");
}

json to_json(const ScaledMatrix& m) {
  if (m.is_plain()) return to_json(m.m);
  return {{"scale", to_json(m.scale)}, {"matrix", to_json(m.m)}};
}

ScaledMatrix scaled_from_json(const json& j) {
  if (j.is_object() && j.contains("scale"))
    return ScaledMatrix::make(factored_from_json(j["scale"]), matrix_from_json(field(j, "matrix")));
  return ScaledMatrix(matrix_from_json(j));
}

json to_json(const GroupTag& g) {
  return {{"family", std::string(family_name(g.family))}, {"field", g.field == Field::R ? "R" : "C"}, {"n", g.n}};
}

GroupTag group_from_json(const json& j) {
  if (j.is_string())
    return guarded("bad group", [&] { return GroupTag::parse(j.get<std::string>()); });
  return guarded("bad group", [&] {
    Family f = parse_family(str_field(j, "family"));
    std::string fl = str_field(j, "field");
    if (fl != "R" && fl != "C") bad("field must be \"R\" or \"C\"");
    const json& n = field(j, "n");
    if (!n.is_number_unsigned()) bad("n must be a positive integer");
    return GroupTag::make(f, fl == "R" ? Field::R : Field::C, n.get<std::size_t>());
  });
}

json to_json(const RealLattice& l) {
  json gens = json::array();
  for (const auto& g : l.generators) gens.push_back(to_json(g));
  return {{"gens", gens}, {"with_sign", l.with_sign}};
}

RealLattice real_lattice_from_json(const json& j) {
  const json& gens = field(j, "gens");
  if (!gens.is_array()) bad("'gens' must be an array");
  std::vector<SignedFactored> g;
  for (const auto& x : gens) g.push_back(factored_from_json(x));
  bool with_sign = j.value("with_sign", false);
  return guarded("bad lattice", [&] { return RealLattice::make(g, with_sign); });
}

json to_json(const CircleLattice& l) {
  json gens = json::array();
  for (const auto& g : l.generators) {
    json e = {{"label", g.label}};
    if (g.turns)
      e["turns"] = g.turns->str();
    else
      e["angle"] = g.angle;
    gens.push_back(e);
  }
  return {{"gens", gens}};
}

CircleLattice circle_lattice_from_json(const json& j) {
  const json& gens = field(j, "gens");
  if (!gens.is_array()) bad("'gens' must be an array");
  std::vector<AngleGen> g;
  for (const auto& x : gens) {
    std::string label = str_field(x, "label");
    if (x.contains("turns"))
      g.push_back(AngleGen::rational(label, rational_from_json(x["turns"])));
    else if (x.contains("angle") && x["angle"].is_number())
      g.push_back(AngleGen::symbolic(label, x["angle"].get<double>()));
    else
      bad("circle generators need 'turns' or 'angle'");
  }
  return guarded("bad circle lattice", [&] { return CircleLattice::make(g); });
}

json to_json(const MulFunc& g) {
  json repr;
  if (const auto* p = g.as_power()) {
    repr = {{"kind", "power"}, {"c", p->c.str()}, {"neg", p->neg == NegSign::Same ? "same" : "flip"}};
  } else if (const auto* h = g.as_real_hom()) {
    json im = json::array();
    for (const auto& x : h->images) im.push_back(to_json(x));
    repr = {{"kind", "lattice"}, {"gens", to_json(h->lattice)["gens"]}, {"with_sign", h->lattice.with_sign},
            {"images", im}, {"sign_image", h->sign_image}};
  } else if (const auto* c = g.as_circle_hom()) {
    json im = json::array();
    for (const auto& e : c->images) im.push_back(vec_json(e.v));
    repr = {{"kind", "lattice"}, {"gens", to_json(c->lattice)["gens"]}, {"images", im}};
  }
  return {{"ambient", g.ambient() == Ambient::RStar ? "Rstar" : "Circle"}, {"repr", repr}};
}

MulFunc mulfunc_from_json(const json& j) {
  std::string amb = str_field(j, "ambient");
  if (amb != "Rstar" && amb != "Circle") bad("ambient must be \"Rstar\" or \"Circle\"");
  const Ambient a = amb == "Rstar" ? Ambient::RStar : Ambient::Circle;
  const json& r = field(j, "repr");
  std::string kind = str_field(r, "kind");
  return guarded("bad mulfunc", [&]() -> MulFunc {
    if (kind == "power") {
      std::string neg = r.value("neg", std::string("same"));
      if (neg != "same" && neg != "flip") bad("neg must be \"same\" or \"flip\"");
      return MulFunc(a, ContinuousPower{rational_from_json(field(r, "c")), neg == "same" ? NegSign::Same : NegSign::Flip});
    }
    if (kind != "lattice") bad("repr kind must be \"power\" or \"lattice\"");
    const json& im = field(r, "images");
    if (!im.is_array()) bad("'images' must be an array");
    if (a == Ambient::RStar) {
      RealLattice l = real_lattice_from_json(r);
      std::vector<SignedFactored> images;
      for (const auto& x : im) images.push_back(factored_from_json(x));
      return MulFunc::real_hom(hom_on_lattice(l, images, r.value("sign_image", 1)));
    }
    CircleLattice l = circle_lattice_from_json(r);
    std::vector<CircleElem> images;
    for (const auto& x : im) images.push_back(CircleElem{vec_from(x)});
    return MulFunc::circle_hom(circle_hom(l, images));
  });
}

json to_json(const Automorphism& phi) {
  return {{"group", to_json(phi.group())},
          {"kind", std::string(kind_name(phi.kind()))},
          {"T", to_json(phi.T())},
          {"sigma", std::string(sigma_name(phi.sigma()))},
          {"g", phi.g().is_trivial() ? json(nullptr) : to_json(phi.g())}};
}

Automorphism automorphism_from_json(const json& j) {
  GroupTag g = group_from_json(field(j, "group"));
  std::string k = str_field(j, "kind");
  if (k != "std" && k != "contra") bad("kind must be \"std\" or \"contra\"");
  std::string s = j.value("sigma", std::string("id"));
  if (s != "id" && s != "conj") bad("sigma must be \"id\" or \"conj\"");
  AnyMatrix t = matrix_from_json(field(j, "T"));
  std::optional<MulFunc> gf;
  if (j.contains("g") && !j["g"].is_null()) gf = mulfunc_from_json(j["g"]);
  return guarded("invalid automorphism", [&] {
    return Automorphism::build(g, k == "std" ? Kind::Standard : Kind::Contragredient, t,
                               s == "id" ? Sigma::Id : Sigma::Conj, gf);
  });
}

json to_json(const SampleMap& m) {
  json pairs = json::array();
  for (const auto& p : m.pairs) pairs.push_back({{"in", to_json(p.in)}, {"out", to_json(p.out)}});
  return {{"group", to_json(m.group)}, {"pairs", pairs}};
}

SampleMap sample_map_from_json(const json& j) {
  SampleMap m;
  m.group = group_from_json(field(j, "group"));
  const json& pairs = field(j, "pairs");
  if (!pairs.is_array()) bad("'pairs' must be an array");
  for (const auto& p : pairs) m.pairs.push_back({matrix_from_json(field(p, "in")), scaled_from_json(field(p, "out"))});
  return m;
}

json to_json(const ClassVerdict& v) {
  return {{"yes", v.yes}, {"certificate", v.certificate}, {"assumes_extension", v.assumes_extension}};
}

json to_json(const PairVerdict& v) {
  return {{"i", v.i},
          {"j", v.j},
          {"status", std::string(pair_status_name(v.status))},
          {"witness", v.witness ? to_json(*v.witness) : json(nullptr)},
          {"reason", v.reason}};
}

json to_json(const MapReport& r) {
  json pairs = json::array();
  for (const auto& p : r.pairs) pairs.push_back(to_json(p));
  json refuting = r.refuting_pair ? json::array({r.refuting_pair->first, r.refuting_pair->second}) : json(nullptr);
  return {{"status", std::string(map_status_name(r.status))},
          {"summary", r.summary},
          {"refuting_pair", refuting},
          {"pairs", pairs}};
}

json to_json(const RecoveryReport& r) {
  json f = json::array();
  for (const auto& e : r.f_table) f.push_back({{"det", to_json(e.det)}, {"value", opt_json(e.value)}, {"note", e.note}});
  json k = json::array();
  for (const auto& e : r.k_table)
    k.push_back({{"point", vec_json(e.point.v)},
                 {"z", complex_json(e.z)},
                 {"value", complex_json(e.value)},
                 {"image", e.image ? vec_json(e.image->v) : json(nullptr)}});
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
  json failure = nullptr;
  if (r.failure) failure = {{"code", std::string(error_code_name(r.failure->code))}, {"detail", r.failure->detail}};
  return {{"method", r.method},
          {"group", to_json(r.group)},
          {"ok", r.ok()},
          {"recovered", r.recovered ? to_json(*r.recovered) : json(nullptr)},
          {"kind", r.kind ? json(std::string(kind_name(*r.kind))) : json(nullptr)},
          {"sigma", r.sigma ? json(std::string(sigma_name(*r.sigma))) : json(nullptr)},
          {"T", r.t ? to_json(*r.t) : json(nullptr)},
          {"residual", {{"pass", r.residual_pass}, {"samples", r.residual_samples}, {"failures", r.residual_failures}}},
          {"queries_used", r.queries_used},
          {"budget", r.budget},
          {"f_table", f},
          {"k_table", k},
          {"checks", checks},
          {"notes", r.notes},
          {"local_not_global", r.local_not_global},
          {"failure", failure}};
}

json to_json(const Certificate& c) {
  json ev = json::array();
  for (const auto& e : c.evidence) ev.push_back({{"identity", e.identity}, {"holds", e.holds}, {"detail", e.detail}});
  json pairs = json::array();
  for (const auto& p : c.pairs) pairs.push_back(to_json(p));
  return {{"claim", std::string(claim_name(c.claim))}, {"evidence", ev}, {"pairs", pairs}};
}

json to_json(const GlGalleryItem& item) {
  return {{"item", "gl-local-not-global"}, {"samples", to_json(item.samples)}, {"certificate", to_json(item.certificate)}};
}

json to_json(const AdditiveItem& item) {
  json lines = json::array();
  for (const auto& l : item.map.lines) lines.push_back({{"rep", vec_json(l.rep)}, {"image", vec_json(l.image)}});
  json samples = json::array();
  for (const auto& s : item.samples) samples.push_back(vec_json(s));
  json labels = item.map.labels;
  if (item.map.labels.empty()) {
    labels = json::array();
    for (std::size_t i = 0; i < item.map.k; ++i) labels.push_back("g" + std::to_string(i + 1));
  }
  return {{"item", "additive-r"},    {"k", item.map.k},         {"generators", labels},
          {"lines", lines},          {"samples", samples},      {"certificate", to_json(item.certificate)}};
}

json to_json(const SignTwistItem& item) {
  return {{"item", "sign-twist"}, {"automorphism", to_json(item.phi)}, {"certificate", to_json(item.certificate)}};
}

json error_json(const Error& e) { return {{"error", std::string(error_code_name(e.code()))}, {"detail", e.detail()}}; }

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace locaut::io
