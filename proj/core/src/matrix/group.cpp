#include "locaut/matrix/group.hpp"

#include <sstream>

#include "locaut/matrix/linalg.hpp"

namespace locaut {

std::string_view family_name(Family f) {
  switch (f) {
    case Family::GL: return "GL";
    case Family::SL: return "SL";
    case Family::Un: return "Un";
    case Family::SUn: return "SUn";
    case Family::SLminus: return "SLminus";
  }
  return "?";
}

Family parse_family(std::string_view text) {
  if (text == "GL") return Family::GL;
  if (text == "SL") return Family::SL;
  if (text == "Un" || text == "U") return Family::Un;
  if (text == "SUn" || text == "SU") return Family::SUn;
  if (text == "SLminus") return Family::SLminus;
  throw Error(ErrorCode::FileFormat, "unknown group family '" + std::string(text) + "'");
}

GroupTag GroupTag::make(Family family, Field field, std::size_t n) {
  if (n < 3) throw Error(ErrorCode::BadParameters, "n must be at least 3");
  if ((family == Family::Un || family == Family::SUn) && field != Field::C)
    throw Error(ErrorCode::BadParameters, "unitary groups are complex");
  if (family == Family::SLminus && field != Field::R)
    throw Error(ErrorCode::BadParameters, "SLminus is real");
  return GroupTag{family, field, n};
}

GroupTag GroupTag::parse(std::string_view s) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == '-') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  parts.push_back(cur);
  auto parse_n = [&](const std::string& t) -> std::size_t {
    try {
      std::size_t pos = 0;
      long v = std::stol(t, &pos);
      if (pos != t.size() || v < 0) throw Error(ErrorCode::BadArgs, "");
      return static_cast<std::size_t>(v);
    } catch (...) {
      throw Error(ErrorCode::BadArgs, "bad dimension in group name '" + std::string(s) + "'");
    }
  };
  if (parts.size() == 3) {
    Field f = parts[1] == "r" ? Field::R : (parts[1] == "c" ? Field::C : throw Error(ErrorCode::BadArgs, "bad field"));
    if (parts[0] == "gl") return make(Family::GL, f, parse_n(parts[2]));
    if (parts[0] == "sl") return make(Family::SL, f, parse_n(parts[2]));
    if (parts[0] == "slminus") return make(Family::SLminus, f, parse_n(parts[2]));
  } else if (parts.size() == 2) {
    if (parts[0] == "u") return make(Family::Un, Field::C, parse_n(parts[1]));
    if (parts[0] == "su") return make(Family::SUn, Field::C, parse_n(parts[1]));
  }
  throw Error(ErrorCode::BadArgs, "unknown group name '" + std::string(s) + "'");
}

std::string GroupTag::str() const {
  std::ostringstream os;
  os << family_name(family) << "(" << (field == Field::R ? "R" : "C") << "," << n << ")";
  return os.str();
}

std::string GroupTag::short_name() const {
  std::ostringstream os;
  switch (family) {
    case Family::GL: os << "gl-" << (field == Field::R ? "r" : "c") << "-" << n; break;
    case Family::SL: os << "sl-" << (field == Field::R ? "r" : "c") << "-" << n; break;
    case Family::SLminus: os << "slminus-r-" << n; break;
    case Family::Un: os << "u-" << n; break;
    case Family::SUn: os << "su-" << n; break;
  }
  return os.str();
}

Regime regime_of(const AnyMatrix& m) {
  return static_cast<Regime>(m.index());
}

std::size_t dim_of(const AnyMatrix& m) {
  return std::visit([](const auto& x) { return x.rows(); }, m);
}

Complex to_complex(const AnyScalar& s) {
  return std::visit([](const auto& x) { return ScalarTraits<std::decay_t<decltype(x)>>::to_complex(x); }, s);
}

std::string scalar_str(const AnyScalar& s) {
  if (auto* q = std::get_if<Rational>(&s)) return q->str();
  if (auto* g = std::get_if<GaussRational>(&s)) return g->str();
  std::ostringstream os;
  os.precision(17);
  auto c = std::get<Complex>(s);
  os << c.real() << (c.imag() < 0 ? "" : "+") << c.imag() << "i";
  return os.str();
}

template <class S>
Matrix<S> as_regime(const AnyMatrix& m) {
  return std::visit(
      [](const auto& x) -> Matrix<S> {
        using From = typename std::decay_t<decltype(x)>::Scalar;
        if constexpr (static_cast<int>(ScalarTraits<From>::regime) > static_cast<int>(ScalarTraits<S>::regime)) {
          throw Error(ErrorCode::RegimeMismatch, std::string("cannot narrow ") +
                                                     std::string(regime_name(ScalarTraits<From>::regime)) + " to " +
                                                     std::string(regime_name(ScalarTraits<S>::regime)));
        } else {
          return convert_matrix<S>(x);
        }
      },
      m);
}

template MatQ as_regime<Rational>(const AnyMatrix&);
template MatG as_regime<GaussRational>(const AnyMatrix&);
template MatC as_regime<Complex>(const AnyMatrix&);

Regime join(Regime a, Regime b) { return static_cast<int>(a) >= static_cast<int>(b) ? a : b; }

AnyMatrix promote(const AnyMatrix& m, Regime target) {
  switch (target) {
    case Regime::QR: return as_regime<Rational>(m);
    case Regime::QC: return as_regime<GaussRational>(m);
    case Regime::C64: return as_regime<Complex>(m);
  }
  return m;
}

AnyScalar det_any(const AnyMatrix& m) {
  return std::visit([](const auto& x) -> AnyScalar { return det(x); }, m);
}

AnyMatrix any_mul(const AnyMatrix& a, const AnyMatrix& b) {
  Regime r = join(regime_of(a), regime_of(b));
  switch (r) {
    case Regime::QR: return as_regime<Rational>(a) * as_regime<Rational>(b);
    case Regime::QC: return as_regime<GaussRational>(a) * as_regime<GaussRational>(b);
    case Regime::C64: return as_regime<Complex>(a) * as_regime<Complex>(b);
  }
  return a;
}

AnyMatrix any_inverse(const AnyMatrix& m) {
  return std::visit([](const auto& x) -> AnyMatrix { return inverse(x); }, m);
}

AnyMatrix any_sigma(const AnyMatrix& m, Sigma s) {
  return std::visit([&](const auto& x) -> AnyMatrix { return x.apply_sigma(s); }, m);
}

AnyMatrix any_transpose(const AnyMatrix& m) {
  return std::visit([](const auto& x) -> AnyMatrix { return x.transpose(); }, m);
}

AnyMatrix any_scale(const AnyMatrix& m, const Rational& q) {
  return std::visit(
      [&](const auto& x) -> AnyMatrix {
        using S = typename std::decay_t<decltype(x)>::Scalar;
        if constexpr (std::is_same_v<S, Complex>) return x * Complex(q.to_double(), 0.0);
        else return x * S(q);
      },
      m);
}

bool any_is_real(const AnyMatrix& m) {
  return std::visit(
      [](const auto& x) {
        for (const auto& v : x.data())
          if (ScalarTraits<std::decay_t<decltype(v)>>::to_complex(v).imag() != 0.0) return false;
        return true;
      },
      m);
}

AnyMatrix narrow_real(const AnyMatrix& m) {
  if (regime_of(m) != Regime::QC || !any_is_real(m)) return m;
  const auto& g = std::get<MatG>(m);
  MatQ out(g.rows(), g.cols());
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) out(i, j) = g(i, j).re();
  return out;
}

double any_max_abs_diff(const AnyMatrix& a, const AnyMatrix& b) {
  Regime r = join(regime_of(a), regime_of(b));
  if (r == Regime::C64) return max_abs_diff(as_regime<Complex>(a), as_regime<Complex>(b));
  if (r == Regime::QC) return max_abs_diff(as_regime<GaussRational>(a), as_regime<GaussRational>(b));
  return max_abs_diff(as_regime<Rational>(a), as_regime<Rational>(b));
}

bool approx_equal(const AnyMatrix& a, const AnyMatrix& b, double tol) {
  if (dim_of(a) != dim_of(b)) return false;
  Regime r = join(regime_of(a), regime_of(b));
  if (r == Regime::C64) return max_abs_diff(as_regime<Complex>(a), as_regime<Complex>(b)) <= tol;
  if (r == Regime::QC) return as_regime<GaussRational>(a) == as_regime<GaussRational>(b);
  return as_regime<Rational>(a) == as_regime<Rational>(b);
}

namespace {

template <class S>
Membership member_impl(const Matrix<S>& a, const GroupTag& g, double tol) {
  Membership m;
  if (!a.is_square() || a.rows() != g.n) {
    m.witness = "dimension mismatch";
    return m;
  }
  if constexpr (ScalarTraits<S>::regime != Regime::QR) {
    if (g.field == Field::R) {
      for (const auto& x : a.data()) {
        double im = std::abs(ScalarTraits<S>::to_complex(x).imag());
        if (ScalarTraits<S>::exact ? im != 0.0 : im > tol) {
          m.witness = "real group needs real entries";
          return m;
        }
      }
    }
  }
  auto d = det(a);
  m.det = d;
  auto near = [&](const S& x, const S& y) { return ScalarTraits<S>::is_zero(x - y, tol); };
  bool unitary_group = false;
  switch (g.family) {
    case Family::GL:
      m.member = !ScalarTraits<S>::is_zero(d, tol);
      break;
    case Family::SL:
      m.member = near(d, S(1));
      break;
    case Family::SLminus:
      m.member = near(d, S(-1));
      break;
    case Family::Un:
    case Family::SUn: {
      unitary_group = true;
      bool unitary = ScalarTraits<S>::exact ? a.adjoint() * a == Matrix<S>::identity(a.rows())
                                            : unitarity_defect(a) <= tol;
      m.member = unitary && (g.family == Family::Un || near(d, S(1)));
      break;
    }
  }
  // The witness text is only built for rejections.
  if (!m.member) {
    std::ostringstream os;
    os << "det = " << scalar_str(AnyScalar(d));
    if (unitary_group) os << ", |A*A - I| = " << unitarity_defect(a);
    m.witness = os.str();
  }
  return m;
}

}  // namespace

Membership member(const AnyMatrix& a, const GroupTag& g, double tol) {
  return std::visit([&](const auto& x) { return member_impl(x, g, tol); }, a);
}

}  // namespace locaut
