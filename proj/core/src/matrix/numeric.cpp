#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "locaut/matrix/linalg.hpp"

namespace locaut {

namespace {

Eigen::MatrixXcd to_eigen(const MatC& m) {
  Eigen::MatrixXcd e(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
  return e;
}

MatC from_eigen(const Eigen::MatrixXcd& e) {
  MatC m(static_cast<std::size_t>(e.rows()), static_cast<std::size_t>(e.cols()));
  for (Eigen::Index i = 0; i < e.rows(); ++i)
    for (Eigen::Index j = 0; j < e.cols(); ++j) m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = e(i, j);
  return m;
}

}  // namespace

Complex det(const MatC& m) {
  if (!m.is_square()) throw Error(ErrorCode::DimensionMismatch, "det of non-square matrix");
  return to_eigen(m).partialPivLu().determinant();
}

MatC inverse(const MatC& m, double tol) {
  if (!m.is_square()) throw Error(ErrorCode::DimensionMismatch, "inverse of non-square matrix");
  Eigen::MatrixXcd e = to_eigen(m);
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(e);
  if (std::abs(lu.determinant()) <= tol) throw Error(ErrorCode::SingularMatrix, "matrix is numerically singular");
  return from_eigen(lu.inverse());
}

std::vector<double> singular_values(const MatC& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(m));
  const auto& s = svd.singularValues();
  return std::vector<double>(s.data(), s.data() + s.size());
}

std::size_t numeric_rank(const MatC& m, double rel_tol) {
  auto s = singular_values(m);
  if (s.empty() || s[0] == 0.0) return 0;
  std::size_t r = 0;
  for (double v : s)
    if (v > rel_tol * s[0]) ++r;
  return r;
}

std::vector<std::vector<Complex>> numeric_nullspace(const MatC& m, double rel_tol) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(m), Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const Eigen::MatrixXcd& v = svd.matrixV();
  double top = s.size() > 0 ? s(0) : 0.0;
  std::vector<std::vector<Complex>> basis;
  for (Eigen::Index k = 0; k < v.cols(); ++k) {
    double sk = k < s.size() ? s(k) : 0.0;
    if (top == 0.0 || sk <= rel_tol * top) {
      std::vector<Complex> col(static_cast<std::size_t>(v.rows()));
      for (Eigen::Index i = 0; i < v.rows(); ++i) col[static_cast<std::size_t>(i)] = v(i, k);
      basis.push_back(std::move(col));
    }
  }
  return basis;
}

MatC polar_unitary(const MatC& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(m), Eigen::ComputeFullU | Eigen::ComputeFullV);
  return from_eigen(svd.matrixU() * svd.matrixV().adjoint());
}

std::vector<Complex> eigenvalues(const MatC& m) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(to_eigen(m), false);
  const auto& ev = es.eigenvalues();
  return std::vector<Complex>(ev.data(), ev.data() + ev.size());
}

MatC qr_unitary(const MatC& m) {
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(to_eigen(m));
  Eigen::MatrixXcd q = qr.householderQ();
  Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < q.cols(); ++k) {
    Complex d = r(k, k);
    if (std::abs(d) > 0) q.col(k) *= d / std::abs(d);
  }
  return from_eigen(q);
}

}  // namespace locaut
