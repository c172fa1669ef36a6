/// @file automorphism.hpp
/// Automorphisms of the classical groups in canonical form
///   standard:       A -> g(d(A)) T A_sigma T^{-1}
///   contragredient: A -> g(d(A)) T ((A_sigma)^{-1})^t T^{-1}
/// where d(A) = det A on GL(R), |det A| on GL(C), det(A_sigma) on U_n, and
/// g is trivial on SL and SU_n.
#pragma once

#include <optional>
#include <string>

#include "locaut/matrix/group.hpp"
#include "locaut/matrix/scaled.hpp"
#include "locaut/scalar/mulfunc.hpp"

namespace locaut {

enum class Kind { Standard, Contragredient };

std::string_view kind_name(Kind k);  // "std" / "contra"
std::string_view sigma_name(Sigma s);  // "id" / "conj"

class Automorphism {
 public:
  /// Validates every invariant. Errors: IllegalSigma, IllegalScalarClass,
  /// NonUnitaryT, SingularT, BadParameters, RegimeMismatch.
  static Automorphism build(const GroupTag& group, Kind kind, AnyMatrix t, Sigma sigma,
                            std::optional<MulFunc> g = std::nullopt, double tol = 1e-9);
  static Automorphism identity(const GroupTag& group);

  const GroupTag& group() const { return group_; }
  Kind kind() const { return kind_; }
  const AnyMatrix& T() const { return t_; }
  const AnyMatrix& T_inverse() const { return t_inv_; }
  Sigma sigma() const { return sigma_; }
  /// The scalar character (trivial when the group has none).
  const MulFunc& g() const { return g_; }
  double tol() const { return tol_; }

  /// Errors: NotInGroup, DetOutsideLattice, NotRepresentable.
  AnyMatrix apply(const AnyMatrix& a) const;
  /// Exact image even when the scalar factor is irrational.
  ScaledMatrix apply_scaled(const AnyMatrix& a) const;

  std::string describe() const;

 private:
  Automorphism() = default;

  GroupTag group_;
  Kind kind_ = Kind::Standard;
  AnyMatrix t_;
  AnyMatrix t_inv_;
  Sigma sigma_ = Sigma::Id;
  MulFunc g_;
  double tol_ = 1e-9;
};

/// apply(compose(phi, psi), A) = apply(phi, apply(psi, A)).
/// Errors: GroupMismatch, LatticeIncompatible.
Automorphism compose(const Automorphism& phi, const Automorphism& psi);
Automorphism invert(const Automorphism& phi);

/// Scalar part of compose(phi, psi):
/// s(d) = g_phi(g_psi(d)^n d^{eps_psi}) * g_psi(d)^{eps_phi}.
MulFunc compose_scalar(const MulFunc& g_phi, int eps_phi, const MulFunc& g_psi, int eps_psi, std::size_t n);
/// The character h with h(g(d)^n d^eps) = g(d)^{-eps}.
MulFunc invert_scalar(const MulFunc& g, int eps, std::size_t n);

inline int kind_sign(Kind k) { return k == Kind::Standard ? 1 : -1; }

}  // namespace locaut
