/// @file oracle.hpp
/// Black-box access to a map on a group. Recovery engines only see images
/// of the matrices they choose to query.
#pragma once

#include <functional>
#include <memory>
#include <string>

#include "locaut/autos/automorphism.hpp"
#include "locaut/local/local_check.hpp"

namespace locaut {

class Oracle {
 public:
  virtual ~Oracle() = default;
  virtual const GroupTag& group() const = 0;
  /// Image of a. Queries that the oracle cannot answer throw (OracleFailure,
  /// NotRepresentable).
  virtual ScaledMatrix query(const AnyMatrix& a) = 0;
  /// Pure oracles have no state, so queries could be reordered or batched.
  virtual bool pure() const { return true; }
  virtual std::string describe() const = 0;
};

class AutomorphismOracle : public Oracle {
 public:
  explicit AutomorphismOracle(Automorphism phi) : phi_(std::move(phi)) {}
  const GroupTag& group() const override { return phi_.group(); }
  ScaledMatrix query(const AnyMatrix& a) override { return phi_.apply_scaled(a); }
  std::string describe() const override { return phi_.describe(); }

 private:
  Automorphism phi_;
};

class FunctionOracle : public Oracle {
 public:
  using Fn = std::function<ScaledMatrix(const AnyMatrix&)>;
  FunctionOracle(GroupTag group, Fn fn, std::string name = "function")
      : group_(group), fn_(std::move(fn)), name_(std::move(name)) {}
  const GroupTag& group() const override { return group_; }
  ScaledMatrix query(const AnyMatrix& a) override { return fn_(a); }
  std::string describe() const override { return name_; }

 private:
  GroupTag group_;
  Fn fn_;
  std::string name_;
};

/// Answers from a finite sample map; unknown queries raise OracleFailure.
class SampleOracle : public Oracle {
 public:
  explicit SampleOracle(SampleMap samples, double tol = 1e-9) : samples_(std::move(samples)), tol_(tol) {}
  const GroupTag& group() const override { return samples_.group; }
  ScaledMatrix query(const AnyMatrix& a) override;
  std::string describe() const override;

 private:
  SampleMap samples_;
  double tol_;
};

/// oracle(a) = phi(a) except on the listed inputs. Used to build maps that
/// are deliberately not automorphisms.
class PatchedOracle : public Oracle {
 public:
  PatchedOracle(std::shared_ptr<Oracle> base, std::vector<SamplePair> patches)
      : base_(std::move(base)), patches_(std::move(patches)) {}
  const GroupTag& group() const override { return base_->group(); }
  ScaledMatrix query(const AnyMatrix& a) override;
  std::string describe() const override { return base_->describe() + " (patched)"; }

 private:
  std::shared_ptr<Oracle> base_;
  std::vector<SamplePair> patches_;
};

/// Default query budget 10 n^2 + 200.
std::size_t default_budget(std::size_t n);

}  // namespace locaut
