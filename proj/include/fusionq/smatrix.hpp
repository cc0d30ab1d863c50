#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "fusionq/fusion.hpp"

namespace fusionq {

using Complex = std::complex<double>;

// Largest rank for which the S-matrix oracle enumerates the Weyl group.
inline constexpr int kOracleRankCap = 6;

// Finite Weyl group as integer matrices acting on fundamental-weight coordinates.
class WeylGroup {
 public:
  struct Element {
    std::vector<int> matrix;  // row-major r×r, w(λ)_i = Σ_j matrix[i*r+j] λ_j
    int sign = 1;             // (-1)^{ℓ(w)}
  };

  explicit WeylGroup(const RootSystem& rs);

  int rank() const { return rank_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<Element>& elements() const { return elements_; }
  Weight apply(const Element& w, const Weight& lambda) const;

 private:
  int rank_;
  std::vector<Element> elements_;
};

// Shared per root-system type; throws OracleUnavailable above the rank cap.
std::shared_ptr<const WeylGroup> weyl_group(const RootSystem& rs);

class SMatrix {
 public:
  SMatrix(std::size_t n, double zero_tol) : n_(n), zero_tol_(zero_tol), data_(n * n) {}

  std::size_t size() const { return n_; }
  double zero_tol() const { return zero_tol_; }
  Complex operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  Complex& at(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  // max |S S† - I|
  double unitarity_residual() const;
  double symmetry_residual() const;

 private:
  std::size_t n_;
  double zero_tol_;
  std::vector<Complex> data_;
};

// Evaluates the S-matrix formula for arbitrary finite parts λ, μ at the context level.
class SEvaluator {
 public:
  explicit SEvaluator(const FusionContext& ctx);

  Complex entry(const Weight& lambda, const Weight& mu) const;
  // Row of λ against every basis weight (in basis order).
  std::vector<Complex> row(const Weight& lambda) const;
  // e^{-2πi (x|y)} for weights x, y, exactly reduced before the exponential.
  Complex phase(const Weight& x, const Weight& y) const;

 private:
  const FusionContext& ctx_;
  std::shared_ptr<const WeylGroup> weyl_;
  Complex prefactor_;
  std::int64_t modulus_;  // D·(k+h∨)
  std::vector<Complex> roots_of_unity_;
  std::vector<std::vector<std::int64_t>> basis_duals_;  // D·G·(μ+ρ) per basis weight
};

SMatrix build_smatrix(const FusionContext& ctx, double zero_tol = 1e-9, int threads = 0);

// Σ_ω S_lω S_mω S*_nω / S_0ω rounded; throws NumericDegradation if the rounding
// residual reaches tol.
std::int64_t verlinde_coefficient(const AffineWeight& l, const AffineWeight& m, const AffineWeight& n,
                                  const SMatrix& S, const FusionContext& ctx, double tol = 1e-6,
                                  double* residual = nullptr);

// Product formula; exactly 0 when some (λ+ρ|α) is a multiple of k+h∨.
double quantum_dimension(const AffineWeight& l, const FusionContext& ctx);
// qdim of an element at μ̂ = kω̂_0 via the product formula.
double quantum_dimension(const FusionElement& u, const FusionContext& ctx);

Complex generalized_qdim(const FusionElement& u, const AffineWeight& mu, const SMatrix& S, const FusionContext& ctx);
// qdim_μ̂ of u for every μ̂ in basis order.
std::vector<Complex> generalized_qdims(const FusionElement& u, const SMatrix& S, const FusionContext& ctx);

// Header of basis labels, then one line per row of quoted "re,im" pairs.
std::string smatrix_csv(const SMatrix& S, const FusionContext& ctx);

}  // namespace fusionq
