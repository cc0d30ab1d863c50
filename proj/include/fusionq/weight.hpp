#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace fusionq {

// Integral weight in fundamental-weight coordinates; coeffs[i] is the
// coefficient of ω_{i+1}.
struct Weight {
  std::vector<int> coeffs;

  Weight() = default;
  explicit Weight(std::vector<int> c) : coeffs(std::move(c)) {}

  static Weight zero(int rank) { return Weight(std::vector<int>(rank, 0)); }
  // ω_a for a vertex a in 1..rank.
  static Weight fundamental(int rank, int a);

  int rank() const { return static_cast<int>(coeffs.size()); }
  int operator[](std::size_t i) const { return coeffs[i]; }
  int& operator[](std::size_t i) { return coeffs[i]; }

  bool is_dominant() const;
  bool is_zero() const;

  Weight& operator+=(const Weight& other);
  Weight& operator-=(const Weight& other);
  friend Weight operator+(Weight a, const Weight& b) { return a += b; }
  friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
  friend Weight operator*(int s, Weight w);
  Weight operator-() const;

  friend auto operator<=>(const Weight&, const Weight&) = default;
  friend bool operator==(const Weight&, const Weight&) = default;

  std::string to_string() const;
};

// Affine weight over ω̂_0..ω̂_r; coeffs[i] is the coefficient of ω̂_i.
struct AffineWeight {
  std::vector<int> coeffs;

  AffineWeight() = default;
  explicit AffineWeight(std::vector<int> c) : coeffs(std::move(c)) {}

  int rank() const { return static_cast<int>(coeffs.size()) - 1; }
  int operator[](std::size_t i) const { return coeffs[i]; }
  int& operator[](std::size_t i) { return coeffs[i]; }

  bool is_dominant() const;
  // Projection onto the finite weight lattice (drops the ω̂_0 coefficient).
  Weight finite() const;
  // Σ c_i λ_i for the given comarks (index 0 included).
  int level(const std::vector<int>& comarks) const;

  friend bool operator==(const AffineWeight&, const AffineWeight&) = default;

  // Basis order: lexicographic on coeffs[1..r], ties broken by coeffs[0].
  friend std::strong_ordering operator<=>(const AffineWeight& a, const AffineWeight& b);

  // Finite coefficients joined by '.', e.g. "0.2.1".
  std::string label() const;
  // Human readable form such as "2w0+w2".
  std::string to_string() const;
};

struct WeightHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (int x : v) {
      h ^= static_cast<std::size_t>(static_cast<unsigned>(x)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
  std::size_t operator()(const Weight& w) const noexcept { return (*this)(w.coeffs); }
  std::size_t operator()(const AffineWeight& w) const noexcept { return (*this)(w.coeffs); }
};

}  // namespace fusionq
