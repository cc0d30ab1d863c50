#include "fusionq/weight.hpp"

#include <algorithm>
#include <sstream>

#include "fusionq/errors.hpp"

namespace fusionq {

Weight Weight::fundamental(int rank, int a) {
  if (a < 1 || a > rank) throw DimensionMismatch("vertex " + std::to_string(a) + " out of range");
  Weight w = zero(rank);
  w[a - 1] = 1;
  return w;
}

bool Weight::is_dominant() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](int c) { return c >= 0; });
}

bool Weight::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](int c) { return c == 0; });
}

Weight& Weight::operator+=(const Weight& other) {
  if (other.coeffs.size() != coeffs.size()) throw DimensionMismatch("weight rank mismatch");
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += other.coeffs[i];
  return *this;
}

Weight& Weight::operator-=(const Weight& other) {
  if (other.coeffs.size() != coeffs.size()) throw DimensionMismatch("weight rank mismatch");
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] -= other.coeffs[i];
  return *this;
}

Weight operator*(int s, Weight w) {
  for (int& c : w.coeffs) c *= s;
  return w;
}

Weight Weight::operator-() const { return -1 * *this; }

std::string Weight::to_string() const {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (i) out << ',';
    out << coeffs[i];
  }
  out << ')';
  return out.str();
}

bool AffineWeight::is_dominant() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](int c) { return c >= 0; });
}

Weight AffineWeight::finite() const { return Weight(std::vector<int>(coeffs.begin() + 1, coeffs.end())); }

int AffineWeight::level(const std::vector<int>& comarks) const {
  if (comarks.size() != coeffs.size()) throw DimensionMismatch("comark vector length mismatch");
  int total = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) total += comarks[i] * coeffs[i];
  return total;
}

std::strong_ordering operator<=>(const AffineWeight& a, const AffineWeight& b) {
  const std::size_t n = std::min(a.coeffs.size(), b.coeffs.size());
  for (std::size_t i = 1; i < n; ++i) {
    if (auto c = a.coeffs[i] <=> b.coeffs[i]; c != 0) return c;
  }
  if (auto c = a.coeffs.size() <=> b.coeffs.size(); c != 0) return c;
  if (n == 0) return std::strong_ordering::equal;
  return a.coeffs[0] <=> b.coeffs[0];
}

std::string AffineWeight::label() const {
  std::ostringstream out;
  for (std::size_t i = 1; i < coeffs.size(); ++i) {
    if (i > 1) out << '.';
    out << coeffs[i];
  }
  return out.str();
}

std::string AffineWeight::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const int c = coeffs[i];
    if (c == 0) continue;
    if (!first) out << (c > 0 ? "+" : "-");
    else if (c < 0) out << '-';
    const int mag = c < 0 ? -c : c;
    if (mag != 1) out << mag;
    out << 'w' << i;
    first = false;
  }
  if (first) out << '0';
  return out.str();
}

}  // namespace fusionq
