#include "fusionq/cartan.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "fusionq/errors.hpp"

namespace fusionq {

namespace {

// Gauss-Jordan over the rationals; returns the inverse and writes the determinant.
std::vector<std::vector<Rational>> invert(const IntMatrix& m, Rational* det_out) {
  const std::size_t n = m.size();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m[i][j];
    a[i][n + i] = 1;
  }
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) throw InternalError("singular Cartan matrix");
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    const Rational p = a[col][col];
    det *= p;
    for (auto& x : a[col]) x /= p;
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || a[row][col] == 0) continue;
      const Rational f = a[row][col];
      for (std::size_t j = 0; j < 2 * n; ++j) a[row][j] -= f * a[col][j];
    }
  }
  if (det_out) *det_out = det;
  std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = a[i][n + j];
  return inv;
}

std::int64_t to_i64(const BigInt& v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    throw InternalError("integer overflow in root-system arithmetic");
  return static_cast<std::int64_t>(v);
}

}  // namespace

char family_letter(Family f) { return "ABCDEFG"[static_cast<int>(f)]; }

Family parse_family(const std::string& s) {
  if (s.size() == 1) {
    const char c = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
    if (c >= 'A' && c <= 'G') return static_cast<Family>(c - 'A');
  }
  throw ConstructionError("unknown Lie algebra family '" + s + "'");
}

void DynkinType::validate() const {
  const std::string n = name();
  auto fail = [&](const std::string& bound) {
    throw ConstructionError(std::string(1, family_letter(family)) + "_r requires " + bound + " (got rank " +
                            std::to_string(rank) + ")");
  };
  switch (family) {
    case Family::A: if (rank < 1) fail("rank >= 1"); break;
    case Family::B: if (rank < 2) fail("rank >= 2"); break;
    case Family::C: if (rank < 2) fail("rank >= 2"); break;
    case Family::D: if (rank < 4) fail("rank >= 4"); break;
    case Family::E: if (rank < 6 || rank > 8) fail("rank in {6,7,8}"); break;
    case Family::F: if (rank != 4) fail("rank == 4"); break;
    case Family::G: if (rank != 2) fail("rank == 2"); break;
  }
}

std::string DynkinType::name() const { return std::string(1, family_letter(family)) + std::to_string(rank); }

RootSystem::RootSystem(DynkinType type) : type_(type) {
  type_.validate();
  build_cartan();
  build_form();
  build_roots();
  build_affine();
  build_diagram_tables();
}

void RootSystem::build_cartan() {
  const int r = type_.rank;
  cartan_.assign(r, std::vector<int>(r, 0));
  auto link = [&](int a, int b) {  // 1-based vertices, simple edge
    cartan_[a - 1][b - 1] = -1;
    cartan_[b - 1][a - 1] = -1;
  };
  for (int i = 0; i < r; ++i) cartan_[i][i] = 2;
  switch (type_.family) {
    case Family::A:
      for (int a = 1; a < r; ++a) link(a, a + 1);
      break;
    case Family::B:
      for (int a = 1; a < r; ++a) link(a, a + 1);
      cartan_[r - 1][r - 2] = -2;  // α_r short
      break;
    case Family::C:
      for (int a = 1; a < r; ++a) link(a, a + 1);
      cartan_[r - 2][r - 1] = -2;  // α_r long
      break;
    case Family::D:
      for (int a = 1; a < r - 1; ++a) link(a, a + 1);
      link(r - 2, r);
      break;
    case Family::E:
      for (int a = 1; a < r - 1; ++a) link(a, a + 1);
      link(r == 8 ? 5 : 3, r);
      break;
    case Family::F:
      link(1, 2);
      link(2, 3);
      link(3, 4);
      cartan_[2][1] = -2;  // 2 => 3
      break;
    case Family::G:
      link(1, 2);
      cartan_[1][0] = -3;  // α_1 long
      break;
  }
}

void RootSystem::build_form() {
  const int r = type_.rank;
  // Relative squared lengths d_a from (α_a|α_b) symmetric: d_b/d_a = C_ab/C_ba.
  std::vector<Rational> d(r, Rational(0));
  d[0] = 1;
  std::vector<int> stack{0};
  while (!stack.empty()) {
    const int a = stack.back();
    stack.pop_back();
    for (int b = 0; b < r; ++b) {
      if (b == a || cartan_[a][b] == 0 || d[b] != 0) continue;
      d[b] = d[a] * Rational(cartan_[a][b]) / cartan_[b][a];
      stack.push_back(b);
    }
  }
  const Rational longest = *std::max_element(d.begin(), d.end());
  t_.resize(r);
  for (int a = 0; a < r; ++a) {
    const Rational len = 2 * d[a] / longest;  // (α_a|α_a)
    const Rational t = 2 / len;
    if (denominator(t) != 1) throw InternalError("non-integral t_a");
    t_[a] = static_cast<int>(numerator(t));
  }

  Rational det;
  cartan_inverse_ = invert(cartan_, &det);
  gram_.assign(r, std::vector<Rational>(r));
  BigInt scale = 1;
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) {
      gram_[i][j] = cartan_inverse_[i][j] / t_[i];
      scale = boost::multiprecision::lcm(scale, denominator(gram_[i][j]));
    }
  }
  form_scale_ = to_i64(scale);
  scaled_gram_.assign(r, std::vector<std::int64_t>(r));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      const Rational v = gram_[i][j] * form_scale_;
      scaled_gram_[i][j] = to_i64(numerator(v));
    }

  BigInt index = numerator(Rational(abs(det)));
  for (int a = 0; a < r; ++a) index *= t_[a];
  p_over_coroot_ = to_i64(index);

  simple_roots_.clear();
  for (int a = 0; a < r; ++a) {
    Weight alpha = Weight::zero(r);
    for (int i = 0; i < r; ++i) alpha[i] = cartan_[i][a];
    simple_roots_.push_back(std::move(alpha));
  }
}

void RootSystem::build_roots() {
  const int r = type_.rank;
  std::set<std::vector<int>> known;
  std::vector<std::vector<int>> layer;
  for (int a = 0; a < r; ++a) {
    std::vector<int> e(r, 0);
    e[a] = 1;
    layer.push_back(e);
    known.insert(e);
  }
  positive_root_coords_.clear();
  while (!layer.empty()) {
    std::sort(layer.begin(), layer.end(), std::greater<>());
    std::vector<std::vector<int>> next;
    for (const auto& beta : layer) {
      positive_root_coords_.push_back(beta);
      for (int i = 0; i < r; ++i) {
        int pairing = 0;  // <β, α_i^∨> = Σ_j β_j C_ij
        for (int j = 0; j < r; ++j) pairing += beta[j] * cartan_[i][j];
        int q = 0;
        std::vector<int> down = beta;
        while (true) {
          down[i] -= 1;
          if (!known.count(down)) break;
          ++q;
        }
        const int p = q - pairing;
        if (p > 0) {
          std::vector<int> up = beta;
          up[i] += 1;
          if (known.insert(up).second) next.push_back(up);
        }
      }
    }
    layer = std::move(next);
  }
  positive_roots_.clear();
  for (const auto& c : positive_root_coords_) positive_roots_.push_back(from_root_coords(c));

  theta_root_ = positive_root_coords_.back();  // unique root of maximal height
  theta_ = from_root_coords(theta_root_);
  rho_ = Weight(std::vector<int>(r, 1));

  marks_.assign(r + 1, 1);
  comarks_.assign(r + 1, 1);
  for (int a = 1; a <= r; ++a) {
    marks_[a] = theta_root_[a - 1];
    if (marks_[a] % t_[a - 1] != 0) throw InternalError("non-integral comark");
    comarks_[a] = marks_[a] / t_[a - 1];
  }
  coxeter_ = std::accumulate(marks_.begin(), marks_.end(), 0);
  dual_coxeter_ = std::accumulate(comarks_.begin(), comarks_.end(), 0);
  if (form(theta_, theta_) != 2) throw InternalError("highest root is not normalized to length 2");
}

void RootSystem::build_affine() {
  const int r = type_.rank;
  extended_cartan_.assign(r + 1, std::vector<int>(r + 1, 0));
  extended_cartan_[0][0] = 2;
  for (int j = 1; j <= r; ++j) {
    // (α_0^∨|α_j) = -(θ|α_j) = -θ_j / t_j, and (α_i^∨|α_0) = -θ_i.
    if (theta_[j - 1] % t_[j - 1] != 0) throw InternalError("non-integral affine Cartan entry");
    extended_cartan_[0][j] = -theta_[j - 1] / t_[j - 1];
    extended_cartan_[j][0] = -theta_[j - 1];
    for (int i = 1; i <= r; ++i) extended_cartan_[i][j] = cartan_[i - 1][j - 1];
  }
}

Rational RootSystem::form(const Weight& x, const Weight& y) const {
  return Rational(scaled_form(x, y), form_scale_);
}

std::int64_t RootSystem::scaled_form(const Weight& x, const Weight& y) const {
  const int r = type_.rank;
  if (x.rank() != r || y.rank() != r) throw DimensionMismatch("weight length does not match rank " + std::to_string(r));
  std::int64_t total = 0;
  for (int i = 0; i < r; ++i) {
    if (x[i] == 0) continue;
    std::int64_t row = 0;
    for (int j = 0; j < r; ++j) row += scaled_gram_[i][j] * y[j];
    total += x[i] * row;
  }
  return total;
}

Weight RootSystem::reflect(const Weight& w, int a) const {
  Weight out = w;
  const int c = w[a - 1];
  if (c == 0) return out;
  for (int j = 0; j < type_.rank; ++j) out[j] -= c * cartan_[j][a - 1];
  return out;
}

Weight RootSystem::dominant_conjugate(const Weight& w, int* parity) const {
  Weight out = w;
  int flips = 0;
  while (true) {
    int neg = -1;
    for (int i = 0; i < type_.rank; ++i)
      if (out[i] < 0) {
        neg = i;
        break;
      }
    if (neg < 0) break;
    const int c = out[neg];
    for (int j = 0; j < type_.rank; ++j) out[j] -= c * cartan_[j][neg];
    ++flips;
  }
  if (parity) *parity = flips & 1;
  return out;
}

Weight RootSystem::from_root_coords(const std::vector<int>& coords) const {
  const int r = type_.rank;
  if (static_cast<int>(coords.size()) != r) throw DimensionMismatch("root coordinate length mismatch");
  Weight w = Weight::zero(r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) w[i] += cartan_[i][j] * coords[j];
  return w;
}

std::vector<Rational> RootSystem::to_root_coords(const Weight& w) const {
  const int r = type_.rank;
  if (w.rank() != r) throw DimensionMismatch("weight length does not match rank");
  std::vector<Rational> out(r, Rational(0));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) out[i] += cartan_inverse_[i][j] * w[j];
  return out;
}

std::int64_t RootSystem::weyl_dimension(const Weight& lambda) const {
  if (!lambda.is_dominant()) throw NotDominant("Weyl dimension needs a dominant weight, got " + lambda.to_string());
  const Weight shifted = lambda + rho_;
  BigInt num = 1, den = 1;
  for (const auto& alpha : positive_roots_) {
    num *= scaled_form(shifted, alpha);
    den *= scaled_form(rho_, alpha);
  }
  if (num % den != 0) throw InternalError("Weyl dimension formula gave a non-integer");
  return to_i64(num / den);
}

bool RootSystem::in_coroot_lattice(const Weight& w) const {
  const auto coords = to_root_coords(w);
  for (int j = 0; j < type_.rank; ++j) {
    const Rational n = coords[j] / t_[j];  // coefficient of α_j^∨ = t_j α_j
    if (denominator(n) != 1) return false;
  }
  return true;
}

bool RootSystem::is_minuscule(int a) const {
  return std::find(minuscule_.begin(), minuscule_.end(), a) != minuscule_.end();
}

bool RootSystem::is_outer_automorphism(const Permutation& p) const {
  return std::find(outer_group_.begin(), outer_group_.end(), p) != outer_group_.end();
}

const Permutation& RootSystem::outer_with_zero_image(int j) const {
  for (const auto& p : outer_group_)
    if (p[0] == j) return p;
  throw NotAnAutomorphism("no outer automorphism sends vertex 0 to " + std::to_string(j) + " for " + type_.name());
}

RootSystem build_root_system(DynkinType type) { return RootSystem(type); }

std::shared_ptr<const RootSystem> make_root_system(DynkinType type) {
  return std::make_shared<const RootSystem>(type);
}

Rational bilinear_form(const Weight& x, const Weight& y, const RootSystem& rs) { return rs.form(x, y); }

}  // namespace fusionq
