#pragma once

// Bounded Vilenkin group G_m truncated at a finite depth K.
//
// A point is a digit vector (x_0, ..., x_{K-1}) with x_k in Z_{m_k}.  Every
// object handled by this library is measurable with respect to the level-K
// cylinders, so the truncation is exact for all of them.
//
// Ranks: a level-n cylinder I_n(x) is addressed by the mixed-radix number
// whose most significant digit is x_0.  Consequently the level-K ranks of the
// points of I_n(x) form one contiguous block, which is what every dense
// function table in the library relies on.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace vilenkin {

/// Upper bound on M_K accepted anywhere in the library.
inline constexpr std::uint64_t kMaxGroupSize = std::uint64_t{1} << 40;

struct GroupPoint {
  std::vector<int> coords;

  bool operator==(const GroupPoint&) const = default;
};

/// n = sum_j digits[j] * M_j, digits[0] least significant.
struct NatExpansion {
  std::uint64_t value = 0;
  std::vector<int> digits;
  std::size_t order = 0;  // |n|: index of the highest nonzero digit, 0 for n = 0
};

/// I_level(anchor).  Coordinates of the anchor at positions >= level are zero.
struct Cylinder {
  std::size_t level = 0;
  GroupPoint anchor;
  std::uint64_t rank = 0;

  bool operator==(const Cylinder&) const = default;
};

class VilenkinBase {
 public:
  /// One modulus per level; depth K = moduli.size().
  explicit VilenkinBase(std::vector<int> moduli) : moduli_(std::move(moduli)) {
    if (moduli_.empty()) throw std::invalid_argument("Vilenkin base needs depth >= 1");
    orders_.reserve(moduli_.size() + 1);
    orders_.push_back(1);
    for (int m : moduli_) {
      if (m < 2) {
        throw std::invalid_argument("invalid Vilenkin base: modulus " + std::to_string(m) +
                                    " is below 2");
      }
      if (orders_.back() > kMaxGroupSize / static_cast<std::uint64_t>(m)) {
        throw std::invalid_argument("Vilenkin base too large: M_K exceeds 2^40");
      }
      orders_.push_back(orders_.back() * static_cast<std::uint64_t>(m));
      lambda_ = std::max(lambda_, m);
    }
  }

  std::size_t depth() const noexcept { return moduli_.size(); }
  std::span<const int> moduli() const noexcept { return moduli_; }
  int modulus(std::size_t k) const { return moduli_.at(k); }

  /// M_k for 0 <= k <= K.
  std::uint64_t order(std::size_t k) const { return orders_.at(k); }
  std::span<const std::uint64_t> orders() const noexcept { return orders_; }
  std::uint64_t size() const noexcept { return orders_.back(); }

  /// max_k m_k
  int lambda() const noexcept { return lambda_; }

  bool is_dyadic() const noexcept {
    for (int m : moduli_)
      if (m != 2) return false;
    return true;
  }

  bool operator==(const VilenkinBase& other) const noexcept { return moduli_ == other.moduli_; }

  /// Number of level-`fine` cylinders inside one level-`coarse` cylinder.
  std::uint64_t block(std::size_t coarse, std::size_t fine) const {
    if (coarse > fine) throw std::out_of_range("block: coarse level above fine level");
    return order(fine) / order(coarse);
  }

  // -- points ---------------------------------------------------------------

  GroupPoint zero() const { return GroupPoint{std::vector<int>(depth(), 0)}; }

  /// value * e_k
  GroupPoint unit(std::size_t k, int value = 1) const {
    check_level(k + 1, "unit");
    GroupPoint x = zero();
    x.coords[k] = reduce(value, moduli_[k]);
    return x;
  }

  bool contains(const GroupPoint& x) const noexcept {
    if (x.coords.size() != depth()) return false;
    for (std::size_t k = 0; k < depth(); ++k)
      if (x.coords[k] < 0 || x.coords[k] >= moduli_[k]) return false;
    return true;
  }

  GroupPoint add(const GroupPoint& x, const GroupPoint& y) const {
    require_point(x);
    require_point(y);
    GroupPoint r = zero();
    for (std::size_t k = 0; k < depth(); ++k) r.coords[k] = (x.coords[k] + y.coords[k]) % moduli_[k];
    return r;
  }

  GroupPoint sub(const GroupPoint& x, const GroupPoint& y) const {
    require_point(x);
    require_point(y);
    GroupPoint r = zero();
    for (std::size_t k = 0; k < depth(); ++k)
      r.coords[k] = (x.coords[k] - y.coords[k] + moduli_[k]) % moduli_[k];
    return r;
  }

  // -- ranks ----------------------------------------------------------------

  std::uint64_t rank_of(const GroupPoint& x, std::size_t level) const {
    require_point(x);
    check_level(level, "rank_of");
    std::uint64_t r = 0;
    for (std::size_t k = 0; k < level; ++k) r = r * static_cast<std::uint64_t>(moduli_[k]) + x.coords[k];
    return r;
  }

  GroupPoint point_of(std::uint64_t rank, std::size_t level) const {
    check_level(level, "point_of");
    if (rank >= order(level)) throw std::out_of_range("point_of: rank outside [0, M_level)");
    GroupPoint x = zero();
    for (std::size_t k = level; k-- > 0;) {
      x.coords[k] = static_cast<int>(rank % static_cast<std::uint64_t>(moduli_[k]));
      rank /= static_cast<std::uint64_t>(moduli_[k]);
    }
    return x;
  }

  /// Digit x_k of the point with the given level-`level` rank (k < level).
  int digit_of_rank(std::uint64_t rank, std::size_t level, std::size_t k) const {
    return static_cast<int>((rank / block(k + 1, level)) % static_cast<std::uint64_t>(moduli_[k]));
  }

  // -- natural numbers ------------------------------------------------------

  NatExpansion expand(std::uint64_t n) const {
    if (n >= size()) {
      throw std::out_of_range("nat_expand: " + std::to_string(n) + " is not below M_K = " +
                              std::to_string(size()));
    }
    NatExpansion e;
    e.value = n;
    e.digits.assign(depth(), 0);
    for (std::size_t j = 0; j < depth() && n > 0; ++j) {
      e.digits[j] = static_cast<int>(n % static_cast<std::uint64_t>(moduli_[j]));
      n /= static_cast<std::uint64_t>(moduli_[j]);
      if (e.digits[j] != 0) e.order = j;
    }
    return e;
  }

  // -- cylinders ------------------------------------------------------------

  Cylinder cylinder(const GroupPoint& x, std::size_t level) const {
    require_point(x);
    check_level(level, "cylinder");
    Cylinder c;
    c.level = level;
    c.anchor = zero();
    for (std::size_t k = 0; k < level; ++k) c.anchor.coords[k] = x.coords[k];
    c.rank = rank_of(x, level);
    return c;
  }

  Cylinder cylinder_of_rank(std::uint64_t rank, std::size_t level) const {
    return cylinder(point_of(rank, level), level);
  }

  bool contains(const Cylinder& c, const GroupPoint& x) const {
    require_point(x);
    for (std::size_t k = 0; k < c.level; ++k)
      if (x.coords[k] != c.anchor.coords[k]) return false;
    return true;
  }

  double measure(const Cylinder& c) const { return 1.0 / static_cast<double>(order(c.level)); }

  /// Half-open range of level-`fine` ranks covered by the cylinder.
  std::pair<std::uint64_t, std::uint64_t> rank_block(const Cylinder& c, std::size_t fine) const {
    const std::uint64_t b = block(c.level, fine);
    return {c.rank * b, (c.rank + 1) * b};
  }

 private:
  static int reduce(int v, int m) { return ((v % m) + m) % m; }

  void require_point(const GroupPoint& x) const {
    if (!contains(x)) throw std::invalid_argument("point does not belong to this Vilenkin base");
  }

  void check_level(std::size_t level, const char* what) const {
    if (level > depth()) {
      throw std::out_of_range(std::string(what) + ": level " + std::to_string(level) +
                              " exceeds depth " + std::to_string(depth()));
    }
  }

  std::vector<int> moduli_;
  std::vector<std::uint64_t> orders_;
  int lambda_ = 0;
};

/// Base of depth K built from `moduli`, repeated cyclically when shorter
/// than K: make_base({2, 3}, 4) is (2, 3, 2, 3).
inline VilenkinBase make_base(std::span<const int> moduli, std::size_t depth) {
  if (moduli.empty()) throw std::invalid_argument("make_base: empty modulus list");
  if (depth == 0) throw std::invalid_argument("make_base: depth must be at least 1");
  std::vector<int> m(depth);
  for (std::size_t k = 0; k < depth; ++k) m[k] = moduli[k % moduli.size()];
  return VilenkinBase(std::move(m));
}

inline VilenkinBase make_base(std::initializer_list<int> moduli, std::size_t depth) {
  return make_base(std::span<const int>(moduli.begin(), moduli.size()), depth);
}

inline VilenkinBase dyadic_base(std::size_t depth) { return make_base({2}, depth); }

/// Disjoint cylinders tiling G_m \ I_M: first the pairs
/// I_{l+1}(x_k e_k + x_l e_l) for 0 <= k < l < M, then I_M(x_k e_k) for
/// 0 <= k < M, all digits nonzero.
inline std::vector<Cylinder> coset_partition(const VilenkinBase& base, std::size_t M) {
  if (M < 1 || M > base.depth()) {
    throw std::out_of_range("coset_partition: level " + std::to_string(M) + " outside [1, " +
                            std::to_string(base.depth()) + "]");
  }
  std::vector<Cylinder> out;
  for (std::size_t k = 0; k + 1 < M; ++k) {
    for (int xk = 1; xk < base.modulus(k); ++xk) {
      for (std::size_t l = k + 1; l < M; ++l) {
        for (int xl = 1; xl < base.modulus(l); ++xl) {
          GroupPoint a = base.zero();
          a.coords[k] = xk;
          a.coords[l] = xl;
          out.push_back(base.cylinder(a, l + 1));
        }
      }
    }
  }
  for (std::size_t k = 0; k < M; ++k) {
    for (int xk = 1; xk < base.modulus(k); ++xk) out.push_back(base.cylinder(base.unit(k, xk), M));
  }
  return out;
}

}  // namespace vilenkin
