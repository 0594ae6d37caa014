#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace delpezzo {

class PermutationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Cycle lengths sorted descending, summing to the degree.
struct CycleType {
  std::vector<int> parts;

  int degree() const;
  // Number of points fixed by the m-th power of any permutation with this type.
  int fixed_points_of_power(int m) const;
  // lcm of the parts.
  int order() const;
  // "1^3 2^12" (ascending part sizes, exponent omitted when 1).
  std::string to_string() const;

  auto operator<=>(const CycleType&) const = default;
  bool operator==(const CycleType&) const = default;
};

// A bijection of {0, ..., n-1}, n <= 256. (p * q)(x) = p(q(x)).
class Permutation {
 public:
  static constexpr int kMaxDegree = 256;

  Permutation() = default;
  explicit Permutation(int n);  // identity
  // Throws PermutationError unless `images` is a bijection on 0..n-1.
  explicit Permutation(std::span<const int> images);
  static Permutation from_images(std::vector<int> images) { return Permutation(std::span<const int>(images)); }

  int degree() const { return static_cast<int>(images_.size()); }
  int operator()(int x) const { return images_[x]; }
  int operator[](int x) const { return images_[x]; }
  std::vector<int> images() const { return {images_.begin(), images_.end()}; }

  Permutation operator*(const Permutation& rhs) const;
  Permutation inverse() const;
  Permutation pow(long e) const;
  bool is_identity() const;

  CycleType cycle_type() const;
  int order() const { return cycle_type().order(); }
  int fixed_points() const;
  // Conjugate by c: c * this * c^-1.
  Permutation conjugated_by(const Permutation& c) const;

  std::string_view bytes() const {
    return {reinterpret_cast<const char*>(images_.data()), images_.size()};
  }

  auto operator<=>(const Permutation&) const = default;
  bool operator==(const Permutation&) const = default;

 private:
  std::vector<std::uint8_t> images_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const {
    return std::hash<std::string_view>{}(p.bytes());
  }
};

}  // namespace delpezzo
