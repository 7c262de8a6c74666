#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace gammamod {

// Exact rational scalar. Always kept reduced with a positive denominator.
class Rat {
 public:
  using Impl = boost::multiprecision::cpp_rational;

  Rat() = default;
  Rat(long long n) : v_(n) {}  // NOLINT(google-explicit-constructor)
  Rat(long long n, long long d);
  explicit Rat(Impl v) : v_(std::move(v)) {}

  // Accepts "p", "-p", "p/q". Throws ParseError on anything else or q == 0.
  static Rat parse(std::string_view s);
  // "p" for integers, "p/q" otherwise.
  std::string str() const;

  int sign() const { return v_.sign(); }
  bool is_zero() const { return v_.is_zero(); }
  bool is_integer() const;
  Rat abs() const { return Rat(v_.sign() < 0 ? Impl(-v_) : v_); }
  Rat floor() const;
  double to_double() const { return v_.convert_to<double>(); }
  std::string numerator_str() const;
  std::string denominator_str() const;
  const Impl& impl() const { return v_; }

  Rat operator-() const { return Rat(Impl(-v_)); }
  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o);

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    if (a.v_ < b.v_) return std::strong_ordering::less;
    if (a.v_ > b.v_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  Impl v_;
};

std::ostream& operator<<(std::ostream& os, const Rat& r);

using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;  // row-major

Rat dot(const RatVec& a, const RatVec& b);
RatVec add(const RatVec& a, const RatVec& b);
RatVec sub(const RatVec& a, const RatVec& b);
RatVec scale(const Rat& s, const RatVec& a);
RatVec neg(const RatVec& a);
RatVec zeros(std::size_t n);
bool is_zero(const RatVec& a);
RatVec mat_vec(const RatMat& m, const RatVec& x);
RatMat mat_mul(const RatMat& a, const RatMat& b);
RatMat identity_rat(std::size_t n);
RatMat transpose(const RatMat& m);
// Gaussian elimination over Q.
std::size_t rank(RatMat m);
// Throws DimensionError if singular or non-square.
RatMat inverse(const RatMat& m);
// Basis of the right null space {x : m x = 0}; m has `cols` columns.
std::vector<RatVec> null_space(const RatMat& m, std::size_t cols);

std::string to_string(const RatVec& v);
// Comma separated list, the format used by --direction.
RatVec parse_vector(std::string_view s);

}  // namespace gammamod
