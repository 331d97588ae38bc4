#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>
#include <string_view>

namespace qmon {

/// Exact Gaussian rational a + b i with a, b in Q.
class GQ {
 public:
  GQ() = default;
  GQ(long re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  GQ(mpq_class re, mpq_class im = 0);

  /// Parses `a/b+c/di`, `3/4i`, `-i`, `2`, ... (imaginary part optional).
  static GQ parse(std::string_view text);

  const mpq_class& re() const noexcept { return re_; }
  const mpq_class& im() const noexcept { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  GQ conj() const { return GQ(re_, -im_); }
  /// |z|^2, always a non-negative rational.
  mpq_class norm() const { return re_ * re_ + im_ * im_; }
  GQ inverse() const;

  std::string str() const;

  GQ& operator+=(const GQ& o);
  GQ& operator-=(const GQ& o);
  GQ& operator*=(const GQ& o);
  GQ& operator/=(const GQ& o);

  friend GQ operator+(GQ a, const GQ& b) { return a += b; }
  friend GQ operator-(GQ a, const GQ& b) { return a -= b; }
  friend GQ operator*(GQ a, const GQ& b) { return a *= b; }
  friend GQ operator/(GQ a, const GQ& b) { return a /= b; }
  friend GQ operator-(const GQ& a) { return GQ(-a.re_, -a.im_); }
  friend bool operator==(const GQ& a, const GQ& b) { return a.re_ == b.re_ && a.im_ == b.im_; }
  friend bool operator!=(const GQ& a, const GQ& b) { return !(a == b); }

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

std::ostream& operator<<(std::ostream& os, const GQ& z);

}  // namespace qmon
