#include "qmon/gq.hpp"

#include <cctype>
#include <ostream>

#include "qmon/errors.hpp"

namespace qmon {

namespace {

mpq_class parse_rational(std::string_view s, std::string_view whole) {
  if (s.empty()) throw ParseError("empty rational in scalar '" + std::string(whole) + "'");
  std::string_view digits = s;
  if (digits.front() == '+' || digits.front() == '-') digits.remove_prefix(1);
  bool seen_slash = false;
  bool seen_digit = false;
  for (char c : digits) {
    if (c == '/') {
      if (seen_slash || !seen_digit) throw ParseError("bad rational in scalar '" + std::string(whole) + "'");
      seen_slash = true;
      seen_digit = false;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      seen_digit = true;
    } else {
      throw ParseError("bad character in scalar '" + std::string(whole) + "'");
    }
  }
  if (!seen_digit) throw ParseError("bad rational in scalar '" + std::string(whole) + "'");
  std::string buf(s.front() == '+' ? s.substr(1) : s);
  mpq_class q;
  if (q.set_str(buf, 10) != 0) throw ParseError("bad rational in scalar '" + std::string(whole) + "'");
  if (q.get_den() == 0) throw ParseError("zero denominator in scalar '" + std::string(whole) + "'");
  q.canonicalize();
  return q;
}

}  // namespace

GQ::GQ(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

GQ GQ::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw ParseError("empty scalar");
  if (s.back() != 'i') return GQ(parse_rational(s, text), 0);

  std::string_view body(s);
  body.remove_suffix(1);
  // The imaginary part starts at the last sign that is not the leading one.
  std::size_t split = 0;
  for (std::size_t k = body.size(); k-- > 1;) {
    if (body[k] == '+' || body[k] == '-') {
      split = k;
      break;
    }
  }
  std::string_view re_part = body.substr(0, split);
  std::string_view im_part = body.substr(split);
  mpq_class im;
  if (im_part.empty() || im_part == "+")
    im = 1;
  else if (im_part == "-")
    im = -1;
  else
    im = parse_rational(im_part, text);
  mpq_class re = re_part.empty() ? mpq_class(0) : parse_rational(re_part, text);
  return GQ(re, im);
}

GQ GQ::inverse() const {
  if (is_zero()) throw Error("inverse of zero Gaussian rational");
  mpq_class n = norm();
  return GQ(re_ / n, -im_ / n);
}

std::string GQ::str() const {
  if (is_real()) return re_.get_str();
  std::string im_str = im_.get_str() + "i";
  if (sgn(re_) == 0) return im_str;
  if (sgn(im_) > 0) return re_.get_str() + "+" + im_str;
  return re_.get_str() + im_str;
}

GQ& GQ::operator+=(const GQ& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GQ& GQ::operator-=(const GQ& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GQ& GQ::operator*=(const GQ& o) {
  if (is_real() && o.is_real()) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class r = re_ * o.re_ - im_ * o.im_;
  mpq_class i = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

GQ& GQ::operator/=(const GQ& o) {
  if (o.is_real()) {
    if (sgn(o.re_) == 0) throw Error("division by zero Gaussian rational");
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  return *this *= o.inverse();
}

std::ostream& operator<<(std::ostream& os, const GQ& z) { return os << z.str(); }

}  // namespace qmon
