#include "gexplore/rational.hpp"

#include <charconv>
#include <stdexcept>

namespace gx {

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw std::invalid_argument("not a rational: '" + std::string(whole) + "'");
  return v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::int64_t num = parse_int(text.substr(0, slash), text);
    std::int64_t den = parse_int(text.substr(slash + 1), text);
    if (den == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
    return Rational(num, den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view ip = text.substr(0, dot);
    std::string_view fp = text.substr(dot + 1);
    bool neg = !ip.empty() && ip.front() == '-';
    if (neg) ip.remove_prefix(1);
    if (fp.size() > 15 || (ip.empty() && fp.empty()))
      throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
    std::int64_t whole = ip.empty() ? 0 : parse_int(ip, text);
    std::int64_t frac = fp.empty() ? 0 : parse_int(fp, text);
    if (whole < 0 || frac < 0) throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
    Rational r(whole * scale + frac, scale);
    return neg ? -r : r;
  }
  return Rational(parse_int(text, text));
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

bool scaled_less(std::uint64_t lhs, const Rational& factor, std::uint64_t rhs) {
  using u128 = unsigned __int128;
  return u128(lhs) * u128(factor.denominator()) < u128(factor.numerator()) * u128(rhs);
}

bool scaled_less_equal(std::uint64_t lhs, const Rational& factor, std::uint64_t rhs) {
  using u128 = unsigned __int128;
  return u128(lhs) * u128(factor.denominator()) <= u128(factor.numerator()) * u128(rhs);
}

}  // namespace gx
