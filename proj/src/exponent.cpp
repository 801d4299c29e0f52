#include "centering/exponent.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>

#include "centering/errors.hpp"

namespace centering {

Exponent Exponent::finite(double p) {
  if (!std::isfinite(p)) {
    if (p == std::numeric_limits<double>::infinity()) return infinity();
    throw DomainError("exponent must be a number >= 1");
  }
  if (!(p >= 1.0)) throw DomainError("exponent must satisfy p >= 1");
  return Exponent(p, false);
}

Exponent Exponent::parse(std::string_view text) {
  if (text == "inf" || text == "infinity" || text == "Inf" || text == "INF") {
    return infinity();
  }
  double p = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), p);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw DomainError("cannot parse exponent '" + std::string(text) + "'");
  }
  return finite(p);
}

double Exponent::value() const {
  return infinite_ ? std::numeric_limits<double>::infinity() : p_;
}

Exponent Exponent::dual() const {
  if (infinite_) return Exponent(1.0, false);
  if (p_ == 1.0) return infinity();
  return Exponent(p_ / (p_ - 1.0), false);
}

std::string Exponent::to_string() const {
  if (infinite_) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", p_);
  return buf;
}

}  // namespace centering
