#ifndef CENTERING_EXPONENT_HPP
#define CENTERING_EXPONENT_HPP

#include <string>
#include <string_view>

namespace centering {

/// Lebesgue exponent p in [1, inf], with an explicit infinity marker.
class Exponent {
 public:
  static Exponent finite(double p);
  static Exponent infinity() { return Exponent(0.0, true); }

  /// Accepts a decimal number >= 1 or the literals "inf" / "infinity".
  static Exponent parse(std::string_view text);

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }
  /// True for finite p > 1, the range where C_p(alpha) is defined.
  bool is_interior() const { return !infinite_ && p_ > 1.0; }

  /// p itself; +inf for the infinite exponent.
  double value() const;

  /// Conjugate exponent p' with 1/p + 1/p' = 1.
  Exponent dual() const;

  std::string to_string() const;

  friend bool operator==(const Exponent& a, const Exponent& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.p_ == b.p_);
  }

 private:
  Exponent(double p, bool infinite) : p_(p), infinite_(infinite) {}

  double p_;
  bool infinite_;
};

}  // namespace centering

#endif  // CENTERING_EXPONENT_HPP
