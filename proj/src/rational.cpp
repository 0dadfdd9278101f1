#include "corrauct/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace corrauct {

Rat parse_rat(const std::string& text) {
  mpq_class q;
  if (q.set_str(text, 10) != 0) {
    throw std::invalid_argument("not a rational: '" + text + "'");
  }
  if (q.get_den() == 0) {
    throw std::invalid_argument("zero denominator: '" + text + "'");
  }
  q.canonicalize();
  return q;
}

std::string rat_str(const Rat& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

double rat_to_double(const Rat& value) { return value.get_d(); }

Rat rat_from_double(double value) {
  if (!std::isfinite(value)) {
    throw std::invalid_argument("non-finite double");
  }
  Rat q;
  mpq_set_d(q.get_mpq_t(), value);
  return q;
}

Rat quantize_dyadic(double value, int bits) {
  if (!std::isfinite(value)) {
    throw std::invalid_argument("non-finite double");
  }
  Rat scale = Rat(Int(1) << bits);
  Rat scaled = rat_from_double(value) * scale;
  // round half away from zero; exactness of the tie direction is irrelevant
  Int num = scaled.get_num(), den = scaled.get_den();
  Int twice = 2 * num + (num >= 0 ? den : -den);
  Int rounded = twice / (2 * den);
  return Rat(rounded) / scale;
}

Int common_denominator(std::span<const Rat> values) {
  Int result = 1;
  for (const Rat& v : values) {
    mpz_lcm(result.get_mpz_t(), result.get_mpz_t(), v.get_den().get_mpz_t());
  }
  return result;
}

}  // namespace corrauct
