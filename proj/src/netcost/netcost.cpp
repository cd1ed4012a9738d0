#include "antinspect/netcost/netcost.hpp"

#include <fmt/core.h>

#include <numeric>
#include <stdexcept>

#include "antinspect/core/errors.hpp"

namespace antinspect::netcost {
namespace {

std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("FLOP count overflows 64 bits");
  return r;
}

std::uint64_t add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("FLOP count overflows 64 bits");
  return r;
}

std::uint64_t volume(const ConvSpec& s) {
  return mul(mul(mul(s.width, s.height), s.in_channels), s.out_channels);
}

}  // namespace

Flops::Flops(std::uint64_t numerator, std::uint64_t denominator) {
  if (denominator == 0) throw std::invalid_argument("Flops: zero denominator");
  const std::uint64_t g = std::gcd(numerator, denominator);
  num_ = numerator / g;
  den_ = denominator / g;
}

std::string Flops::str() const {
  if (den_ == 1) return fmt::format("{}", num_);
  return fmt::format("{}", value());
}

Flops operator+(Flops a, Flops b) {
  const std::uint64_t g = std::gcd(a.den_, b.den_);
  const std::uint64_t den = mul(a.den_ / g, b.den_);
  return {add(mul(a.num_, b.den_ / g), mul(b.num_, a.den_ / g)), den};
}

Flops operator-(Flops a, Flops b) {
  const std::uint64_t g = std::gcd(a.den_, b.den_);
  const std::uint64_t den = mul(a.den_ / g, b.den_);
  const std::uint64_t lhs = mul(a.num_, b.den_ / g);
  const std::uint64_t rhs = mul(b.num_, a.den_ / g);
  if (rhs > lhs) throw std::domain_error("Flops: negative difference");
  return {lhs - rhs, den};
}

Flops operator*(Flops a, std::uint64_t k) {
  const std::uint64_t g = std::gcd(k, a.den_);
  return {mul(a.num_, k / g), a.den_ / g};
}

Flops operator/(Flops a, Flops b) {
  if (b.num_ == 0) throw std::domain_error("Flops: division by zero");
  const std::uint64_t g1 = std::gcd(a.num_, b.num_);
  const std::uint64_t g2 = std::gcd(a.den_, b.den_);
  return {mul(a.num_ / g1, b.den_ / g2), mul(a.den_ / g2, b.num_ / g1)};
}

void ConvSpec::validate() const {
  if (width == 0 || height == 0 || in_channels == 0 || out_channels == 0 || kernel == 0 ||
      part == 0) {
    throw ConfigError("conv spec: W, H, Ci, Co, k and P must all be positive");
  }
}

Flops std_conv_cost(const ConvSpec& spec) {
  spec.validate();
  return Flops(mul(volume(spec), mul(spec.kernel, spec.kernel)));
}

HetConvCost hetconv_cost(const ConvSpec& spec) {
  spec.validate();
  HetConvCost c;
  c.large = Flops(mul(volume(spec), mul(spec.kernel, spec.kernel)), spec.part);
  c.point = Flops(mul(volume(spec), spec.part - 1), spec.part);
  c.total = c.large + c.point;
  return c;
}

Flops bottleneck_reduction(const ConvSpec& spec) {
  spec.validate();
  if (spec.kernel != 3 || spec.part != 4) {
    throw DomainError(fmt::format("bottleneck reduction is defined for k = 3, P = 4 (got k = {}, P = {})",
                                  spec.kernel, spec.part));
  }
  return Flops(mul(12, volume(spec)));
}

std::uint64_t ghost_concat_channels(std::uint64_t input_channels, std::uint64_t branch_channels,
                                    std::uint64_t n_iterations) {
  return add(input_channels, mul(n_iterations, branch_channels));
}

}  // namespace antinspect::netcost
