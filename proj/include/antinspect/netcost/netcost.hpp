#pragma once

#include <cstdint>
#include <string>

namespace antinspect::netcost {

__extension__ using Wide = unsigned __int128;

/// Exact non-negative rational FLOP count, kept in lowest terms. Multiplies
/// throw std::overflow_error instead of wrapping.
class Flops {
 public:
  constexpr Flops() = default;
  Flops(std::uint64_t numerator, std::uint64_t denominator = 1);

  [[nodiscard]] std::uint64_t numerator() const { return num_; }
  [[nodiscard]] std::uint64_t denominator() const { return den_; }
  [[nodiscard]] bool is_integer() const { return den_ == 1; }
  [[nodiscard]] double value() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }
  /// Integer form when exact, otherwise shortest round-trip decimal.
  [[nodiscard]] std::string str() const;

  friend Flops operator+(Flops a, Flops b);
  friend Flops operator-(Flops a, Flops b);  // throws if the result would be negative
  friend Flops operator*(Flops a, std::uint64_t k);
  friend Flops operator/(Flops a, Flops b);
  friend bool operator==(const Flops&, const Flops&) = default;
  friend auto operator<=>(const Flops& a, const Flops& b) {
    return static_cast<Wide>(a.num_) * b.den_ <=>
           static_cast<Wide>(b.num_) * a.den_;
  }

 private:
  std::uint64_t num_ = 0;
  std::uint64_t den_ = 1;
};

struct ConvSpec {
  std::uint64_t width = 1;   // W, output feature map cells
  std::uint64_t height = 1;  // H
  std::uint64_t in_channels = 1;
  std::uint64_t out_channels = 1;
  std::uint64_t kernel = 3;
  std::uint64_t part = 4;  // HetConv part ratio P: 1/P of each filter stays k x k

  void validate() const;
};

/// W * H * Ci * Co * k^2.
Flops std_conv_cost(const ConvSpec& spec);

struct HetConvCost {
  Flops large;  // k x k kernels: standard cost / P
  Flops point;  // 1 x 1 kernels: W * H * Ci * Co * (P - 1) / P
  Flops total;
};

HetConvCost hetconv_cost(const ConvSpec& spec);

/// Saving of a two-convolution HetConv bottleneck over the standard one,
/// 12 * W * H * Ci * Co. Defined for k = 3, P = 4 only; throws DomainError
/// otherwise.
Flops bottleneck_reduction(const ConvSpec& spec);

/// Channels after concatenating the input with n ghost branches.
std::uint64_t ghost_concat_channels(std::uint64_t input_channels, std::uint64_t branch_channels,
                                    std::uint64_t n_iterations);

}  // namespace antinspect::netcost
