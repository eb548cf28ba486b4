#include "mosum/rng.hpp"

#include <cmath>
#include <numbers>

namespace mosum {

namespace {

// 53-bit uniform in (0, 1].
double to_unit_open_closed(std::uint64_t bits) noexcept {
  return (static_cast<double>(bits >> 11) + 1.0) * 0x1.0p-53;
}

}  // namespace

double GaussianStream::operator()() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const Philox4x32::Block counter{
      static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
      static_cast<std::uint32_t>(replication_), static_cast<std::uint32_t>(replication_ >> 32)};
  ++block_;
  const auto out = Philox4x32::generate(counter, key_);
  const std::uint64_t a = (std::uint64_t{out[0]} << 32) | out[1];
  const std::uint64_t b = (std::uint64_t{out[2]} << 32) | out[3];
  const double radius = std::sqrt(-2.0 * std::log(to_unit_open_closed(a)));
  const double angle = 2.0 * std::numbers::pi * to_unit_open_closed(b);
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

}  // namespace mosum
