#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace jsde {

// A root seed plus a stream name fully determines every draw. Distinct
// stream names behave as independent generators, so e.g. widening the jump
// window never perturbs the Brownian draws taken from the same root seed.
//
// Draw algorithms are spelled out here (Box-Muller, inverse transforms)
// instead of using std::*_distribution so the sequence does not depend on
// the standard library implementation.
class RngStream {
  public:
    RngStream(std::uint64_t root_seed, std::string_view stream_name)
        : engine_(derive_seed(root_seed, stream_name)) {}

    // uniform on (0,1); both endpoints excluded so logs are safe
    double uniform01() {
        std::uint64_t bits = engine_() >> 11;  // 53 bits
        return (static_cast<double>(bits) + 0.5) * 0x1p-53;
    }

    double normal();                      // standard normal, Box-Muller pair
    double exponential(double rate);      // mean 1/rate

    std::uint64_t raw() { return engine_(); }

    static std::uint64_t derive_seed(std::uint64_t root, std::string_view name);

  private:
    std::mt19937_64 engine_;
    double spare_ = 0;
    bool have_spare_ = false;
};

}  // namespace jsde
