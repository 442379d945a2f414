#pragma once

#include <array>
#include <cstdint>

namespace maser {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Output is a
// pure function of (counter, key), so any sample can be regenerated from its
// index without replaying a stream.
struct Philox4x32 {
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter generate(Counter ctr, Key key);
};

// Uniform doubles in [0, 1) for one (seed, index) pair. Draws consume the
// counter's third word, so streams with different indices never overlap.
class CounterStream {
  public:
    CounterStream(std::uint64_t seed, std::uint64_t index);

    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  private:
    Philox4x32::Key key_;
    Philox4x32::Counter counter_;
    Philox4x32::Counter block_{};
    int used_ = 4;
};

}  // namespace maser
