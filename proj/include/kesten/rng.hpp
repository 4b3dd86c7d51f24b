#ifndef KESTEN_RNG_HPP
#define KESTEN_RNG_HPP

#include <cstdint>

namespace kesten {

// Counter-based stream: every output is a pure function of
// (master_seed, stream_id, counter), so replays are bit-exact and replicas
// can be assigned streams independently of scheduling. The generator is the
// splitmix64 finalizer evaluated at key + counter * golden, with the key
// hashed from (master_seed, stream_id).
class RngStream {
public:
    RngStream() : RngStream(0, 0) {}
    RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

    std::uint64_t master_seed() const { return master_seed_; }
    std::uint64_t stream_id() const { return stream_id_; }
    std::uint64_t counter() const { return counter_; }

    std::uint64_t next_u64();

    // Uniform on the open interval (0, 1).
    double next_uniform();

    // N(mean, sd^2) via the inverse normal CDF (one uniform per draw).
    // sd == 0 returns mean exactly.
    double next_gaussian(double mean, double sd);

    // Derived stream for replica/work-item `index` under a fixed salt.
    // Distinct (salt, index) pairs map to distinct stream ids.
    RngStream substream(std::uint64_t salt, std::uint64_t index) const;

private:
    std::uint64_t master_seed_;
    std::uint64_t stream_id_;
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

// Inverse standard normal CDF (Wichura's AS241, double precision).
double inverse_normal_cdf(double p);

}  // namespace kesten

#endif  // KESTEN_RNG_HPP
