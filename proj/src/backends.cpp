#include "sng/backends.hpp"

#include <random>

namespace sng {

std::vector<Instance> mock_uniform_sample(const Universe& universe, std::size_t s,
                                          std::uint64_t seed) {
    return universe.sample(s, seed);
}

std::vector<Instance> MockUniformBackend::sample(const GeneratorContext&, std::size_t count,
                                                 std::uint64_t seed) {
    if (fidelity_ <= 0.0 || focus_.empty()) return universe_.sample(count, seed);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> pick_focus(0, focus_.size() - 1);
    std::vector<Instance> wide = universe_.sample(count, mix_seed(seed, 0x71de));
    std::vector<Instance> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        out.push_back(coin(rng) < fidelity_ ? focus_[pick_focus(rng)] : wide[i]);
    return out;
}

}  // namespace sng
