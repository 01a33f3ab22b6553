#pragma once

#include <functional>

#include "sng/gen.hpp"

namespace sng {

/// s independent uniform draws with replacement, deterministic under the
/// seed. Throws on an empty universe.
std::vector<Instance> mock_uniform_sample(const Universe& universe, std::size_t s,
                                          std::uint64_t seed);

/// Deterministic stand-in for a conditioned neural generator. With fidelity 0
/// it samples uniformly from the universe. A positive fidelity draws from the
/// focus pool (instances the conditioning hypothesis admits) with that
/// probability per draw — modelling a generator that follows its symbolic
/// conditioning most of the time but still wanders.
class MockUniformBackend final : public GeneratorBackend {
public:
    explicit MockUniformBackend(Universe universe) : universe_(std::move(universe)) {}

    MockUniformBackend(Universe universe, std::vector<Instance> focus_pool, double fidelity)
        : universe_(std::move(universe)), focus_(std::move(focus_pool)), fidelity_(fidelity) {}

    std::vector<Instance> sample(const GeneratorContext& context, std::size_t count,
                                 std::uint64_t seed) override;

private:
    Universe universe_;
    std::vector<Instance> focus_;
    double fidelity_ = 0.0;
};

/// Backend driven by an arbitrary function; handy for tests.
class FunctionBackend final : public GeneratorBackend {
public:
    using Fn = std::function<std::vector<Instance>(const GeneratorContext&, std::size_t,
                                                   std::uint64_t)>;
    explicit FunctionBackend(Fn fn) : fn_(std::move(fn)) {}

    std::vector<Instance> sample(const GeneratorContext& context, std::size_t count,
                                 std::uint64_t seed) override {
        return fn_(context, count, seed);
    }

private:
    Fn fn_;
};

}  // namespace sng
