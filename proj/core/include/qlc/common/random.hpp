#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace qlc {

// Seeded generator whose draws are identical on every standard library.
// std::uniform_int_distribution and std::shuffle are implementation-defined,
// so bounded draws are done here by rejection sampling on top of mt19937_64.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    // Uniform integer in [0, bound). bound must be > 0.
    std::uint64_t below(std::uint64_t bound)
    {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t draw = engine_();
        while (draw >= limit) {
            draw = engine_();
        }
        return draw % bound;
    }

    template <typename T>
    void shuffle(std::vector<T>& items)
    {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

    // Picks up to `count` distinct elements, preserving nothing about order.
    template <typename T>
    std::vector<T> sample(std::vector<T> items, std::size_t count)
    {
        shuffle(items);
        if (items.size() > count) {
            items.resize(count);
        }
        return items;
    }

private:
    std::mt19937_64 engine_;
};

} // namespace qlc
