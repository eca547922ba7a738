#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace septree {

/// Seeded generator used for every random choice in the library. The same
/// seed gives the same choices on every platform.
class Rng {
public:
	explicit Rng(std::uint64_t seed) : engine_(seed) {}

	std::uint64_t next() { return engine_(); }

	/// Uniform integer in [0, n), n > 0, by rejection.
	std::uint64_t below(std::uint64_t n) {
		const std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0) % n);
		std::uint64_t x;
		do {
			x = engine_();
		} while (x >= limit);
		return x % n;
	}

	/// Uniform double in [0, 1) with 53 random bits.
	double uniform() { return double(engine_() >> 11) * 0x1.0p-53; }

	bool coin(double p = 0.5) { return uniform() < p; }

	/// Fisher-Yates shuffle.
	template <class T>
	void shuffle(std::span<T> items) {
		for (std::size_t i = items.size(); i > 1; --i) {
			std::size_t j = std::size_t(below(i));
			std::swap(items[i - 1], items[j]);
		}
	}

private:
	std::mt19937_64 engine_;
};

} // namespace septree
