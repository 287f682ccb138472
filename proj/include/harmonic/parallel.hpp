#ifndef HARMONIC_PARALLEL_HPP
#define HARMONIC_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace harmonic {

/// Worker count: HARMONIC_THREADS when set and positive, otherwise the
/// hardware concurrency (0 in the variable means auto).
unsigned thread_count();

/// Runs body(i) for i in [0, n) on up to thread_count() threads in
/// contiguous blocks. If any call throws, the exception raised at the lowest
/// index is rethrown, so failures are reported deterministically.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace harmonic

#endif  // HARMONIC_PARALLEL_HPP
