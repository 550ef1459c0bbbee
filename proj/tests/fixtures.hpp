// Shared fixture loaders for the unit tests.
#pragma once

#include <string>

#include "meyerkit/io.hpp"

namespace fx {

using namespace meyerkit;

inline std::string path(const std::string& name) { return std::string(MEYERKIT_FIXTURES) + "/" + name; }

inline CutProjectScheme fib() { return io::load_cps(path("fib.json")); }
inline CutProjectScheme dec2() { return io::load_cps(path("dec2.json")); }
inline CutProjectScheme toy() { return io::load_cps(path("toy.json")); }
inline WindowSet fib_window() { return io::load_windows(path("fib_window.json")); }
inline WindowSet dec2_windows() { return io::load_windows(path("dec2_windows.json")); }
inline WindowSet dec2_dup_windows() { return io::load_windows(path("dec2_dup_windows.json")); }
inline WindowSet toy_windows() { return io::load_windows(path("toy_windows.json")); }

inline QuadExt phi() { return QuadExt(Rational(1, 2), Rational(1, 2), 5); }
/// p + q phi
inline QuadExt fibnum(long p, long q) { return QuadExt(p) + QuadExt(q) * phi(); }
inline QuadExt rat(long a, long b = 1) { return QuadExt(Rational(a, b)); }
inline Box box1(QuadExt lo, QuadExt hi) { return Box{Interval{std::move(lo), std::move(hi)}}; }

}  // namespace fx
