#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <random>
#include <stdexcept>
#include <string>

namespace cliffglue {

// Exact rational scalar used everywhere in the core; no floating point.
using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Canonical form: "p" when the denominator is 1, otherwise "p/q" with q > 0.
inline std::string rat_to_string(const Rat& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) {
        s += "/";
        s += denominator(r).str();
    }
    return s;
}

// Accepts "p" or "p/q" with optional leading sign on p.
inline Rat parse_rat(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(text));
        Int num(text.substr(0, slash));
        Int den(text.substr(slash + 1));
        if (den == 0) throw Error("rational with zero denominator: " + text);
        return Rat(num, den);
    } catch (const std::runtime_error&) {
        throw Error("malformed rational: " + text);
    }
}

// Small random rationals for property tests: numerator in [-bound, bound],
// denominator in [1, den_bound].
inline Rat random_rat(std::mt19937_64& rng, int bound = 9, int den_bound = 3) {
    std::uniform_int_distribution<int> num(-bound, bound);
    std::uniform_int_distribution<int> den(1, den_bound);
    return Rat(num(rng), den(rng));
}

}  // namespace cliffglue
