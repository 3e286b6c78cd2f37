#pragma once

#include <optional>
#include <vector>

#include "indices.hpp"
#include "rational.hpp"
#include "real.hpp"

namespace zetakit {

// Working precision and truncation ladder for the numeric evaluator.
struct PrecisionContext {
    unsigned bits = 192;
    std::vector<long> ladder = {1 << 10, 1 << 11, 1 << 12, 1 << 13, 1 << 14};
    int order = 4;

    static PrecisionContext defaults() { return PrecisionContext{}; }
    // bits >= 64, ladder strictly increasing, 0 < order < ladder length.
    void validate() const;
};

// pi to ctx.bits; err stays within a couple of ulps.
NumericValue const_pi(const PrecisionContext& ctx);

// Exact Bernoulli number B_n by the classical recurrence; cached. Defined
// for n <= 200 and rejects odd n > 1 (their value is trivially zero).
Rational bernoulli(int n);

// zeta(s) for integer s >= 2: the Bernoulli/pi closed form for even s, a
// direct series with an Euler-Maclaurin tail of fixed order for odd s.
NumericValue zeta_int(int s, const PrecisionContext& ctx);

// The truncation-ladder extrapolation plan chosen for an index: log_degree
// is the degree of log(p) in the tail basis (bounded by the number of parts
// equal to 1), order the power depth, points the effective ladder.
struct ExtrapPlan {
    int log_degree = 0;
    int order = 0;
    std::vector<long> points;
};
ExtrapPlan extrapolation_plan(const Index& i, const PrecisionContext& ctx);

// Limits of the truncated sums: floating-point ladder evaluation combined
// by extrapolation in 1/p against a power basis with log corrections for
// indices containing 1s. err comes from the difference between the last two
// extrapolation orders. Indices must be admissible.
NumericValue mzsv_numeric(const Index& i, const PrecisionContext& ctx);
NumericValue mzv_numeric(const Index& i, const PrecisionContext& ctx);

// Best continued-fraction convergent with denominator <= max_den within
// max(4 * v.err, 2^{-bits/2}) of the value; empty when none qualifies.
std::optional<Rational> recognize_rational(const NumericValue& v,
                                           unsigned long max_den);

}  // namespace zetakit
