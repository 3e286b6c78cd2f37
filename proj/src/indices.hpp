#pragma once

#include <compare>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace zetakit {

// A composition (k_1,...,k_n) of positive integers, the argument of the
// zeta and zeta-star series. k_1 is the exponent of the outermost
// summation variable. n = 0 is the empty index.
class Index {
  public:
    Index() = default;
    explicit Index(std::vector<int> parts);

    // Comma-separated parts, e.g. "2,1,2". Empty string parses to the
    // empty index.
    static Index parse(std::string_view text);

    int depth() const { return static_cast<int>(parts_.size()); }
    int weight() const;
    // Number of parts equal to 1; drives the tail model of the numeric
    // evaluator.
    int ones() const;
    bool empty() const { return parts_.empty(); }
    // Convergent series: empty or k_1 >= 2.
    bool admissible() const { return parts_.empty() || parts_[0] >= 2; }

    std::span<const int> parts() const { return parts_; }
    int part(int i) const { return parts_[static_cast<size_t>(i)]; }

    // MZV duality: encode as the binary word x^{k_1-1}y ... x^{k_n-1}y,
    // reverse, swap x<->y, decode. Involutive on admissible indices of
    // depth >= 1.
    Index dual() const;

    std::string to_string() const;

    auto operator<=>(const Index&) const = default;

  private:
    std::vector<int> parts_;
};

// A 2-3-1 index template: ({2}^{j_1}, e_1, {2}^{j_2}, ..., e_{n-1}, {2}^{j_n})
// with j_i >= 0 and e_i in {1,3}. The empty pattern (n = 0) is a distinct
// state standing for the constant 1.
class Pattern {
  public:
    Pattern(std::vector<int> jvec, std::vector<int> evec);

    static Pattern empty();
    // Syntax "j=1,0;e=1"; "j=;e=" is the empty pattern.
    static Pattern parse(std::string_view text);

    bool is_empty() const { return j_.empty(); }
    int length() const { return static_cast<int>(j_.size()); }

    std::span<const int> jvec() const { return j_; }
    std::span<const int> evec() const { return e_; }

    // e_k with the convention e_0 = e_n = 1; valid for 0 <= k <= n.
    int e_at(int k) const;

    // The expansion diverges iff n >= 2, j_1 = 0 and e_1 = 1.
    bool admissible() const;

    Index to_index() const;
    int weight() const;

    Pattern append_zero(int e_new) const;  // (j_1,...,j_n,0), evec + e_new
    Pattern increment_last() const;        // (j_1,...,j_{n-1},j_n+1)
    Pattern reversed() const;
    Pattern prefix(int k) const;           // (j_1,...,j_k) with (e_1,...,e_{k-1})

    std::string to_string() const;

    auto operator<=>(const Pattern&) const = default;

  private:
    Pattern() = default;
    std::vector<int> j_;
    std::vector<int> e_;
};

// The two truncatable factors of the alternating sum of the telescoping
// identity: X(k) = value(left) * value(right), split per e_k.
struct XFactors {
    Pattern left;
    Pattern right;
};

// Builds the X(k) factor patterns for 0 <= k <= n. Throws std::out_of_range
// for bad k. Factors may be non-admissible; evaluators decide what to do.
XFactors x_factors(const Pattern& p, int k);

}  // namespace zetakit
