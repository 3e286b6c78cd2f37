#pragma once

#include <map>
#include <string>
#include <string_view>

#include "indices.hpp"
#include "rational.hpp"

namespace zetakit {

// Words over the alphabet {x, y}, stored as strings of 'x'/'y'. A word lies
// in the subalgebra H1 iff it is empty or ends in y; those words encode
// indices via z_k = x^{k-1} y.
using Word = std::string;

bool word_in_h1(const Word& w);
Word word_z(int k);                    // z_k = x^{k-1} y
Word word_from_index(const Index& i);  // z_{k_1} ... z_{k_n}
Index index_from_word(const Word& w);  // throws if w is not in H1

// Graded lexicographic order: by length, then lexicographically.
struct GradedLex {
    bool operator()(const Word& a, const Word& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

// A finite Q-linear combination of words. Zero coefficients are never
// stored, so map equality is element equality.
class NCPoly {
  public:
    NCPoly() = default;
    static NCPoly zero() { return NCPoly(); }
    static NCPoly one() { return word(Word()); }
    static NCPoly word(Word w, Rational coeff = Rational(1));

    bool is_zero() const { return terms_.empty(); }
    // Every word of the support lies in H1.
    bool in_h1() const;

    const std::map<Word, Rational, GradedLex>& terms() const { return terms_; }
    Rational coeff(const Word& w) const;

    void add_term(const Word& w, const Rational& c);

    NCPoly operator+(const NCPoly& o) const;
    NCPoly operator-(const NCPoly& o) const;
    NCPoly operator-() const;
    NCPoly operator*(const Rational& c) const;
    // Concatenation product of the free algebra.
    NCPoly concat(const NCPoly& o) const;

    bool operator==(const NCPoly& o) const = default;

    // "c1*w1 + c2*w2" in graded-lex order; the empty word prints as "1".
    std::string to_string() const;

  private:
    std::map<Word, Rational, GradedLex> terms_;
};

// Harmonic (stuffle) product, the bilinear extension of
//   1*w = w*1 = w,
//   z_k w * z_l w' = z_k(w * z_l w') + z_l(z_k w * w') + z_{k+l}(w * w').
// Both operands must lie in H1.
NCPoly harmonic_product(const NCPoly& u, const NCPoly& v);

// The algebra automorphism gamma(x) = x, gamma(y) = x + y, applied letterwise
// with full product expansion. Defined on all of H.
NCPoly gamma_map(const NCPoly& u);

// d(1) = 1 and d(wy) = gamma(w) y, extended linearly. Operand must be in H1.
NCPoly d_map(const NCPoly& u);

// Z_p and Z*_p: linear extension of word -> truncated (star) zeta value of
// the encoded index. Operand must be in H1.
Rational zp_eval(const NCPoly& u, long p);
Rational zp_star_eval(const NCPoly& u, long p);

// LHS - RHS of
//   d(z_c^m z_b z_a^n) = sum_{k<=m} sum_{l<=n} (-1)^{k+l}
//       z_a^l z_b z_c^k * d(z_c^{m-k}) * d(z_a^{n-l});
// identically the zero polynomial.
NCPoly prop23_residual(int m, int n, int a, int b, int c);

}  // namespace zetakit
