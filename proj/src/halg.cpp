#include "halg.hpp"

#include <mutex>
#include <stdexcept>
#include <utility>

#include "truncated.hpp"

namespace zetakit {

bool word_in_h1(const Word& w) { return w.empty() || w.back() == 'y'; }

Word word_z(int k) {
    if (k < 1) throw std::invalid_argument("word_z: k must be >= 1");
    Word w(static_cast<size_t>(k - 1), 'x');
    w.push_back('y');
    return w;
}

Word word_from_index(const Index& i) {
    Word w;
    for (int k : i.parts()) w += word_z(k);
    return w;
}

Index index_from_word(const Word& w) {
    if (!word_in_h1(w))
        throw std::domain_error("index_from_word: word is not in H1");
    std::vector<int> parts;
    int run = 0;
    for (char ch : w) {
        if (ch != 'x' && ch != 'y')
            throw std::invalid_argument("index_from_word: bad letter");
        ++run;
        if (ch == 'y') {
            parts.push_back(run);
            run = 0;
        }
    }
    return Index(std::move(parts));
}

NCPoly NCPoly::word(Word w, Rational coeff) {
    NCPoly p;
    p.add_term(w, coeff);
    return p;
}

bool NCPoly::in_h1() const {
    for (const auto& [w, c] : terms_)
        if (!word_in_h1(w)) return false;
    return true;
}

Rational NCPoly::coeff(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Rational(0) : it->second;
}

void NCPoly::add_term(const Word& w, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

NCPoly NCPoly::operator+(const NCPoly& o) const {
    NCPoly out = *this;
    for (const auto& [w, c] : o.terms_) out.add_term(w, c);
    return out;
}

NCPoly NCPoly::operator-(const NCPoly& o) const {
    NCPoly out = *this;
    for (const auto& [w, c] : o.terms_) out.add_term(w, -c);
    return out;
}

NCPoly NCPoly::operator-() const {
    NCPoly out;
    for (const auto& [w, c] : terms_) out.add_term(w, -c);
    return out;
}

NCPoly NCPoly::operator*(const Rational& c) const {
    NCPoly out;
    if (c == 0) return out;
    for (const auto& [w, coeff] : terms_) out.add_term(w, coeff * c);
    return out;
}

NCPoly NCPoly::concat(const NCPoly& o) const {
    NCPoly out;
    for (const auto& [w1, c1] : terms_)
        for (const auto& [w2, c2] : o.terms_) out.add_term(w1 + w2, c1 * c2);
    return out;
}

std::string NCPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [w, c] : terms_) {
        if (!first) s += " + ";
        first = false;
        s += rational_to_string(c);
        s += "*";
        s += w.empty() ? "1" : w;
    }
    return s;
}

namespace {

std::mutex g_harmonic_mutex;
std::map<std::pair<Word, Word>, NCPoly> g_harmonic_memo;

// Splits a non-empty H1 word as z_k w'.
std::pair<int, Word> pop_z(const Word& w) {
    size_t y = w.find('y');
    return {static_cast<int>(y + 1), w.substr(y + 1)};
}

NCPoly prepend_z(int k, const NCPoly& p) {
    return NCPoly::word(word_z(k)).concat(p);
}

NCPoly harmonic_word(const Word& u, const Word& v) {
    if (u.empty()) return NCPoly::word(v);
    if (v.empty()) return NCPoly::word(u);
    // The product is commutative; canonicalize the key.
    const bool swap = GradedLex{}(v, u);
    auto key = swap ? std::make_pair(v, u) : std::make_pair(u, v);
    {
        std::lock_guard lock(g_harmonic_mutex);
        auto it = g_harmonic_memo.find(key);
        if (it != g_harmonic_memo.end()) return it->second;
    }
    auto [k, ur] = pop_z(u);
    auto [l, vr] = pop_z(v);
    NCPoly out = prepend_z(k, harmonic_word(ur, v)) +
                 prepend_z(l, harmonic_word(u, vr)) +
                 prepend_z(k + l, harmonic_word(ur, vr));
    std::lock_guard lock(g_harmonic_mutex);
    return g_harmonic_memo.emplace(std::move(key), std::move(out))
        .first->second;
}

}  // namespace

NCPoly harmonic_product(const NCPoly& u, const NCPoly& v) {
    if (!u.in_h1() || !v.in_h1())
        throw std::domain_error("harmonic_product: operands must be in H1");
    NCPoly out;
    for (const auto& [wu, cu] : u.terms())
        for (const auto& [wv, cv] : v.terms()) {
            NCPoly prod = harmonic_word(wu, wv) * (cu * cv);
            out = out + prod;
        }
    return out;
}

NCPoly gamma_map(const NCPoly& u) {
    NCPoly out;
    const NCPoly gx = NCPoly::word("x");
    const NCPoly gy = NCPoly::word("x") + NCPoly::word("y");
    for (const auto& [w, c] : u.terms()) {
        NCPoly img = NCPoly::one() * c;
        for (char ch : w) img = img.concat(ch == 'x' ? gx : gy);
        out = out + img;
    }
    return out;
}

NCPoly d_map(const NCPoly& u) {
    if (!u.in_h1()) throw std::domain_error("d_map: operand must be in H1");
    NCPoly out;
    for (const auto& [w, c] : u.terms()) {
        if (w.empty()) {
            out.add_term(w, c);
            continue;
        }
        NCPoly head = gamma_map(NCPoly::word(w.substr(0, w.size() - 1), c));
        out = out + head.concat(NCPoly::word("y"));
    }
    return out;
}

namespace {

Rational eval_words(const NCPoly& u, long p, bool star) {
    if (!u.in_h1()) throw std::domain_error("Z_p: operand must be in H1");
    Rational sum(0);
    for (const auto& [w, c] : u.terms()) {
        Index i = index_from_word(w);
        sum += c * (star ? zeta_star_trunc(i, p) : zeta_trunc(i, p));
    }
    return sum;
}

NCPoly z_power(int k, int m) {
    NCPoly out = NCPoly::one();
    for (int i = 0; i < m; ++i) out = out.concat(NCPoly::word(word_z(k)));
    return out;
}

}  // namespace

Rational zp_eval(const NCPoly& u, long p) { return eval_words(u, p, false); }

Rational zp_star_eval(const NCPoly& u, long p) { return eval_words(u, p, true); }

NCPoly prop23_residual(int m, int n, int a, int b, int c) {
    if (m < 0 || n < 0 || a < 1 || b < 1 || c < 1)
        throw std::invalid_argument("prop23_residual: bad parameters");
    NCPoly lhs = d_map(
        z_power(c, m).concat(NCPoly::word(word_z(b))).concat(z_power(a, n)));
    NCPoly rhs;
    for (int k = 0; k <= m; ++k)
        for (int l = 0; l <= n; ++l) {
            NCPoly head = z_power(a, l)
                              .concat(NCPoly::word(word_z(b)))
                              .concat(z_power(c, k));
            NCPoly term = harmonic_product(
                harmonic_product(head, d_map(z_power(c, m - k))),
                d_map(z_power(a, n - l)));
            if ((k + l) % 2) term = -term;
            rhs = rhs + term;
        }
    return lhs - rhs;
}

}  // namespace zetakit
