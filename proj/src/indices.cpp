#include "indices.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <stdexcept>

namespace zetakit {

namespace {

std::vector<int> parse_csv(std::string_view text, int min_value,
                           const char* what) {
    std::vector<int> out;
    if (text.empty()) return out;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t comma = text.find(',', pos);
        std::string_view tok = text.substr(
            pos, comma == std::string_view::npos ? text.size() - pos
                                                 : comma - pos);
        int v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || ptr != tok.data() + tok.size() || v < min_value)
            throw std::invalid_argument(std::string(what) + ": bad entry '" +
                                        std::string(tok) + "'");
        out.push_back(v);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

std::string join_csv(std::span<const int> v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(v[i]);
    }
    return s;
}

}  // namespace

Index::Index(std::vector<int> parts) : parts_(std::move(parts)) {
    for (int k : parts_)
        if (k < 1) throw std::invalid_argument("index: parts must be >= 1");
}

Index Index::parse(std::string_view text) {
    return Index(parse_csv(text, 1, "index"));
}

int Index::weight() const {
    return std::accumulate(parts_.begin(), parts_.end(), 0);
}

int Index::ones() const {
    return static_cast<int>(std::count(parts_.begin(), parts_.end(), 1));
}

Index Index::dual() const {
    if (empty() || !admissible())
        throw std::domain_error("dual: index must be admissible with depth >= 1");
    // x -> false, y -> true
    std::vector<bool> word;
    for (int k : parts_) {
        word.insert(word.end(), static_cast<size_t>(k - 1), false);
        word.push_back(true);
    }
    std::reverse(word.begin(), word.end());
    word.flip();
    std::vector<int> parts;
    int run = 0;
    for (bool letter : word) {
        ++run;
        if (letter) {  // y closes a part x^{k-1}y
            parts.push_back(run);
            run = 0;
        }
    }
    return Index(std::move(parts));
}

std::string Index::to_string() const { return join_csv(parts_); }

Pattern::Pattern(std::vector<int> jvec, std::vector<int> evec)
    : j_(std::move(jvec)), e_(std::move(evec)) {
    if (j_.empty())
        throw std::invalid_argument("pattern: use Pattern::empty() for n = 0");
    if (e_.size() + 1 != j_.size())
        throw std::invalid_argument("pattern: evec must have n-1 entries");
    for (int j : j_)
        if (j < 0) throw std::invalid_argument("pattern: j entries must be >= 0");
    for (int e : e_)
        if (e != 1 && e != 3)
            throw std::invalid_argument("pattern: e entries must be 1 or 3");
}

Pattern Pattern::empty() { return Pattern(); }

Pattern Pattern::parse(std::string_view text) {
    size_t semi = text.find(';');
    if (semi == std::string_view::npos || text.substr(0, 2) != "j=" ||
        text.substr(semi + 1, 2) != "e=")
        throw std::invalid_argument("pattern: expected \"j=...;e=...\"");
    auto jv = parse_csv(text.substr(2, semi - 2), 0, "pattern j");
    auto ev = parse_csv(text.substr(semi + 3), 1, "pattern e");
    if (jv.empty() && ev.empty()) return empty();
    return Pattern(std::move(jv), std::move(ev));
}

int Pattern::e_at(int k) const {
    if (k < 0 || k > length()) throw std::out_of_range("pattern: e_at");
    if (k == 0 || k == length()) return 1;  // e_0 = e_n = 1 convention
    return e_[static_cast<size_t>(k - 1)];
}

bool Pattern::admissible() const {
    return !(length() >= 2 && j_[0] == 0 && e_[0] == 1);
}

Index Pattern::to_index() const {
    std::vector<int> parts;
    for (size_t i = 0; i < j_.size(); ++i) {
        if (i) parts.push_back(e_[i - 1]);
        parts.insert(parts.end(), static_cast<size_t>(j_[i]), 2);
    }
    return Index(std::move(parts));
}

int Pattern::weight() const {
    int w = 0;
    for (int j : j_) w += 2 * j;
    for (int e : e_) w += e;
    return w;
}

Pattern Pattern::append_zero(int e_new) const {
    if (is_empty())
        throw std::domain_error("pattern: append_zero on the empty pattern");
    if (e_new != 1 && e_new != 3)
        throw std::invalid_argument("pattern: appended e must be 1 or 3");
    auto j = j_;
    auto e = e_;
    j.push_back(0);
    e.push_back(e_new);
    return Pattern(std::move(j), std::move(e));
}

Pattern Pattern::increment_last() const {
    if (is_empty())
        throw std::domain_error("pattern: increment_last on the empty pattern");
    auto j = j_;
    ++j.back();
    return Pattern(std::move(j), e_);
}

Pattern Pattern::reversed() const {
    if (is_empty()) return *this;
    auto j = j_;
    auto e = e_;
    std::reverse(j.begin(), j.end());
    std::reverse(e.begin(), e.end());
    return Pattern(std::move(j), std::move(e));
}

Pattern Pattern::prefix(int k) const {
    if (k < 0 || k > length()) throw std::out_of_range("pattern: prefix");
    if (k == 0) return empty();
    return Pattern(std::vector<int>(j_.begin(), j_.begin() + k),
                   std::vector<int>(e_.begin(), e_.begin() + (k - 1)));
}

std::string Pattern::to_string() const {
    return "j=" + join_csv(j_) + ";e=" + join_csv(e_);
}

XFactors x_factors(const Pattern& p, int k) {
    const int n = p.length();
    if (n < 1) throw std::domain_error("x_factors: pattern must be non-empty");
    if (k < 0 || k > n) throw std::out_of_range("x_factors: k");
    const Pattern rev = p.reversed();
    // Z-bar_1((0)) = zeta-star of the empty index = 1.
    const Pattern unit({0}, {});
    if (p.e_at(k) == 1) {
        Pattern left = (k == 0) ? unit : p.prefix(k).append_zero(1);
        Pattern right = (k == n) ? unit : rev.prefix(n - k).append_zero(1);
        return {std::move(left), std::move(right)};
    }
    // e_k = 3 can only occur for 1 <= k <= n-1, so both prefixes are
    // non-empty.
    return {p.prefix(k).increment_last(), rev.prefix(n - k).increment_last()};
}

}  // namespace zetakit
