#include "exactreal.hpp"

#include <boost/multiprecision/integer.hpp>

#include <cctype>
#include <cstdlib>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace sturm {

namespace {

constexpr unsigned kStartBits = 64;
constexpr unsigned kDefaultCap = 16384;

BigInt pow2(unsigned bits) {
    return BigInt(1) << bits;
}

}  // namespace

unsigned precision_cap() {
    static const unsigned cap = [] {
        if (const char* env = std::getenv("STURM_PRECISION_CAP")) {
            const long v = std::strtol(env, nullptr, 10);
            if (v >= 64) return static_cast<unsigned>(v);
        }
        return kDefaultCap;
    }();
    return cap;
}

BigInt rat_floor(const BigRat& q) {
    BigInt n = numerator(q), d = denominator(q);  // d > 0 canonical
    BigInt quo = n / d;
    if (n < 0 && quo * d != n) --quo;
    return quo;
}

BigInt rat_ceil(const BigRat& q) {
    return -rat_floor(-q);
}

RefinableInterval sqrt_interval(const BigInt& k, unsigned bits) {
    // floor(sqrt(k * 4^bits)) / 2^bits encloses sqrt(k) from below;
    // cached because the evaluation paths ask for the same few radicands
    // at the same rung of the ladder over and over
    static std::mutex mutex;
    static std::map<std::pair<BigInt, unsigned>, RefinableInterval> cache;
    {
        const std::scoped_lock lock(mutex);
        const auto it = cache.find({k, bits});
        if (it != cache.end()) return it->second;
    }
    const BigInt scaled = k << (2 * bits);
    const BigInt root = boost::multiprecision::sqrt(scaled);
    RefinableInterval out;
    out.lo = BigRat(root, pow2(bits));
    out.hi = BigRat(root + 1, pow2(bits));
    out.bits = bits;
    const std::scoped_lock lock(mutex);
    cache.emplace(std::make_pair(k, bits), out);
    return out;
}

std::pair<long long, long long> squarefree_split(long long k) {
    long long square = 1, free = 1;
    for (long long d = 2; d * d <= k; ++d) {
        while (k % (d * d) == 0) {
            k /= d * d;
            square *= d;
        }
        if (k % d == 0) {
            k /= d;
            free *= d;
        }
    }
    return {square, free * k};
}

void SurdReal::add_surd(long long k, const BigRat& coeff) {
    if (coeff == 0) return;
    auto [it, inserted] = surds_.try_emplace(k, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0) surds_.erase(it);
    }
}

SurdReal SurdReal::sqrt_of(long long k) {
    if (k < 0) throw std::invalid_argument("sqrt of negative integer");
    if (k == 0) return SurdReal(0);
    auto [square, free] = squarefree_split(k);
    SurdReal out;
    if (free == 1) {
        out.rational_ = square;
    } else {
        out.add_surd(free, BigRat(square));
    }
    return out;
}

SurdReal SurdReal::operator-() const {
    SurdReal out;
    out.rational_ = -rational_;
    for (const auto& [k, c] : surds_) out.surds_.emplace(k, -c);
    return out;
}

SurdReal SurdReal::operator+(const SurdReal& o) const {
    SurdReal out = *this;
    out.rational_ += o.rational_;
    for (const auto& [k, c] : o.surds_) out.add_surd(k, c);
    return out;
}

SurdReal SurdReal::operator-(const SurdReal& o) const {
    return *this + (-o);
}

SurdReal SurdReal::operator*(const SurdReal& o) const {
    SurdReal out;
    out.rational_ = rational_ * o.rational_;
    for (const auto& [k, c] : surds_) out.add_surd(k, c * o.rational_);
    for (const auto& [k, c] : o.surds_) out.add_surd(k, c * rational_);
    for (const auto& [k1, c1] : surds_) {
        for (const auto& [k2, c2] : o.surds_) {
            if (k1 == k2) {
                out.rational_ += c1 * c2 * k1;
            } else {
                auto [square, free] = squarefree_split(k1 * k2);
                if (free == 1) {
                    out.rational_ += c1 * c2 * square;
                } else {
                    out.add_surd(free, c1 * c2 * square);
                }
            }
        }
    }
    return out;
}

SurdReal SurdReal::operator/(const SurdReal& o) const {
    if (o.is_zero()) throw std::domain_error("division by zero");
    if (o.is_rational()) return scaled(BigRat(1) / o.rational_);
    // Rationalize: conjugation flipping the sign of every term whose
    // radicand is divisible by p is a field automorphism, and
    // o * conj_p(o) drops p from all radicands, so this terminates.
    long long p = 2;
    while (true) {
        bool divides_some = false;
        for (const auto& [k, c] : o.surds_) {
            if (k % p == 0) {
                divides_some = true;
                break;
            }
        }
        if (divides_some) break;
        ++p;
    }
    SurdReal conj;
    conj.rational_ = o.rational_;
    for (const auto& [k, c] : o.surds_) conj.surds_.emplace(k, k % p == 0 ? -c : c);
    return (*this * conj) / (o * conj);
}

SurdReal SurdReal::scaled(const BigRat& r) const {
    SurdReal out;
    if (r == 0) return out;
    out.rational_ = rational_ * r;
    for (const auto& [k, c] : surds_) out.surds_.emplace(k, c * r);
    return out;
}

RefinableInterval SurdReal::enclosure(unsigned bits) const {
    RefinableInterval out{rational_, rational_, bits};
    for (const auto& [k, c] : surds_) {
        const RefinableInterval root = sqrt_interval(BigInt(k), bits);
        if (c > 0) {
            out.lo += c * root.lo;
            out.hi += c * root.hi;
        } else {
            out.lo += c * root.hi;
            out.hi += c * root.lo;
        }
    }
    return out;
}

int SurdReal::sign() const {
    if (surds_.empty()) {
        if (rational_ == 0) return 0;
        return rational_ > 0 ? 1 : -1;
    }
    for (unsigned bits = kStartBits; bits <= precision_cap(); bits *= 2) {
        const RefinableInterval iv = enclosure(bits);
        if (iv.lo > 0) return 1;
        if (iv.hi < 0) return -1;
    }
    throw PrecisionExhausted("sign undecided at precision cap: " + str());
}

BigInt SurdReal::floor() const {
    if (surds_.empty()) return rat_floor(rational_);
    for (unsigned bits = kStartBits; bits <= precision_cap(); bits *= 2) {
        const RefinableInterval iv = enclosure(bits);
        const BigInt lo = rat_floor(iv.lo), hi = rat_floor(iv.hi);
        if (lo == hi) return lo;
    }
    throw PrecisionExhausted("floor undecided at precision cap: " + str());
}

BigInt SurdReal::ceil() const {
    return -(-*this).floor();
}

SurdReal SurdReal::frac() const {
    return *this - SurdReal(BigRat(floor()));
}

double SurdReal::approx() const {
    const RefinableInterval iv = enclosure(kStartBits);
    return static_cast<double>((iv.lo + iv.hi) / 2);
}

int compare(const SurdReal& a, const SurdReal& b) {
    if (a == b) return 0;
    return (a - b).sign();
}

std::string SurdReal::str() const {
    if (surds_.empty() && rational_ == 0) return "0";
    std::ostringstream out;
    bool first = true;
    auto emit = [&](const BigRat& coeff, long long k) {
        const bool neg = coeff < 0;
        const BigRat mag = neg ? BigRat(-coeff) : coeff;
        if (first) {
            if (neg) out << "-";
            first = false;
        } else {
            out << (neg ? " - " : " + ");
        }
        if (k == 0) {
            out << mag;
            return;
        }
        if (mag != 1) out << mag << "*";
        out << "sqrt(" << k << ")";
    };
    if (rational_ != 0) emit(rational_, 0);
    for (const auto& [k, c] : surds_) emit(c, k);
    return out.str();
}

// ---------------------------------------------------------------------------
// literal parser: sums/products/quotients of integers and sqrt(k), with
// parentheses; every rational stays exact

namespace {

struct Lexer {
    std::string_view text;
    size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    char take() {
        const char c = peek();
        if (pos < text.size()) ++pos;
        return c;
    }
    bool eat(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    bool eat_word(std::string_view w) {
        skip_ws();
        if (text.substr(pos, w.size()) == w) {
            pos += w.size();
            return true;
        }
        return false;
    }
    BigInt integer() {
        skip_ws();
        const size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) throw ParseError("expected integer in surd literal");
        return BigInt(std::string(text.substr(start, pos - start)));
    }
};

SurdReal parse_sum(Lexer& lex);

SurdReal parse_primary(Lexer& lex) {
    if (lex.eat('(')) {
        SurdReal inner = parse_sum(lex);
        if (!lex.eat(')')) throw ParseError("missing ')' in surd literal");
        return inner;
    }
    if (lex.eat_word("sqrt")) {
        if (!lex.eat('(')) throw ParseError("expected '(' after sqrt");
        const BigInt k = lex.integer();
        if (!lex.eat(')')) throw ParseError("missing ')' after sqrt radicand");
        if (k > 1000000) throw ParseError("radicand too large");
        return SurdReal::sqrt_of(static_cast<long long>(k));
    }
    return SurdReal(BigRat(lex.integer()));
}

SurdReal parse_unary(Lexer& lex) {
    if (lex.eat('-')) return -parse_unary(lex);
    if (lex.eat('+')) return parse_unary(lex);
    return parse_primary(lex);
}

SurdReal parse_product(Lexer& lex) {
    SurdReal value = parse_unary(lex);
    while (true) {
        if (lex.eat('*')) {
            value = value * parse_unary(lex);
        } else if (lex.eat('/')) {
            value = value / parse_unary(lex);
        } else {
            return value;
        }
    }
}

SurdReal parse_sum(Lexer& lex) {
    SurdReal value = parse_product(lex);
    while (true) {
        if (lex.eat('+')) {
            value = value + parse_product(lex);
        } else if (lex.eat('-')) {
            value = value - parse_product(lex);
        } else {
            return value;
        }
    }
}

}  // namespace

SurdReal SurdReal::parse(std::string_view text) {
    Lexer lex{text};
    SurdReal value = parse_sum(lex);
    lex.skip_ws();
    if (lex.pos != text.size()) throw ParseError("trailing characters in surd literal");
    return value;
}

std::vector<SurdReal> parse_slope_entries(std::string_view text) {
    std::vector<SurdReal> out;
    size_t start = 0;
    int depth = 0;
    for (size_t i = 0; i <= text.size(); ++i) {
        if (i < text.size() && text[i] == '(') ++depth;
        if (i < text.size() && text[i] == ')') --depth;
        if (i == text.size() || (text[i] == ',' && depth == 0)) {
            out.push_back(SurdReal::parse(text.substr(start, i - start)));
            start = i + 1;
        }
    }
    if (out.empty()) throw ParseError("empty slope literal");
    return out;
}

// ---------------------------------------------------------------------------
// total irrationality: exact rank computation over the coefficient space

namespace {

// Returns a nontrivial rational dependency among the rows, or empty.
std::vector<BigRat> find_dependency(std::vector<std::vector<BigRat>> rows) {
    const size_t n = rows.size();
    const size_t width = rows.empty() ? 0 : rows[0].size();
    // augment with the identity to track row operations
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) rows[i].push_back(BigRat(i == j ? 1 : 0));
    }
    size_t pivot_row = 0;
    for (size_t col = 0; col < width && pivot_row < n; ++col) {
        size_t sel = pivot_row;
        while (sel < n && rows[sel][col] == 0) ++sel;
        if (sel == n) continue;
        std::swap(rows[sel], rows[pivot_row]);
        for (size_t r = 0; r < n; ++r) {
            if (r == pivot_row || rows[r][col] == 0) continue;
            const BigRat f = rows[r][col] / rows[pivot_row][col];
            for (size_t cc = 0; cc < rows[r].size(); ++cc) rows[r][cc] -= f * rows[pivot_row][cc];
        }
        ++pivot_row;
    }
    for (size_t r = pivot_row; r < n; ++r) {
        bool zero = true;
        for (size_t c = 0; c < width; ++c) {
            if (rows[r][c] != 0) {
                zero = false;
                break;
            }
        }
        if (zero) return {rows[r].begin() + width, rows[r].end()};
    }
    return {};
}

std::string format_witness(const std::vector<BigRat>& dep) {
    // dep[0] multiplies 1, dep[i] multiplies alpha_i; clear denominators
    BigInt lcm = 1;
    for (const auto& q : dep) lcm = boost::multiprecision::lcm(lcm, denominator(q));
    std::vector<BigInt> coeffs;
    for (const auto& q : dep) coeffs.push_back(numerator(q) * (lcm / denominator(q)));
    // normalize sign: first nonzero alpha coefficient positive
    int flip = 1;
    for (size_t i = 1; i < coeffs.size(); ++i) {
        if (coeffs[i] != 0) {
            flip = coeffs[i] < 0 ? -1 : 1;
            break;
        }
    }
    std::ostringstream out;
    bool first = true;
    for (size_t i = 1; i < coeffs.size(); ++i) {
        const BigInt c = coeffs[i] * flip;
        if (c == 0) continue;
        const BigInt mag = c < 0 ? BigInt(-c) : c;
        if (first) {
            if (c < 0) out << "-";
            first = false;
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        if (mag != 1) out << mag << "*";
        out << "a" << i;
    }
    const BigInt c0 = coeffs[0] * flip;
    if (c0 != 0) {
        const BigInt mag = c0 < 0 ? BigInt(-c0) : c0;
        if (first) {
            out << (c0 < 0 ? "-" : "") << mag;
        } else {
            out << (c0 < 0 ? " - " : " + ") << mag;
        }
    }
    out << " = 0";
    return out.str();
}

}  // namespace

IndependenceResult check_total_irrationality(const std::vector<SurdReal>& alpha) {
    std::vector<long long> radicands;
    for (const auto& a : alpha) {
        for (const auto& [k, c] : a.surd_terms()) {
            if (std::find(radicands.begin(), radicands.end(), k) == radicands.end()) {
                radicands.push_back(k);
            }
        }
    }
    std::sort(radicands.begin(), radicands.end());

    std::vector<std::vector<BigRat>> rows;
    auto row_of = [&](const SurdReal& v) {
        std::vector<BigRat> row{v.rational_part()};
        for (long long k : radicands) {
            auto it = v.surd_terms().find(k);
            row.push_back(it == v.surd_terms().end() ? BigRat(0) : it->second);
        }
        return row;
    };
    rows.push_back(row_of(SurdReal(1)));
    for (const auto& a : alpha) rows.push_back(row_of(a));

    const std::vector<BigRat> dep = find_dependency(std::move(rows));
    if (dep.empty()) return {true, ""};
    return {false, format_witness(dep)};
}

SlopeVector make_slope(std::vector<SurdReal> entries) {
    const IndependenceResult res = check_total_irrationality(entries);
    if (!res.independent) {
        throw std::invalid_argument("slope entries rationally dependent: " + res.witness);
    }
    return {std::move(entries), SlopeVector::Certificate::proven};
}

SlopeVector make_slope_asserted(std::vector<SurdReal> entries) {
    return {std::move(entries), SlopeVector::Certificate::asserted};
}

}  // namespace sturm
