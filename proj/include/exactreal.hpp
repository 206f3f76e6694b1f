#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sturm {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

BigInt rat_floor(const BigRat& q);
BigInt rat_ceil(const BigRat& q);

// Thrown when the refinement ladder reaches the precision cap without
// separating a value from a decision boundary.  A nonzero rational
// combination of 1 and square roots of distinct square-free integers is
// never zero, so this signals a bug or an adversarial input, not a
// limitation of the representation.
struct PrecisionExhausted : std::runtime_error {
    explicit PrecisionExhausted(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Default 16384 bits; override with the STURM_PRECISION_CAP environment
// variable (value in bits).
unsigned precision_cap();

// Dyadic enclosure lo <= x <= hi with hi - lo = 2^-bits.
struct RefinableInterval {
    BigRat lo;
    BigRat hi;
    unsigned bits = 0;
};

// Enclosure of sqrt(k) via integer square roots; k need not be square-free.
RefinableInterval sqrt_interval(const BigInt& k, unsigned bits);

// k = s^2 * f with f square-free.
std::pair<long long, long long> squarefree_split(long long k);

// Element of a real multiquadratic field: rational + sum of rational
// multiples of sqrt(k) for distinct square-free k >= 2.  Coefficients of
// value zero are never stored, which makes equality structural and makes
// "no surd terms" equivalent to "rational".
class SurdReal {
  public:
    SurdReal() = default;
    SurdReal(long long v) : rational_(v) {}  // NOLINT: implicit by design
    explicit SurdReal(BigRat v) : rational_(std::move(v)) {}

    static SurdReal sqrt_of(long long k);  // splits off square factors
    static SurdReal parse(std::string_view text);

    const BigRat& rational_part() const { return rational_; }
    const std::map<long long, BigRat>& surd_terms() const { return surds_; }
    bool is_rational() const { return surds_.empty(); }
    bool is_zero() const { return surds_.empty() && rational_ == 0; }

    SurdReal operator-() const;
    SurdReal operator+(const SurdReal& o) const;
    SurdReal operator-(const SurdReal& o) const;
    SurdReal operator*(const SurdReal& o) const;
    SurdReal operator/(const SurdReal& o) const;
    SurdReal& operator+=(const SurdReal& o) { return *this = *this + o; }
    SurdReal& operator-=(const SurdReal& o) { return *this = *this - o; }
    bool operator==(const SurdReal& o) const {
        return rational_ == o.rational_ && surds_ == o.surds_;
    }

    SurdReal scaled(const BigRat& r) const;

    int sign() const;              // exact; refines only when surds present
    BigInt floor() const;
    BigInt ceil() const;
    SurdReal frac() const;         // x - floor(x), in [0, 1)
    RefinableInterval enclosure(unsigned bits) const;
    double approx() const;         // for rendering and reports only

    // Canonical literal, round-trips through parse.
    std::string str() const;

  private:
    void add_surd(long long k, const BigRat& coeff);

    BigRat rational_;
    std::map<long long, BigRat> surds_;
};

int compare(const SurdReal& a, const SurdReal& b);
inline bool operator<(const SurdReal& a, const SurdReal& b) { return compare(a, b) < 0; }

// Slope with its rational-independence status.  "asserted" marks entries
// accepted without the rank test (experimental paths); reports derived
// from such slopes carry a watermark.
struct SlopeVector {
    std::vector<SurdReal> entries;
    enum class Certificate { proven, asserted } certificate = Certificate::asserted;
    int dim() const { return static_cast<int>(entries.size()); }
};

struct IndependenceResult {
    bool independent = false;
    std::string witness;  // normalized relation like "2*a1 - 1 = 0" when refuted
};

// Rank of {1, alpha_1, ..., alpha_d} over the rational span of
// {1} union {sqrt(k)}; decidable exactly for surd entries.
IndependenceResult check_total_irrationality(const std::vector<SurdReal>& alpha);

// Runs the rank test; throws std::invalid_argument with the witness
// relation when the entries are rationally dependent.
SlopeVector make_slope(std::vector<SurdReal> entries);
SlopeVector make_slope_asserted(std::vector<SurdReal> entries);

// Comma-separated surd literals, e.g. "sqrt(3)-1,sqrt(2)-1".
std::vector<SurdReal> parse_slope_entries(std::string_view text);

}  // namespace sturm
