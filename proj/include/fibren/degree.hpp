#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "fibren/errors.hpp"
#include "fibren/interval.hpp"

namespace fibren {

// Positive rational exponent p/q in lowest terms.
struct Rat {
    std::int64_t num = 1;
    std::int64_t den = 1;

    Rat() = default;
    Rat(std::int64_t n, std::int64_t d) : num(n), den(d) {
        if (d <= 0 || n < 0) throw Error("rational exponent must be nonnegative with positive denominator");
        const std::int64_t g = std::gcd(n == 0 ? 1 : n, d);
        num /= g;
        den /= g;
    }
    double approx() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// Critical degree d = num/den > 2, kept as an exact rational: the degree named
// "3.8" is the real number 19/5. `label` is the decimal text used in file names.
class Degree {
  public:
    Degree() = default;
    Degree(std::int64_t num, std::int64_t den, std::string label)
        : num_(num), den_(den), label_(std::move(label)) {
        if (den_ <= 0 || num_ <= 0) throw Error("bad degree rational");
        const std::int64_t g = std::gcd(num_, den_);
        num_ /= g;
        den_ /= g;
    }

    // d > 2 is a RenormElement invariant, not a constraint of the power maps.
    bool exceeds_two() const { return num_ > 2 * den_; }

    // Accepts "3.8", "5.1", "4", "19/5".
    static Degree parse(const std::string& text) {
        std::int64_t num = 0, den = 1;
        const auto slash = text.find('/');
        const auto dot = text.find('.');
        if (slash != std::string::npos) {
            num = std::stoll(text.substr(0, slash));
            den = std::stoll(text.substr(slash + 1));
        } else if (dot != std::string::npos) {
            const std::string ip = text.substr(0, dot), fp = text.substr(dot + 1);
            if (fp.empty() || fp.size() > 15) throw Error("cannot parse degree: " + text);
            num = std::stoll(ip + fp);
            den = 1;
            for (std::size_t k = 0; k < fp.size(); ++k) den *= 10;
        } else {
            num = std::stoll(text);
        }
        return Degree(num, den, text);
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    const std::string& label() const { return label_; }
    double approx() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    // Exponents used throughout the derivative formulas; all stay rational.
    Rat d() const { return Rat(num_, den_); }
    Rat inv_d() const { return Rat(den_, num_); }
    Rat d_minus_1() const { return Rat(num_ - den_, den_); }
    Rat dm1_over_d() const { return Rat(num_ - den_, num_); }
    Rat dp1_over_d() const { return Rat(num_ + den_, num_); }
    Rat two_d() const { return Rat(2 * num_, den_); }

    // Tight enclosure of the real number num/den (requires an active scope).
    Interval as_interval() const { return Interval(static_cast<double>(num_)) / Interval(static_cast<double>(den_)); }

    bool operator==(const Degree& o) const { return num_ == o.num_ && den_ == o.den_; }

  private:
    std::int64_t num_ = 4;
    std::int64_t den_ = 1;
    std::string label_ = "4";
};

inline Interval rat_as_interval(const Rat& r) {
    return Interval(static_cast<double>(r.num)) / Interval(static_cast<double>(r.den));
}

} // namespace fibren
