#include "pb/exact_scalar.hpp"

#include <cmath>
#include <ostream>
#include <sstream>
#include <vector>

namespace pb {

const Rational& ExactScalar::as_rational() const {
    if (!is_rational()) throw std::domain_error("scalar is not rational: " + str());
    return a_;
}

ExactScalar ExactScalar::operator*(const ExactScalar& o) const {
    // Pure-rational operands dominate in practice; skip the cross terms then.
    if (is_rational()) {
        if (a_ == 0) return {};
        return {a_ * o.a_, a_ * o.b_, a_ * o.c_, a_ * o.d_};
    }
    if (o.is_rational()) {
        if (o.a_ == 0) return {};
        return {a_ * o.a_, b_ * o.a_, c_ * o.a_, d_ * o.a_};
    }
    // i^2 = -1, (sqrt2)^2 = 2, (i*sqrt2)^2 = -2.
    return {a_ * o.a_ - b_ * o.b_ + 2 * (c_ * o.c_ - d_ * o.d_),
            a_ * o.b_ + b_ * o.a_ + 2 * (c_ * o.d_ + d_ * o.c_),
            a_ * o.c_ + c_ * o.a_ - b_ * o.d_ - d_ * o.b_,
            a_ * o.d_ + d_ * o.a_ + b_ * o.c_ + c_ * o.b_};
}

ExactScalar ExactScalar::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero in Q(i,sqrt2)");
    if (is_rational()) return {1 / a_, 0, 0, 0};
    // x^-1 = conj_i(x) conj_s(x) conj_is(x) / N(x), with the field norm N(x) in Q.
    ExactScalar num = conj_i() * conj_sqrt2() * conj_i().conj_sqrt2();
    ExactScalar norm = *this * num;
    if (!norm.is_rational()) throw std::logic_error("field norm escaped Q");
    return num * ExactScalar(1 / norm.a_);
}

ExactScalar ExactScalar::operator/(const ExactScalar& o) const {
    if (o.is_rational()) {
        if (o.a_ == 0) throw std::domain_error("division by zero in Q(i,sqrt2)");
        return {a_ / o.a_, b_ / o.a_, c_ / o.a_, d_ / o.a_};
    }
    return *this * o.inverse();
}

bool ExactScalar::operator<(const ExactScalar& o) const {
    if (int c = cmp(a_, o.a_)) return c < 0;
    if (int c = cmp(b_, o.b_)) return c < 0;
    if (int c = cmp(c_, o.c_)) return c < 0;
    return cmp(d_, o.d_) < 0;
}

ExactScalar ExactScalar::pow(long k) const {
    if (k < 0) return inverse().pow(-k);
    ExactScalar acc(1);
    ExactScalar base = *this;
    while (k > 0) {
        if (k & 1) acc *= base;
        base *= base;
        k >>= 1;
    }
    return acc;
}

std::complex<double> ExactScalar::to_complex() const {
    static const double s2 = std::sqrt(2.0);
    return {to_double(a_) + s2 * to_double(c_), to_double(b_) + s2 * to_double(d_)};
}

ExactScalar pow_two(const Rational& e) {
    if (!is_half_integer_grid(e))
        throw std::domain_error("fractional 2-power leaked: 2^(" + to_string(e) + ")");
    long k2 = to_long(2 * e);
    long q = (k2 >= 0) ? k2 / 2 : -((-k2 + 1) / 2);  // floor division
    long r = k2 - 2 * q;                              // 0 or 1
    Rational pq = rat_pow(Rational(2), q);
    if (r == 0) return {pq};
    return ExactScalar(pq) * ExactScalar::sqrt2();
}

std::string ExactScalar::str() const {
    struct Part {
        const Rational* v;
        const char* suffix;
    };
    const Part parts[] = {{&a_, ""}, {&b_, "*I"}, {&c_, "*R2"}, {&d_, "*I*R2"}};
    std::string out;
    for (const auto& p : parts) {
        if (*p.v == 0) continue;
        Rational v = *p.v;
        bool neg = v < 0;
        if (out.empty()) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        if (neg) v = -v;
        out += v.get_str();
        out += p.suffix;
    }
    if (out.empty()) out = "0";
    return out;
}

namespace {

// One additive term of the string format, e.g. "3/4*I*R2", "I", "R2".
void apply_term(ExactScalar& acc, std::string term, bool negative) {
    bool has_i = false, has_r2 = false;
    Rational coeff(1);
    bool saw_number = false;
    size_t pos = 0;
    while (pos < term.size()) {
        size_t star = term.find('*', pos);
        std::string factor = term.substr(pos, star == std::string::npos ? std::string::npos : star - pos);
        if (factor == "I") {
            if (has_i) throw std::invalid_argument("repeated I factor");
            has_i = true;
        } else if (factor == "R2") {
            if (has_r2) throw std::invalid_argument("repeated R2 factor");
            has_r2 = true;
        } else {
            if (saw_number) throw std::invalid_argument("two numeric factors in term: " + term);
            coeff = parse_rational(factor);
            saw_number = true;
        }
        if (star == std::string::npos) break;
        pos = star + 1;
    }
    if (negative) coeff = -coeff;
    ExactScalar t(coeff);
    if (has_i) t *= ExactScalar::i();
    if (has_r2) t *= ExactScalar::sqrt2();
    acc += t;
}

}  // namespace

ExactScalar ExactScalar::parse(const std::string& s) {
    std::string compact;
    compact.reserve(s.size());
    for (char ch : s)
        if (ch != ' ') compact += ch;
    if (compact.empty()) throw std::invalid_argument("empty scalar literal");

    ExactScalar acc;
    size_t pos = 0;
    bool neg = false;
    if (compact[0] == '-') {
        neg = true;
        pos = 1;
    } else if (compact[0] == '+') {
        pos = 1;
    }
    std::string term;
    for (size_t k = pos; k <= compact.size(); ++k) {
        // '/' denominators never start a new term; signs inside a term only occur at k==pos.
        if (k == compact.size() || compact[k] == '+' || compact[k] == '-') {
            if (term.empty()) throw std::invalid_argument("malformed scalar: " + s);
            apply_term(acc, term, neg);
            term.clear();
            if (k < compact.size()) neg = compact[k] == '-';
        } else {
            term += compact[k];
        }
    }
    return acc;
}

std::ostream& operator<<(std::ostream& os, const ExactScalar& x) { return os << x.str(); }

}  // namespace pb
