#include "pb/series.hpp"

#include <stdexcept>

namespace pb {

namespace {

long doubled(const Rational& x, const char* what) {
    Rational t = 2 * x;
    if (!is_integer(t)) throw std::invalid_argument(std::string(what) + " off the (1/2)Z grid: " + to_string(x));
    return to_long(t);
}

}  // namespace

GradedSeries::GradedSeries(Rational base, Rational order)
    : base_(std::move(base)), order_(std::move(order)) {
    max_key_ = doubled(order_, "order");
    if (max_key_ < 0) throw std::invalid_argument("negative truncation order");
}

GradedSeries GradedSeries::monomial(const Rational& exponent, const Rational& order, const ExactScalar& coeff) {
    GradedSeries f(exponent, order);
    f.set(0, coeff);
    return f;
}

GradedSeries GradedSeries::exp_sqrt(const ExactScalar& alpha, const Rational& base, const Rational& order) {
    GradedSeries f(base, order);
    ExactScalar term(1);
    for (long k = 0; k <= f.max_key_; ++k) {
        if (k > 0) term = term * alpha / ExactScalar(k);
        f.coeffs_[k] = term;
    }
    if (alpha.is_zero()) f.coeffs_ = {{0, ExactScalar(1)}};
    return f;
}

void GradedSeries::set(const Rational& step, const ExactScalar& v) {
    long j = doubled(step, "step");
    if (j < 0 || j > max_key_) throw std::out_of_range("step outside [0, order]: " + to_string(step));
    if (v.is_zero())
        coeffs_.erase(j);
    else
        coeffs_[j] = v;
}

ExactScalar GradedSeries::at(const Rational& step) const {
    long j = doubled(step, "step");
    if (j > max_key_) throw std::out_of_range("coefficient beyond trusted order: step " + to_string(step));
    if (j < 0) return {};
    auto it = coeffs_.find(j);
    return it == coeffs_.end() ? ExactScalar() : it->second;
}

GradedSeries GradedSeries::operator+(const GradedSeries& o) const {
    Rational diff = base_ - o.base_;
    doubled(diff, "base difference");  // addition only defined on a common grid
    Rational base = std::min(base_, o.base_);
    // Absolute trusted exponent is base + order; keep the pessimistic minimum.
    Rational order = std::min(base_ + order_, o.base_ + o.order_) - base;
    GradedSeries r(base, order);
    long sh_f = doubled(base_ - base, "shift");
    long sh_g = doubled(o.base_ - base, "shift");
    for (const auto& [j, v] : coeffs_)
        if (j + sh_f <= r.max_key_) r.coeffs_[j + sh_f] = v;
    for (const auto& [j, v] : o.coeffs_) {
        if (j + sh_g > r.max_key_) continue;
        ExactScalar s = r.coeffs_[j + sh_g] + v;
        if (s.is_zero())
            r.coeffs_.erase(j + sh_g);
        else
            r.coeffs_[j + sh_g] = s;
    }
    return r;
}

GradedSeries GradedSeries::operator-() const {
    GradedSeries r(base_, order_);
    for (const auto& [j, v] : coeffs_) r.coeffs_[j] = -v;
    return r;
}

GradedSeries GradedSeries::operator-(const GradedSeries& o) const { return *this + (-o); }

GradedSeries GradedSeries::operator*(const GradedSeries& o) const {
    GradedSeries r(base_ + o.base_, std::min(order_, o.order_));
    for (const auto& [j1, v1] : coeffs_) {
        if (j1 > r.max_key_) break;
        for (const auto& [j2, v2] : o.coeffs_) {
            if (j1 + j2 > r.max_key_) break;
            ExactScalar s = r.coeffs_[j1 + j2] + v1 * v2;
            if (s.is_zero())
                r.coeffs_.erase(j1 + j2);
            else
                r.coeffs_[j1 + j2] = s;
        }
    }
    return r;
}

GradedSeries GradedSeries::operator/(const GradedSeries& o) const {
    auto lead = o.coeffs_.find(0);
    if (lead == o.coeffs_.end()) throw std::domain_error("non-invertible series (zero leading coefficient)");
    ExactScalar inv0 = lead->second.inverse();
    GradedSeries q(base_ - o.base_, std::min(order_, o.order_));
    for (long s = 0; s <= q.max_key_; ++s) {
        ExactScalar acc;
        auto it = coeffs_.find(s);
        if (it != coeffs_.end()) acc = it->second;
        for (const auto& [t, qv] : q.coeffs_) {
            if (t >= s) break;
            auto gt = o.coeffs_.find(s - t);
            if (gt != o.coeffs_.end()) acc -= qv * gt->second;
        }
        if (!acc.is_zero()) q.coeffs_[s] = acc * inv0;
    }
    return q;
}

GradedSeries GradedSeries::scale(const ExactScalar& s) const {
    GradedSeries r(base_, order_);
    if (s.is_zero()) return r;
    for (const auto& [j, v] : coeffs_) r.coeffs_[j] = v * s;
    return r;
}

GradedSeries GradedSeries::shift(const Rational& e) const {
    GradedSeries r(base_ + e, order_);
    r.coeffs_ = coeffs_;
    return r;
}

GradedSeries GradedSeries::scale_coeffs_geometric(const ExactScalar& r) const {
    GradedSeries out(base_, order_);
    for (const auto& [j, v] : coeffs_) {
        if (j % 2 != 0) throw std::domain_error("geometric rescale needs integer steps");
        out.coeffs_[j] = v * r.pow(j / 2);
    }
    return out;
}

GradedSeries GradedSeries::truncated(const Rational& order) const {
    GradedSeries r(base_, std::min(order, order_));
    for (const auto& [j, v] : coeffs_) {
        if (j > r.max_key_) break;
        r.coeffs_[j] = v;
    }
    return r;
}

GradedSeries GradedSeries::euler() const {
    GradedSeries r(base_, order_);
    for (const auto& [j, v] : coeffs_) {
        ExactScalar w = v * ExactScalar(base_ + make_rational(j, 2));
        if (!w.is_zero()) r.coeffs_[j] = w;
    }
    return r;
}

GradedSeries GradedSeries::log_derivative() const { return euler() / *this; }

std::vector<Rational> GradedSeries::residual_steps(const GradedSeries& o) const {
    GradedSeries d = *this - o;
    std::vector<Rational> out;
    for (const auto& [j, v] : d.coeffs_)
        if (!v.is_zero()) out.push_back(d.base_ + make_rational(j, 2));
    return out;
}

GradedSeries hirota(long k, const ExactScalar& eps1, const ExactScalar& eps2,
                    const ExactScalar& weight_offset, const GradedSeries& f, const GradedSeries& g) {
    if (k < 0) throw std::invalid_argument("negative Hirota order");
    GradedSeries r(f.base_ + g.base_, std::min(f.order_, g.order_));
    for (const auto& [j1, v1] : f.coeffs_) {
        if (j1 > r.max_key_) break;
        ExactScalar w1 = eps1 * ExactScalar(f.base_ + make_rational(j1, 2));
        for (const auto& [j2, v2] : g.coeffs_) {
            if (j1 + j2 > r.max_key_) break;
            ExactScalar w = w1 + eps2 * ExactScalar(g.base_ + make_rational(j2, 2)) + weight_offset;
            ExactScalar s = r.coeffs_[j1 + j2] + v1 * v2 * w.pow(k);
            if (s.is_zero())
                r.coeffs_.erase(j1 + j2);
            else
                r.coeffs_[j1 + j2] = s;
        }
    }
    return r;
}

// ---- ExponentKeyedSum ----

ExponentKeyedSum ExponentKeyedSum::from_graded(const GradedSeries& f) {
    ExponentKeyedSum r(f.base() + f.order());
    for (const auto& [j, v] : f.raw()) r.terms_[f.base() + make_rational(j, 2)] = v;
    return r;
}

void ExponentKeyedSum::add_term(const Rational& exponent, const ExactScalar& v) {
    if (exponent > order_) return;
    ExactScalar s = terms_[exponent] + v;
    if (s.is_zero())
        terms_.erase(exponent);
    else
        terms_[exponent] = s;
}

ExactScalar ExponentKeyedSum::at(const Rational& exponent) const {
    if (exponent > order_) throw std::out_of_range("coefficient beyond trusted order: " + to_string(exponent));
    auto it = terms_.find(exponent);
    return it == terms_.end() ? ExactScalar() : it->second;
}

const Rational& ExponentKeyedSum::leading_exponent() const {
    if (terms_.empty()) throw std::domain_error("leading exponent of empty sum");
    return terms_.begin()->first;
}

ExponentKeyedSum ExponentKeyedSum::operator+(const ExponentKeyedSum& o) const {
    ExponentKeyedSum r(std::min(order_, o.order_));
    for (const auto& [e, v] : terms_)
        if (e <= r.order_) r.terms_[e] = v;
    for (const auto& [e, v] : o.terms_) {
        if (e > r.order_) continue;
        ExactScalar s = r.terms_[e] + v;
        if (s.is_zero())
            r.terms_.erase(e);
        else
            r.terms_[e] = s;
    }
    return r;
}

ExponentKeyedSum ExponentKeyedSum::operator-(const ExponentKeyedSum& o) const {
    return *this + o.scale(ExactScalar(-1));
}

ExponentKeyedSum ExponentKeyedSum::operator*(const ExponentKeyedSum& o) const {
    // Unknown tails enter at order + other's leading exponent.
    if (terms_.empty() || o.terms_.empty()) {
        ExponentKeyedSum r(std::min(order_, o.order_));
        return r;
    }
    Rational lo_f = terms_.begin()->first;
    Rational lo_g = o.terms_.begin()->first;
    ExponentKeyedSum r(std::min(order_ + lo_g, o.order_ + lo_f));
    for (const auto& [e1, v1] : terms_) {
        for (const auto& [e2, v2] : o.terms_) {
            if (e1 + e2 > r.order_) break;
            r.add_term(e1 + e2, v1 * v2);
        }
    }
    return r;
}

ExponentKeyedSum ExponentKeyedSum::operator/(const ExponentKeyedSum& o) const {
    if (o.terms_.empty()) throw std::domain_error("division by empty sum");
    Rational g_lo = o.terms_.begin()->first;
    ExactScalar g0 = o.terms_.begin()->second;
    ExponentKeyedSum q(std::min(order_, o.order_) - g_lo);
    ExponentKeyedSum rem(*this);
    rem.order_ = q.order_ + g_lo;
    auto it = rem.terms_.begin();
    while (it != rem.terms_.end() && it->first > rem.order_) it = rem.terms_.erase(it);
    while (!rem.terms_.empty()) {
        Rational e = rem.terms_.begin()->first;
        Rational qe = e - g_lo;
        if (qe > q.order_) break;
        ExactScalar c = rem.terms_.begin()->second / g0;
        q.terms_[qe] = c;
        // Subtract c * z^qe * den; the lead term cancels exactly, so progress is strict.
        for (const auto& [ge, gv] : o.terms_) {
            if (qe + ge > rem.order_) break;
            rem.add_term(qe + ge, -(c * gv));
        }
    }
    return q;
}

ExponentKeyedSum ExponentKeyedSum::scale(const ExactScalar& s) const {
    ExponentKeyedSum r(order_);
    if (s.is_zero()) return r;
    for (const auto& [e, v] : terms_) r.terms_[e] = v * s;
    return r;
}

ExponentKeyedSum ExponentKeyedSum::euler() const {
    ExponentKeyedSum r(order_);
    for (const auto& [e, v] : terms_) {
        ExactScalar w = v * ExactScalar(e);
        if (!w.is_zero()) r.terms_[e] = w;
    }
    return r;
}

ExponentKeyedSum ExponentKeyedSum::truncated(const Rational& order) const {
    ExponentKeyedSum r(std::min(order, order_));
    for (const auto& [e, v] : terms_) {
        if (e > r.order_) break;
        r.terms_[e] = v;
    }
    return r;
}

std::vector<Rational> ExponentKeyedSum::residual_exponents(const ExponentKeyedSum& o) const {
    ExponentKeyedSum d = *this - o;
    std::vector<Rational> out;
    for (const auto& [e, v] : d.terms_)
        if (!v.is_zero()) out.push_back(e);
    return out;
}

}  // namespace pb
