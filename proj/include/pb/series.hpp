#pragma once

#include <map>
#include <vector>

#include "pb/exact_scalar.hpp"

namespace pb {

// Formal series z^base * sum_k a_k z^k with steps k on the (1/2)Z>=0 grid.
// `order` is the trusted truncation bound: steps <= order are exact, anything
// beyond is unknown and reading it throws. Steps are stored doubled.
class GradedSeries {
  public:
    GradedSeries(Rational base, Rational order);

    static GradedSeries monomial(const Rational& exponent, const Rational& order,
                                 const ExactScalar& coeff = ExactScalar(1));
    // z^base * sum_k alpha^k z^{k/2} / k!
    static GradedSeries exp_sqrt(const ExactScalar& alpha, const Rational& base, const Rational& order);

    const Rational& base() const { return base_; }
    const Rational& order() const { return order_; }
    const std::map<long, ExactScalar>& raw() const { return coeffs_; }

    void set(const Rational& step, const ExactScalar& v);
    // Coefficient at the given step; throws past the trusted order.
    ExactScalar at(const Rational& step) const;
    bool is_zero() const { return coeffs_.empty(); }

    GradedSeries operator+(const GradedSeries& o) const;
    GradedSeries operator-(const GradedSeries& o) const;
    GradedSeries operator-() const;
    GradedSeries operator*(const GradedSeries& o) const;
    GradedSeries operator/(const GradedSeries& o) const;

    GradedSeries scale(const ExactScalar& s) const;
    // Multiply by z^e (shifts the base only).
    GradedSeries shift(const Rational& e) const;
    // Geometric rescale a_k -> a_k * r^{2k on doubled grid scale}, i.e. r^k per unit step:
    // coefficient at step k multiplied by r^(2k)/... see implementation note.
    GradedSeries scale_coeffs_geometric(const ExactScalar& r) const;
    // Lower the trusted order (never raises it).
    GradedSeries truncated(const Rational& order) const;

    // z d/dz: coefficient at step k multiplied by (base + k).
    GradedSeries euler() const;
    // euler(f)/f; requires invertible leading coefficient.
    GradedSeries log_derivative() const;

    // Exponents (relative steps) where the two series differ on the common trusted range.
    std::vector<Rational> residual_steps(const GradedSeries& o) const;

  private:
    Rational base_;
    Rational order_;      // on the (1/2)Z grid
    long max_key_;        // doubled order
    std::map<long, ExactScalar> coeffs_;  // doubled step -> coefficient

    friend GradedSeries hirota(long k, const ExactScalar& eps1, const ExactScalar& eps2,
                               const ExactScalar& weight_offset, const GradedSeries& f,
                               const GradedSeries& g);
};

// Generalized Hirota bilinear operator: coefficient at (m1, m2) weighted by
// (eps1*(base_f+m1) + eps2*(base_g+m2) + weight_offset)^k.
GradedSeries hirota(long k, const ExactScalar& eps1, const ExactScalar& eps2,
                    const ExactScalar& weight_offset, const GradedSeries& f, const GradedSeries& g);

// Sparse sum of c * z^e with arbitrary exact exponents and an absolute trusted
// bound: exponents <= order are exact.
class ExponentKeyedSum {
  public:
    explicit ExponentKeyedSum(Rational order) : order_(std::move(order)) {}

    static ExponentKeyedSum from_graded(const GradedSeries& f);

    const Rational& order() const { return order_; }
    const std::map<Rational, ExactScalar>& terms() const { return terms_; }

    void add_term(const Rational& exponent, const ExactScalar& v);
    ExactScalar at(const Rational& exponent) const;
    bool is_zero() const { return terms_.empty(); }
    // Smallest exponent carrying a nonzero coefficient; throws if empty.
    const Rational& leading_exponent() const;

    ExponentKeyedSum operator+(const ExponentKeyedSum& o) const;
    ExponentKeyedSum operator-(const ExponentKeyedSum& o) const;
    ExponentKeyedSum operator*(const ExponentKeyedSum& o) const;
    // Truncated division; denominator must be nonempty.
    ExponentKeyedSum operator/(const ExponentKeyedSum& o) const;
    ExponentKeyedSum scale(const ExactScalar& s) const;
    ExponentKeyedSum euler() const;
    ExponentKeyedSum truncated(const Rational& order) const;

    // Exponents where the two sums differ on the common trusted range.
    std::vector<Rational> residual_exponents(const ExponentKeyedSum& o) const;

  private:
    Rational order_;
    std::map<Rational, ExactScalar> terms_;
};

}  // namespace pb
