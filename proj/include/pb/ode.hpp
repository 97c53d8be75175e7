#pragma once

#include <complex>
#include <string>
#include <vector>

#include "pb/kiev.hpp"

namespace pb {

using Cplx = std::complex<double>;

// Hamiltonian state at time z. w, p stay complex even on real runs so movable
// poles are seen, not stepped over.
struct HamState {
    double z = 0;
    Cplx w, p;
};

struct NumericSettings {
    double rtol = 1e-10;
    double atol = 1e-12;
    double max_step = 0.1;  // in log z
};

// zH = p^2 w^2 - w - z/w.
Cplx zeta_of(const HamState& s);

// (dw/dz, dp/dz); throws when w is numerically zero.
std::pair<Cplx, Cplx> rhs(const HamState& s);

// w -> z/w, p -> -w(2wp-1)/(2z); an involution.
HamState backlund(const HamState& s);

struct Trajectory {
    std::vector<HamState> points;  // one per requested checkpoint
    bool complete = true;
    std::string diagnostic;
};

// Dormand-Prince 5(4) in log z with standard PI-free step control; lands on
// every checkpoint exactly. An incomplete trajectory carries a diagnostic
// instead of throwing so partial results stay inspectable.
Trajectory integrate(const HamState& s0, const std::vector<double>& checkpoints,
                     const NumericSettings& cfg);

// Floating-point view of the tau expansion. Towers are built independently to
// the given relative order, so the window may exceed the exactly-trusted one.
class TauEvaluator {
  public:
    TauEvaluator(const Rational& sigma, const Rational& stilde, long order, long window);

    Cplx tau(double z) const;
    Cplx zeta(double z) const;
    Cplx zeta_dot(double z) const;
    Cplx zeta_ddot(double z) const;

    // Largest kept-order term relative to tau: a crude truncation estimate.
    double truncation_estimate(double z) const;

  private:
    void sums(double z, Cplx& t, Cplx& e1, Cplx& e2, Cplx& e3) const;

    std::vector<std::pair<double, Cplx>> terms_;  // (exponent, coefficient)
    std::vector<std::pair<double, Cplx>> tail_;   // highest kept step per tower
};

// (w, p) at z0 from the term-wise differentiated series; refuses when the
// truncation estimate exceeds max_trunc.
HamState series_initial_state(const Rational& sigma, const Rational& stilde, double z0,
                              long order, long window, double max_trunc = 1e-8);

// Integrates from a series seed at z0 to z1 alongside the Backlund-paired
// trajectory and reports: max relative zeta deviation series vs ODE, max
// |w w1 - z|, finite-difference residual of the third-order zeta equation, and
// the two Okamoto-like residuals in their zeta form.
Report compare_series_ode(const Rational& sigma, const Rational& stilde, double z0, double z1,
                          const NumericSettings& cfg, long order = 12, long window = 4,
                          double tol_zeta = 1e-6, double tol_pair = 1e-8,
                          double tol_zeta3 = 1e-5);

// Integrates from w = sign*sqrt(z0), p = 1/(4w) and checks the trajectory
// stays on the algebraic solution, a Backlund fixed point.
Report verify_algebraic(int sign, double z0, double z1, const NumericSettings& cfg,
                        double tol = 1e-10);

}  // namespace pb
