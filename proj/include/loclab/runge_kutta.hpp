#pragma once

// Adaptive embedded Runge-Kutta machinery, templated on the scalar type.
//
// Two steppers:
//  * Dopri5 - Dormand-Prince 5(4), FSAL, with the classical quartic dense
//    output (Hairer-Norsett-Wanner DOPRI5/CONTD5 coefficients). Default
//    everywhere; dense output drives event bisection.
//  * Fehlberg78 - Fehlberg 7(8), 13 stages, exact rational tableau. Used for
//    quad-precision shooting where a fifth-order method would need millions
//    of steps. Its "dense" evaluation takes a single sub-step of the method
//    itself, which is a continuous extension of order 8.
//
// All tableau entries are built at runtime as ratios of small integers, so
// they are exact to full precision of any scalar type.

#include <algorithm>
#include <array>
#include <cmath>

#include "loclab/errors.hpp"
#include "loclab/numerics.hpp"

namespace loclab {

template <class Real, int N>
using Vec = std::array<Real, N>;

template <class Real>
struct ErrorScale {
    Real abs_tol;
    Real rel_tol;
    bool by_norm = false; // scale by max-norm of the state, not per component
};

namespace detail {

template <class Real, int N>
Real scaled_error_norm(const Vec<Real, N>& err, const Vec<Real, N>& y0,
                       const Vec<Real, N>& y1, const ErrorScale<Real>& sc)
{
    Real norm0 = Real(0), norm1 = Real(0);
    if (sc.by_norm) {
        for (int i = 0; i < N; ++i) {
            norm0 = std::max(norm0, fp::abs(y0[i]));
            norm1 = std::max(norm1, fp::abs(y1[i]));
        }
    }
    Real sum = Real(0);
    for (int i = 0; i < N; ++i) {
        const Real mag = sc.by_norm ? std::max(norm0, norm1)
                                    : std::max(fp::abs(y0[i]), fp::abs(y1[i]));
        const Real w = sc.abs_tol + sc.rel_tol * mag;
        const Real q = err[i] / w;
        sum += q * q;
    }
    return fp::sqrt(sum / Real(N));
}

} // namespace detail

template <class Real, int N>
class Dopri5 {
public:
    static constexpr int kOrder = 5;
    using V = Vec<Real, N>;

    template <class F>
    void seed(F&& f, Real t, const V& y)
    {
        k_[0] = f(t, y);
        seeded_ = true;
    }

    /// One attempted step of size h from (t, y); fills y1 and returns the
    /// scaled error norm (accept iff <= 1). Stage data stays cached for
    /// dense evaluation until the next attempt.
    template <class F>
    Real attempt(F&& f, Real t, const V& y, Real h, const ErrorScale<Real>& sc, V& y1)
    {
        const Tableau& tb = tableau();
        if (!seeded_) seed(f, t, y);
        t0_ = t;
        h_ = h;
        y0_ = y;

        V tmp;
        for (int s = 1; s < 7; ++s) {
            for (int i = 0; i < N; ++i) {
                Real acc = Real(0);
                for (int j = 0; j < s; ++j) acc += tb.a[s][j] * k_[j][i];
                tmp[i] = y[i] + h * acc;
            }
            k_[s] = f(t + tb.c[s] * h, tmp);
        }
        // stage 7 is evaluated at y1 itself (a7j = b_j), so tmp == y1
        y1 = tmp;
        y1_ = y1;

        V err;
        for (int i = 0; i < N; ++i) {
            Real acc = Real(0);
            for (int j = 0; j < 7; ++j) acc += tb.e[j] * k_[j][i];
            err[i] = h * acc;
        }
        return detail::scaled_error_norm<Real, N>(err, y, y1, sc);
    }

    /// Shift the FSAL stage after the caller accepts the step.
    void accept() { k_[0] = k_[6]; }

    /// Quartic interpolant on the last attempted step, theta in [0,1].
    template <class F>
    V dense(F&&, Real theta) const
    {
        const Tableau& tb = tableau();
        V out;
        for (int i = 0; i < N; ++i) {
            const Real ydiff = y1_[i] - y0_[i];
            const Real bspl = h_ * k_[0][i] - ydiff;
            const Real r4 = ydiff - h_ * k_[6][i] - bspl;
            Real r5 = Real(0);
            for (int j = 0; j < 7; ++j) r5 += tb.d[j] * k_[j][i];
            r5 *= h_;
            const Real om = Real(1) - theta;
            out[i] = y0_[i] + theta * (ydiff + om * (bspl + theta * (r4 + om * r5)));
        }
        return out;
    }

private:
    struct Tableau {
        Real c[7];
        Real a[7][6];
        Real e[7];
        Real d[7];
    };

    static const Tableau& tableau()
    {
        static const Tableau tb = [] {
            Tableau t{};
            auto R = [](long long n, long long d) { return Real(n) / Real(d); };
            t.c[0] = Real(0); t.c[1] = R(1, 5); t.c[2] = R(3, 10); t.c[3] = R(4, 5);
            t.c[4] = R(8, 9); t.c[5] = Real(1); t.c[6] = Real(1);
            t.a[1][0] = R(1, 5);
            t.a[2][0] = R(3, 40);        t.a[2][1] = R(9, 40);
            t.a[3][0] = R(44, 45);       t.a[3][1] = R(-56, 15);      t.a[3][2] = R(32, 9);
            t.a[4][0] = R(19372, 6561);  t.a[4][1] = R(-25360, 2187);
            t.a[4][2] = R(64448, 6561);  t.a[4][3] = R(-212, 729);
            t.a[5][0] = R(9017, 3168);   t.a[5][1] = R(-355, 33);
            t.a[5][2] = R(46732, 5247);  t.a[5][3] = R(49, 176);      t.a[5][4] = R(-5103, 18656);
            t.a[6][0] = R(35, 384);      t.a[6][1] = Real(0);
            t.a[6][2] = R(500, 1113);    t.a[6][3] = R(125, 192);
            t.a[6][4] = R(-2187, 6784);  t.a[6][5] = R(11, 84);
            t.e[0] = R(71, 57600); t.e[1] = Real(0); t.e[2] = R(-71, 16695);
            t.e[3] = R(71, 1920);  t.e[4] = R(-17253, 339200);
            t.e[5] = R(22, 525);   t.e[6] = R(-1, 40);
            t.d[0] = R(-12715105075LL, 11282082432LL);
            t.d[1] = Real(0);
            t.d[2] = R(87487479700LL, 32700410799LL);
            t.d[3] = R(-10690763975LL, 1880347072LL);
            t.d[4] = R(701980252875LL, 199316789632LL);
            t.d[5] = R(-1453857185LL, 822651844LL);
            t.d[6] = R(69997945LL, 29380423LL);
            return t;
        }();
        return tb;
    }

    V k_[7]{};
    V y0_{}, y1_{};
    Real t0_{}, h_{};
    bool seeded_ = false;
};

template <class Real, int N>
class Fehlberg78 {
public:
    static constexpr int kOrder = 8;
    using V = Vec<Real, N>;

    template <class F>
    void seed(F&&, Real, const V&) {}

    template <class F>
    Real attempt(F&& f, Real t, const V& y, Real h, const ErrorScale<Real>& sc, V& y1)
    {
        t0_ = t;
        h_ = h;
        y0_ = y;
        step_core(f, t, y, h, y1, &err_);
        y1_ = y1;
        return detail::scaled_error_norm<Real, N>(err_, y, y1, sc);
    }

    void accept() {}

    /// Continuous extension by a single sub-step of the method itself.
    template <class F>
    V dense(F&& f, Real theta) const
    {
        if (theta <= Real(0)) return y0_;
        if (theta >= Real(1)) return y1_;
        V out;
        step_core(f, t0_, y0_, theta * h_, out, nullptr);
        return out;
    }

private:
    template <class F>
    static void step_core(F&& f, Real t, const V& y, Real h, V& y1, V* err)
    {
        const Tableau& tb = tableau();
        V k[13];
        V tmp;
        k[0] = f(t, y);
        for (int s = 1; s < 13; ++s) {
            for (int i = 0; i < N; ++i) {
                Real acc = Real(0);
                for (int j = 0; j < s; ++j)
                    if (tb.a[s][j] != Real(0)) acc += tb.a[s][j] * k[j][i];
                tmp[i] = y[i] + h * acc;
            }
            k[s] = f(t + tb.c[s] * h, tmp);
        }
        for (int i = 0; i < N; ++i) {
            Real acc = Real(0);
            for (int j = 0; j < 13; ++j)
                if (tb.b8[j] != Real(0)) acc += tb.b8[j] * k[j][i];
            y1[i] = y[i] + h * acc;
        }
        if (err) {
            for (int i = 0; i < N; ++i) {
                Real acc = Real(0);
                for (int j = 0; j < 13; ++j) acc += (tb.b8[j] - tb.b7[j]) * k[j][i];
                (*err)[i] = h * acc;
            }
        }
    }

    struct Tableau {
        Real c[13];
        Real a[13][12];
        Real b8[13];
        Real b7[13];
    };

    static const Tableau& tableau()
    {
        static const Tableau tb = [] {
            Tableau t{};
            auto R = [](long long n, long long d) { return Real(n) / Real(d); };
            const Real c[13] = {Real(0), R(2, 27), R(1, 9), R(1, 6), R(5, 12), R(1, 2),
                                R(5, 6), R(1, 6), R(2, 3), R(1, 3), Real(1), Real(0), Real(1)};
            for (int i = 0; i < 13; ++i) t.c[i] = c[i];
            t.a[1][0] = R(2, 27);
            t.a[2][0] = R(1, 36);   t.a[2][1] = R(1, 12);
            t.a[3][0] = R(1, 24);   t.a[3][2] = R(1, 8);
            t.a[4][0] = R(5, 12);   t.a[4][2] = R(-25, 16);  t.a[4][3] = R(25, 16);
            t.a[5][0] = R(1, 20);   t.a[5][3] = R(1, 4);     t.a[5][4] = R(1, 5);
            t.a[6][0] = R(-25, 108); t.a[6][3] = R(125, 108);
            t.a[6][4] = R(-65, 27);  t.a[6][5] = R(125, 54);
            t.a[7][0] = R(31, 300);  t.a[7][4] = R(61, 225);
            t.a[7][5] = R(-2, 9);    t.a[7][6] = R(13, 900);
            t.a[8][0] = Real(2);     t.a[8][3] = R(-53, 6);   t.a[8][4] = R(704, 45);
            t.a[8][5] = R(-107, 9);  t.a[8][6] = R(67, 90);   t.a[8][7] = Real(3);
            t.a[9][0] = R(-91, 108); t.a[9][3] = R(23, 108);  t.a[9][4] = R(-976, 135);
            t.a[9][5] = R(311, 54);  t.a[9][6] = R(-19, 60);
            t.a[9][7] = R(17, 6);    t.a[9][8] = R(-1, 12);
            t.a[10][0] = R(2383, 4100); t.a[10][3] = R(-341, 164); t.a[10][4] = R(4496, 1025);
            t.a[10][5] = R(-301, 82);   t.a[10][6] = R(2133, 4100); t.a[10][7] = R(45, 82);
            t.a[10][8] = R(45, 164);    t.a[10][9] = R(18, 41);
            t.a[11][0] = R(3, 205);  t.a[11][5] = R(-6, 41);  t.a[11][6] = R(-3, 205);
            t.a[11][7] = R(-3, 41);  t.a[11][8] = R(3, 41);   t.a[11][9] = R(6, 41);
            t.a[12][0] = R(-1777, 4100); t.a[12][3] = R(-341, 164); t.a[12][4] = R(4496, 1025);
            t.a[12][5] = R(-289, 82);    t.a[12][6] = R(2193, 4100); t.a[12][7] = R(51, 82);
            t.a[12][8] = R(33, 164);     t.a[12][9] = R(12, 41);     t.a[12][11] = Real(1);
            t.b8[5] = R(34, 105); t.b8[6] = R(9, 35);  t.b8[7] = R(9, 35);
            t.b8[8] = R(9, 280);  t.b8[9] = R(9, 280);
            t.b8[11] = R(41, 840); t.b8[12] = R(41, 840);
            t.b7[0] = R(41, 840); t.b7[5] = R(34, 105); t.b7[6] = R(9, 35);
            t.b7[7] = R(9, 35);   t.b7[8] = R(9, 280);  t.b7[9] = R(9, 280);
            t.b7[10] = R(41, 840);
            return t;
        }();
        return tb;
    }

    V y0_{}, y1_{}, err_{};
    Real t0_{}, h_{};
};

enum class StepControl { kContinue, kStop };
enum class IntegrateStatus { kStopped, kEndReached, kMaxSteps };

template <class Real>
struct IntegrateOptions {
    Real abs_tol = Real(1e-10);
    Real rel_tol = Real(1e-10);
    Real h_init = Real(0);     // <= 0: pick from the tolerance
    Real h_max = Real(0);      // <= 0: |t_end - t0|
    long max_steps = 20'000'000;
    bool norm_scale = false;
};

/// Drive a stepper from (t0, y0) toward t_end. After every accepted step the
/// callback sees (t_prev, y_prev, t_new, y_new, dense) where dense(theta)
/// interpolates on [t_prev, t_new]; returning kStop ends the run.
template <class Stepper, class Real, int N, class F, class Cb>
IntegrateStatus integrate(Stepper& st, F&& f, Real t0, Vec<Real, N> y0, Real t_end,
                          const IntegrateOptions<Real>& opt, Cb&& cb)
{
    constexpr double kSafety = 0.9, kFacMin = 0.2, kFacMax = 5.0;
    const Real dir = t_end >= t0 ? Real(1) : Real(-1);
    const Real span = fp::abs(t_end - t0);
    if (span == Real(0)) return IntegrateStatus::kEndReached;
    const Real h_max = opt.h_max > Real(0) ? opt.h_max : span;
    const ErrorScale<Real> sc{opt.abs_tol, opt.rel_tol, opt.norm_scale};

    Real h;
    if (opt.h_init > Real(0)) {
        h = std::min(opt.h_init, h_max);
    } else {
        const double tol = std::max(fp::to_double(opt.abs_tol), 1e-300);
        h = Real(std::clamp(std::pow(tol, 1.0 / Stepper::kOrder), 1e-8, 0.05));
        h = std::min(h, h_max);
    }

    Real t = t0;
    Vec<Real, N> y = y0, y1;
    st.seed(f, t, y);
    bool rejected = false;

    for (long step = 0; step < opt.max_steps; ++step) {
        Real h_eff = std::min(h, h_max);
        bool final_step = false;
        if (fp::abs(t_end - t) <= h_eff) {
            h_eff = fp::abs(t_end - t);
            final_step = true;
        }
        if (h_eff < fp::eps<Real>() * std::max(fp::abs(t), Real(1)) * Real(32))
            throw numerics_error("integrate: step size underflow");

        const Real err = st.attempt(f, t, y, dir * h_eff, sc, y1);
        const double err_d = fp::to_double(err);

        if (err_d <= 1.0) {
            st.accept();
            const Real t_prev = t;
            const Vec<Real, N> y_prev = y;
            t = final_step ? t_end : t + dir * h_eff;
            y = y1;
            const StepControl ctrl =
                cb(t_prev, y_prev, t, y,
                   [&](Real theta) { return st.dense(f, theta); });
            if (ctrl == StepControl::kStop) return IntegrateStatus::kStopped;
            if (final_step) return IntegrateStatus::kEndReached;
            double fac = err_d > 0 ? kSafety * std::pow(err_d, -1.0 / Stepper::kOrder)
                                   : kFacMax;
            fac = std::min(rejected ? 1.0 : kFacMax, std::max(kFacMin, fac));
            h = h_eff * Real(fac);
            rejected = false;
        } else {
            const double fac =
                std::max(kFacMin, kSafety * std::pow(err_d, -1.0 / Stepper::kOrder));
            h = h_eff * Real(fac);
            rejected = true;
        }
    }
    return IntegrateStatus::kMaxSteps;
}

} // namespace loclab
