#pragma once

// Parameter algebra for equivariant minimal-graph cones over sphere maps
// whose nonzero singular values coincide: a triple (n, p, k) determines
// lambda^2 = k(k+n-1)/p, the graph tilt theta through the slope equation
//
//     (n-p)/cos^2(theta) + p/(cos^2(theta) + lambda^2 sin^2(theta)) = n,
//
// the cone-ray slope phi0 = tan(theta), and the volume sigma0 of the unit
// n-sphere. Everything downstream (phase plane, shooting, quotient geometry)
// consumes (n, p, lambda^2); k is just the entry point.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "loclab/errors.hpp"
#include "loclab/numerics.hpp"
#include "loclab/rational.hpp"

namespace loclab {

template <class Real>
struct LomseParams {
    int n = 0;             ///< domain sphere dimension (>= 2)
    int p = 0;             ///< multiplicity of the nonzero singular value, 1 <= p < n
    int k = 0;             ///< common polynomial degree; 0 when lambda^2 was given directly
    Rational lambda_sq_rat{0, 1}; ///< exact lambda^2 when representable
    Real lambda_sq{};      ///< lambda^2 = k(k+n-1)/p
    Real cos2_theta{};     ///< root of the slope equation in (0,1)
    Real phi0{};           ///< tan(theta), slope of the cone ray
    Real sigma0{};         ///< volume of the unit n-sphere
};

inline void require_np(int n, int p)
{
    if (n < 2) throw std::domain_error("params: need n >= 2");
    if (p < 1 || p >= n) throw std::domain_error("params: need 1 <= p < n");
}

/// lambda^2 = k(k+n-1)/p, exact.
inline Rational lambda_from_npk(int n, int p, int k)
{
    require_np(n, p);
    if (k < 1) throw std::domain_error("params: need k >= 1");
    return Rational(static_cast<std::int64_t>(k) * (k + n - 1), p);
}

/// Volume of the unit n-sphere, 2 pi^{(n+1)/2} / Gamma((n+1)/2).
/// Computed through log-Gamma so large n cannot overflow intermediates.
template <class Real>
Real sphere_volume(int n)
{
    const Real half = Real(n + 1) / Real(2);
    const Real log_vol = fp::log(Real(2)) + half * fp::log(fp::pi<Real>()) - fp::lgamma(half);
    return fp::exp(log_vol);
}

/// Solve the slope equation for cos^2(theta) in (0,1).
///
/// Cleared of denominators the equation is a quadratic in c = cos^2(theta)
/// with c = 1 always a root; the cone root is
///     c = (n-p) lambda^2 / (n (lambda^2 - 1)),
/// and phi0^2 = (1-c)/c = (p lambda^2 - n) / ((n-p) lambda^2).
/// Requires p lambda^2 > n, otherwise the root degenerates to c = 1 (flat
/// disk, slope 0) and no cone exists.
template <class Real>
std::pair<Real, Real> solve_theta(int n, int p, Real lambda_sq)
{
    require_np(n, p);
    if (!(lambda_sq > Real(1)))
        throw std::domain_error("solve_theta: need lambda^2 > 1");
    if (!(Real(p) * lambda_sq > Real(n)))
        throw no_cone_error("solve_theta: p*lambda^2 <= n, slope equation has no root in (0,1)");

    const Real c = Real(n - p) * lambda_sq / (Real(n) * (lambda_sq - Real(1)));
    const Real phi0 = fp::sqrt((Real(p) * lambda_sq - Real(n)) / (Real(n - p) * lambda_sq));
    return {c, phi0};
}

template <class Real>
LomseParams<Real> make_params_lambda(int n, int p, Rational lambda_sq)
{
    LomseParams<Real> out;
    out.n = n;
    out.p = p;
    out.k = 0;
    out.lambda_sq_rat = lambda_sq;
    out.lambda_sq = lambda_sq.to<Real>();
    auto [c, phi0] = solve_theta<Real>(n, p, out.lambda_sq);
    out.cos2_theta = c;
    out.phi0 = phi0;
    out.sigma0 = sphere_volume<Real>(n);
    return out;
}

template <class Real>
LomseParams<Real> make_params(int n, int p, int k)
{
    LomseParams<Real> out = make_params_lambda<Real>(n, p, lambda_from_npk(n, p, k));
    out.k = k;
    return out;
}

/// Residual of the slope equation at c, relative to n.
template <class Real>
Real slope_equation_residual(const LomseParams<Real>& prm, Real c)
{
    const Real lhs = Real(prm.n - prm.p) / c
                   + Real(prm.p) / (c + prm.lambda_sq * (Real(1) - c));
    return fp::abs(lhs - Real(prm.n)) / Real(prm.n);
}

/// Relative volume of the tilted spherical graph link at tilt alpha in (0,1):
///     V(alpha) = alpha^{n-p} (alpha^2 + lambda^2 (1 - alpha^2))^{p/2}.
/// Only its argmax is meaningful; the argmax reproduces cos(theta).
template <class Real>
Real link_volume(const LomseParams<Real>& prm, Real alpha)
{
    if (!(alpha > Real(0) && alpha < Real(1)))
        throw std::domain_error("link_volume: need alpha in (0,1)");
    const Real a2 = alpha * alpha;
    return fp::pow(alpha, Real(prm.n - prm.p))
         * fp::pow(a2 + prm.lambda_sq * (Real(1) - a2), Real(prm.p) / Real(2));
}

/// Grid argmax of the link volume profile over (0,1).
template <class Real>
Real link_volume_argmax(const LomseParams<Real>& prm, Real grid_step = Real(1e-6))
{
    if (!(grid_step > Real(0) && grid_step < Real(0.5)))
        throw std::domain_error("link_volume_argmax: bad grid step");
    Real best_a = grid_step, best_v = Real(-1);
    for (Real a = grid_step; a < Real(1); a += grid_step) {
        const Real v = link_volume(prm, a);
        if (v > best_v) { best_v = v; best_a = a; }
    }
    return best_a;
}

/// True when (n,p) belongs to one of the Hopf fibration families
/// (2a+1, 2a), (4a+3, 4a), or (15, 8).
inline bool hopf_pair(int n, int p)
{
    if (n == 15 && p == 8) return true;
    if (p >= 2 && p % 2 == 0 && n == p + 1) return true;       // (2a+1, 2a)
    if (p >= 4 && p % 4 == 0 && n == p + 3) return true;       // (4a+3, 4a)
    return false;
}

/// Advisory checks: the dynamical system is well defined for any
/// p*lambda^2 > n, so non-realizable triples warn instead of failing.
inline std::vector<std::string> validate_lomse(int n, int p, int k)
{
    std::vector<std::string> warnings;
    if (k % 2 != 0)
        warnings.push_back("k odd: no LOMSE realization known");
    if (!hopf_pair(n, p))
        warnings.push_back("(n,p) not of Hopf fibration type");
    return warnings;
}

} // namespace loclab
