#pragma once

// The autonomous reduction of the equivariant minimal-graph equation in the
// (phi, psi) plane, phi = rho/r against t = log r:
//
//   phi_t = psi
//   psi_t = -psi - [B(phi) psi + C(phi) phi] [1 + (phi + psi)^2]
//
// with B(phi) = n-p + p/(1+lambda^2 phi^2) and
//      C(phi) = n-p + (1-lambda^2) p/(1+lambda^2 phi^2).
//
// The system is symmetric about the origin and has exactly three fixed
// points: the origin (always a saddle) and +-P = (+-phi0, 0). The character
// of P (node vs spiral) splits the parameter space into the two cone types.

#include <array>
#include <complex>
#include <utility>

#include "loclab/errors.hpp"
#include "loclab/params.hpp"

namespace loclab {

template <class Real>
struct PhaseState {
    Real phi{};
    Real psi{};
};

template <class Real>
using Mat2 = std::array<std::array<Real, 2>, 2>;

template <class Real>
PhaseState<Real> vector_field(const PhaseState<Real>& s, const LomseParams<Real>& prm)
{
    const Real D = Real(1) + prm.lambda_sq * s.phi * s.phi;
    const Real B = Real(prm.n - prm.p) + Real(prm.p) / D;
    const Real C = Real(prm.n - prm.p) + (Real(1) - prm.lambda_sq) * Real(prm.p) / D;
    const Real slope = s.phi + s.psi;
    const Real S = Real(1) + slope * slope;
    return {s.psi, -s.psi - (B * s.psi + C * s.phi) * S};
}

/// Analytic Jacobian of the vector field.
/// At the origin it reduces to [[0,1],[p lambda^2 - n, -(n+1)]]; at P the
/// lower row is [-C'(phi0) phi0 (1+phi0^2), -1 - B(phi0)(1+phi0^2)].
template <class Real>
Mat2<Real> jacobian(const PhaseState<Real>& s, const LomseParams<Real>& prm)
{
    const Real np = Real(prm.n - prm.p);
    const Real P = Real(prm.p);
    const Real L = prm.lambda_sq;
    const Real D = Real(1) + L * s.phi * s.phi;
    const Real B = np + P / D;
    const Real C = np + (Real(1) - L) * P / D;
    const Real dB = -Real(2) * P * L * s.phi / (D * D);
    const Real dC = -Real(2) * (Real(1) - L) * P * L * s.phi / (D * D);
    const Real slope = s.phi + s.psi;
    const Real S = Real(1) + slope * slope;
    const Real W = B * s.psi + C * s.phi;

    Mat2<Real> J;
    J[0][0] = Real(0);
    J[0][1] = Real(1);
    J[1][0] = -(dB * s.psi + dC * s.phi + C) * S - W * Real(2) * slope;
    J[1][1] = -Real(1) - B * S - W * Real(2) * slope;
    return J;
}

/// Positive eigenvalue of the saddle at the origin,
/// mu+ = [-(n+1) + sqrt((n+1)^2 + 4(p lambda^2 - n))]/2.
template <class Real>
Real unstable_eigenvalue(const LomseParams<Real>& prm)
{
    const Real a = Real(prm.n + 1);
    const Real q = Real(prm.p) * prm.lambda_sq - Real(prm.n);
    return (-a + fp::sqrt(a * a + Real(4) * q)) / Real(2);
}

enum class FixedPointKind { Saddle, StableNode, StableSpiral, Degenerate };

inline const char* to_string(FixedPointKind k)
{
    switch (k) {
        case FixedPointKind::Saddle: return "Saddle";
        case FixedPointKind::StableNode: return "StableNode";
        case FixedPointKind::StableSpiral: return "StableSpiral";
        case FixedPointKind::Degenerate: return "Degenerate";
    }
    return "?";
}

struct FixedPointReport {
    PhaseState<double> location;
    Mat2<double> jac;
    std::complex<double> eig1, eig2; // eig1 has the larger real part
    double trace = 0, det = 0, discriminant = 0;
    FixedPointKind kind = FixedPointKind::Degenerate;
};

/// Classification boundary: |discriminant| below this is reported Degenerate.
inline constexpr double kDiscriminantTol = 1e-10;

inline FixedPointReport analyze_fixed_point(const PhaseState<double>& loc,
                                            const LomseParams<double>& prm)
{
    FixedPointReport rep;
    rep.location = loc;
    rep.jac = jacobian(loc, prm);
    rep.trace = rep.jac[0][0] + rep.jac[1][1];
    rep.det = rep.jac[0][0] * rep.jac[1][1] - rep.jac[0][1] * rep.jac[1][0];
    rep.discriminant = rep.trace * rep.trace - 4.0 * rep.det;

    if (rep.discriminant >= 0) {
        const double root = std::sqrt(rep.discriminant);
        rep.eig1 = (rep.trace + root) / 2.0;
        rep.eig2 = (rep.trace - root) / 2.0;
    } else {
        const double root = std::sqrt(-rep.discriminant);
        rep.eig1 = {rep.trace / 2.0, root / 2.0};
        rep.eig2 = {rep.trace / 2.0, -root / 2.0};
    }

    if (rep.det < 0) {
        rep.kind = FixedPointKind::Saddle;
    } else if (std::abs(rep.discriminant) < kDiscriminantTol) {
        rep.kind = FixedPointKind::Degenerate;
    } else if (rep.discriminant < 0) {
        rep.kind = FixedPointKind::StableSpiral;
    } else {
        rep.kind = FixedPointKind::StableNode;
    }
    return rep;
}

/// Reports for the origin and for P = (phi0, 0). -P mirrors P by symmetry.
inline std::pair<FixedPointReport, FixedPointReport>
classify_fixed_points(const LomseParams<double>& prm)
{
    return {analyze_fixed_point({0.0, 0.0}, prm),
            analyze_fixed_point({prm.phi0, 0.0}, prm)};
}

enum class ConeType { TypeI, TypeII };

inline const char* to_string(ConeType t)
{
    return t == ConeType::TypeI ? "TypeI" : "TypeII";
}

/// Type I: P is a stable node (monotone attraction).
/// Type II: P is a stable spiral.
inline ConeType cone_type(const LomseParams<double>& prm)
{
    const auto [origin, P] = classify_fixed_points(prm);
    (void)origin;
    switch (P.kind) {
        case FixedPointKind::StableNode: return ConeType::TypeI;
        case FixedPointKind::StableSpiral: return ConeType::TypeII;
        default:
            throw degenerate_error("cone_type: P sits on the node/spiral boundary");
    }
}

inline ConeType type_of(int n, int p, int k)
{
    return cone_type(make_params<double>(n, p, k));
}

} // namespace loclab
