#pragma once

// Scalar abstraction so the dynamics, shooting and quadrature code can run in
// double, long double or (when libquadmath is present) __float128. The wide
// types matter for weakly-spiraling parameter sets, where consecutive
// crossing amplitudes shrink by ten or more orders of magnitude.

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <type_traits>

#if defined(LOCLAB_HAVE_QUADMATH)
#include <quadmath.h>
#endif

namespace loclab::fp {

template <class T> inline T sqrt(T x)   { using std::sqrt;   return sqrt(x); }
template <class T> inline T abs(T x)    { using std::fabs;   return fabs(x); }
template <class T> inline T log(T x)    { using std::log;    return log(x); }
template <class T> inline T exp(T x)    { using std::exp;    return exp(x); }
template <class T> inline T pow(T x, T y) { using std::pow;  return pow(x, y); }
template <class T> inline T lgamma(T x) { using std::lgamma; return lgamma(x); }
template <class T> inline bool isfinite(T x) { using std::isfinite; return isfinite(x); }
template <class T> inline double to_double(T x) { return static_cast<double>(x); }

template <class T> inline T pi()
{
    return static_cast<T>(3.141592653589793238462643383279502884L);
}

template <class T> inline T eps() { return std::numeric_limits<T>::epsilon(); }

template <class T> inline const char* scalar_name() { return "unknown"; }
template <> inline const char* scalar_name<double>() { return "double"; }
template <> inline const char* scalar_name<long double>() { return "long double"; }

#if defined(LOCLAB_HAVE_QUADMATH)
inline __float128 sqrt(__float128 x)   { return sqrtq(x); }
inline __float128 abs(__float128 x)    { return fabsq(x); }
inline __float128 log(__float128 x)    { return logq(x); }
inline __float128 exp(__float128 x)    { return expq(x); }
inline __float128 pow(__float128 x, __float128 y) { return powq(x, y); }
inline __float128 lgamma(__float128 x) { return lgammaq(x); }
inline bool isfinite(__float128 x)     { return !isnanq(x) && !isinfq(x); }
inline double to_double(__float128 x)  { return static_cast<double>(x); }

template <> inline __float128 pi<__float128>() { return acosq(__float128(-1)); }
template <> inline __float128 eps<__float128>() { return scalbnq(__float128(1), -112); }
template <> inline const char* scalar_name<__float128>() { return "quad"; }
#endif

} // namespace loclab::fp

namespace loclab {

#if defined(LOCLAB_HAVE_QUADMATH)
using quad = __float128;
#else
using quad = long double; // best available fallback
#endif

} // namespace loclab
