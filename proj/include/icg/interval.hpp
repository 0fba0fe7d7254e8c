#ifndef ICG_INTERVAL_HPP
#define ICG_INTERVAL_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "icg/errors.hpp"

namespace icg {

/// Closed bounded real interval [lo, hi]. Immutable value type; the scalar of
/// every objective value in this library. Degenerate intervals (lo == hi)
/// represent ordinary reals.
///
/// Endpoints are plain IEEE values; no directed rounding is performed.
template <typename Scalar = double>
class IntervalT {
public:
    IntervalT() : lo_(0), hi_(0) {}
    explicit IntervalT(Scalar point) : lo_(point), hi_(point) {}
    IntervalT(Scalar lo, Scalar hi) : lo_(lo), hi_(hi) {
        // Reject rather than swap: an inverted pair means the caller
        // assembled the endpoints wrong.
        if (!(lo <= hi)) {
            throw InvalidInterval("interval endpoints out of order: lo=" +
                                  std::to_string(lo) + " hi=" + std::to_string(hi));
        }
    }

    Scalar lo() const { return lo_; }
    Scalar hi() const { return hi_; }
    Scalar width() const { return hi_ - lo_; }
    Scalar mid() const { return (lo_ + hi_) / Scalar(2); }
    bool degenerate() const { return lo_ == hi_; }

    friend bool operator==(const IntervalT& a, const IntervalT& b) {
        return a.lo_ == b.lo_ && a.hi_ == b.hi_;
    }
    friend bool operator!=(const IntervalT& a, const IntervalT& b) { return !(a == b); }

private:
    Scalar lo_, hi_;
};

using Interval = IntervalT<double>;

/// Moore addition: [a1+b1, a2+b2].
template <typename S>
IntervalT<S> operator+(const IntervalT<S>& a, const IntervalT<S>& b) {
    return IntervalT<S>(a.lo() + b.lo(), a.hi() + b.hi());
}

/// Scalar multiple; a negative factor swaps the endpoints.
template <typename S>
IntervalT<S> operator*(S alpha, const IntervalT<S>& a) {
    if (alpha >= S(0)) return IntervalT<S>(alpha * a.lo(), alpha * a.hi());
    return IntervalT<S>(alpha * a.hi(), alpha * a.lo());
}

template <typename S>
IntervalT<S> operator*(const IntervalT<S>& a, S alpha) {
    return alpha * a;
}

/// Generalized Hukuhara difference:
/// [min(a1-b1, a2-b2), max(a1-b1, a2-b2)].
template <typename S>
IntervalT<S> gh_diff(const IntervalT<S>& a, const IntervalT<S>& b) {
    const S dlo = a.lo() - b.lo();
    const S dhi = a.hi() - b.hi();
    return IntervalT<S>(std::min(dlo, dhi), std::max(dlo, dhi));
}

/// True iff b dominates a, written a >= b: both endpoints of a are >= those
/// of b. Under minimization the dominating interval is the preferable one.
template <typename S>
bool dominates(const IntervalT<S>& b, const IntervalT<S>& a) {
    return a.lo() >= b.lo() && a.hi() >= b.hi();
}

/// True iff b strictly dominates a, written a > b: dominance with at least
/// one strict endpoint.
template <typename S>
bool strictly_dominates(const IntervalT<S>& b, const IntervalT<S>& a) {
    return (a.lo() > b.lo() && a.hi() >= b.hi()) || (a.lo() >= b.lo() && a.hi() > b.hi());
}

/// max(|lo|, |hi|); zero only for [0,0].
template <typename S>
S norm(const IntervalT<S>& a) {
    return std::max(std::abs(a.lo()), std::abs(a.hi()));
}

/// Endpointwise comparison with absolute tolerance. Test helper; ordinary
/// equality is exact.
template <typename S>
bool approx_equal(const IntervalT<S>& a, const IntervalT<S>& b, S tol = S(1e-12)) {
    return std::abs(a.lo() - b.lo()) <= tol && std::abs(a.hi() - b.hi()) <= tol;
}

/// "[lo,hi]" with 17 significant digits, enough for exact double round-trip.
inline std::string to_string(const Interval& a) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "[%.17g,%.17g]", a.lo(), a.hi());
    return buf;
}

/// Parse the serialization produced by to_string.
inline Interval parse_interval(const std::string& text) {
    double lo = 0, hi = 0;
    char tail = 0;
    if (std::sscanf(text.c_str(), " [ %lf , %lf %c", &lo, &hi, &tail) != 3 || tail != ']') {
        throw InvalidInterval("cannot parse interval text: " + text);
    }
    return Interval(lo, hi);
}

inline std::ostream& operator<<(std::ostream& os, const Interval& a) {
    return os << to_string(a);
}

}  // namespace icg

#endif
