#pragma once

#include <string>

#include <mpfr.h>

#include "mahlerkit/ball.hpp"

namespace testutil {

// True when the decimal reference (accurate to `slack`) lies in b.
inline bool encloses(const mahlerkit::Ball& b, const char* ref, double slack = 1e-40) {
    mahlerkit::Mpfr r(512), d(512);
    mpfr_set_str(r.get(), ref, 10, MPFR_RNDN);
    mpfr_sub(d.get(), b.mid().get(), r.get(), MPFR_RNDN);
    mpfr_abs(d.get(), d.get(), MPFR_RNDU);
    return mpfr_get_d(d.get(), MPFR_RNDU) <= b.rad_double() + slack;
}

}  // namespace testutil
