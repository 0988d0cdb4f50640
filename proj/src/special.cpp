#include "shearscat/special.hpp"

#include <stdexcept>
#include <string>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_bessel.h>

namespace shearscat {

namespace {

// GSL aborts on error by default; disable once and check return codes instead.
const bool gsl_handler_off = [] {
    gsl_set_error_handler_off();
    return true;
}();

} // namespace

std::complex<double> hankel0_1(double x) {
    if (!(x > 0.0))
        throw std::invalid_argument("hankel0_1: argument must be positive, got " + std::to_string(x));
    gsl_sf_result j0, y0;
    if (gsl_sf_bessel_J0_e(x, &j0) != GSL_SUCCESS || gsl_sf_bessel_Y0_e(x, &y0) != GSL_SUCCESS)
        throw std::runtime_error("hankel0_1: Bessel evaluation failed at x = " + std::to_string(x));
    return {j0.val, y0.val};
}

} // namespace shearscat
