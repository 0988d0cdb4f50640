#ifndef SHEARSCAT_SPECIAL_HPP
#define SHEARSCAT_SPECIAL_HPP

#include <complex>

namespace shearscat {

// Outgoing Hankel function H0^(1)(x) = J0(x) + i Y0(x), x > 0.
std::complex<double> hankel0_1(double x);

} // namespace shearscat

#endif
