#pragma once

#include <complex>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

namespace unitaylor {

using Complex = std::complex<double>;

// 256-bit binary floats. Polynomial coefficients live here; high-degree
// polynomials centered at zeta0 cancel through dozens of orders of
// magnitude when evaluated on far compacts.
using HiReal = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<256, boost::multiprecision::digit_base_2>,
    boost::multiprecision::et_off>;
using HiComplex = boost::multiprecision::number<
    boost::multiprecision::complex_adaptor<
        boost::multiprecision::cpp_bin_float<256, boost::multiprecision::digit_base_2>>,
    boost::multiprecision::et_off>;

// A point of C^d.
using Point = std::vector<Complex>;

inline HiComplex to_hi(Complex z) { return HiComplex(HiReal(z.real()), HiReal(z.imag())); }

inline Complex to_double(const HiComplex& z) {
  return {z.real().convert_to<double>(), z.imag().convert_to<double>()};
}

inline double magnitude(const HiComplex& z) {
  HiReal a = abs(z);
  return a.convert_to<double>();
}

inline bool is_exact_zero(const HiComplex& z) { return z.real() == 0 && z.imag() == 0; }

// Round-trippable decimal text for a HiReal.
std::string to_decimal(const HiReal& x);
HiReal from_decimal(const std::string& text);

}  // namespace unitaylor
