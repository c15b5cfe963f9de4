#pragma once

namespace boss {

// Standard normal density, distribution and quantile functions.
//
// The CDF goes through erfc so the lower tail keeps full relative accuracy.
// The quantile uses Acklam's rational approximation polished by one Halley
// step of Phi, which brings the error down to a few ulps across (0,1).

double normal_pdf(double x);
double normal_cdf(double x);

// Throws numerical_error for p outside (0,1).
double normal_quantile(double p);

}  // namespace boss
