#pragma once

// Tail probabilities used across the toolkit. Self-contained: regularized
// incomplete beta/gamma via Lentz continued fractions, accurate to ~1e-12
// relative for the argument ranges that show up in F / chi-square / t tests.

namespace ardlkit::dist {

// Regularized incomplete beta I_x(a, b).
double ibeta(double a, double b, double x);

// Regularized upper incomplete gamma Q(a, x).
double igamma_upper(double a, double x);

// Survival functions (upper tails).
double chi2_sf(double x, double df);
double f_sf(double f, double df1, double df2);

// Two-sided p-value of a t statistic with df degrees of freedom.
double t_sf_twosided(double t, double df);

double norm_cdf(double z);

}  // namespace ardlkit::dist
