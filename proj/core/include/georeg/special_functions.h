#ifndef GEOREG_SPECIAL_FUNCTIONS_H_
#define GEOREG_SPECIAL_FUNCTIONS_H_

namespace georeg {

// Degrees of freedom of an F distribution; both must be >= 1.
struct FParams {
  double numerator_df = 1.0;
  double denominator_df = 1.0;
};

// log Γ(x) for x > 0 (Lanczos, g = 7).
double LogGamma(double x);

// Regularized incomplete beta I_x(a, b). Requires a, b > 0 and x in [0, 1].
double RegularizedIncompleteBeta(double a, double b, double x);

// Upper-tail probability P(F > f). f may be +inf (returns 0).
double FSurvival(double f, const FParams& params);

}  // namespace georeg

#endif  // GEOREG_SPECIAL_FUNCTIONS_H_
