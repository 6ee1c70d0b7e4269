#pragma once

#include <cstdint>

#include "oneq/linalg.hpp"

namespace oneq {

/// Degeneracies of the three candidate eigenvalues; u + v + w = 2N.
struct DegeneracyTriple {
    std::int64_t u = 0;
    std::int64_t v = 0;
    std::int64_t w = 0;
};

struct BoundResult {
    double bound = 0.0;
    DegeneracyTriple triple;
    double eig_a = 0.0;  // the negative eigenvalue in the maximizer
    double eig_b = 0.0;  // the largest eigenvalue
    double eig_c = 0.0;
};

/// Two-moment upper bound sqrt(1 + alpha^2) on the DQC1 negativity.
double bound_s12(double alpha);

/// Location of the continuous optimum, t = N (1 - 1/sqrt(1+alpha^2)).
double bound_s12_optimal_t(std::int64_t big_n, double alpha);

/// Two-moment bound with the negative-eigenvalue count restricted to
/// integers: max over t of (N - t + |alpha| sqrt(t (2N - t))) / N.
double bound_s12_integer(std::int64_t big_n, double alpha);

/// Three-moment bound at alpha = 1: per degeneracy triple, solve
///   u A   + v B   + w C   = 1
///   u A^2 + v B^2 + w C^2 = 1/N
///   u A^3 + v B^3 + w C^3 = 1/N^2
/// and maximize u|A| + v|B| + w|C|.  Brute force over all triples up to
/// 2N = 78; beyond that a +-3 window around the known maximizer pattern
/// u = [N(1 - 1/sqrt(2))], v = 1, w = 2N - 1 - u.
BoundResult bound_s123(std::int64_t big_n);

/// sqrt(2) - 2^(-7/6) N^(-1/3), the large-N expansion of bound_s123.
double bound_s123_asymptotic(std::int64_t big_n);

/// tr(rho_pt^s) = [(1+alpha)^s + (1-alpha)^s] / (2^s N^(s-1)), s = 1, 2, 3.
double moment_constraints(std::int64_t big_n, double alpha, int s);

}  // namespace oneq
