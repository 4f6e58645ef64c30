#pragma once

// Interval averages of matrix weights and the two A2 functionals
//   trace: Tr(<W>_I <W^-1>_I)
//   norm:  || <W>_I^(1/2) <W^-1>_I^(1/2) ||^2
// together with sup searches over intervals.

#include <functional>

#include "a2w/domain.hpp"
#include "a2w/linalg.hpp"
#include "a2w/search.hpp"
#include "a2w/type1.hpp"
#include "a2w/type2.hpp"

namespace a2w {

using Hermitian = SelfAdjoint<cplx>;

/// Tr(A B), real part. Both arguments must be positive definite (up to
/// rounding). The result is checked against the lower bound n, relative to
/// the size of the summed products |a_ij b_ji|.
double a2_functional_trace(const Hermitian& avg_w, const Hermitian& avg_winv,
                           double lower_tol = 1e-9);

/// ||A^(1/2) B^(1/2)||^2.
double a2_functional_norm(const Hermitian& avg_w, const Hermitian& avg_winv,
                          double lower_tol = 1e-9);

double a2_functional(Functional f, const Hermitian& avg_w,
                     const Hermitian& avg_winv);

/// Entrywise s a_ij <|x|^gamma_ij>_I from the closed forms. Entries with a
/// zero coefficient are zero regardless of their exponent.
Hermitian average_symbolic(const SymbolicPowerMatrix& w, const Interval& I);

/// Functional of a power weight and its (precomputed) symbolic inverse.
double functional_on(const SymbolicPowerMatrix& w,
                     const SymbolicPowerMatrix& winv, Functional f,
                     const Interval& I);

/// Functional of a Type 2 weight with quadrature averages.
double functional_on(const Type2Weight& w, Functional f, const Interval& I,
                     double quadrature_tol);

using IntervalObserver = std::function<void(const Interval&, double)>;

/// Lower-bound estimate of the A2 characteristic. Requires check_a2(w) = a2;
/// throws precondition_violated otherwise.
SupSearchResult estimate_a2(const SymbolicPowerMatrix& w, Functional f,
                            const SupSearchConfig& cfg,
                            const IntervalObserver& observer = {});

/// Type 2 counterpart. Requires check_necessary_a2 to pass; quadrature uses
/// cfg.quadrature_tol.
SupSearchResult estimate_a2(const Type2Weight& w, Functional f,
                            const SupSearchConfig& cfg,
                            const IntervalObserver& observer = {});

}  // namespace a2w
