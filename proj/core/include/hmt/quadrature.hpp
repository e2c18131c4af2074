#pragma once

#include <functional>

namespace hmt::quad {

/// Adaptive Gauss-Kronrod integration on [a, b] (endpoint singularities ok).
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-10, double rel_tol = 1e-10);

/// Adaptive integration on [a, +infinity).
double integrate_to_inf(const std::function<double(double)>& f, double a,
                        double abs_tol = 1e-10, double rel_tol = 1e-10);

/// Adaptive integration on the whole real line.
double integrate_real_line(const std::function<double(double)>& f,
                           double abs_tol = 1e-10, double rel_tol = 1e-10);

} // namespace hmt::quad
