#include "hmt/quadrature.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <memory>
#include <mutex>
#include <stdexcept>

namespace hmt::quad {
namespace {

double trampoline(double x, void* params) {
  auto* f = static_cast<const std::function<double(double)>*>(params);
  return (*f)(x);
}

struct Workspace {
  gsl_integration_workspace* ws;
  explicit Workspace(std::size_t n) : ws(gsl_integration_workspace_alloc(n)) {}
  ~Workspace() { gsl_integration_workspace_free(ws); }
  Workspace(const Workspace&) = delete;
  Workspace& operator=(const Workspace&) = delete;
};

void disable_gsl_abort() {
  static std::once_flag flag;
  std::call_once(flag, [] { gsl_set_error_handler_off(); });
}

constexpr std::size_t kLimit = 4096;

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, double rel_tol) {
  disable_gsl_abort();
  Workspace w(kLimit);
  gsl_function gf{&trampoline, const_cast<std::function<double(double)>*>(&f)};
  double result = 0, abserr = 0;
  int status = gsl_integration_qags(&gf, a, b, abs_tol, rel_tol, kLimit, w.ws,
                                    &result, &abserr);
  if (status != GSL_SUCCESS && status != GSL_EROUND)
    throw std::runtime_error("adaptive quadrature failed on finite interval");
  return result;
}

double integrate_to_inf(const std::function<double(double)>& f, double a,
                        double abs_tol, double rel_tol) {
  disable_gsl_abort();
  Workspace w(kLimit);
  gsl_function gf{&trampoline, const_cast<std::function<double(double)>*>(&f)};
  double result = 0, abserr = 0;
  int status = gsl_integration_qagiu(&gf, a, abs_tol, rel_tol, kLimit, w.ws,
                                     &result, &abserr);
  if (status != GSL_SUCCESS && status != GSL_EROUND)
    throw std::runtime_error("adaptive quadrature failed on semi-infinite interval");
  return result;
}

double integrate_real_line(const std::function<double(double)>& f,
                           double abs_tol, double rel_tol) {
  disable_gsl_abort();
  Workspace w(kLimit);
  gsl_function gf{&trampoline, const_cast<std::function<double(double)>*>(&f)};
  double result = 0, abserr = 0;
  int status =
      gsl_integration_qagi(&gf, abs_tol, rel_tol, kLimit, w.ws, &result, &abserr);
  if (status != GSL_SUCCESS && status != GSL_EROUND)
    throw std::runtime_error("adaptive quadrature failed on the real line");
  return result;
}

} // namespace hmt::quad
