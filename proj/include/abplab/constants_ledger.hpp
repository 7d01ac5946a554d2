#pragma once

#include "abplab/check_report.hpp"

namespace abplab {

/// t coth t and sinh(t)/t, both equal to 1 at t = 0.
double calH(double t);
double calS(double t);

struct CurvatureParams {
  double K = 0.0;  ///< Ricci lower-bound magnitude, Ric_{N,nu} >= -K g
  double N = 2.0;  ///< effective dimension, may be +infinity
  double R = 1.0;  ///< reference radius
};

void validate(const CurvatureParams& p);

double omega_KN(double K, double N);
double doubling_const(double K, double N, double r);
double log_doubling_const(double K, double N, double r);

/// Several constants leave the double range (C0 = e^{2/p0} with p0 ~ 1e-17),
/// so those are kept as logarithms. Plain fields hold values that fit.
struct ConstantsLedger {
  CurvatureParams params;
  double omega = 0.0;
  double doubling_R = 0.0, doubling_2R = 0.0, doubling_4R = 0.0;
  double log_doubling_R = 0.0, log_doubling_2R = 0.0, log_doubling_4R = 0.0;
  double eta = 1.0;
  double alpha = 0.0;
  double mu = 0.0;
  double log_mu = 0.0;
  double big_m = 0.0;
  double log_big_m = 0.0;
  double delta0 = 0.0;
  double p0 = 0.0;
  double log_p0 = 0.0;
  double inv_p0 = 0.0;  ///< 1/p0
  double p1 = 0.0;
  double log_p1 = 0.0;
  double log_c0 = 0.0;  ///< log C0 = 2/p0
  double log_c3 = 0.0;
  double log_series = 0.0;  ///< log sum_k (1 + 1/M)^{-k p1}
  double log_c2 = 0.0;      ///< log C2 = log C1(p0); may overflow to +inf
  double loglog_c2 = 0.0;   ///< log log C2, always finite for valid params
};

ConstantsLedger build_ledger(const CurvatureParams& params);

/// Checks i)-iv) of the constants lemma plus the C3 estimate.
Reports verify_ledger(const ConstantsLedger& ledger);

}  // namespace abplab
