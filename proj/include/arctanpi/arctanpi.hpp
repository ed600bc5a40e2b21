#pragma once

#include "arctanpi/numerics/big_rational.hpp"
#include "arctanpi/numerics/digits.hpp"
#include "arctanpi/numerics/exact_sum.hpp"
#include "arctanpi/numerics/precision.hpp"
#include "arctanpi/numerics/quadrature.hpp"
#include "arctanpi/numerics/real.hpp"
#include "arctanpi/numerics/reference.hpp"
#include "arctanpi/numerics/summation.hpp"
#include "arctanpi/pi/pi_formula.hpp"
#include "arctanpi/pi/pi_series.hpp"
#include "arctanpi/pi/studies.hpp"
#include "arctanpi/series/approx_value.hpp"
#include "arctanpi/series/erf_gauss.hpp"
#include "arctanpi/series/error_curve.hpp"
#include "arctanpi/series/rational_series.hpp"
#include "arctanpi/series/sinc.hpp"
