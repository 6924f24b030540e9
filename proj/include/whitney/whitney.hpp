#pragma once

// Everything except the testing helpers.

#include "whitney/config.hpp"
#include "whitney/divdiff.hpp"
#include "whitney/error.hpp"
#include "whitney/extension.hpp"
#include "whitney/functionals.hpp"
#include "whitney/integrate.hpp"
#include "whitney/jets.hpp"
#include "whitney/knots.hpp"
#include "whitney/piecewise.hpp"
#include "whitney/polynomial.hpp"
#include "whitney/report.hpp"
#include "whitney/spline.hpp"
