#ifndef LPCS_LPCS_HPP
#define LPCS_LPCS_HPP

#include "random.hpp"
#include "signal.hpp"
#include "noise.hpp"
#include "gd_estimator.hpp"
#include "support.hpp"
#include "reconstruction.hpp"
#include "experiments.hpp"
#include "report.hpp"

#endif // LPCS_LPCS_HPP
