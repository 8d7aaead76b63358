// Umbrella header.
#pragma once

#include "prodasym/asymptotics.hpp"
#include "prodasym/charfn.hpp"
#include "prodasym/cli.hpp"
#include "prodasym/csv.hpp"
#include "prodasym/diagnostics.hpp"
#include "prodasym/errors.hpp"
#include "prodasym/factor_family.hpp"
#include "prodasym/moments.hpp"
#include "prodasym/quadrature.hpp"
#include "prodasym/radial.hpp"
#include "prodasym/saddle.hpp"
#include "prodasym/series.hpp"
#include "prodasym/summation.hpp"
