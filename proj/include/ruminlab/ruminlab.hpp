#pragma once

#include "ruminlab/currents.hpp"
#include "ruminlab/expr.hpp"
#include "ruminlab/forms.hpp"
#include "ruminlab/graphs.hpp"
#include "ruminlab/heis.hpp"
#include "ruminlab/hlinear.hpp"
#include "ruminlab/io.hpp"
#include "ruminlab/multivector.hpp"
#include "ruminlab/polynomial.hpp"
#include "ruminlab/rational.hpp"
#include "ruminlab/rumin.hpp"
#include "ruminlab/tableau.hpp"
#include "ruminlab/version.hpp"
