#pragma once

#include "lcu/core/dense.hpp"
#include "lcu/core/parallel.hpp"
#include "lcu/core/pauli.hpp"
#include "lcu/core/random.hpp"
#include "lcu/core/types.hpp"

#include "lcu/decomp/chebyshev.hpp"
#include "lcu/decomp/descriptor.hpp"
#include "lcu/decomp/gaussian.hpp"
#include "lcu/decomp/inverse.hpp"
#include "lcu/decomp/taylor.hpp"

#include "lcu/estimator/estimator.hpp"
#include "lcu/estimator/observable.hpp"
#include "lcu/estimator/robustness.hpp"
#include "lcu/estimator/samplers.hpp"

#include "lcu/apps/gsp.hpp"
#include "lcu/apps/hamsim.hpp"
#include "lcu/apps/oracles.hpp"
#include "lcu/apps/qls.hpp"

#include "lcu/analog/algorithms.hpp"
#include "lcu/analog/grid.hpp"

#include "lcu/walks/markov.hpp"
#include "lcu/walks/search.hpp"
#include "lcu/walks/walk.hpp"
