#pragma once

#include "sisio/config.hpp"
#include "sisio/error.hpp"
#include "sisio/expr.hpp"
#include "sisio/interval.hpp"
#include "sisio/linalg.hpp"
#include "sisio/lp.hpp"
#include "sisio/mixed_monotone.hpp"
#include "sisio/model.hpp"
#include "sisio/observer.hpp"
#include "sisio/report.hpp"
#include "sisio/simulate.hpp"
#include "sisio/stability.hpp"
#include "sisio/trace_io.hpp"
