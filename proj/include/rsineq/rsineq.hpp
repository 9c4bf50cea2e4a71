// SPDX-License-Identifier: Apache-2.0
//
// Umbrella header.

#pragma once

#include "rsineq/certificates.hpp"
#include "rsineq/density.hpp"
#include "rsineq/expr.hpp"
#include "rsineq/families.hpp"
#include "rsineq/interval_set.hpp"
#include "rsineq/norms.hpp"
#include "rsineq/parse.hpp"
#include "rsineq/report.hpp"
#include "rsineq/run.hpp"
#include "rsineq/sharpness.hpp"
