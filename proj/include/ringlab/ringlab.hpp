#pragma once
// Umbrella header.

#include "ringlab/analysis.hpp"
#include "ringlab/classify.hpp"
#include "ringlab/core.hpp"
#include "ringlab/expr.hpp"
#include "ringlab/gf.hpp"
#include "ringlab/groups.hpp"
#include "ringlab/parallel.hpp"
#include "ringlab/report.hpp"
#include "ringlab/ring.hpp"
#include "ringlab/span.hpp"
#include "ringlab/subset_mask.hpp"
#include "ringlab/verify.hpp"
#include "ringlab/views.hpp"
