#pragma once

// Umbrella header.

#include "bowlership/analysis.hpp"
#include "bowlership/classify.hpp"
#include "bowlership/config.hpp"
#include "bowlership/csv.hpp"
#include "bowlership/errors.hpp"
#include "bowlership/graph.hpp"
#include "bowlership/ingest.hpp"
#include "bowlership/mann_whitney.hpp"
#include "bowlership/normality.hpp"
#include "bowlership/overs.hpp"
#include "bowlership/pairing.hpp"
#include "bowlership/select.hpp"
#include "bowlership/special.hpp"
#include "bowlership/types.hpp"
