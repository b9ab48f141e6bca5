#pragma once

#include "hcsim/attribution.hpp"
#include "hcsim/binom_test.hpp"
#include "hcsim/diagnostics.hpp"
#include "hcsim/frequency_table.hpp"
#include "hcsim/hc.hpp"
#include "hcsim/io.hpp"
#include "hcsim/similarity.hpp"
#include "hcsim/simulate.hpp"
#include "hcsim/text_ingest.hpp"
