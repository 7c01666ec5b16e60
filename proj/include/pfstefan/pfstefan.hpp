#pragma once

#include "pfstefan/core.hpp"
#include "pfstefan/interface.hpp"
#include "pfstefan/potential.hpp"
#include "pfstefan/report.hpp"
#include "pfstefan/scenario.hpp"
#include "pfstefan/sharp_oracle.hpp"
#include "pfstefan/solver.hpp"
