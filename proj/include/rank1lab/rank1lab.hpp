#pragma once

#include "rank1lab/abelian.hpp"
#include "rank1lab/bigint.hpp"
#include "rank1lab/config.hpp"
#include "rank1lab/criteria.hpp"
#include "rank1lab/lattice.hpp"
#include "rank1lab/registry.hpp"
#include "rank1lab/report.hpp"
#include "rank1lab/simulator.hpp"
#include "rank1lab/tower.hpp"
