#pragma once

#include "oneround/bigint.hpp"
#include "oneround/deals.hpp"
#include "oneround/interval.hpp"
#include "oneround/optimal_k.hpp"
#include "oneround/oracles.hpp"
#include "oneround/parallel.hpp"
#include "oneround/report.hpp"
#include "oneround/simulator.hpp"
#include "oneround/strategy.hpp"
#include "oneround/trick_matrix.hpp"
