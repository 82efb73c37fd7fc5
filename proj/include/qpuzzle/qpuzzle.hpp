// Umbrella header.
#pragma once

#include "qpuzzle/board.hpp"
#include "qpuzzle/boards.hpp"
#include "qpuzzle/core.hpp"
#include "qpuzzle/operators.hpp"
#include "qpuzzle/oracle.hpp"
#include "qpuzzle/phase.hpp"
#include "qpuzzle/puzzle_space.hpp"
#include "qpuzzle/rng.hpp"
#include "qpuzzle/simulator.hpp"
#include "qpuzzle/solvers.hpp"
#include "qpuzzle/universality.hpp"
