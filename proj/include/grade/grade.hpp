#pragma once

#include "grade/bitstring.hpp"
#include "grade/circuit.hpp"
#include "grade/circuit_io.hpp"
#include "grade/distribution.hpp"
#include "grade/error.hpp"
#include "grade/grover.hpp"
#include "grade/harness.hpp"
#include "grade/heatmap.hpp"
#include "grade/noise.hpp"
#include "grade/report.hpp"
#include "grade/rng.hpp"
#include "grade/scoring.hpp"
#include "grade/statevector.hpp"
