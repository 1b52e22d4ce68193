#pragma once

// Umbrella header for the qcorr library.

#include "qcorr/bell.hpp"
#include "qcorr/bounds.hpp"
#include "qcorr/errors.hpp"
#include "qcorr/io.hpp"
#include "qcorr/linalg.hpp"
#include "qcorr/prob.hpp"
#include "qcorr/qubit.hpp"
#include "qcorr/rng.hpp"
#include "qcorr/sample.hpp"
#include "qcorr/verify.hpp"
