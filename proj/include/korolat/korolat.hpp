#pragma once

#include "korolat/bounds.hpp"
#include "korolat/charsum.hpp"
#include "korolat/discrepancy.hpp"
#include "korolat/errors.hpp"
#include "korolat/experiments.hpp"
#include "korolat/fourier.hpp"
#include "korolat/modmath.hpp"
#include "korolat/pointset.hpp"
#include "korolat/rng.hpp"
