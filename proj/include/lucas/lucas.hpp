#pragma once

// Umbrella header.

#include "lucas/params.hpp"
#include "lucas/numtheory.hpp"
#include "lucas/exact.hpp"
#include "lucas/modular.hpp"
#include "lucas/divisibility.hpp"
#include "lucas/congruence.hpp"
#include "lucas/parallel.hpp"
#include "lucas/records.hpp"
#include "lucas/atlas.hpp"
#include "lucas/verify.hpp"
