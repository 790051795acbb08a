#pragma once

// Umbrella header. Pull in everything so a consumer can just write
// #include <specdiff/specdiff.hpp>.

#include "auxiliary.hpp"
#include "config.hpp"
#include "error_harness.hpp"
#include "errors.hpp"
#include "expression.hpp"
#include "extended_real.hpp"
#include "one_sided.hpp"
#include "probes.hpp"
#include "problems.hpp"
#include "report_io.hpp"
#include "schemes.hpp"
#include "specular.hpp"
