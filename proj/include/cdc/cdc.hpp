#pragma once

// Umbrella header for the library (the CLI lives in cdc/cli.hpp).

#include "bigint.hpp"
#include "bounds.hpp"
#include "cdc_builder.hpp"
#include "code_file.hpp"
#include "combinatorics.hpp"
#include "errors.hpp"
#include "finite_field.hpp"
#include "matrix.hpp"
#include "mrd.hpp"
#include "verifier.hpp"
