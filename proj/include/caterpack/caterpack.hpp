#pragma once

#include "caterpack/caterpillar.hpp"
#include "caterpack/errors.hpp"
#include "caterpack/io.hpp"
#include "caterpack/layout.hpp"
#include "caterpack/oracle.hpp"
#include "caterpack/packing.hpp"
#include "caterpack/rational.hpp"
#include "caterpack/render.hpp"
#include "caterpack/verify.hpp"
