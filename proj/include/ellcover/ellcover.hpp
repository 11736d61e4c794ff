#pragma once

#include "error.hpp"
#include "numeric.hpp"
#include "field.hpp"
#include "poly.hpp"
#include "cyclo.hpp"
#include "places.hpp"
#include "covers.hpp"
#include "series.hpp"
#include "model.hpp"
#include "oracle.hpp"
#include "cache.hpp"
#include "verify.hpp"
