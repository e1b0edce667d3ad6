#pragma once

#include "kcolor/bigint.hpp"
#include "kcolor/coloring.hpp"
#include "kcolor/dense_matrix.hpp"
#include "kcolor/errors.hpp"
#include "kcolor/extrapolation.hpp"
#include "kcolor/io.hpp"
#include "kcolor/row_codec.hpp"
#include "kcolor/series.hpp"
#include "kcolor/trace_algebra.hpp"
#include "kcolor/transfer.hpp"
