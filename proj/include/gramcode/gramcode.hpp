#pragma once

#include "gramcode/aecc.hpp"
#include "gramcode/channel.hpp"
#include "gramcode/codec.hpp"
#include "gramcode/errors.hpp"
#include "gramcode/graph.hpp"
#include "gramcode/grams.hpp"
#include "gramcode/io.hpp"
#include "gramcode/lattice.hpp"
#include "gramcode/numeric.hpp"
#include "gramcode/tables.hpp"
