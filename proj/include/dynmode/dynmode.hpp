#pragma once

#include "dynmode/block_index.hpp"
#include "dynmode/char_seq.hpp"
#include "dynmode/counted_set.hpp"
#include "dynmode/engine.hpp"
#include "dynmode/errors.hpp"
#include "dynmode/modes_result.hpp"
#include "dynmode/naive.hpp"
#include "dynmode/pair_table.hpp"
#include "dynmode/regime.hpp"
#include "dynmode/set_family.hpp"
#include "dynmode/trace.hpp"
