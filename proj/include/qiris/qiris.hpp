#pragma once

#include "qiris/commands.hpp"
#include "qiris/errors.hpp"
#include "qiris/hashing.hpp"
#include "qiris/quantum_sim.hpp"
#include "qiris/rainbow_table.hpp"
#include "qiris/search.hpp"
#include "qiris/splitmix64.hpp"
