#pragma once

#include "unrefinable/bijection.hpp"
#include "unrefinable/enumeration.hpp"
#include "unrefinable/error.hpp"
#include "unrefinable/io.hpp"
#include "unrefinable/maximal.hpp"
#include "unrefinable/partition.hpp"
