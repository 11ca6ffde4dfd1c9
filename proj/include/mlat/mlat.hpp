// Umbrella header.

#ifndef MLAT_MLAT_HPP_
#define MLAT_MLAT_HPP_

#include "error.hpp"
#include "linalg.hpp"
#include "snf.hpp"
#include "repr.hpp"
#include "master.hpp"
#include "equiv.hpp"
#include "io.hpp"
#include "commands.hpp"

#endif
