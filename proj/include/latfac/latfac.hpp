#pragma once

#include "latfac/lattice.hpp"
#include "latfac/transfer.hpp"
#include "latfac/factorization.hpp"
#include "latfac/cochar.hpp"
#include "latfac/crypto.hpp"
#include "latfac/counting.hpp"
#include "latfac/io.hpp"
#include "latfac/verify.hpp"
