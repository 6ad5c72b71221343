#pragma once

#include "looppres/errors.hpp"
#include "looppres/exactlin.hpp"
#include "looppres/freealg.hpp"
#include "looppres/homotopy.hpp"
#include "looppres/io.hpp"
#include "looppres/parallel.hpp"
#include "looppres/pcalg.hpp"
#include "looppres/presentation.hpp"
#include "looppres/ring.hpp"
#include "looppres/simplicial.hpp"
#include "looppres/torbar.hpp"
#include "looppres/vertex_set.hpp"
