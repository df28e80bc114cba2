#pragma once

#include "s3torus/clifford.hpp"
#include "s3torus/common.hpp"
#include "s3torus/elliptic.hpp"
#include "s3torus/isothermal.hpp"
#include "s3torus/mechanics.hpp"
#include "s3torus/mesh.hpp"
#include "s3torus/periodicity.hpp"
#include "s3torus/quadrature.hpp"
#include "s3torus/report.hpp"
#include "s3torus/surface.hpp"
