#pragma once

#include "knotscatter/angular.hpp"
#include "knotscatter/born.hpp"
#include "knotscatter/curves.hpp"
#include "knotscatter/error.hpp"
#include "knotscatter/kinematics.hpp"
#include "knotscatter/multipole.hpp"
#include "knotscatter/potential.hpp"
#include "knotscatter/quadrature.hpp"
#include "knotscatter/radial.hpp"
#include "knotscatter/reference_tables.hpp"
#include "knotscatter/selfcheck.hpp"
#include "knotscatter/specfun.hpp"
#include "knotscatter/vec3.hpp"
