#pragma once

#include "hotelling/numeric.hpp"
#include "hotelling/circle.hpp"
#include "hotelling/profile.hpp"
#include "hotelling/market.hpp"
#include "hotelling/equilibrium.hpp"
#include "hotelling/generators.hpp"
#include "hotelling/dynamics.hpp"
