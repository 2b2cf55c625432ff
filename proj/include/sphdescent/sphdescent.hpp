#pragma once

#include "sphdescent/arith.hpp"
#include "sphdescent/cohomology.hpp"
#include "sphdescent/colored_fan.hpp"
#include "sphdescent/cone.hpp"
#include "sphdescent/descent.hpp"
#include "sphdescent/fg_abelian.hpp"
#include "sphdescent/galois_action.hpp"
#include "sphdescent/lattice.hpp"
#include "sphdescent/normal_form.hpp"
#include "sphdescent/problem.hpp"
#include "sphdescent/report.hpp"
#include "sphdescent/root_datum.hpp"
#include "sphdescent/spherical_data.hpp"
#include "sphdescent/weyl_oracle.hpp"
