#pragma once

#include "qwalk/asymptotics.hpp"
#include "qwalk/measurement.hpp"
#include "qwalk/records.hpp"
#include "qwalk/sweep.hpp"
#include "qwalk/thermo.hpp"
#include "qwalk/verify.hpp"
#include "qwalk/walker.hpp"
