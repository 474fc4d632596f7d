// Umbrella header.
#pragma once

#include <lenspine/arith.hpp>
#include <lenspine/bounds.hpp>
#include <lenspine/construct.hpp>
#include <lenspine/farey.hpp>
#include <lenspine/figure.hpp>
#include <lenspine/flipdist.hpp>
#include <lenspine/geometry.hpp>
#include <lenspine/report.hpp>
#include <lenspine/selftest.hpp>
#include <lenspine/spinehull.hpp>
#include <lenspine/triangulation.hpp>
