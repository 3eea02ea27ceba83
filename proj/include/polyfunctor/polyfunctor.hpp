#pragma once

#include "polyfunctor/errors.hpp"
#include "polyfunctor/scalar.hpp"
#include "polyfunctor/linalg.hpp"
#include "polyfunctor/bitset.hpp"
#include "polyfunctor/face_lattice.hpp"
#include "polyfunctor/polytope.hpp"
#include "polyfunctor/lp.hpp"
#include "polyfunctor/measure.hpp"
#include "polyfunctor/parallel.hpp"
#include "polyfunctor/polyops.hpp"
#include "polyfunctor/homtensor.hpp"
#include "polyfunctor/fiber.hpp"
#include "polyfunctor/kercoker.hpp"
#include "polyfunctor/polynomial.hpp"
#include "polyfunctor/sandwich.hpp"
#include "polyfunctor/cases.hpp"
#include "polyfunctor/io.hpp"
#include "polyfunctor/svg.hpp"
