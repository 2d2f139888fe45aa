#pragma once

#include "supergrass/errors.hpp"
#include "supergrass/scalar.hpp"
#include "supergrass/exterior.hpp"
#include "supergrass/linear_algebra.hpp"
#include "supergrass/linmap.hpp"
#include "supergrass/model.hpp"
#include "supergrass/grading.hpp"
#include "supergrass/constructors.hpp"
#include "supergrass/isomorphism.hpp"
#include "supergrass/superpoly.hpp"
#include "supergrass/identities.hpp"
#include "supergrass/json_io.hpp"
