#pragma once

#include "kstab/arrangement.hpp"
#include "kstab/classp.hpp"
#include "kstab/generate.hpp"
#include "kstab/gitdual.hpp"
#include "kstab/json_io.hpp"
#include "kstab/lattice.hpp"
#include "kstab/matrix.hpp"
#include "kstab/rational.hpp"
#include "kstab/stability.hpp"
