#pragma once

#include "mmee/config.hpp"
#include "mmee/dimensioning.hpp"
#include "mmee/errors.hpp"
#include "mmee/geometry.hpp"
#include "mmee/io.hpp"
#include "mmee/lambert.hpp"
#include "mmee/link.hpp"
#include "mmee/optimizer.hpp"
#include "mmee/power.hpp"
#include "mmee/traffic.hpp"
