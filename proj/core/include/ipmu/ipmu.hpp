#pragma once

#include "ipmu/combinatorics.hpp"
#include "ipmu/common.hpp"
#include "ipmu/instance.hpp"
#include "ipmu/oracle.hpp"
#include "ipmu/parallel.hpp"
#include "ipmu/paths.hpp"
#include "ipmu/rng.hpp"
#include "ipmu/search.hpp"
#include "ipmu/ssg.hpp"
#include "ipmu/upgrade.hpp"
