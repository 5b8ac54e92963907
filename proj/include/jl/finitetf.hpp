#pragma once

#include "finitetf/characters.hpp"
#include "finitetf/group.hpp"
#include "finitetf/model.hpp"
