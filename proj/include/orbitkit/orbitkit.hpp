#pragma once
// Single include for the whole toolkit.

#include "core.hpp"
#include "data.hpp"
#include "dynkin.hpp"
#include "linalg.hpp"
#include "rootsys.hpp"
#include "forms.hpp"
#include "elementary.hpp"
#include "quattern.hpp"
#include "classify.hpp"
#include "registry.hpp"
#include "extensive.hpp"
#include "counting.hpp"
#include "oracle.hpp"
