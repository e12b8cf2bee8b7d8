#pragma once

#include "whsg/symbol.hpp"
#include "whsg/nfa.hpp"
#include "whsg/cfg.hpp"
#include "whsg/chart.hpp"
#include "whsg/transducer.hpp"
#include "whsg/free_group.hpp"
#include "whsg/structure.hpp"
#include "whsg/arithmetic.hpp"
#include "whsg/validate.hpp"
#include "whsg/decide_basic.hpp"
#include "whsg/decide_structural.hpp"
#include "whsg/oracle.hpp"
