#pragma once

#include "khrank/alexander.hpp"
#include "khrank/braid.hpp"
#include "khrank/classify.hpp"
#include "khrank/dataset.hpp"
#include "khrank/error.hpp"
#include "khrank/gf2.hpp"
#include "khrank/khovanov.hpp"
#include "khrank/laurent.hpp"
#include "khrank/link_diagram.hpp"
#include "khrank/parallel.hpp"
